#include <cmath>

#include "dimbound/quantum.hpp"
#include "json.hpp"

namespace dimbound {

namespace {

using nlohmann::json;

json matrix_json(const HermitianMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json family_json(const std::vector<std::vector<HermitianMatrix>>& family) {
  json out = json::array();
  for (const auto& row : family) {
    json setting = json::array();
    for (const auto& m : row) setting.push_back(matrix_json(m));
    out.push_back(std::move(setting));
  }
  return out;
}

HermitianMatrix matrix_from(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw Error(ErrorKind::ParseError, "matrix must have " + std::to_string(dim) + " rows");
  ComplexMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != dim) throw Error(ErrorKind::ParseError, "matrix row has wrong length");
    for (std::size_t k = 0; k < dim; ++k) {
      const json& z = row[k];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw Error(ErrorKind::ParseError, "matrix entries must be [re, im] pairs");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return HermitianMatrix(m, 1e-9);
}

std::vector<std::vector<HermitianMatrix>> family_from(const json& j, std::size_t dim) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, "operator family must be a nonempty array");
  std::vector<std::vector<HermitianMatrix>> out;
  for (const json& setting : j) {
    if (!setting.is_array() || setting.empty()) throw Error(ErrorKind::ParseError, "each setting must list its outcomes");
    auto& row = out.emplace_back();
    for (const json& m : setting) row.push_back(matrix_from(m, dim));
  }
  return out;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::size_t dim_of(const json& doc) {
  try {
    const auto d = doc.at("d").get<long long>();
    if (d < 1) throw Error(ErrorKind::ParseError, "d must be positive");
    return static_cast<std::size_t>(d);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
  return doc[key];
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string to_json(const PairRepresentation& rep) {
  json j;
  j["d"] = rep.local_dim;
  j["state"] = matrix_json(rep.state.matrix());
  j["alice"] = family_json(rep.alice.elements);
  j["bob"] = family_json(rep.bob.elements);
  return j.dump();
}

std::string to_json(const OperatorRepresentation& orep) {
  json j;
  j["d"] = orep.dim;
  j["E"] = family_json(orep.E);
  j["F"] = family_json(orep.F);
  return j.dump();
}

PairRepresentation pair_representation_from_json(std::string_view text) {
  const json doc = parse(text);
  const std::size_t d = dim_of(doc);
  QuantumState state(matrix_from(field(doc, "state"), d * d));
  POVMFamily alice{family_from(field(doc, "alice"), d)};
  POVMFamily bob{family_from(field(doc, "bob"), d)};
  return {d, std::move(state), std::move(alice), std::move(bob)};
}

OperatorRepresentation operator_representation_from_json(std::string_view text) {
  const json doc = parse(text);
  const std::size_t d = dim_of(doc);
  OperatorRepresentation orep{d, family_from(field(doc, "E"), d), family_from(field(doc, "F"), d)};
  for (const auto* fam : {&orep.E, &orep.F})
    for (const auto& row : *fam)
      if (row.size() != fam->front().size()) throw Error(ErrorKind::ParseError, "settings disagree on outcome count");
  return orep;
}

std::string to_json(const VerificationReport& r) {
  json j;
  j["condition1_max_err"] = r.condition1_max_err;
  j["condition3_max_err"] = r.condition3_max_err;
  j["psd_ok"] = r.psd_ok;
  j["verdict"] = r.verdict;
  return j.dump();
}

std::string to_json(const AuditReport& r) {
  json j;
  j["d"] = r.dim;
  j["common_sum_rank"] = r.common_sum_rank;
  j["f_weights"] = r.f_weights;
  j["povm_completeness_err"] = r.povm_completeness_err;
  j["weight_normalization_err"] = r.weight_normalization_err;
  j["rescaling_residual"] = r.rescaling_residual;
  j["fidelity_monotonicity_violation"] = finite_or_null(r.fidelity_monotonicity_violation);
  j["trace_fidelity_violation"] = finite_or_null(r.trace_fidelity_violation);
  j["rho_y_max_discrepancy"] = r.rho_y_max_discrepancy;
  j["purity_values"] = r.purity_values;
  j["purity_floor_violation"] = finite_or_null(r.purity_floor_violation);
  j["bracket_violation"] = finite_or_null(r.bracket_violation);
  j["f1"] = std::isinf(r.f1) ? json("infinity") : finite_or_null(r.f1);
  j["implied_f1_upper"] = std::isinf(r.implied_f1_upper) ? json("infinity") : json(r.implied_f1_upper);
  j["chain_holds"] = r.chain_holds;
  return j.dump();
}

}  // namespace dimbound

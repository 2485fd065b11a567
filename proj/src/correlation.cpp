#include "dimbound/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace dimbound {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InfeasiblePerturbation: return "InfeasiblePerturbation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::InvalidRepresentation: return "InvalidRepresentation";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
  }
  return "Unknown";
}

Correlation Correlation::validate(std::vector<double> table, Sizes sizes, double tol) {
  if (sizes.nx == 0 || sizes.ny == 0 || sizes.na == 0 || sizes.nb == 0) {
    throw Error(ErrorKind::ShapeMismatch, "alphabet sizes must be positive");
  }
  if (table.size() != sizes.table_size()) {
    std::ostringstream os;
    os << "table has " << table.size() << " entries, sizes require "
       << sizes.table_size();
    throw Error(ErrorKind::ShapeMismatch, os.str());
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    double& v = table[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NegativeEntry, "non-finite entry at flat index " + std::to_string(i));
    }
    if (v < -tol) {
      std::ostringstream os;
      os << "entry " << v << " at flat index " << i;
      throw Error(ErrorKind::NegativeEntry, os.str());
    }
    if (v < 0.0) v = 0.0;
  }
  const std::size_t block = sizes.na * sizes.nb;
  for (std::size_t x = 0; x < sizes.nx; ++x) {
    for (std::size_t y = 0; y < sizes.ny; ++y) {
      const auto first = table.begin() + static_cast<std::ptrdiff_t>((x * sizes.ny + y) * block);
      double sum = 0.0;
      std::for_each(first, first + static_cast<std::ptrdiff_t>(block), [&](double v) { sum += v; });
      if (std::abs(sum - 1.0) > tol) {
        std::ostringstream os;
        os.precision(17);
        os << "settings (x=" << x << ", y=" << y << ") sum to " << sum;
        throw Error(ErrorKind::NotNormalized, os.str());
      }
    }
  }
  return Correlation(std::move(table), sizes);
}

double Correlation::probability(std::size_t x, std::size_t y, std::size_t a,
                                std::size_t b) const {
  if (x >= sizes_.nx || y >= sizes_.ny || a >= sizes_.na || b >= sizes_.nb) {
    std::ostringstream os;
    os << "(x,y,a,b)=(" << x << "," << y << "," << a << "," << b << ")";
    throw Error(ErrorKind::IndexOutOfRange, os.str());
  }
  return (*this)(x, y, a, b);
}

namespace {

void check_settings(const Correlation& p, std::size_t x, std::size_t y) {
  if (x >= p.nx() || y >= p.ny()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "settings (" + std::to_string(x) + "," + std::to_string(y) + ")");
  }
}

}  // namespace

std::vector<double> marginal_b(const Correlation& p, std::size_t x, std::size_t y) {
  check_settings(p, x, y);
  std::vector<double> out(p.nb(), 0.0);
  for (std::size_t a = 0; a < p.na(); ++a)
    for (std::size_t b = 0; b < p.nb(); ++b) out[b] += p(x, y, a, b);
  return out;
}

std::vector<double> marginal_a(const Correlation& p, std::size_t x, std::size_t y) {
  check_settings(p, x, y);
  std::vector<double> out(p.na(), 0.0);
  for (std::size_t a = 0; a < p.na(); ++a)
    for (std::size_t b = 0; b < p.nb(); ++b) out[a] += p(x, y, a, b);
  return out;
}

SignalingReport check_nonsignaling(const Correlation& p, double tol) {
  double worst = 0.0;
  // Bob's marginal must not depend on x.
  for (std::size_t y = 0; y < p.ny(); ++y) {
    const auto ref = marginal_b(p, 0, y);
    for (std::size_t x = 1; x < p.nx(); ++x) {
      const auto m = marginal_b(p, x, y);
      for (std::size_t b = 0; b < p.nb(); ++b) worst = std::max(worst, std::abs(m[b] - ref[b]));
    }
  }
  // Alice's marginal must not depend on y.
  for (std::size_t x = 0; x < p.nx(); ++x) {
    const auto ref = marginal_a(p, x, 0);
    for (std::size_t y = 1; y < p.ny(); ++y) {
      const auto m = marginal_a(p, x, y);
      for (std::size_t a = 0; a < p.na(); ++a) worst = std::max(worst, std::abs(m[a] - ref[a]));
    }
  }
  return {worst <= tol, worst};
}

std::string to_json(const Correlation& p) {
  std::string out;
  out.reserve(32 + p.table().size() * 26);
  const auto& s = p.sizes();
  out += "{\"sizes\": {\"x\": " + std::to_string(s.nx) + ", \"y\": " + std::to_string(s.ny) +
         ", \"a\": " + std::to_string(s.na) + ", \"b\": " + std::to_string(s.nb) + "}, \"p\": [";
  char buf[40];
  bool first = true;
  for (double v : p.table()) {
    if (!first) out += ", ";
    first = false;
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  }
  out += "]}\n";
  return out;
}

Correlation from_json(std::string_view text, double tol) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  Sizes sizes;
  std::vector<double> table;
  try {
    const auto& js = doc.at("sizes");
    sizes.nx = js.at("x").get<std::size_t>();
    sizes.ny = js.at("y").get<std::size_t>();
    sizes.na = js.at("a").get<std::size_t>();
    sizes.nb = js.at("b").get<std::size_t>();
    table = doc.at("p").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return Correlation::validate(std::move(table), sizes, tol);
}

}  // namespace dimbound

#include "dimbound/cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dimbound/bounds.hpp"
#include "dimbound/generators.hpp"
#include "dimbound/psdrank.hpp"
#include "dimbound/quantum.hpp"

namespace dimbound::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write to " + path + " failed");
}

struct Options {
  std::string name;
  std::optional<std::size_t> d;
  std::string out_path;
  std::string in_path;
  std::string rep_path;
  std::string corr_path;
  double tol = kDefaultTol;
  double eps = 0.0;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  bool json = false;
};

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
  std::optional<Correlation> p;
  if (o.name == "chsh") {
    p = chsh_optimal();
  } else if (o.name == "magic-square") {
    p = magic_square();
  } else if (o.name == "pr-box") {
    if (!o.d) {
      err << "generate pr-box requires --d\n";
      return kFailure;
    }
    p = pr_box(*o.d);
  } else if (o.name == "ffl") {
    p = ffl_uniform();
  } else if (o.name == "nonconvex-mixture") {
    p = nonconvex_mixture();
  } else if (o.name == "uniform") {
    p = uniform({2, 2, 2, 2});
  } else {
    err << "unknown correlation '" << o.name << "'\n";
    return kFailure;
  }
  write_output(o.out_path, to_json(*p), out);
  return kOk;
}

int cmd_bound(const Options& o, std::ostream& out) {
  const Correlation p = from_json(read_file(o.in_path), o.tol);
  const BoundReport r = dimension_lower_bound(p);
  if (o.json) {
    out << to_json(r) << "\n";
    return kOk;
  }
  const SignalingReport sig = check_nonsignaling(p, o.tol);
  out << "f1                    " << to_string(r.f1) << "\n"
      << "f2                    " << to_string(r.f2) << "\n"
      << "ceil(f1)              " << to_string(guarded_ceiling(r.f1)) << "\n"
      << "ceil(f2)              " << to_string(guarded_ceiling(r.f2)) << "\n"
      << "dimension_lower_bound " << to_string(r.dimension_lower_bound) << "\n"
      << "nonsignaling          " << (sig.is_nonsignaling ? "yes" : "no") << " (max violation "
      << sig.max_violation << ")\n";
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::string rep_text = read_file(o.rep_path);
  const std::string corr_text = read_file(o.corr_path);
  const OperatorRepresentation orep = operator_representation_from_json(rep_text);
  const Correlation p = from_json(corr_text, o.tol);
  const VerificationReport r = verify_operator_representation(orep, p, o.tol);
  if (o.json) {
    out << to_json(r) << "\n";
  } else {
    out << "condition1_max_err " << r.condition1_max_err << "\n"
        << "condition3_max_err " << r.condition3_max_err << "\n"
        << "psd_ok             " << (r.psd_ok ? "true" : "false") << "\n"
        << "verdict            " << (r.verdict ? "true" : "false") << "\n";
  }
  return r.verdict ? kOk : kFailure;
}

int cmd_audit(const Options& o, std::ostream& out) {
  const OperatorRepresentation orep = operator_representation_from_json(read_file(o.rep_path));
  const AuditReport r = audit_derivation(orep, o.tol);
  if (o.json) {
    out << to_json(r) << "\n";
  } else {
    out << "d                               " << r.dim << "\n"
        << "common_sum_rank                 " << r.common_sum_rank << "\n"
        << "povm_completeness_err           " << r.povm_completeness_err << "\n"
        << "weight_normalization_err        " << r.weight_normalization_err << "\n"
        << "rescaling_residual              " << r.rescaling_residual << "\n"
        << "fidelity_monotonicity_violation " << r.fidelity_monotonicity_violation << "\n"
        << "trace_fidelity_violation        " << r.trace_fidelity_violation << "\n"
        << "rho_y_max_discrepancy           " << r.rho_y_max_discrepancy << "\n"
        << "purity_floor_violation          " << r.purity_floor_violation << "\n"
        << "bracket_violation               " << r.bracket_violation << "\n"
        << "purity_values                  ";
    for (double v : r.purity_values) out << " " << v;
    out << "\n"
        << "f1                              " << to_string(ExtendedBound(r.f1)) << "\n"
        << "implied_f1_upper                " << to_string(ExtendedBound(r.implied_f1_upper)) << "\n"
        << "chain_holds                     " << (r.chain_holds ? "true" : "false") << "\n";
  }
  return r.chain_holds ? kOk : kFailure;
}

int cmd_psdrank(const Options& o, std::ostream& out) {
  const Correlation p = from_json(read_file(o.in_path), o.tol);
  const BoundComparison c = compare_bounds(p);
  if (o.json) {
    out << to_json(c) << "\n";
    return kOk;
  }
  out << "flattened_psd_bound   " << to_string(c.flattened_psd_bound) << " (ceil "
      << to_string(guarded_ceiling(c.flattened_psd_bound)) << ")\n"
      << "f1                    " << to_string(c.f1) << "\n"
      << "f2                    " << to_string(c.f2) << "\n"
      << "dimension_lower_bound " << to_string(c.dimension_lower_bound) << "\n";
  return kOk;
}

int cmd_perturb(const Options& o, std::ostream& out) {
  const Correlation p = from_json(read_file(o.in_path), o.tol);
  const RobustnessSummary s = robustness_scan(p, o.eps, o.samples, o.seed);
  if (o.json) {
    out << to_json(s) << "\n";
    return kOk;
  }
  auto line = [&](const char* name, const BoundStats& b) {
    out << name << " min " << to_string(ExtendedBound(b.min)) << " max "
        << to_string(ExtendedBound(b.max)) << " mean " << to_string(ExtendedBound(b.mean)) << "\n";
  };
  out << "eps " << s.eps << " samples " << s.samples << " seed " << s.seed << "\n";
  line("f1", s.f1);
  line("f2", s.f2);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds on the local Hilbert-space dimension of two-party correlations"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "Write a canonical correlation as JSON");
  gen->add_option("name", o.name, "chsh|magic-square|pr-box|ffl|nonconvex-mixture|uniform")->required();
  gen->add_option("--d", o.d, "Outcome count for pr-box (>= 2)");
  gen->add_option("-o,--out", o.out_path, "Output path (stdout when omitted)");

  auto* bound = app.add_subcommand("bound", "Compute f1, f2 and the integer dimension bound");
  bound->add_option("input", o.in_path, "Correlation JSON")->required();

  auto* verify = app.add_subcommand("verify", "Check an operator representation against a correlation");
  verify->add_option("rep", o.rep_path, "Operator representation JSON")->required();
  verify->add_option("corr", o.corr_path, "Correlation JSON")->required();

  auto* audit = app.add_subcommand("audit", "Replay the bound's derivation on an operator representation");
  audit->add_option("rep", o.rep_path, "Operator representation JSON")->required();

  auto* psd = app.add_subcommand("psdrank", "Compare the flattened PSD-rank bound with f1/f2");
  psd->add_option("input", o.in_path, "Correlation JSON")->required();

  auto* perturb_cmd = app.add_subcommand("perturb", "Bound statistics under entrywise perturbation");
  perturb_cmd->add_option("input", o.in_path, "Correlation JSON")->required();
  perturb_cmd->add_option("--eps", o.eps, "Perturbation half-width")->check(CLI::NonNegativeNumber);
  perturb_cmd->add_option("--samples", o.samples, "Number of samples")->check(CLI::PositiveNumber);
  perturb_cmd->add_option("--seed", o.seed, "Random seed");

  for (auto* sub : {bound, verify, audit, psd, perturb_cmd}) {
    sub->add_option("--tol", o.tol, "Tolerance")->check(CLI::PositiveNumber);
    sub->add_flag("--json", o.json, "JSON output");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kFailure;
  }

  try {
    if (gen->parsed()) return cmd_generate(o, out, err);
    if (bound->parsed()) return cmd_bound(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (audit->parsed()) return cmd_audit(o, out);
    if (psd->parsed()) return cmd_psdrank(o, out);
    if (perturb_cmd->parsed()) return cmd_perturb(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError ? kIoError : kFailure;
  }
  return kFailure;
}

}  // namespace dimbound::cli

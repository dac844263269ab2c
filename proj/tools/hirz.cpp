// hirz: command-line front end.
//
// Exit codes: 0 success (findings included), 1 a theorem-backed check
// failed, 2 usage error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hirz/hirz.hpp"

namespace {

using hirz::json;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::int64_t parse_int(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw UsageError(std::string("not an integer for ") + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw UsageError(std::string("not an integer for ") + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::int64_t> parse_nonneg_list(const std::string& s, const char* what) {
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  for (const auto& tok : split(s, ',')) {
    const auto v = parse_int(tok, what);
    if (v < 0) throw UsageError(std::string(what) + " entries must be non-negative");
    out.push_back(v);
  }
  return out;
}

/// "7" or "e+4" (also "e", "e-1").
hirz::BoundRule parse_bound_rule(const std::string& tok, const char* what) {
  if (!tok.empty() && tok[0] == 'e') {
    const std::string rest = tok.substr(1);
    if (rest.empty()) return {0, 1};
    if (rest[0] != '+' && rest[0] != '-') throw UsageError(std::string("bad bound for ") + what + ": '" + tok + "'");
    return {static_cast<int>(parse_int(rest[0] == '+' ? rest.substr(1) : rest, what)), 1};
  }
  const auto v = parse_int(tok, what);
  if (v < 0) throw UsageError(std::string(what) + " must be non-negative");
  return hirz::BoundRule::constant(static_cast<int>(v));
}

hirz::SweepBox parse_box(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError("--box expects A,B,M (B may be e+K)");
  const auto a = parse_int(parts[0], "--box");
  const auto m = parse_int(parts[2], "--box");
  if (a < 0 || m < 0) throw UsageError("--box entries must be non-negative");
  return {static_cast<int>(a), parse_bound_rule(parts[1], "--box"), static_cast<int>(m)};
}

struct Common {
  std::uint64_t prime = hirz::kDefaultPrime;
  int trials = 3;
  std::uint64_t seed = 0;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--prime", c.prime, "field size for the oracle (prime > 2^40)")
      ->envname("HIRZ_PRIME")
      ->capture_default_str();
  cmd->add_option("--trials", c.trials, "independent point configurations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "first seed; trial t uses seed + t")->capture_default_str();
}

void add_jobs(CLI::App* cmd, Common& c) {
  cmd->add_option("--jobs", c.jobs, "worker threads (output does not depend on it)")->check(CLI::PositiveNumber);
}

hirz::RunConfig run_config(const Common& c, const std::string& command) {
  hirz::RunConfig cfg;
  cfg.prime = c.prime;
  cfg.default_trials = c.trials;
  cfg.seed_base = c.seed;
  cfg.command = command;
  return cfg;
}

struct ClassArgs {
  int e = 0;
  int r = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::string m;
};

void add_class(CLI::App* cmd, ClassArgs& c) {
  cmd->add_option("--e", c.e, "Hirzebruch invariant")->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--r", c.r, "number of points")->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--a", c.a, "coefficient of H")->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--b", c.b, "coefficient of F")->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--m", c.m, "multiplicities, comma separated, length r");
}

hirz::DivisorClass build_class(const ClassArgs& c) {
  auto m = parse_nonneg_list(c.m, "--m");
  if (m.size() != static_cast<std::size_t>(c.r))
    throw UsageError("--m has " + std::to_string(m.size()) + " entries but --r is " + std::to_string(c.r));
  return {c.a, c.b, std::move(m)};
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void print_checks(const hirz::SweepSummary& s) {
  std::cout << "records: " << s.records << "  effective: " << s.effective << "  nef certified: " << s.nef_certified
            << "  nef unknown: " << s.nef_unknown << "  special: " << s.special
            << "  (-1)-special: " << s.minus_one_special << "  reduction errors: " << s.reduction_errors << '\n';
  for (const auto& c : s.checks) {
    std::cout << (c.hard ? (c.passed() ? "PASS    " : "FAIL    ") : "FINDING ") << c.name << ": " << c.examined
              << " examined, " << c.violations.size() << (c.hard ? " violations" : " findings") << '\n';
  }
}

int cmd_dim(const Common& c, const ClassArgs& ca, bool as_json) {
  const hirz::SurfaceContext ctx(ca.e, ca.r);
  const auto d = build_class(ca);
  const auto rep = hirz::generic_dimension(ctx, d, run_config(c, "dim").oracle());
  if (as_json) {
    auto j = hirz::to_json(rep);
    j["v"] = hirz::virtual_dim(ctx, d);
    std::cout << j.dump() << '\n';
    return kExitOk;
  }
  std::cout << "class " << d.to_string() << " on F_{" << ctx.e << "," << ctx.r << "}\n"
            << "v = " << hirz::virtual_dim(ctx, d) << '\n'
            << "e_dim = " << rep.expected_dim << '\n'
            << "dim = " << rep.computed_dim << '\n'
            << "h0_ambient = " << rep.h0_ambient << "  rank = " << rep.rank << '\n'
            << "certified_nonspecial = " << (rep.certified_nonspecial ? "true" : "false") << '\n'
            << "special = " << (rep.special() ? "true" : "false") << '\n';
  return kExitOk;
}

std::pair<std::int64_t, std::int64_t> parse_catalog_bound(const std::string& s, const hirz::SurfaceContext& ctx,
                                                          const hirz::DivisorClass* d) {
  if (s.empty()) {
    if (!d) throw UsageError("--bound A,B is required");
    return {d->a, d->b + ctx.e * d->a};
  }
  const auto v = parse_nonneg_list(s, "--bound");
  if (v.size() != 2) throw UsageError("--bound expects A,B");
  return {v[0], v[1]};
}

int cmd_reduce(const Common& c, const ClassArgs& ca, const std::string& bound, bool as_json) {
  const hirz::SurfaceContext ctx(ca.e, ca.r);
  const auto d = build_class(ca);
  const auto [am, bm] = parse_catalog_bound(bound, ctx, &d);
  const auto opts = run_config(c, "reduce").oracle();
  if (!hirz::is_effective(ctx, d, opts)) {
    std::cout << "class " << d.to_string() << " is not effective; nothing to reduce\n";
    return kExitOk;
  }
  const auto catalog = hirz::enumerate_minus_one_classes(ctx, am, bm, opts);
  const auto res = hirz::is_minus_one_special(ctx, d, catalog);
  if (as_json) {
    auto j = hirz::to_json(res.trace);
    j["minus_one_special"] = res.minus_one_special;
    std::cout << j.dump() << '\n';
    return kExitOk;
  }
  std::cout << "start " << d.to_string() << "  v = " << hirz::virtual_dim(ctx, d) << '\n';
  for (std::size_t i = 0; i < res.trace.steps.size(); ++i) {
    const auto& s = res.trace.steps[i];
    std::cout << "step " << i + 1 << ": " << hirz::to_string(s.kind) << " remove " << s.multiple << " x "
              << s.class_removed.to_string() << "  (pairing " << s.pairing << ", v " << s.v_before << " -> "
              << s.v_after << ")\n";
  }
  std::cout << "residual " << res.trace.residual.to_string() << "  v = " << hirz::virtual_dim(ctx, res.trace.residual)
            << '\n'
            << "minus_one_special = " << (res.minus_one_special ? "true" : "false") << '\n';
  return kExitOk;
}

int cmd_negcurves(const Common& c, int e, int r, const std::string& bound, const std::string& out) {
  const hirz::SurfaceContext ctx(e, r);
  const auto [am, bm] = parse_catalog_bound(bound, ctx, nullptr);
  const auto catalog = hirz::enumerate_minus_one_classes(ctx, am, bm, run_config(c, "negcurves").oracle());
  for (std::size_t i = 0; i < catalog.classes.size(); ++i)
    std::cout << catalog.classes[i].to_string() << "  " << hirz::to_string(catalog.certified[i]) << '\n';
  for (const auto& x : catalog.excluded) {
    std::cout << "excluded " << x.divisor.to_string() << "  " << x.reason;
    if (x.witness) std::cout << " (meets " << x.witness->to_string() << " negatively)";
    std::cout << '\n';
  }
  std::cout << catalog.classes.size() << " classes, " << catalog.excluded.size() << " excluded\n";
  write_file(out, hirz::catalog_to_jsonl(catalog));
  return kExitOk;
}

struct SweepArgs {
  std::string e_list;
  std::string r_max = "e+4";
  int r_min = 0;
  std::string box;
  std::string out;
  std::string csv;
};

int cmd_sweep(const Common& c, const SweepArgs& s) {
  hirz::SweepConfig cfg;
  for (auto v : parse_nonneg_list(s.e_list, "--e")) cfg.e_values.push_back(static_cast<int>(v));
  if (cfg.e_values.empty()) throw UsageError("--e needs at least one value");
  cfg.r_max = parse_bound_rule(s.r_max, "--r-max");
  cfg.r_min = s.r_min;
  cfg.box = parse_box(s.box);
  auto rc = run_config(c, "sweep");
  cfg.oracle = rc.oracle();
  cfg.jobs = c.jobs;
  rc.arguments = {{"e", cfg.e_values},         {"r_min", s.r_min},   {"r_max", s.r_max},
                  {"box", s.box}};
  for (int e : cfg.e_values) {
    const auto [am, bm] = hirz::catalog_bounds(e, cfg.box);
    rc.arguments["catalog_bounds"][std::to_string(e)] = {am, bm};
  }
  rc.jsonl_path = s.out;
  rc.csv_path = s.csv;
  const auto records = hirz::sweep(cfg);
  write_file(s.out, hirz::records_to_jsonl(rc, records));
  write_file(s.csv, hirz::records_to_csv(records));
  const auto summary = hirz::summarize(records);
  print_checks(summary);
  return summary.passed() ? kExitOk : kExitAssertion;
}

struct VerifyArgs {
  std::string theorem;
  int e = 1;
  int r = -1;
  std::string box = "3,e+4,3";
  int e_max = 6;
  int a_max = 6;
  int m_max = 20;
  std::string r_max = "e+4";
  std::string out;
};

int cmd_verify(const Common& c, const VerifyArgs& v) {
  const auto opts = run_config(c, "verify").oracle();
  if (v.theorem == "lattice") {
    const auto rep = hirz::orthogonality_lattice_scan(v.e_max, v.a_max, v.m_max, parse_bound_rule(v.r_max, "--r-max"));
    std::cout << rep.candidates << " candidates examined, " << rep.solutions.size() << " solutions\n";
    for (const auto& [ctx, d] : rep.solutions)
      std::cout << "solution e=" << ctx.e << " r=" << ctx.r << " " << d.to_string() << '\n';
    const bool proven = parse_bound_rule(v.r_max, "--r-max") == hirz::BoundRule::e_plus(4);
    return proven && !rep.solutions.empty() ? kExitAssertion : kExitOk;
  }
  const auto box = parse_box(v.box);
  if (v.theorem == "e4") {
    const auto rep = hirz::verify_theorem_e_plus_4(v.e, box, opts, c.jobs);
    auto rc = run_config(c, "verify");
    rc.arguments = {{"theorem", v.theorem}, {"e", v.e}, {"box", v.box}};
    rc.jsonl_path = v.out;
    write_file(v.out, hirz::records_to_jsonl(rc, rep.records));
    print_checks(rep.summary);
    std::cout << rep.counterexamples.size() << " counterexamples\n";
    for (const auto& r : rep.counterexamples) std::cout << hirz::to_json(r).dump() << '\n';
    return rep.summary.passed() ? kExitOk : kExitAssertion;
  }
  if (v.r < 0) throw UsageError("--r is required for --theorem " + v.theorem);
  if (v.theorem == "equivalence") {
    const auto rep = hirz::verify_minus_one_equivalence(v.e, v.r, box, opts, c.jobs);
    std::cout << rep.examined << " effective classes examined\n"
              << rep.violations.size() << " violations of (-1)-special => special\n"
              << rep.findings.size() << " classes special but not (-1)-special"
              << (rep.converse_proven ? "" : " (findings; outside r <= e+4)") << '\n';
    for (const auto& r : rep.violations) std::cout << "violation " << hirz::to_json(r).dump() << '\n';
    for (const auto& r : rep.findings) std::cout << "finding " << hirz::to_json(r).dump() << '\n';
    return rep.passed() ? kExitOk : kExitAssertion;
  }
  if (v.theorem == "vanishing") {
    const auto rep = hirz::anticanonical_vanishing_check(v.e, v.r, box, opts, c.jobs);
    std::cout << rep.examined << " nef effective classes with -K.D >= 1 examined, " << rep.skipped << " skipped, "
              << rep.violations.size() << " violations\n";
    for (const auto& r : rep.violations) std::cout << "violation " << hirz::to_json(r).dump() << '\n';
    return rep.passed() ? kExitOk : kExitAssertion;
  }
  throw UsageError("unknown --theorem '" + v.theorem + "' (e4, equivalence, vanishing, lattice)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear systems with fat points on blown-up Hirzebruch surfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hirz::kToolVersion));

  Common common;
  ClassArgs cls;
  bool as_json = false;
  std::string bound;
  std::string out;
  SweepArgs sargs;
  VerifyArgs vargs;
  int neg_e = 0, neg_r = 0;

  auto* dim = app.add_subcommand("dim", "dimension of |aH + bF - sum m_i E_i| at very general points");
  add_common(dim, common);
  add_class(dim, cls);
  dim->add_flag("--json", as_json, "print the report as JSON");

  auto* red = app.add_subcommand("reduce", "strip negatively-met (-1)-curves and C_e, print the trace");
  add_common(red, common);
  add_class(red, cls);
  red->add_option("--bound", bound, "catalog bounds A,B (default a, b + e*a)");
  red->add_flag("--json", as_json, "print the trace as JSON");

  auto* neg = app.add_subcommand("negcurves", "certified (-1)-classes in a box");
  add_common(neg, common);
  neg->add_option("--e", neg_e, "Hirzebruch invariant")->required()->check(CLI::NonNegativeNumber);
  neg->add_option("--r", neg_r, "number of points")->required()->check(CLI::NonNegativeNumber);
  neg->add_option("--bound", bound, "A,B: 0 <= a <= A, 0 <= b <= B")->required();
  neg->add_option("--out", out, "write the catalog as JSONL");

  auto* sw = app.add_subcommand("sweep", "classify every class in a box; write JSONL and CSV");
  add_common(sw, common);
  add_jobs(sw, common);
  sw->add_option("--e", sargs.e_list, "comma-separated e values")->required();
  sw->add_option("--r-max", sargs.r_max, "largest r: an integer or e+K")->capture_default_str();
  sw->add_option("--r-min", sargs.r_min, "smallest r")->check(CLI::NonNegativeNumber);
  sw->add_option("--box", sargs.box, "A,B,M bounds for a, b, m_i (B may be e+K)")->required();
  sw->add_option("--out", sargs.out, "JSONL output path");
  sw->add_option("--csv", sargs.csv, "CSV output path");

  auto* ver = app.add_subcommand("verify", "run one of the theorem checks");
  add_common(ver, common);
  add_jobs(ver, common);
  ver->add_option("--theorem", vargs.theorem, "e4 | equivalence | vanishing | lattice")->required();
  ver->add_option("--e", vargs.e, "Hirzebruch invariant")->check(CLI::NonNegativeNumber);
  ver->add_option("--r", vargs.r, "number of points (equivalence, vanishing)")->check(CLI::NonNegativeNumber);
  ver->add_option("--box", vargs.box, "A,B,M (B may be e+K)")->capture_default_str();
  ver->add_option("--e-max", vargs.e_max, "lattice: largest e")->check(CLI::NonNegativeNumber);
  ver->add_option("--a-max", vargs.a_max, "lattice: largest a")->check(CLI::NonNegativeNumber);
  ver->add_option("--m-max", vargs.m_max, "lattice: largest m_i")->check(CLI::NonNegativeNumber);
  ver->add_option("--r-max", vargs.r_max, "lattice: largest r, integer or e+K")->capture_default_str();
  ver->add_option("--out", vargs.out, "e4: JSONL output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*dim) return cmd_dim(common, cls, as_json);
    if (*red) return cmd_reduce(common, cls, bound, as_json);
    if (*neg) return cmd_negcurves(common, neg_e, neg_r, bound, out);
    if (*sw) return cmd_sweep(common, sargs);
    if (*ver) return cmd_verify(common, vargs);
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const hirz::ContractViolation& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitAssertion;
  }
  return kExitUsage;
}

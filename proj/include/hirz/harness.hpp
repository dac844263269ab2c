// Sweeps over boxes of fat-point classes and the checks run on them.
//
// Theorem-backed checks (non-speciality of nef classes for r <= e+4,
// (-1)-special implies special, fixed components preserve dimension, the
// anticanonical vanishing, the lattice obstruction) are hard: a violation
// means a bug. The converse direction special => (-1)-special outside the
// proven range is recorded as a finding.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hirz/curves.hpp"
#include "hirz/lattice.hpp"
#include "hirz/oracle.hpp"
#include "hirz/reduction.hpp"

namespace hirz {

/// value = base + e_coeff * e. Covers both constants and "e + 4".
struct BoundRule {
  int base = 0;
  int e_coeff = 0;

  static BoundRule constant(int c) { return {c, 0}; }
  static BoundRule e_plus(int c) { return {c, 1}; }
  [[nodiscard]] int at(int e) const { return base + e_coeff * e; }
  friend bool operator==(const BoundRule&, const BoundRule&) = default;
};

struct SweepBox {
  int a_max = 0;
  BoundRule b_max;
  int m_max = 0;
};

struct SweepConfig {
  std::vector<int> e_values;
  BoundRule r_max = BoundRule::e_plus(4);
  int r_min = 0;
  SweepBox box;
  OracleOptions oracle;
  unsigned jobs = 1;
};

/// One classified class. oracle_dim, special and minus_one_special are
/// meaningful only when effective.
struct SweepRecord {
  int e = 0;
  int r = 0;
  DivisorClass divisor;
  bool effective = false;
  NefVerdict nef = NefVerdict::unknown;
  std::optional<DivisorClass> nef_witness;
  std::int64_t v = 0;
  std::int64_t e_dim = -1;
  std::int64_t oracle_dim = -1;
  std::int64_t minus_k_degree = 0;
  bool special = false;
  bool minus_one_special = false;
  std::int64_t trace_id = -1;
  std::optional<ReductionTrace> trace;
  std::optional<std::int64_t> residual_dim;
  std::optional<std::string> reduction_error;
  /// Oracle dimension of D - C~_e, computed for effective nef-certified D.
  std::optional<std::int64_t> minus_ce_dim;
  std::vector<std::uint64_t> seeds;
};

/// Runs fn(i) for i in [0, n) on up to `jobs` threads; results keep index
/// order, so the output does not depend on scheduling.
template <class Fn>
auto parallel_map(std::size_t n, unsigned jobs, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Non-increasing vectors of length r with entries in [0, m_max], in
/// lexicographic order. One representative per reordering of the points.
inline std::vector<std::vector<std::int64_t>> multiplicity_vectors(int r, int m_max) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  auto rec = [&](auto&& self, std::int64_t cap) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= cap; ++v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  rec(rec, m_max);
  std::sort(out.begin(), out.end());
  return out;
}

/// Catalog box that dominates every class of the sweep box.
inline std::pair<std::int64_t, std::int64_t> catalog_bounds(int e, const SweepBox& box) {
  return {box.a_max, static_cast<std::int64_t>(box.b_max.at(e)) + static_cast<std::int64_t>(e) * box.a_max};
}

/// Classifies one class against a prebuilt catalog.
inline SweepRecord classify(const SurfaceContext& ctx, const DivisorClass& d, const MinusOneClassSet& catalog,
                            const OracleOptions& oracle) {
  SweepRecord rec;
  rec.e = ctx.e;
  rec.r = ctx.r;
  rec.divisor = d;
  rec.v = virtual_dim(ctx, d);
  rec.e_dim = expected_dim(ctx, d);
  rec.minus_k_degree = -canonical_degree(ctx, d);
  rec.seeds = oracle.seeds();

  const auto rep = generic_dimension(ctx, d, oracle);
  rec.oracle_dim = rep.computed_dim;
  rec.effective = rep.effective();
  rec.special = rec.effective && rep.computed_dim > rec.e_dim;

  const auto nef = is_nef_certified(ctx, d, catalog);
  rec.nef = nef.verdict;
  rec.nef_witness = nef.witness;
  if (!rec.effective) return rec;

  try {
    auto res = is_minus_one_special(ctx, d, catalog);
    rec.minus_one_special = res.minus_one_special;
    if (!res.trace.steps.empty()) rec.residual_dim = generic_dimension(ctx, res.trace.residual, oracle).computed_dim;
    rec.trace = std::move(res.trace);
  } catch (const ReductionError& err) {
    rec.reduction_error = err.what();
    rec.trace = err.partial();
  }

  const auto ce = strict_transform_ce(ctx);
  if (rec.nef == NefVerdict::certified && d.a >= 1) {
    rec.minus_ce_dim = generic_dimension(ctx, d - ce, oracle).computed_dim;
  }
  return rec;
}

inline std::vector<SweepRecord> sweep(const SweepConfig& cfg) {
  if (cfg.box.a_max < 0 || cfg.box.m_max < 0) throw ContractViolation("sweep bounds must be non-negative");
  struct Item {
    std::size_t surface;
    DivisorClass d;
  };
  std::vector<SurfaceContext> surfaces;
  for (int e : cfg.e_values) {
    for (int r = std::max(0, cfg.r_min); r <= cfg.r_max.at(e); ++r) surfaces.emplace_back(e, r);
  }
  const auto catalogs = parallel_map(surfaces.size(), cfg.jobs, [&](std::size_t i) {
    const auto [am, bm] = catalog_bounds(surfaces[i].e, cfg.box);
    return enumerate_minus_one_classes(surfaces[i], am, bm, cfg.oracle);
  });

  std::vector<Item> items;
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const auto& ctx = surfaces[s];
    const int b_max = cfg.box.b_max.at(ctx.e);
    if (b_max < 0) throw ContractViolation("sweep b bound is negative");
    const auto ms = multiplicity_vectors(ctx.r, cfg.box.m_max);
    for (std::int64_t a = 0; a <= cfg.box.a_max; ++a)
      for (std::int64_t b = 0; b <= b_max; ++b)
        for (const auto& m : ms) items.push_back({s, DivisorClass(a, b, m)});
  }

  auto records = parallel_map(items.size(), cfg.jobs, [&](std::size_t i) {
    return classify(surfaces[items[i].surface], items[i].d, catalogs[items[i].surface], cfg.oracle);
  });
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].trace) records[i].trace_id = static_cast<std::int64_t>(i);
  }
  return records;
}

/// One named check over a set of records.
struct CheckResult {
  std::string name;
  bool hard = true;
  std::size_t examined = 0;
  std::vector<std::size_t> violations{};  // indices into the record list

  [[nodiscard]] bool passed() const { return !hard || violations.empty(); }
};

struct SweepSummary {
  std::size_t records = 0;
  std::size_t effective = 0;
  std::size_t nef_certified = 0;
  std::size_t nef_unknown = 0;
  std::size_t special = 0;
  std::size_t minus_one_special = 0;
  std::size_t reduction_errors = 0;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
  }
  [[nodiscard]] const CheckResult& check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw ContractViolation("no check named " + name);
  }
};

namespace checks {

inline constexpr const char* kConsistency = "record_consistency";
inline constexpr const char* kDimensionChain = "dimension_chain";
inline constexpr const char* kNefNonSpecial = "nef_effective_nonspecial";
inline constexpr const char* kMinusOneImpliesSpecial = "minus_one_special_implies_special";
inline constexpr const char* kDimensionInvariance = "residual_dimension_invariance";
inline constexpr const char* kAnticanonicalVanishing = "anticanonical_vanishing";
inline constexpr const char* kCeFixedComponent = "ce_fixed_component_nonspecial";
inline constexpr const char* kTraceInvariants = "trace_invariants";
inline constexpr const char* kSpecialImpliesMinusOne = "special_implies_minus_one_special";

}  // namespace checks

inline bool trace_is_sound(const SurfaceContext& ctx, const ReductionTrace& t) {
  if (!telescopes(t)) return false;
  for (const auto& s : t.steps) {
    if (s.multiple <= 0 || s.pairing >= 0) return false;
    const auto delta = s.v_after - s.v_before;
    if (delta < 0) return false;
    if (s.kind == StepKind::minus_one_curve) {
      if (s.multiple != -s.pairing || delta != (s.multiple * s.multiple - s.multiple) / 2) return false;
    } else {
      if (s.multiple != 1 || delta != -s.pairing - 1) return false;
    }
  }
  (void)ctx;
  return true;
}

inline SweepSummary summarize(const std::vector<SweepRecord>& recs) {
  SweepSummary sum;
  sum.records = recs.size();
  CheckResult consistency{checks::kConsistency};
  CheckResult chain{checks::kDimensionChain};
  CheckResult nef_ns{checks::kNefNonSpecial};
  CheckResult implies_special{checks::kMinusOneImpliesSpecial};
  CheckResult invariance{checks::kDimensionInvariance};
  CheckResult vanishing{checks::kAnticanonicalVanishing};
  CheckResult ce_fixed{checks::kCeFixedComponent};
  CheckResult traces{checks::kTraceInvariants};
  CheckResult converse{checks::kSpecialImpliesMinusOne, false};
  CheckResult converse_proven{std::string(checks::kSpecialImpliesMinusOne) + "_within_e_plus_4"};

  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    const SurfaceContext ctx(r.e, r.r);
    const bool proven_range = ctx.within_e_plus_4();
    sum.effective += r.effective;
    sum.nef_certified += r.nef == NefVerdict::certified;
    sum.nef_unknown += r.nef == NefVerdict::unknown;
    sum.special += r.special;
    sum.minus_one_special += r.minus_one_special;
    sum.reduction_errors += r.reduction_error.has_value();

    ++consistency.examined;
    if (r.e_dim != std::max<std::int64_t>(r.v, -1) || r.special != (r.effective && r.oracle_dim > r.e_dim) ||
        r.effective != (r.oracle_dim >= 0) || (r.minus_one_special && !r.effective))
      consistency.violations.push_back(i);

    if (!r.effective) continue;
    ++chain.examined;
    if (!(r.oracle_dim >= r.e_dim && r.e_dim >= r.v)) chain.violations.push_back(i);

    if (r.nef == NefVerdict::certified && proven_range) {
      ++nef_ns.examined;
      if (r.oracle_dim != r.e_dim) nef_ns.violations.push_back(i);
      if (r.minus_k_degree >= 1) {
        ++vanishing.examined;
        if (r.oracle_dim != r.v) vanishing.violations.push_back(i);
      }
      if (r.minus_ce_dim && *r.minus_ce_dim >= 0) {
        ++ce_fixed.examined;
        if (r.oracle_dim != r.e_dim) ce_fixed.violations.push_back(i);
      }
    }

    if (r.reduction_error) continue;
    ++implies_special.examined;
    if (r.minus_one_special && !r.special) implies_special.violations.push_back(i);

    if (r.trace) {
      ++traces.examined;
      if (!trace_is_sound(ctx, *r.trace)) traces.violations.push_back(i);
    }
    if (r.residual_dim) {
      ++invariance.examined;
      if (*r.residual_dim != r.oracle_dim) invariance.violations.push_back(i);
    }
    auto& conv = proven_range ? converse_proven : converse;
    ++conv.examined;
    if (r.special && !r.minus_one_special) conv.violations.push_back(i);
  }
  sum.checks = {consistency, chain,    nef_ns, implies_special,    invariance,
                vanishing,   ce_fixed, traces, converse, converse_proven};
  return sum;
}

/// Non-speciality of effective nef classes for r <= e+4.
struct TheoremReport {
  int e = 0;
  SweepSummary summary;
  std::vector<SweepRecord> counterexamples;
  std::vector<SweepRecord> records;
};

inline TheoremReport verify_theorem_e_plus_4(int e, const SweepBox& box, const OracleOptions& oracle,
                                             unsigned jobs = 1) {
  SweepConfig cfg{{e}, BoundRule::e_plus(4), 0, box, oracle, jobs};
  TheoremReport rep;
  rep.e = e;
  rep.records = sweep(cfg);
  rep.summary = summarize(rep.records);
  for (auto i : rep.summary.check(checks::kNefNonSpecial).violations) rep.counterexamples.push_back(rep.records[i]);
  return rep;
}

/// special <=> (-1)-special on effective classes of one surface.
struct EquivalenceReport {
  SurfaceContext ctx;
  std::size_t examined = 0;
  /// (-1)-special but not special: contradicts a theorem.
  std::vector<SweepRecord> violations;
  /// special but not (-1)-special: contradicts the conjecture.
  std::vector<SweepRecord> findings;
  /// True when findings must be empty because r <= e+4.
  bool converse_proven = false;
  [[nodiscard]] bool passed() const { return violations.empty() && (!converse_proven || findings.empty()); }
};

inline EquivalenceReport verify_minus_one_equivalence(int e, int r, const SweepBox& box, const OracleOptions& oracle,
                                                   unsigned jobs = 1) {
  SweepConfig cfg{{e}, BoundRule::constant(r), r, box, oracle, jobs};
  const auto records = sweep(cfg);
  EquivalenceReport rep;
  rep.ctx = SurfaceContext(e, r);
  rep.converse_proven = rep.ctx.within_e_plus_4();
  for (const auto& rec : records) {
    if (!rec.effective || rec.reduction_error) continue;
    ++rep.examined;
    if (rec.minus_one_special && !rec.special) rep.violations.push_back(rec);
    if (rec.special && !rec.minus_one_special) rep.findings.push_back(rec);
  }
  return rep;
}

/// For nef effective D with -K.D >= 1 on an anticanonical surface, h^1 = 0,
/// so oracle_dim = v(D).
struct VanishingReport {
  SurfaceContext ctx;
  std::size_t examined = 0;
  std::size_t skipped = 0;
  std::vector<SweepRecord> violations;
  [[nodiscard]] bool passed() const { return violations.empty(); }
};

inline VanishingReport anticanonical_vanishing_check(int e, int r, const SweepBox& box, const OracleOptions& oracle,
                                                 unsigned jobs = 1) {
  if (r > e + 5) throw ContractViolation("anticanonical range requires r <= e + 5");
  SweepConfig cfg{{e}, BoundRule::constant(r), r, box, oracle, jobs};
  const auto records = sweep(cfg);
  VanishingReport rep;
  rep.ctx = SurfaceContext(e, r);
  for (const auto& rec : records) {
    if (!rec.effective || rec.nef != NefVerdict::certified) continue;
    if (rec.minus_k_degree < 1) {
      ++rep.skipped;
      continue;
    }
    ++rep.examined;
    if (rec.oracle_dim != rec.v) rep.violations.push_back(rec);
  }
  return rep;
}

/// Searches for (a, ae, m) with a >= 1, m_i in [0, m_max], satisfying
/// sum m_i = a(e+2) and sum m_i^2 <= a^2 e. Only multisets are examined;
/// both conditions are symmetric in the m_i.
struct LatticeScanReport {
  std::size_t candidates = 0;
  std::vector<std::pair<SurfaceContext, DivisorClass>> solutions;
};

inline LatticeScanReport orthogonality_lattice_scan(int e_max, int a_max, int m_max, BoundRule r_max = BoundRule::e_plus(4),
                                             int e_min = 1) {
  LatticeScanReport rep;
  std::vector<std::int64_t> parts;
  for (int e = e_min; e <= e_max; ++e) {
    for (int r = 0; r <= r_max.at(e); ++r) {
      for (std::int64_t a = 1; a <= a_max; ++a) {
        const std::int64_t target_sum = a * (e + 2);
        const std::int64_t square_cap = a * a * e;
        auto rec = [&](auto&& self, std::int64_t s, std::int64_t q, int slots, std::int64_t cap) -> void {
          if (slots == 0) {
            if (s == 0) {
              ++rep.candidates;
              if (q <= square_cap) {
                std::vector<std::int64_t> m = parts;
                rep.solutions.emplace_back(SurfaceContext(e, r), DivisorClass(a, a * e, m));
              }
            }
            return;
          }
          for (std::int64_t v = std::min(cap, s); v >= 0; --v) {
            if (v * slots < s) break;
            parts.push_back(v);
            self(self, s - v, q + v * v, slots - 1, v);
            parts.pop_back();
          }
        };
        rec(rec, target_sum, 0, r, m_max);
      }
    }
  }
  return rep;
}

}  // namespace hirz

// Distinguished classes on F_{e,r}, (-1)-classes and the bounded nef test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hirz/lattice.hpp"
#include "hirz/oracle.hpp"

namespace hirz {

/// Strict transform of the negative section C_e: the class H.
inline DivisorClass strict_transform_ce(const SurfaceContext& ctx) { return DivisorClass::H(ctx.r); }

/// C' = H + (e+2)F - sum E_i, so that -K = C~_e + C'.
inline DivisorClass anticanonical_complement(const SurfaceContext& ctx) {
  return {1, static_cast<std::int64_t>(ctx.e) + 2, std::vector<std::int64_t>(static_cast<std::size_t>(ctx.r), 1)};
}

/// Numerical (-1)-class: D.D = -1 and K.D = -1.
inline bool is_minus_one_class(const SurfaceContext& ctx, const DivisorClass& d) {
  return self_intersection(ctx, d) == -1 && canonical_degree(ctx, d) == -1;
}

/// All numerical (-1)-classes with 0 <= a <= a_max, 0 <= b <= b_max and
/// m_i >= 0, together with the exceptional classes E_i. Sorted.
///
/// K.D = -1 fixes sum m_i = 2b - (e-2)a - 1 and D.D = -1 fixes
/// sum m_i^2 = 2ab - e*a^2 + 1, so each (a, b) slice is a search for
/// multisets with prescribed sum and sum of squares.
inline std::vector<DivisorClass> enumerate_numerical_minus_one(const SurfaceContext& ctx, std::int64_t a_max,
                                                               std::int64_t b_max) {
  if (a_max < 0 || b_max < 0) throw ContractViolation("enumeration bounds must be non-negative");
  std::vector<DivisorClass> out;
  for (int i = 0; i < ctx.r; ++i) out.push_back(DivisorClass::E(ctx.r, i));

  const std::int64_t r = ctx.r;
  std::vector<std::int64_t> parts;
  // Non-increasing parts, each <= cap, summing to s with squares summing to q.
  auto search = [&](auto&& self, std::int64_t s, std::int64_t q, std::int64_t slots, std::int64_t cap,
                    const auto& emit) -> void {
    if (s == 0) {
      if (q == 0) emit();
      return;
    }
    if (slots == 0 || q < s || checked::mul(s, s) > checked::mul(slots, q)) return;
    for (std::int64_t v = std::min(cap, s); v >= 1; --v) {
      if (v * v > q) continue;
      if (v * slots < s) break;
      parts.push_back(v);
      self(self, s - v, q - v * v, slots - 1, v, emit);
      parts.pop_back();
    }
  };

  for (std::int64_t a = 0; a <= a_max; ++a) {
    for (std::int64_t b = 0; b <= b_max; ++b) {
      const std::int64_t s = 2 * b - (ctx.e - 2) * a - 1;
      const std::int64_t q = 2 * a * b - ctx.e * a * a + 1;
      if (s < 0 || q < 0) continue;
      search(search, s, q, r, s, [&] {
        std::vector<std::int64_t> m(static_cast<std::size_t>(r), 0);
        std::copy(parts.begin(), parts.end(), m.begin());
        std::sort(m.begin(), m.end());
        do {
          out.emplace_back(a, b, m);
        } while (std::next_permutation(m.begin(), m.end()));
      });
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

enum class Certification { closed_form, oracle };

inline const char* to_string(Certification c) { return c == Certification::closed_form ? "closed_form" : "oracle"; }

struct ExcludedClass {
  DivisorClass divisor;
  std::string reason;                   // "not_effective", "not_rigid" or "reducible"
  std::optional<DivisorClass> witness;  // negative partner for "reducible"
  std::int64_t oracle_dim = -1;
};

/// (-1)-classes in a box whose effectivity was certified, plus a log of the
/// numerical candidates that were rejected.
struct MinusOneClassSet {
  SurfaceContext ctx;
  std::int64_t a_max = 0;
  std::int64_t b_max = 0;
  std::vector<DivisorClass> classes;
  std::vector<Certification> certified;
  std::vector<ExcludedClass> excluded;
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> seeds;

  [[nodiscard]] std::size_t size() const { return classes.size(); }
  [[nodiscard]] bool contains(const DivisorClass& d) const {
    return std::binary_search(classes.begin(), classes.end(), d);
  }
  /// Bounds large enough for any negative curve meeting D negatively.
  [[nodiscard]] bool dominates(const DivisorClass& d) const {
    return a_max >= d.a && b_max >= checked::add(d.b, checked::mul(ctx.e, d.a));
  }
};

/// Certifies each numerical (-1)-class in the box. Candidates are examined
/// in an order where every possible component of a class comes before it:
/// increasing a + b, then decreasing sum m_i. A candidate is kept when it is
/// effective with a unique member, meets C~_e non-negatively (unless it is
/// C~_e), and meets every kept class that could be a component of it
/// non-negatively. The exceptional curves E_i are kept in closed form.
inline MinusOneClassSet enumerate_minus_one_classes(const SurfaceContext& ctx, std::int64_t a_max,
                                                    std::int64_t b_max, const OracleOptions& opts = {}) {
  auto candidates = enumerate_numerical_minus_one(ctx, a_max, b_max);
  auto key = [](const DivisorClass& d) { return std::tuple(d.a + d.b, -d.m_sum(), d); };
  std::sort(candidates.begin(), candidates.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });

  MinusOneClassSet set;
  set.ctx = ctx;
  set.a_max = a_max;
  set.b_max = b_max;
  set.prime = opts.prime;
  set.seeds = opts.seeds();
  const auto ce = strict_transform_ce(ctx);

  std::vector<std::pair<DivisorClass, Certification>> kept;
  for (auto& cand : candidates) {
    if (!cand.in_fat_point_range()) {
      kept.emplace_back(cand, Certification::closed_form);
      continue;
    }
    const auto rep = generic_dimension(ctx, cand, opts);
    if (rep.computed_dim < 0) {
      set.excluded.push_back({cand, "not_effective", std::nullopt, rep.computed_dim});
      continue;
    }
    if (rep.computed_dim > 0) {
      set.excluded.push_back({cand, "not_rigid", std::nullopt, rep.computed_dim});
      continue;
    }
    std::optional<DivisorClass> witness;
    if (cand != ce && intersect(ctx, cand, ce) < 0) witness = ce;
    for (const auto& [other, how] : kept) {
      if (witness) break;
      if (other.a <= cand.a && other.b <= cand.b && intersect(ctx, cand, other) < 0) witness = other;
    }
    if (witness) {
      set.excluded.push_back({cand, "reducible", witness, rep.computed_dim});
      continue;
    }
    kept.emplace_back(cand, Certification::oracle);
  }

  std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [d, how] : kept) {
    set.classes.push_back(std::move(d));
    set.certified.push_back(how);
  }
  std::sort(set.excluded.begin(), set.excluded.end(),
            [](const auto& x, const auto& y) { return x.divisor < y.divisor; });
  return set;
}

enum class NefVerdict { certified, no, unknown };

inline const char* to_string(NefVerdict v) {
  switch (v) {
    case NefVerdict::certified: return "certified";
    case NefVerdict::no: return "no";
    case NefVerdict::unknown: return "unknown";
  }
  return "unknown";
}

struct NefStatus {
  NefVerdict verdict = NefVerdict::unknown;
  std::optional<DivisorClass> witness;
};

/// Pairs D with C~_e and every catalog class. A certificate is issued only
/// where the negative curves are known to be (-1)-curves or C~_e
/// (r <= e+4) and the catalog box dominates D.
inline NefStatus is_nef_certified(const SurfaceContext& ctx, const DivisorClass& d, const MinusOneClassSet& catalog) {
  require_belongs(ctx, d);
  if (catalog.ctx != ctx) throw ContractViolation("catalog belongs to a different surface");
  const auto ce = strict_transform_ce(ctx);
  if (intersect(ctx, d, ce) < 0) return {NefVerdict::no, ce};
  for (const auto& c : catalog.classes) {
    if (intersect(ctx, d, c) < 0) return {NefVerdict::no, c};
  }
  if (ctx.within_e_plus_4() && catalog.dominates(d)) return {NefVerdict::certified, std::nullopt};
  return {NefVerdict::unknown, std::nullopt};
}

}  // namespace hirz

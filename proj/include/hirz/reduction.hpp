// Stripping fixed (-1)-curves and C~_e from an effective class.
//
// Loop: while some catalog (-1)-class E has D.E = -t < 0 replace D by
// D - tE; then if D.C~_e < 0 replace D by D - C~_e and start over; stop when
// both kinds of pairing are non-negative. Every removed curve is a fixed
// component, so dim|D| is unchanged along the way, while v can only grow:
//
//     v(D - tE)    = v(D) + (t^2 - t)/2
//     v(D - C~_e)  = v(D) - D.C~_e - 1
//
// D is (-1)-special when v of the residual exceeds v(D).
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hirz/curves.hpp"
#include "hirz/lattice.hpp"

namespace hirz {

enum class StepKind { minus_one_curve, strict_transform_ce };

inline const char* to_string(StepKind k) {
  return k == StepKind::minus_one_curve ? "minus_one_curve" : "strict_transform_Ce";
}

struct ReductionStep {
  StepKind kind = StepKind::minus_one_curve;
  DivisorClass class_removed;
  std::int64_t multiple = 0;
  /// D.class_removed just before the removal (negative).
  std::int64_t pairing = 0;
  std::int64_t v_before = 0;
  std::int64_t v_after = 0;
};

struct ReductionTrace {
  DivisorClass start;
  std::vector<ReductionStep> steps;
  DivisorClass residual;
  /// Set when a larger catalog later shows the residual is not nef.
  bool stale = false;
};

/// Raised when an intermediate class leaves the non-negative range or the
/// iteration cap is hit. Carries the partial trace.
class ReductionError : public std::runtime_error {
 public:
  ReductionError(const std::string& what, ReductionTrace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  [[nodiscard]] const ReductionTrace& partial() const { return partial_; }

 private:
  ReductionTrace partial_;
};

/// Order in which negatively-paired catalog classes are tried.
/// Lexicographic is the default; the others exist to probe whether the
/// residual depends on the order.
struct RemovalOrder {
  enum class Policy { lexicographic, reverse_lexicographic, shuffled } policy = Policy::lexicographic;
  std::uint64_t seed = 0;

  static RemovalOrder lexicographic() { return {}; }
  static RemovalOrder reversed() { return {Policy::reverse_lexicographic, 0}; }
  static RemovalOrder shuffled(std::uint64_t seed) { return {Policy::shuffled, seed}; }

  [[nodiscard]] std::vector<std::size_t> permutation(std::size_t n) const {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (policy == Policy::reverse_lexicographic) std::reverse(idx.begin(), idx.end());
    if (policy == Policy::shuffled) {
      detail::SplitMix64 rng(seed);
      for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.next() % i]);
    }
    return idx;
  }
};

inline ReductionTrace reduce(const SurfaceContext& ctx, const DivisorClass& d, const MinusOneClassSet& catalog,
                             const RemovalOrder& order = {}) {
  require_belongs(ctx, d);
  if (catalog.ctx != ctx) throw ContractViolation("catalog belongs to a different surface");
  if (!d.in_fat_point_range()) throw ContractViolation("reduce needs a, b, m_i >= 0, got " + d.to_string());
  if (!catalog.dominates(d))
    throw ContractViolation("catalog bounds (" + std::to_string(catalog.a_max) + ", " +
                            std::to_string(catalog.b_max) + ") do not dominate " + d.to_string());

  const auto ce = strict_transform_ce(ctx);
  const auto perm = order.permutation(catalog.classes.size());
  const std::int64_t cap = std::max<std::int64_t>(1, 10 * (d.a + d.b + d.m_sum()));

  ReductionTrace trace;
  trace.start = d;
  DivisorClass cur = d;

  auto remove = [&](StepKind kind, const DivisorClass& c, std::int64_t pairing, std::int64_t t) {
    ReductionStep step{kind, c, t, pairing, virtual_dim(ctx, cur), 0};
    cur -= t * c;
    step.v_after = virtual_dim(ctx, cur);
    trace.steps.push_back(std::move(step));
    if (!cur.in_fat_point_range()) {
      trace.residual = cur;
      throw ReductionError("reduction of " + d.to_string() + " left the non-negative range at " + cur.to_string() +
                               "; the input is not effective or the catalog is incomplete",
                           trace);
    }
    if (static_cast<std::int64_t>(trace.steps.size()) > cap) {
      trace.residual = cur;
      throw ReductionError("reduction of " + d.to_string() + " exceeded its iteration cap", trace);
    }
  };

  for (;;) {
    bool removed = false;
    for (auto idx : perm) {
      const auto& c = catalog.classes[idx];
      const auto pairing = intersect(ctx, cur, c);
      if (pairing < 0) {
        remove(StepKind::minus_one_curve, c, pairing, -pairing);
        removed = true;
        break;
      }
    }
    if (removed) continue;
    const auto pairing = intersect(ctx, cur, ce);
    if (pairing < 0) {
      remove(StepKind::strict_transform_ce, ce, pairing, 1);
      continue;
    }
    break;
  }
  trace.residual = std::move(cur);
  return trace;
}

struct MinusOneSpecialty {
  bool minus_one_special = false;
  ReductionTrace trace;
};

inline MinusOneSpecialty is_minus_one_special(const SurfaceContext& ctx, const DivisorClass& d,
                                              const MinusOneClassSet& catalog, const RemovalOrder& order = {}) {
  auto trace = reduce(ctx, d, catalog, order);
  const bool special = virtual_dim(ctx, trace.residual) > virtual_dim(ctx, d);
  return {special, std::move(trace)};
}

/// Marks the trace stale if a (typically larger) catalog exposes a
/// negative pairing on the residual. Returns the new flag.
inline bool revalidate(const SurfaceContext& ctx, ReductionTrace& trace, const MinusOneClassSet& catalog) {
  if (is_nef_certified(ctx, trace.residual, catalog).verdict == NefVerdict::no) trace.stale = true;
  return trace.stale;
}

/// start == residual + sum t * class_removed.
inline bool telescopes(const ReductionTrace& trace) {
  DivisorClass acc = trace.residual;
  for (const auto& s : trace.steps) acc += s.multiple * s.class_removed;
  return acc == trace.start;
}

}  // namespace hirz

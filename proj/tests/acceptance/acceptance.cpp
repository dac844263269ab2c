// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hirz/hirz.hpp"

using namespace hirz;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

template <class Fn>
void criterion(int id, const std::string& title, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception& ex) {
    out = {false, std::string("exception: ") + ex.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << out.detail << "; "
            << secs << " s)" << std::endl;
}

const OracleOptions kOracle{kDefaultPrime, 0, 3};

// The sweep shared by criteria 2, 3, 4 and 6.
std::vector<SweepRecord>& main_sweep() {
  static std::vector<SweepRecord> recs = [] {
    std::vector<SweepRecord> all;
    for (int e = 1; e <= 3; ++e) {
      SweepConfig cfg{{e}, BoundRule::e_plus(4), 0, {3, BoundRule::e_plus(4), 3}, kOracle,
                      std::max(1u, std::thread::hardware_concurrency())};
      auto part = sweep(cfg);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }();
  return recs;
}

Outcome closed_form_vs_oracle() {
  std::size_t cases = 0, bad = 0;
  for (int e = 1; e <= 3; ++e)
    for (std::int64_t a = 0; a <= 4; ++a)
      for (std::int64_t b = 0; b <= 2 * e + 4; ++b) {
        const SurfaceContext ctx(e, 0);
        const auto rep = generic_dimension(ctx, DivisorClass(a, b, {}), kOracle);
        ++cases;
        bool ok = rep.trial_dims.size() == 3;
        for (auto d : rep.trial_dims) ok = ok && d == h0_unblown(e, a, b) - 1;
        if (!ok) ++bad;
      }
  // dim |C_e + (e+2)f| = e + 5
  for (int e = 1; e <= 3; ++e)
    if (generic_dimension(SurfaceContext(e, 0), DivisorClass(1, e + 2, {}), kOracle).computed_dim != e + 5) ++bad;
  return {bad == 0, std::to_string(cases) + " classes, " + std::to_string(bad) + " mismatches"};
}

Outcome theorem_sweep() {
  const auto& recs = main_sweep();
  std::size_t nef = 0, bad = 0;
  for (const auto& r : recs) {
    if (!r.effective || r.nef != NefVerdict::certified) continue;
    ++nef;
    if (r.oracle_dim != r.e_dim) ++bad;
  }
  const auto sum = summarize(recs);
  std::ostringstream s;
  s << recs.size() << " records, " << nef << " effective nef-certified, " << bad << " counterexamples, "
    << sum.reduction_errors << " reduction errors";
  return {bad == 0 && nef > 0 && sum.passed(), s.str()};
}

Outcome minus_one_special_is_special() {
  std::size_t flagged = 0, bad = 0;
  for (const auto& r : main_sweep()) {
    if (!r.effective || !r.minus_one_special) continue;
    ++flagged;
    if (r.oracle_dim <= r.e_dim) ++bad;
  }
  return {bad == 0 && flagged > 0, std::to_string(flagged) + " (-1)-special, " + std::to_string(bad) + " violations"};
}

Outcome dimension_invariance() {
  std::size_t reduced = 0, bad = 0;
  for (const auto& r : main_sweep()) {
    if (!r.effective || !r.trace || r.trace->steps.empty() || !r.residual_dim) continue;
    ++reduced;
    if (*r.residual_dim != r.oracle_dim) ++bad;
  }
  return {bad == 0 && reduced >= 200,
          std::to_string(reduced) + " reduced classes, " + std::to_string(bad) + " mismatches"};
}

Outcome lattice_scan() {
  const auto rep = orthogonality_lattice_scan(6, 6, 20);
  return {rep.solutions.empty() && rep.candidates > 0,
          std::to_string(rep.candidates) + " candidates, " + std::to_string(rep.solutions.size()) + " solutions"};
}

Outcome anticanonical_vanishing() {
  std::size_t examined = 0, bad = 0;
  for (const auto& r : main_sweep()) {
    if (r.r > r.e + 4 || !r.effective || r.nef != NefVerdict::certified || r.minus_k_degree < 1) continue;
    ++examined;
    if (r.oracle_dim != r.v) ++bad;
  }
  return {bad == 0 && examined > 0, std::to_string(examined) + " examined, " + std::to_string(bad) + " violations"};
}

Outcome property_suite() {
  std::mt19937_64 rng(14);
  std::size_t bad = 0;
  auto draw = [&](int r) {
    std::uniform_int_distribution<int> dist(-30, 30);
    DivisorClass d(dist(rng), dist(rng), {});
    for (int i = 0; i < r; ++i) d.m.push_back(dist(rng));
    return d;
  };
  for (int t = 0; t < 10000; ++t) {
    const SurfaceContext ctx(static_cast<int>(rng() % 7), static_cast<int>(rng() % 10));
    const auto x = draw(ctx.r), y = draw(ctx.r), z = draw(ctx.r);
    const std::int64_t k = static_cast<std::int64_t>(rng() % 9) - 4;
    if (intersect(ctx, x, y) != intersect(ctx, y, x)) ++bad;
    if (intersect(ctx, x + k * y, z) != intersect(ctx, x, z) + k * intersect(ctx, y, z)) ++bad;
    if ((self_intersection(ctx, x) + canonical_degree(ctx, x)) % 2 != 0) ++bad;
  }
  const std::size_t lattice_bad = bad;

  std::size_t traces = 0;
  for (const auto& r : main_sweep()) {
    if (!r.trace) continue;
    ++traces;
    if (!trace_is_sound(SurfaceContext(r.e, r.r), *r.trace) || !telescopes(*r.trace)) ++bad;
  }
  const std::size_t trace_bad = bad - lattice_bad;

  // Adding one unit of multiplicity at a time never raises the dimension.
  for (int chain = 0; chain < 100; ++chain) {
    const int e = 1 + static_cast<int>(rng() % 3);
    const int r = 1 + static_cast<int>(rng() % 6);
    const SurfaceContext ctx(e, r);
    DivisorClass d(static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 8), {});
    d.m.assign(static_cast<std::size_t>(r), 0);
    auto prev = generic_dimension(ctx, d, kOracle).computed_dim;
    for (int step = 0; step < 6; ++step) {
      d.m[rng() % static_cast<std::uint64_t>(r)] += 1;
      const auto cur = generic_dimension(ctx, d, kOracle).computed_dim;
      if (cur > prev) ++bad;
      prev = cur;
    }
  }
  const std::size_t chain_bad = bad - lattice_bad - trace_bad;

  SweepConfig cfg{{1, 2}, BoundRule::e_plus(3), 0, {2, BoundRule::e_plus(3), 2}, kOracle, 1};
  const RunConfig rc;
  const auto first = records_to_jsonl(rc, sweep(cfg)) + records_to_csv(sweep(cfg));
  cfg.jobs = 4;
  const auto second = records_to_jsonl(rc, sweep(cfg)) + records_to_csv(sweep(cfg));
  const bool same = first == second;
  if (!same) ++bad;

  std::ostringstream s;
  s << "lattice " << lattice_bad << "/30000, traces " << trace_bad << "/" << traces << ", chains " << chain_bad
    << "/100, rerun " << (same ? "identical" : "differs");
  return {bad == 0, s.str()};
}

Outcome negative_section_regression() {
  const SurfaceContext ctx(2, 0);
  const auto cat = enumerate_minus_one_classes(ctx, 1, 2, kOracle);
  const auto rec = classify(ctx, DivisorClass::H(0), cat, kOracle);
  const bool ok = rec.effective && rec.nef == NefVerdict::no && rec.special && rec.minus_one_special &&
                  rec.oracle_dim == 0 && rec.v == -1 && rec.trace && rec.trace->steps.size() == 1 &&
                  rec.trace->steps[0].kind == StepKind::strict_transform_ce && rec.trace->residual.is_zero();
  return {ok, "dim " + std::to_string(rec.oracle_dim) + ", v " + std::to_string(rec.v)};
}

}  // namespace

int main() {
  criterion(1, "closed form matches oracle on unblown surfaces", closed_form_vs_oracle);
  criterion(2, "nef effective classes are non-special for r <= e+4", theorem_sweep);
  criterion(3, "(-1)-special implies special", minus_one_special_is_special);
  criterion(4, "residual keeps the dimension", dimension_invariance);
  criterion(5, "lattice scan has no solutions", lattice_scan);
  criterion(6, "nef classes with positive anticanonical degree have dim = v", anticanonical_vanishing);
  criterion(7, "property suite", property_suite);
  criterion(8, "H on F_2 regression", negative_section_regression);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}

// Dimension of |aH + bF - sum m_i E_i| at very general points.
//
// Sections of aC_e + bf on F_e restrict, on the affine chart with base
// coordinate x and fiber coordinate y, to the span of x^i y^k with
// 0 <= k <= a and 0 <= i <= b - k*e. A point of multiplicity m imposes the
// vanishing of every partial derivative of order < m. The rank of that
// condition matrix at random points of a large prime field is the generic
// rank with high probability, and is never larger than it, so the computed
// dimension is an upper bound on the dimension at very general points.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hirz/lattice.hpp"
#include "hirz/modular.hpp"

namespace hirz {

/// Exponent pair (i, k) of the chart monomial x^i y^k.
struct Monomial {
  std::int64_t i = 0;
  std::int64_t k = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline std::vector<Monomial> section_basis(std::int64_t e, std::int64_t a, std::int64_t b) {
  std::vector<Monomial> basis;
  if (a < 0 || b < 0) return basis;
  for (std::int64_t k = 0; k <= a; ++k) {
    const std::int64_t top = b - k * e;
    if (top < 0) break;
    for (std::int64_t i = 0; i <= top; ++i) basis.push_back({i, k});
  }
  return basis;
}

struct AffinePoint {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

/// r points with nonzero coordinates, pairwise distinct x and pairwise
/// distinct y. The points for r are a prefix of the points for r + 1.
struct PointConfig {
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  std::vector<AffinePoint> points;
};

namespace detail {

/// splitmix64; fixed output on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t nonzero_element(SplitMix64& rng, std::uint64_t prime) {
  int bits = 64 - __builtin_clzll(prime);
  const std::uint64_t mask = bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
  for (;;) {
    const std::uint64_t v = rng.next() & mask;
    if (v != 0 && v < prime) return v;
  }
}

inline std::uint64_t falling(std::int64_t n, std::int64_t k, std::uint64_t p) {
  std::uint64_t out = 1;
  for (std::int64_t j = 0; j < k; ++j) out = modp::mul(out, static_cast<std::uint64_t>(n - j) % p, p);
  return out;
}

}  // namespace detail

/// Smallest admissible field size; keeps the per-trial failure probability
/// below degree / prime.
inline constexpr std::uint64_t kMinPrime = 1ULL << 40;

inline void require_admissible_prime(std::uint64_t prime) {
  if (prime <= kMinPrime) throw ContractViolation("prime must exceed 2^40, got " + std::to_string(prime));
  if (prime >= (1ULL << 63)) throw ContractViolation("prime must be below 2^63");
  if (!modp::is_prime(prime)) throw ContractViolation(std::to_string(prime) + " is not prime");
}

inline PointConfig make_points(std::uint64_t prime, std::uint64_t seed, int r) {
  require_admissible_prime(prime);
  if (r < 0) throw ContractViolation("negative point count");
  detail::SplitMix64 rng(seed ^ (prime * 0xD1B54A32D192ED03ULL));
  PointConfig cfg{prime, seed, {}};
  cfg.points.reserve(static_cast<std::size_t>(r));
  while (cfg.points.size() < static_cast<std::size_t>(r)) {
    AffinePoint pt{detail::nonzero_element(rng, prime), detail::nonzero_element(rng, prime)};
    const bool clash = std::any_of(cfg.points.begin(), cfg.points.end(),
                                   [&](const AffinePoint& q) { return q.x == pt.x || q.y == pt.y; });
    if (!clash) cfg.points.push_back(pt);
  }
  return cfg;
}

/// One row per partial derivative d^alpha/dx^alpha d^beta/dy^beta with
/// alpha + beta < m_i at p_i; one column per section_basis monomial.
inline ModMatrix interpolation_matrix(const SurfaceContext& ctx, const DivisorClass& d, const PointConfig& config) {
  require_belongs(ctx, d);
  if (!d.in_fat_point_range()) throw ContractViolation("interpolation needs a, b, m_i >= 0, got " + d.to_string());
  if (config.points.size() != static_cast<std::size_t>(ctx.r))
    throw ContractViolation("point configuration does not match r");
  require_admissible_prime(config.prime);
  const std::uint64_t p = config.prime;
  const std::int64_t biggest = std::max({d.a, d.b, d.m.empty() ? 0 : *std::max_element(d.m.begin(), d.m.end())});
  if (static_cast<std::uint64_t>(biggest) >= p) throw ContractViolation("coefficients must be smaller than the prime");

  const auto basis = section_basis(ctx.e, d.a, d.b);
  std::size_t rows = 0;
  for (auto mi : d.m) rows += static_cast<std::size_t>(mi * (mi + 1) / 2);
  ModMatrix mat(rows, basis.size(), p);

  std::size_t row = 0;
  for (std::size_t pi = 0; pi < d.m.size(); ++pi) {
    const auto mult = d.m[pi];
    if (mult == 0) continue;
    const auto& pt = config.points[pi];
    std::vector<std::uint64_t> xpow(static_cast<std::size_t>(d.b) + 1, 1), ypow(static_cast<std::size_t>(d.a) + 1, 1);
    for (std::size_t j = 1; j < xpow.size(); ++j) xpow[j] = modp::mul(xpow[j - 1], pt.x, p);
    for (std::size_t j = 1; j < ypow.size(); ++j) ypow[j] = modp::mul(ypow[j - 1], pt.y, p);
    for (std::int64_t order = 0; order < mult; ++order) {
      for (std::int64_t alpha = order; alpha >= 0; --alpha) {
        const std::int64_t beta = order - alpha;
        for (std::size_t col = 0; col < basis.size(); ++col) {
          const auto [i, k] = basis[col];
          if (i < alpha || k < beta) continue;
          std::uint64_t v = modp::mul(detail::falling(i, alpha, p), detail::falling(k, beta, p), p);
          v = modp::mul(v, xpow[static_cast<std::size_t>(i - alpha)], p);
          v = modp::mul(v, ypow[static_cast<std::size_t>(k - beta)], p);
          mat(row, col) = v;
        }
        ++row;
      }
    }
  }
  return mat;
}

struct OracleOptions {
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed_base = 0;
  int trials = 3;

  [[nodiscard]] std::vector<std::uint64_t> seeds() const {
    if (trials < 1) throw ContractViolation("at least one trial is required");
    std::vector<std::uint64_t> s;
    for (int t = 0; t < trials; ++t) s.push_back(seed_base + static_cast<std::uint64_t>(t));
    return s;
  }
};

struct DimensionReport {
  DivisorClass divisor;
  std::int64_t computed_dim = -1;
  int trials = 0;
  bool certified_nonspecial = false;
  std::int64_t h0_ambient = 0;
  std::int64_t rank = 0;
  std::int64_t expected_dim = -1;
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<std::int64_t> trial_dims;

  [[nodiscard]] bool effective() const { return computed_dim >= 0; }
  /// Monte Carlo verdict; all trials exceeded the expected dimension.
  [[nodiscard]] bool special() const { return computed_dim > expected_dim; }
};

/// Dimension at one point configuration: h0 - rank - 1.
inline std::int64_t dimension_at(const SurfaceContext& ctx, const DivisorClass& d, const PointConfig& config,
                                 std::int64_t* rank_out = nullptr) {
  const auto m = interpolation_matrix(ctx, d, config);
  const auto rank = static_cast<std::int64_t>(m.rank());
  if (rank_out) *rank_out = rank;
  return static_cast<std::int64_t>(m.cols()) - rank - 1;
}

/// Minimum over independent seeds. If the result equals e(D), D is
/// certified non-special.
inline DimensionReport generic_dimension(const SurfaceContext& ctx, const DivisorClass& d,
                                         const OracleOptions& opts = {}) {
  require_belongs(ctx, d);
  if (!d.in_fat_point_range()) throw ContractViolation("generic_dimension needs a, b, m_i >= 0, got " + d.to_string());
  DimensionReport rep;
  rep.divisor = d;
  rep.prime = opts.prime;
  rep.seeds = opts.seeds();
  rep.trials = static_cast<int>(rep.seeds.size());
  rep.h0_ambient = h0_unblown(ctx.e, d.a, d.b);
  rep.expected_dim = expected_dim(ctx, d);

  if (rep.h0_ambient == 0) {
    rep.computed_dim = -1;
    rep.trial_dims.assign(rep.seeds.size(), -1);
  } else {
    rep.computed_dim = rep.h0_ambient;
    for (auto seed : rep.seeds) {
      std::int64_t rank = 0;
      const auto dim = dimension_at(ctx, d, make_points(opts.prime, seed, ctx.r), &rank);
      rep.trial_dims.push_back(dim);
      if (dim < rep.computed_dim) {
        rep.computed_dim = dim;
        rep.rank = rank;
      }
    }
  }
  // dim >= v(D) holds at every configuration (Riemann-Roch, h^2 = 0), so a
  // violation here is an implementation bug.
  if (rep.computed_dim < rep.expected_dim)
    throw std::logic_error("oracle dimension below expected dimension for " + d.to_string());
  rep.certified_nonspecial = rep.computed_dim == rep.expected_dim;
  return rep;
}

inline bool is_effective(const SurfaceContext& ctx, const DivisorClass& d, const OracleOptions& opts = {}) {
  return generic_dimension(ctx, d, opts).effective();
}

}  // namespace hirz

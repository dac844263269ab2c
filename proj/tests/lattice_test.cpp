#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "hirz/lattice.hpp"

using namespace hirz;

namespace {

// Independent route: coordinates in the basis (H, F, E_1..E_r) against the
// Gram matrix of the intersection form.
std::int64_t gram_pairing(int e, const DivisorClass& x, const DivisorClass& y) {
  const std::size_t n = x.m.size() + 2;
  std::vector<std::vector<std::int64_t>> g(n, std::vector<std::int64_t>(n, 0));
  g[0][0] = -e;
  g[0][1] = g[1][0] = 1;
  for (std::size_t i = 2; i < n; ++i) g[i][i] = -1;
  auto coords = [](const DivisorClass& d) {
    std::vector<std::int64_t> c{d.a, d.b};
    for (auto v : d.m) c.push_back(-v);
    return c;
  };
  const auto cx = coords(x), cy = coords(y);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += cx[i] * g[i][j] * cy[j];
  return s;
}

DivisorClass random_class(std::mt19937_64& rng, int r, int lo = -40, int hi = 40) {
  std::uniform_int_distribution<int> dist(lo, hi);
  DivisorClass d(dist(rng), dist(rng), {});
  for (int i = 0; i < r; ++i) d.m.push_back(dist(rng));
  return d;
}

}  // namespace

TEST(Intersect, BasisPairings) {
  const SurfaceContext ctx(2, 0);
  EXPECT_EQ(intersect(ctx, DivisorClass::H(0), DivisorClass::F(0)), 1);
  EXPECT_EQ(intersect(ctx, DivisorClass::H(0), DivisorClass::H(0)), -2);
  EXPECT_EQ(intersect(ctx, DivisorClass::F(0), DivisorClass::F(0)), 0);
  const SurfaceContext ctx3(0, 3);
  EXPECT_EQ(self_intersection(ctx3, DivisorClass::E(3, 1)), -1);
  EXPECT_EQ(intersect(ctx3, DivisorClass::E(3, 0), DivisorClass::E(3, 2)), 0);
}

TEST(Intersect, HandExpandedExample) {
  const SurfaceContext ctx(1, 2);
  const DivisorClass d1(1, 2, {1, 1});
  const DivisorClass d2(0, 1, {1, 0});
  // 1*1 + 0*2 - 1*1*0 - (1*1 + 1*0) = 0
  EXPECT_EQ(intersect(ctx, d1, d2), 0);
  EXPECT_EQ(gram_pairing(1, d1, d2), 0);
  EXPECT_EQ(intersect(ctx, d1, DivisorClass(0, 1, {0, 0})), 1);
}

TEST(Intersect, LengthMismatchIsContractViolation) {
  const SurfaceContext ctx(1, 2);
  EXPECT_THROW(intersect(ctx, DivisorClass(1, 0, {1}), DivisorClass(1, 0, {1, 1})), ContractViolation);
  EXPECT_THROW(DivisorClass(0, 0, {1}) + DivisorClass(0, 0, {1, 2}), ContractViolation);
}

TEST(Intersect, OverflowIsReported) {
  const SurfaceContext ctx(1, 0);
  const DivisorClass huge(std::int64_t{1} << 40, std::int64_t{1} << 40, {});
  EXPECT_THROW(intersect(ctx, huge, huge), OverflowError);
}

TEST(Canonical, Coefficients) {
  EXPECT_EQ(canonical(SurfaceContext(3, 2)), DivisorClass(-2, -5, {-1, -1}));
  EXPECT_EQ(canonical(SurfaceContext(0, 0)), DivisorClass(-2, -2, {}));
  for (int e = 0; e <= 6; ++e)
    for (int r = 0; r <= 8; ++r) {
      const SurfaceContext ctx(e, r);
      EXPECT_EQ(intersect(ctx, canonical(ctx), DivisorClass::F(r)), -2);
      EXPECT_EQ(self_intersection(ctx, canonical(ctx)), 8 - r);
      EXPECT_EQ(gram_pairing(e, canonical(ctx), canonical(ctx)), 8 - r);
    }
}

TEST(VirtualDim, Examples) {
  for (int e = 0; e <= 5; ++e)
    for (int r = 0; r <= 4; ++r) {
      const SurfaceContext ctx(e, r);
      EXPECT_EQ(virtual_dim(ctx, DivisorClass::zero(r)), 0);
      EXPECT_EQ(virtual_dim(ctx, DivisorClass::F(r)), 1);
      EXPECT_EQ(expected_dim(ctx, DivisorClass::zero(r)), 0);
    }
  const SurfaceContext ctx(2, 0);
  EXPECT_EQ(virtual_dim(ctx, DivisorClass::H(0)), -1);
  EXPECT_EQ(expected_dim(ctx, DivisorClass::H(0)), -1);
}

TEST(ExpectedDim, BoundaryExample) {
  const SurfaceContext ctx(1, 5);
  const DivisorClass d(2, 3, {1, 1, 1, 1, 1});
  // D.D = 12 - 4 - 5 = 3, K.D = -6 - 2 + 5 = -3.
  EXPECT_EQ(gram_pairing(1, d, d), 3);
  EXPECT_EQ(gram_pairing(1, canonical(ctx), d), -3);
  EXPECT_EQ(virtual_dim(ctx, d), 3);
  EXPECT_EQ(expected_dim(ctx, d), 3);
}

TEST(ArithmeticGenus, Examples) {
  const SurfaceContext ctx(2, 3);
  EXPECT_EQ(arithmetic_genus(ctx, DivisorClass::F(3)), 0);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(arithmetic_genus(ctx, DivisorClass::E(3, i)), 0);
  EXPECT_EQ(arithmetic_genus(SurfaceContext(2, 0), DivisorClass::H(0)), 0);
  // Anticanonical curves are elliptic: p_a(-K) = 1.
  EXPECT_EQ(arithmetic_genus(ctx, -canonical(ctx)), 1);
}

TEST(H0Unblown, Examples) {
  for (int e = 0; e <= 8; ++e) {
    EXPECT_EQ(h0_unblown(e, 1, e + 2), e + 6);
    EXPECT_EQ(h0_unblown(e, 2, e + 2), (e + 3) + 3 + std::max(3 - e, 0));
    EXPECT_GE(h0_unblown(e, 2, e + 2), e + 6);
  }
  EXPECT_EQ(h0_unblown(5, 0, 0), 1);
  EXPECT_EQ(h0_unblown(2, -1, 5), 0);
  EXPECT_EQ(h0_unblown(2, 2, -1), 0);
  EXPECT_EQ(h0_unblown(2, 2, 1), 2);
}

TEST(LatticeProperties, BilinearSymmetricAgreesWithGram) {
  std::mt19937_64 rng(20261014);
  for (int trial = 0; trial < 2000; ++trial) {
    const int e = static_cast<int>(rng() % 7);
    const int r = static_cast<int>(rng() % 9);
    const SurfaceContext ctx(e, r);
    const auto x = random_class(rng, r), y = random_class(rng, r), z = random_class(rng, r);
    const std::int64_t k = static_cast<std::int64_t>(rng() % 11) - 5;
    EXPECT_EQ(intersect(ctx, x, y), intersect(ctx, y, x));
    EXPECT_EQ(intersect(ctx, x + y, z), intersect(ctx, x, z) + intersect(ctx, y, z));
    EXPECT_EQ(intersect(ctx, k * x, z), k * intersect(ctx, x, z));
    EXPECT_EQ(intersect(ctx, x, y), gram_pairing(e, x, y));
  }
}

TEST(LatticeProperties, ParityAndGenusIdentity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const int e = static_cast<int>(rng() % 7);
    const int r = static_cast<int>(rng() % 9);
    const SurfaceContext ctx(e, r);
    const auto d = random_class(rng, r);
    const auto dd = self_intersection(ctx, d);
    const auto kd = canonical_degree(ctx, d);
    EXPECT_EQ((dd + kd) % 2, 0);
    EXPECT_EQ((dd - kd) % 2, 0);
    EXPECT_EQ(virtual_dim(ctx, d) + arithmetic_genus(ctx, d) - 1, dd);
    EXPECT_EQ(expected_dim(ctx, d), std::max<std::int64_t>(virtual_dim(ctx, d), -1));
  }
}

TEST(LatticeProperties, SectionCountMatchesVirtualDimInNefRange) {
  for (int e = 0; e <= 5; ++e)
    for (int a = 0; a <= 5; ++a)
      for (int b = a * e; b <= a * e + 8; ++b) {
        const SurfaceContext ctx(e, 0);
        EXPECT_EQ(h0_unblown(e, a, b) - 1, virtual_dim(ctx, DivisorClass(a, b, {}))) << e << " " << a << " " << b;
      }
}

TEST(SurfaceContext, Invariants) {
  EXPECT_THROW(SurfaceContext(-1, 0), ContractViolation);
  EXPECT_THROW(SurfaceContext(0, -1), ContractViolation);
  EXPECT_EQ(SurfaceContext(3, 4).rank(), 6);
  EXPECT_THROW(DivisorClass::E(2, 2), ContractViolation);
}

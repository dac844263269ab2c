// Picard lattice of F_{e,r}: the blow-up of the Hirzebruch surface F_e at r
// very general points.
//
// A class is written D = a*H + b*F - sum_i m_i*E_i where H is the pullback of
// the negative section, F the pullback of a fiber and E_i the exceptional
// curves. The intersection form is
//
//     H.H = -e,  H.F = 1,  F.F = 0,  E_i.E_j = -delta_ij,  H.E_i = F.E_i = 0.
//
// Everything here is exact 64-bit integer arithmetic with overflow checks.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hirz {

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when checked integer arithmetic would overflow.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

namespace checked {

inline std::int64_t add(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_add_overflow(x, y, &out)) throw OverflowError("int64 overflow in add");
  return out;
}

inline std::int64_t sub(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_sub_overflow(x, y, &out)) throw OverflowError("int64 overflow in sub");
  return out;
}

inline std::int64_t mul(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_mul_overflow(x, y, &out)) throw OverflowError("int64 overflow in mul");
  return out;
}

}  // namespace checked

/// The surface F_{e,r}. The lattice has rank r + 2.
struct SurfaceContext {
  int e = 0;
  int r = 0;

  constexpr SurfaceContext() = default;
  constexpr SurfaceContext(int e_, int r_) : e(e_), r(r_) {
    if (e_ < 0 || r_ < 0) throw ContractViolation("SurfaceContext requires e >= 0 and r >= 0");
  }

  [[nodiscard]] constexpr int rank() const { return r + 2; }
  /// Range in which negative curves are known to be (-1)-curves or the
  /// strict transform of the negative section.
  [[nodiscard]] constexpr bool within_e_plus_4() const { return r <= e + 4; }

  friend constexpr bool operator==(const SurfaceContext&, const SurfaceContext&) = default;
};

/// Integer vector (a, b, m_1..m_r) for the class a*H + b*F - sum m_i*E_i.
/// Negative entries are allowed (canonical class, differences).
struct DivisorClass {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::vector<std::int64_t> m;

  DivisorClass() = default;
  DivisorClass(std::int64_t a_, std::int64_t b_, std::vector<std::int64_t> m_ = {})
      : a(a_), b(b_), m(std::move(m_)) {}

  static DivisorClass zero(int r) { return {0, 0, std::vector<std::int64_t>(static_cast<std::size_t>(r), 0)}; }
  static DivisorClass H(int r) { return {1, 0, std::vector<std::int64_t>(static_cast<std::size_t>(r), 0)}; }
  static DivisorClass F(int r) { return {0, 1, std::vector<std::int64_t>(static_cast<std::size_t>(r), 0)}; }
  /// The exceptional class E_i (so m_i = -1 in this sign convention).
  static DivisorClass E(int r, int i) {
    if (i < 0 || i >= r) throw ContractViolation("exceptional index out of range");
    DivisorClass d = zero(r);
    d.m[static_cast<std::size_t>(i)] = -1;
    return d;
  }

  [[nodiscard]] int r() const { return static_cast<int>(m.size()); }

  [[nodiscard]] std::int64_t m_sum() const {
    std::int64_t s = 0;
    for (auto v : m) s = checked::add(s, v);
    return s;
  }

  /// True when every coefficient is >= 0, i.e. the class describes curves in
  /// |aC_e + bf| through the points with multiplicities m_i.
  [[nodiscard]] bool in_fat_point_range() const {
    return a >= 0 && b >= 0 && std::all_of(m.begin(), m.end(), [](auto v) { return v >= 0; });
  }

  [[nodiscard]] bool is_zero() const {
    return a == 0 && b == 0 && std::all_of(m.begin(), m.end(), [](auto v) { return v == 0; });
  }

  DivisorClass& operator+=(const DivisorClass& o) {
    require_same_length(o);
    a = checked::add(a, o.a);
    b = checked::add(b, o.b);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = checked::add(m[i], o.m[i]);
    return *this;
  }

  DivisorClass& operator-=(const DivisorClass& o) {
    require_same_length(o);
    a = checked::sub(a, o.a);
    b = checked::sub(b, o.b);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = checked::sub(m[i], o.m[i]);
    return *this;
  }

  DivisorClass& operator*=(std::int64_t k) {
    a = checked::mul(a, k);
    b = checked::mul(b, k);
    for (auto& v : m) v = checked::mul(v, k);
    return *this;
  }

  friend DivisorClass operator+(DivisorClass x, const DivisorClass& y) { return x += y; }
  friend DivisorClass operator-(DivisorClass x, const DivisorClass& y) { return x -= y; }
  friend DivisorClass operator*(std::int64_t k, DivisorClass x) { return x *= k; }
  friend DivisorClass operator-(DivisorClass x) { return x *= -1; }

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  /// Lexicographic on (a, b, m).
  friend auto operator<=>(const DivisorClass& x, const DivisorClass& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    if (auto c = x.b <=> y.b; c != 0) return c;
    return std::lexicographical_compare_three_way(x.m.begin(), x.m.end(), y.m.begin(), y.m.end());
  }

  [[nodiscard]] std::string to_string() const {
    std::string s = "(" + std::to_string(a) + ", " + std::to_string(b) + ", [";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(m[i]);
    }
    return s + "])";
  }

 private:
  void require_same_length(const DivisorClass& o) const {
    if (o.m.size() != m.size()) throw ContractViolation("divisor classes have different numbers of points");
  }
};

inline void require_belongs(const SurfaceContext& ctx, const DivisorClass& d) {
  if (d.r() != ctx.r)
    throw ContractViolation("class " + d.to_string() + " has " + std::to_string(d.r()) +
                            " multiplicities but the surface has r = " + std::to_string(ctx.r));
}

/// D1.D2 = a1*b2 + a2*b1 - e*a1*a2 - sum m1_i*m2_i.
inline std::int64_t intersect(const SurfaceContext& ctx, const DivisorClass& d1, const DivisorClass& d2) {
  require_belongs(ctx, d1);
  require_belongs(ctx, d2);
  using namespace checked;
  std::int64_t s = add(mul(d1.a, d2.b), mul(d2.a, d1.b));
  s = sub(s, mul(ctx.e, mul(d1.a, d2.a)));
  for (std::size_t i = 0; i < d1.m.size(); ++i) s = sub(s, mul(d1.m[i], d2.m[i]));
  return s;
}

inline std::int64_t self_intersection(const SurfaceContext& ctx, const DivisorClass& d) {
  return intersect(ctx, d, d);
}

/// K = -2H - (e+2)F + sum E_i.
inline DivisorClass canonical(const SurfaceContext& ctx) {
  return {-2, -(static_cast<std::int64_t>(ctx.e) + 2), std::vector<std::int64_t>(static_cast<std::size_t>(ctx.r), -1)};
}

/// K.D = -2b + (e-2)a + sum m_i.
inline std::int64_t canonical_degree(const SurfaceContext& ctx, const DivisorClass& d) {
  return intersect(ctx, canonical(ctx), d);
}

/// v(D) = (D.D - K.D) / 2. Always an integer: D.D and K.D have the same parity.
inline std::int64_t virtual_dim(const SurfaceContext& ctx, const DivisorClass& d) {
  const auto twice = checked::sub(self_intersection(ctx, d), canonical_degree(ctx, d));
  return twice / 2;
}

inline std::int64_t expected_dim(const SurfaceContext& ctx, const DivisorClass& d) {
  return std::max<std::int64_t>(virtual_dim(ctx, d), -1);
}

/// p_a(D) = (D.D + K.D) / 2 + 1.
inline std::int64_t arithmetic_genus(const SurfaceContext& ctx, const DivisorClass& d) {
  const auto twice = checked::add(self_intersection(ctx, d), canonical_degree(ctx, d));
  return twice / 2 + 1;
}

/// h^0(F_e, aC_e + bf) = sum_{k=0}^{a} max(b - k*e + 1, 0); zero for a < 0.
inline std::int64_t h0_unblown(std::int64_t e, std::int64_t a, std::int64_t b) {
  if (a < 0 || e < 0) return 0;
  std::int64_t total = 0;
  for (std::int64_t k = 0; k <= a; ++k) {
    const auto sections = checked::add(checked::sub(b, checked::mul(k, e)), 1);
    if (sections <= 0) break;
    total = checked::add(total, sections);
  }
  return total;
}

}  // namespace hirz

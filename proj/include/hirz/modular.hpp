// Arithmetic in Z/pZ for primes below 2^63 and exact rank of dense matrices
// over that field.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hirz {

/// 2^62 - 57, the largest prime below 2^62.
inline constexpr std::uint64_t kDefaultPrime = 4611686018427387847ULL;

namespace modp {

inline std::uint64_t mul(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
}

inline std::uint64_t add(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
  const std::uint64_t s = x + y;  // x, y < p < 2^63, no wrap
  return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
  return x >= y ? x - y : x + (p - y);
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = mul(result, base, p);
    base = mul(base, base, p);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a nonzero element by Fermat.
inline std::uint64_t inv(std::uint64_t x, std::uint64_t p) { return pow(x, p - 2, p); }

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t witness : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow(witness, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace modp

/// Row-major dense matrix with entries in [0, prime).
class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols, std::uint64_t prime)
      : rows_(rows), cols_(cols), prime_(prime), data_(rows * cols, 0) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::uint64_t prime() const { return prime_; }

  std::uint64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const std::uint64_t> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  /// Rank by Gaussian elimination on a copy.
  [[nodiscard]] std::size_t rank() const {
    std::vector<std::uint64_t> a = data_;
    const std::uint64_t p = prime_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
      std::size_t pivot = rank;
      while (pivot < rows_ && a[pivot * cols_ + col] == 0) ++pivot;
      if (pivot == rows_) continue;
      if (pivot != rank) {
        for (std::size_t j = col; j < cols_; ++j) std::swap(a[pivot * cols_ + j], a[rank * cols_ + j]);
      }
      const std::uint64_t inv_pivot = modp::inv(a[rank * cols_ + col], p);
      for (std::size_t i = rank + 1; i < rows_; ++i) {
        const std::uint64_t lead = a[i * cols_ + col];
        if (lead == 0) continue;
        const std::uint64_t factor = modp::mul(lead, inv_pivot, p);
        for (std::size_t j = col; j < cols_; ++j) {
          a[i * cols_ + j] = modp::sub(a[i * cols_ + j], modp::mul(factor, a[rank * cols_ + j], p), p);
        }
      }
      ++rank;
    }
    return rank;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint64_t prime_;
  std::vector<std::uint64_t> data_;
};

}  // namespace hirz

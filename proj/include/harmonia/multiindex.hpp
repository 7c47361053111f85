#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "harmonia/numeric.hpp"

namespace harmonia {

using UInt128 = unsigned __int128;

/// Largest entry accepted by mi_factorial: 34! is the largest factorial
/// that fits in 128 bits.
inline constexpr unsigned kMaxFactorialEntry = 34;

/// Exponent vector alpha = (alpha_1, ..., alpha_n) with nonnegative entries.
/// Ordered graded-lexicographically: by degree, then lexicographically.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : e_(dim, 0U) {}
  explicit MultiIndex(std::vector<unsigned> exps) : e_(std::move(exps)) {}
  MultiIndex(std::initializer_list<int> exps);

  /// Checked conversion from signed data (rejects negative entries).
  static MultiIndex from_signed(std::span<const long long> exps);

  std::size_t size() const { return e_.size(); }
  unsigned operator[](std::size_t j) const { return e_[j]; }
  unsigned& operator[](std::size_t j) { return e_[j]; }
  const std::vector<unsigned>& exponents() const { return e_; }

  unsigned degree() const;
  bool is_zero() const { return degree() == 0; }

  /// Componentwise beta <= alpha.
  bool dominated_by(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; requires other <= *this.
  MultiIndex operator-(const MultiIndex& other) const;

  bool operator==(const MultiIndex& other) const = default;
  std::strong_ordering operator<=>(const MultiIndex& other) const;

  std::string to_string() const;

 private:
  std::vector<unsigned> e_;
};

/// |alpha| = alpha_1 + ... + alpha_n.
unsigned mi_degree(const MultiIndex& alpha);

/// alpha! = alpha_1! ... alpha_n!, exact. Throws OverflowError when an entry
/// exceeds kMaxFactorialEntry or the product leaves 128 bits.
UInt128 mi_factorial(const MultiIndex& alpha);

/// alpha! / (beta! gamma!) for beta + gamma = alpha, exact.
UInt128 multinomial(const MultiIndex& alpha, const MultiIndex& beta,
                    const MultiIndex& gamma);

/// x^alpha with the convention x_j^0 = 1 (so 0^0 = 1).
Complex monomial_eval(std::span<const Complex> x, const MultiIndex& alpha);

/// All multi-indices beta with beta <= alpha componentwise, in graded order.
std::vector<MultiIndex> sub_indices(const MultiIndex& alpha);

/// All multi-indices of dimension n and degree exactly d.
std::vector<MultiIndex> indices_of_degree(std::size_t n, unsigned d);

std::string to_string(UInt128 v);

}  // namespace harmonia

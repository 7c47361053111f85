#include "harmonia/multiindex.hpp"

#include <algorithm>
#include <numeric>

#include "harmonia/error.hpp"

namespace harmonia {

namespace {

UInt128 checked_mul(UInt128 a, UInt128 b) {
  UInt128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in exact multi-index arithmetic");
  }
  return r;
}

UInt128 factorial(unsigned k) {
  if (k > kMaxFactorialEntry) {
    throw OverflowError("factorial entry " + std::to_string(k) +
                        " exceeds the supported bound " +
                        std::to_string(kMaxFactorialEntry));
  }
  UInt128 r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

// C(n, k) computed incrementally; every intermediate value is an integer.
UInt128 binomial(unsigned n, unsigned k) {
  k = std::min(k, n - k);
  UInt128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact since r = C(n - k + i - 1, i - 1).
    const UInt128 num = checked_mul(r, n - k + i);
    r = num / i;
  }
  return r;
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<int> exps) {
  e_.reserve(exps.size());
  for (int v : exps) {
    if (v < 0) throw PreconditionError("multi-index entries must be >= 0");
    e_.push_back(static_cast<unsigned>(v));
  }
}

MultiIndex MultiIndex::from_signed(std::span<const long long> exps) {
  std::vector<unsigned> e;
  e.reserve(exps.size());
  for (long long v : exps) {
    if (v < 0) throw PreconditionError("multi-index entries must be >= 0");
    e.push_back(static_cast<unsigned>(v));
  }
  return MultiIndex(std::move(e));
}

unsigned MultiIndex::degree() const {
  return std::accumulate(e_.begin(), e_.end(), 0U);
}

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  require(size() == other.size(), "multi-index dimension mismatch");
  for (std::size_t j = 0; j < size(); ++j) {
    if (e_[j] > other.e_[j]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  require(size() == other.size(), "multi-index dimension mismatch");
  MultiIndex r(*this);
  for (std::size_t j = 0; j < size(); ++j) r.e_[j] += other.e_[j];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  require(other.dominated_by(*this), "multi-index difference would be negative");
  MultiIndex r(*this);
  for (std::size_t j = 0; j < size(); ++j) r.e_[j] -= other.e_[j];
  return r;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  if (auto c = size() <=> other.size(); c != 0) return c;
  return e_ <=> other.e_;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < size(); ++j) {
    if (j) s += ",";
    s += std::to_string(e_[j]);
  }
  return s + ")";
}

unsigned mi_degree(const MultiIndex& alpha) { return alpha.degree(); }

UInt128 mi_factorial(const MultiIndex& alpha) {
  UInt128 r = 1;
  for (unsigned a : alpha.exponents()) r = checked_mul(r, factorial(a));
  return r;
}

UInt128 multinomial(const MultiIndex& alpha, const MultiIndex& beta,
                    const MultiIndex& gamma) {
  require(alpha.size() == beta.size() && alpha.size() == gamma.size(),
          "multinomial: dimension mismatch");
  if (beta + gamma != alpha) {
    throw PreconditionError("multinomial: beta + gamma must equal alpha");
  }
  // alpha!/(beta! gamma!) = prod_j C(alpha_j, beta_j)
  UInt128 r = 1;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    r = checked_mul(r, binomial(alpha[j], beta[j]));
  }
  return r;
}

Complex monomial_eval(std::span<const Complex> x, const MultiIndex& alpha) {
  require(x.size() == alpha.size(), "monomial_eval: dimension mismatch");
  Complex r{1.0, 0.0};
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (alpha[j] != 0) r *= ipow(x[j], alpha[j]);
  }
  return r;
}

std::vector<MultiIndex> sub_indices(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  MultiIndex cur(alpha.size());
  while (true) {
    out.push_back(cur);
    std::size_t j = 0;
    while (j < alpha.size() && cur[j] == alpha[j]) {
      cur[j] = 0;
      ++j;
    }
    if (j == alpha.size()) break;
    ++cur[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> indices_of_degree(std::size_t n, unsigned d) {
  std::vector<MultiIndex> out;
  if (n == 0) return out;
  MultiIndex cur(n);
  // Enumerate compositions of d into n parts.
  auto rec = [&](auto&& self, std::size_t j, unsigned left) -> void {
    if (j + 1 == n) {
      cur[j] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur[j] = v;
      self(self, j + 1, left - v);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(UInt128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

}  // namespace harmonia

#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "harmonia/numeric.hpp"

namespace harmonia::seq {

/// Finite-index complex vector f : E -> C with E = {0, ..., n-1}.
/// Always nonempty with finite entries.
class SeqVector {
 public:
  explicit SeqVector(std::vector<Complex> entries);
  static SeqVector real(std::span<const double> xs);

  std::size_t size() const { return v_.size(); }
  const Complex& operator[](std::size_t j) const { return v_[j]; }
  std::span<const Complex> entries() const { return v_; }

  SeqVector operator+(const SeqVector& o) const;
  SeqVector operator-(const SeqVector& o) const;
  SeqVector operator*(Complex s) const;
  /// Pointwise product.
  SeqVector hadamard(const SeqVector& o) const;

 private:
  std::vector<Complex> v_;
};

/// p in (0, inf) or the distinguished value inf.
class Exponent {
 public:
  explicit Exponent(double p);
  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return std::isinf(p_); }
  double value() const { return p_; }
  std::string to_string() const;

  bool operator==(const Exponent&) const = default;

 private:
  double p_;
};

/// ||f||_p = (sum |f|^p)^{1/p}; sup |f| for p = inf. For p > 8 or entries
/// spanning more than six decades the sum is formed after scaling by max |f|.
double lp_norm(const SeqVector& f, Exponent p);

/// sum |f(x)|^p for finite p (the p-th power of the quasi-norm).
double lp_power_sum(const SeqVector& f, Exponent p);

/// q with 1/p + 1/q = 1. Requires p >= 1.
Exponent conjugate_exponent(Exponent p);

/// Bilinear pairing sum f(x) g(x) (no conjugation).
Complex pairing(const SeqVector& f, const SeqVector& g);

/// Hermitian inner product sum f(x) conj(g(x)).
Complex inner_product(const SeqVector& f, const SeqVector& g);

struct DualNorm {
  double value;          ///< ||g||_q
  SeqVector extremizer;  ///< ||f||_p = 1 (or f = 0 when g = 0), pairing(f, g) = value
};

/// Dual norm of f -> pairing(f, g) on l^p, with an explicit extremizer.
DualNorm dual_norm(const SeqVector& g, Exponent p);

using Seminorm = std::function<double(const SeqVector&)>;

/// max over l = 1..L of min(N_l(v - w), 1/l). Each evaluator is
/// spot-checked for absolute homogeneity and subadditivity on 10 seeded
/// random pairs; a violation raises PreconditionError.
double seminorm_family_metric(const SeqVector& v, const SeqVector& w,
                              const std::vector<Seminorm>& family);

/// The spot check used by seminorm_family_metric, exposed for reuse.
void check_seminorm_axioms(const Seminorm& n, std::size_t length,
                           unsigned seed = 0);

/// N(f) = ||f||_p as a Seminorm (p >= 1).
Seminorm lp_seminorm(Exponent p);
/// N_k(f) = sup_j j^k |f(j)| with 1-based j.
Seminorm weighted_sup_seminorm(int k);

}  // namespace harmonia::seq

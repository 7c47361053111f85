#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "harmonia/multiindex.hpp"
#include "harmonia/numeric.hpp"

namespace harmonia::hull {

using RVec = std::vector<double>;
using CVec = std::vector<Complex>;

/// Finite nonempty set of points in R^d.
class PointCloud {
 public:
  PointCloud(std::size_t dim, std::vector<RVec> points);
  std::size_t dim() const { return dim_; }
  const std::vector<RVec>& points() const { return points_; }

 private:
  std::size_t dim_;
  std::vector<RVec> points_;
};

/// Finite nonempty sample of a set in C^n.
class CircularSample {
 public:
  CircularSample(std::size_t n, std::vector<CVec> points, bool completely_circular = true);
  std::size_t n() const { return n_; }
  const std::vector<CVec>& points() const { return points_; }
  bool completely_circular() const { return circular_; }

 private:
  std::size_t n_;
  std::vector<CVec> points_;
  bool circular_;
};

/// Points (log|w_j|)_{j in I} of the samples with w_j != 0 for all j in I.
struct LogRegion {
  std::vector<std::size_t> pattern;
  std::vector<RVec> points;
};

LogRegion log_region(const CircularSample& E, std::vector<std::size_t> pattern);

struct InsideConvexCombination {
  std::vector<double> weights;
  std::vector<RVec> support;
  bool dominated = false;  ///< sum w a >= x - tol instead of sum w a = x
  double residual = 0.0;   ///< |x - sum w a| (dominated: |(x - sum w a)_+|)
  double tolerance = 0.0;
};

struct SeparatingFunctional {
  RVec lambda;  ///< y -> <y, lambda>
  double margin;
  double tolerance = 0.0;
};

struct MonomialWitness {
  MultiIndex alpha;
  double log_sup_on_e;    ///< log max_E |w^alpha|, -inf when every sample vanishes
  double log_value_at_z;  ///< log |z^alpha|
  double sup_on_e() const;
  double value_at_z() const;
};

struct ExponentialWitness {
  CVec mu;  ///< w -> sum mu_j w_j
  double t;
  double boundary_sup;  ///< max_E |1 + t mu(w)|
  double value_at_z;    ///< |1 + t mu(z)|
};

struct NotApplicable {
  std::string reason;
};

using HullCertificate = std::variant<InsideConvexCombination, SeparatingFunctional,
                                     MonomialWitness, ExponentialWitness, NotApplicable>;

bool is_inside(const HullCertificate& c);
std::string kind_name(const HullCertificate& c);

/// Membership of x in Con(S). The projection u of x onto Con(S) is found by
/// an away-step Frank-Wolfe method on the simplex, stopped at duality gap
/// tol^2 or as soon as one of the certificates below holds; active faces are
/// polished by least squares on their affine hull.
/// Outside: lambda = x - u with margin lambda(x) - max_S lambda > tol (1 + |x|).
/// Inside: at most d + 1 support points reproducing x within tol; points whose
/// margin stays within tol(1 + |x|) at convergence are also reported Inside.
HullCertificate convex_membership(std::span<const double> x, const PointCloud& S,
                                  double tol = 1e-9);

/// Membership of r in the downward closure {r <= c : c in Con(A)}. Outside
/// certificates carry lambda >= 0 componentwise.
HullCertificate downward_membership(std::span<const double> r, std::span<const RVec> A,
                                    double tol = 1e-9);

/// Verifiers, independent of how the certificate was found.
bool verify_convex(const HullCertificate& c, std::span<const double> x, const PointCloud& S);
bool verify_downward(const HullCertificate& c, std::span<const double> r,
                     std::span<const RVec> A);

/// log max_E |w^alpha| (-inf if every sample vanishes on the monomial).
double log_monomial_sup(const CircularSample& E, const MultiIndex& alpha);
/// max_E |w^alpha|.
double monomial_sup(const CircularSample& E, const MultiIndex& alpha);

/// Decides z in Pol(E) for a completely circular E given by samples.
HullCertificate poly_hull_membership(std::span<const Complex> z, const CircularSample& E,
                                     double tol = 1e-9);

/// Re-verifies a certificate returned by poly_hull_membership or exp_certificate.
bool verify_poly(const HullCertificate& c, std::span<const Complex> z, const CircularSample& E,
                 double tol = 1e-9);

/// Separates z from Con(E) in R^{2n} and converts the functional into the
/// witness w -> 1 + t mu(w). NotApplicable when z is in the closed convex hull.
HullCertificate exp_certificate(std::span<const Complex> z, const CircularSample& E,
                                double tol = 1e-9);

struct UnboundedWitness {
  MultiIndex alpha;
  RVec log_point;       ///< (log|w_1|, log|w_2|) of a point of E(b)
  double log_modulus;   ///< log |w^alpha| > log 10^6
};

struct EbReport {
  double b;
  bool rational;
  std::optional<MultiIndex> bounded;       ///< beta with b = beta_1 / beta_2
  double bounded_sup = 0.0;                ///< sup of |w^beta| over the ray samples
  std::vector<UnboundedWitness> unbounded;  ///< one per nonzero alpha, |alpha| <= D
  std::optional<MonomialWitness> exterior;  ///< certificate for the exterior point, if given
};

/// E(b) = {|z_1|^b |z_2| <= 1}. Rational b (detected by continued fractions
/// with denominator <= D/2) yields beta; otherwise every nonzero |alpha| <= D
/// gets a point of E(b) where |w^alpha| > 10^6.
EbReport eb_dichotomy(double b, unsigned degree_cap, std::size_t ray_samples = 401,
                      std::optional<CVec> exterior = std::nullopt);

/// Decisions of poly_hull_membership at z and at (t_1 z_1, ..., t_n z_n) agree.
bool torus_invariance_check(const CircularSample& E, std::span<const Complex> z,
                            std::span<const CVec> ts, double tol = 1e-9);

/// max over the grid x in [0,1] (nx points), y in [-ymax, ymax] (ny points)
/// of |f(x + iy)| - A0^{1-x} A1^x.
double three_lines_check(double A0, double A1, const std::function<Complex(Complex)>& f,
                         std::size_t nx = 101, std::size_t ny = 401, double ymax = 20.0);

/// Best continued-fraction convergent p/q of x >= 0 with q <= qmax.
std::pair<unsigned long long, unsigned long long> best_rational(double x,
                                                                unsigned long long qmax);

}  // namespace harmonia::hull

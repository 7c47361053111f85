#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "harmonia/algebra.hpp"
#include "harmonia/error.hpp"
#include "harmonia/hulls.hpp"
#include "harmonia/json_io.hpp"
#include "harmonia/line.hpp"
#include "harmonia/polynomial.hpp"
#include "harmonia/seq_spaces.hpp"
#include "harmonia/torus.hpp"

namespace py = pybind11;
using namespace harmonia;

namespace {

seq::Exponent exponent(double p) {
  return std::isinf(p) ? seq::Exponent::infinity() : seq::Exponent(p);
}

alg::Matrix to_matrix(const std::vector<std::vector<Complex>>& rows) {
  require(!rows.empty(), "matrix must be nonempty");
  alg::Matrix m(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == rows.size(), "matrix must be square");
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<Complex>> from_matrix(const alg::Matrix& m) {
  std::vector<std::vector<Complex>> rows(m.rows(), std::vector<Complex>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

// JSON round trips let Python callers pass the same documents as the CLI.
py::object json_out(const io::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}
io::json json_in(const py::object& o) {
  return io::parse_json(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(harmonia, m) {
  m.doc() = "Harmonic analysis toolkit: sequence spaces, Fourier analysis, Banach algebras, hulls";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<OverflowError>(m, "OverflowError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<CertificateError>(m, "CertificateError", base.ptr());

  m.def("lp_norm", [](const std::vector<Complex>& f, double p) {
    return seq::lp_norm(seq::SeqVector(f), exponent(p));
  }, py::arg("f"), py::arg("p"));
  m.def("conjugate_exponent", [](double p) {
    return seq::conjugate_exponent(exponent(p)).value();
  });
  m.def("pairing", [](const std::vector<Complex>& f, const std::vector<Complex>& g) {
    return seq::pairing(seq::SeqVector(f), seq::SeqVector(g));
  });
  m.def("inner_product", [](const std::vector<Complex>& f, const std::vector<Complex>& g) {
    return seq::inner_product(seq::SeqVector(f), seq::SeqVector(g));
  });
  m.def("dual_norm", [](const std::vector<Complex>& g, double p) {
    auto r = seq::dual_norm(seq::SeqVector(g), exponent(p));
    auto e = r.extremizer.entries();
    return py::make_tuple(r.value, std::vector<Complex>(e.begin(), e.end()));
  }, "(value, extremizer)");

  m.def("poly_mul", [](const py::object& p, const py::object& q) {
    return json_out(io::to_json(poly_mul(io::polynomial_from_json(json_in(p)),
                                         io::polynomial_from_json(json_in(q)))));
  }, "product of two polynomials given as {dim, terms} dicts");
  m.def("poly_eval", [](const py::object& p, const std::vector<Complex>& z) {
    return poly_eval(io::polynomial_from_json(json_in(p)), z);
  });
  m.def("exp_series", [](Complex z, unsigned order) {
    auto r = exp_series(z, order);
    return py::make_tuple(r.value, r.error_bound);
  }, "(value, error_bound)");

  m.def("poisson_kernel", &torus::poisson_kernel);
  m.def("poisson_mass", [](const std::vector<Complex>& z, std::size_t n) {
    return torus::poisson_mass(z, n);
  });
  m.def("fourier_analyze", [](std::size_t dim, std::size_t N, const std::vector<Complex>& values, int band) {
    return json_out(io::to_json(torus::analyze(torus::TorusFunction(torus::TorusGrid(dim, N), values), band)));
  }, py::arg("dim"), py::arg("N"), py::arg("values"), py::arg("band") = -1);
  m.def("synthesize", [](const py::object& c, const std::vector<Complex>& z) {
    return torus::synthesize(io::coeff_table_from_json(json_in(c)), z);
  });
  m.def("parseval", [](std::size_t dim, std::size_t N, const std::vector<Complex>& values) {
    auto p = torus::parseval(torus::TorusFunction(torus::TorusGrid(dim, N), values));
    return py::make_tuple(p.sum_of_squares, p.energy_integral);
  });
  m.def("abel_sum", [](const std::vector<Complex>& a, double r) {
    auto s = torus::abel_sum(a, r);
    return py::make_tuple(s.value, s.tail_bound);
  });

  m.def("ft_closed_form", [](const py::object& g, const std::vector<Complex>& zeta) {
    return line::ft_closed_form(io::closed_form_from_json(json_in(g)), zeta);
  });
  m.def("poisson_Rn", [](const std::vector<double>& a, const std::vector<double>& x) {
    return line::poisson_Rn(a, x);
  });
  m.def("pa_hat_integral", [](double a, double X, std::size_t M) {
    auto r = line::pa_hat_integral(a, X, M);
    return py::make_tuple(r.quadrature, r.tail, r.total);
  });

  m.def("operator_norm", [](const std::vector<std::vector<Complex>>& rows) {
    return alg::norm(alg::Element::matrix(to_matrix(rows)));
  });
  m.def("spectral_radius", [](const std::vector<std::vector<Complex>>& rows, unsigned max_power) {
    return alg::spectral_radius(alg::Element::matrix(to_matrix(rows)), max_power).estimate;
  }, py::arg("x"), py::arg("max_power") = 256);
  m.def("spectral_radius_eig", [](const std::vector<std::vector<Complex>>& rows) {
    return alg::spectral_radius_eig(alg::Element::matrix(to_matrix(rows)));
  });
  m.def("neumann_inverse", [](const std::vector<std::vector<Complex>>& rows, double tol) {
    auto r = alg::neumann_inverse(alg::Element::matrix(to_matrix(rows)), tol);
    return py::make_tuple(from_matrix(r.inverse.mat()), r.bound, r.terms);
  }, py::arg("a"), py::arg("tol") = 1e-12);
  m.def("volterra_power_norm", &alg::volterra_power_norm);

  m.def("convex_membership", [](const std::vector<double>& x, const std::vector<std::vector<double>>& pts, double tol) {
    hull::PointCloud S(x.size(), pts);
    return json_out(io::to_json(hull::convex_membership(x, S, tol)));
  }, py::arg("x"), py::arg("points"), py::arg("tol") = 1e-9);
  m.def("poly_hull_membership", [](const std::vector<Complex>& z, const std::vector<std::vector<Complex>>& pts, double tol) {
    hull::CircularSample E(z.size(), pts);
    return json_out(io::to_json(hull::poly_hull_membership(z, E, tol)));
  }, py::arg("z"), py::arg("sample"), py::arg("tol") = 1e-9);
}

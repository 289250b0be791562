#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubesos/cube_fourier.hpp"
#include "cubesos/errors.hpp"
#include "cubesos/gamma.hpp"
#include "cubesos/inner.hpp"
#include "cubesos/instances.hpp"
#include "cubesos/io.hpp"
#include "cubesos/kernel.hpp"
#include "cubesos/krawtchouk.hpp"
#include "cubesos/outer.hpp"
#include "cubesos/qary.hpp"

namespace py = pybind11;
using namespace cubesos;

PYBIND11_MODULE(cubesos, m) {
  m.doc() = "Sum-of-squares hierarchies on the boolean cube";

  py::register_exception<NoCertificate>(m, "NoCertificate", PyExc_RuntimeError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<CubePolynomial>(m, "CubePolynomial")
      .def(py::init<int>(), py::arg("n"))
      .def_static("constant", &CubePolynomial::constant)
      .def_property_readonly("n", &CubePolynomial::n)
      .def("degree", &CubePolynomial::degree)
      .def("terms", &CubePolynomial::terms)
      .def("coef", &CubePolynomial::coef)
      .def("add_term", &CubePolynomial::add_term, py::arg("mask"), py::arg("c"))
      .def("add_monomial", &CubePolynomial::add_monomial, py::arg("vars"), py::arg("c"))
      .def("__call__", &CubePolynomial::operator())
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * float())
      .def(float() * py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("to_json", [](const CubePolynomial& p) { return to_json(p).dump(); })
      .def_static("from_json", [](const std::string& s) { return cube_poly_from_json(Json::parse(s)); });

  py::class_<MatrixPolynomial>(m, "MatrixPolynomial")
      .def(py::init<int, int>(), py::arg("n"), py::arg("k"))
      .def_property_readonly("n", &MatrixPolynomial::n)
      .def_property_readonly("k", &MatrixPolynomial::k)
      .def("degree", &MatrixPolynomial::degree)
      .def("__getitem__", [](const MatrixPolynomial& F, std::pair<int, int> ij) { return F(ij.first, ij.second); })
      .def("set", &MatrixPolynomial::set);

  py::class_<MinResult>(m, "MinResult")
      .def_readonly("value", &MinResult::value)
      .def_readonly("argmin", &MinResult::argmin);

  m.def("brute_force_min", py::overload_cast<const CubePolynomial&>(&brute_force_min));
  m.def("brute_force_min", py::overload_cast<const MatrixPolynomial&>(&brute_force_min));
  m.def("sup_norm", py::overload_cast<const CubePolynomial&>(&sup_norm));
  m.def("sup_norm", py::overload_cast<const MatrixPolynomial&>(&sup_norm));
  m.def("value_table", &value_table);
  m.def("fourier_table", &fourier_table);
  m.def("to_bitstring", &to_bitstring);
  m.def("from_bitstring", &from_bitstring);

  m.def("random_poly", [](int n, int d, std::uint64_t seed) { return random_poly(n, d, seed); },
        py::arg("n"), py::arg("d"), py::arg("seed"));
  m.def("random_matrix_poly", &random_matrix_poly, py::arg("n"), py::arg("d"), py::arg("k"), py::arg("seed"));
  m.def("hamming_weight", &hamming_weight);
  m.def("maxcut_instance", &maxcut_instance);
  m.def("maxcut_complete", &maxcut_complete);
  m.def("stable_set_instance", &stable_set_instance, py::arg("edges"), py::arg("n"));

  m.def("kraw_eval", &kraw_eval, py::arg("n"), py::arg("q"), py::arg("k"), py::arg("t"));
  m.def("least_root", &least_root, py::arg("n"), py::arg("q"), py::arg("r"));
  m.def("levenshtein_phi", &levenshtein_phi, py::arg("t"), py::arg("q") = 2);

  m.def("gamma_d", &gamma_d);
  m.def("gamma_d_int", &gamma_d_int);
  m.def("C_d", &C_d);
  m.def("rho_infinity", &rho_infinity);
  m.def("rho_finite", [](int n, int d, int k, int q) { return rho_finite(n, d, k, q).value; }, py::arg("n"),
        py::arg("d"), py::arg("k"), py::arg("q") = 2);

  py::class_<InnerBoundResult>(m, "InnerBoundResult")
      .def_readonly("value", &InnerBoundResult::value)
      .def_readonly("order", &InnerBoundResult::order)
      .def_readonly("density_coeffs", &InnerBoundResult::density_coeffs)
      .def_readonly("residual", &InnerBoundResult::residual);
  m.def("inner_cube", &inner_cube, py::arg("f"), py::arg("r"));
  m.def("inner_matrix", &inner_matrix, py::arg("F"), py::arg("r"));

  py::class_<OuterBoundResult>(m, "OuterBoundResult")
      .def_readonly("value", &OuterBoundResult::value)
      .def_readonly("moment_value", &OuterBoundResult::moment_value)
      .def_readonly("r", &OuterBoundResult::r)
      .def_readonly("solved_order", &OuterBoundResult::solved_order)
      .def_readonly("basis", &OuterBoundResult::basis)
      .def_readonly("gram", &OuterBoundResult::gram)
      .def_property_readonly("status", [](const OuterBoundResult& r) { return to_string(r.status); })
      .def_readonly("gap", &OuterBoundResult::gap)
      .def_readonly("iterations", &OuterBoundResult::iterations);
  m.def(
      "outer_cube",
      [](const CubePolynomial& f, int r, bool early_exact) {
        OuterOptions opt;
        opt.early_exact = early_exact;
        return outer_cube(f, r, opt);
      },
      py::arg("f"), py::arg("r"), py::arg("early_exact") = false);
  m.def("outer_matrix", [](const MatrixPolynomial& F, int r) { return outer_matrix(F, r); }, py::arg("F"),
        py::arg("r"));

  py::class_<SosCubeCertificate>(m, "SosCubeCertificate")
      .def_readonly("n", &SosCubeCertificate::n)
      .def_readonly("r", &SosCubeCertificate::r)
      .def_readonly("delta", &SosCubeCertificate::delta)
      .def_readonly("weights", &SosCubeCertificate::weights)
      .def_readonly("u_sq", &SosCubeCertificate::u_sq)
      .def_readonly("residual", &SosCubeCertificate::residual)
      .def_readonly("closed_form", &SosCubeCertificate::closed_form)
      .def("lower_bound", &SosCubeCertificate::lower_bound)
      .def("to_json", [](const SosCubeCertificate& c) { return to_json(c).dump(); })
      .def_static("from_json", [](const std::string& s) { return certificate_from_json(Json::parse(s)); });
  m.def("certify", [](const CubePolynomial& f, int r) { return certify(f, r); }, py::arg("f"), py::arg("r"));
  m.def("verify_certificate", &verify_certificate);

  py::class_<QaryPolynomial>(m, "QaryPolynomial")
      .def(py::init<int, int>(), py::arg("n"), py::arg("q"))
      .def_property_readonly("n", &QaryPolynomial::n)
      .def_property_readonly("q", &QaryPolynomial::q)
      .def("degree", &QaryPolynomial::degree)
      .def("terms", &QaryPolynomial::terms)
      .def("add_term", &QaryPolynomial::add_term, py::arg("exponents"), py::arg("c"))
      .def("__call__", &QaryPolynomial::operator());
  py::class_<QaryMin>(m, "QaryMin")
      .def_readonly("value", &QaryMin::value)
      .def_readonly("argmin", &QaryMin::argmin);
  m.def("qary_brute_min", &qary_brute_min);
  m.def("random_qary_poly", &random_qary_poly, py::arg("n"), py::arg("q"), py::arg("d"), py::arg("seed"));
  m.def("qary_hamming_weight", &qary_hamming_weight);
  m.def("qary_inner_symmetrized", &qary_inner_symmetrized, py::arg("F"), py::arg("q"), py::arg("r"));
}

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abelfft/characterization.hpp"
#include "abelfft/io.hpp"
#include "abelfft/transform.hpp"

namespace py = pybind11;
using namespace abelfft;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

GFunction make_function(const Group& g, Side side, const ComplexArray& values) {
  if (values.ndim() != 1) throw py::value_error("values must be one-dimensional");
  const Complex* data = values.data();
  return GFunction(g, side, std::vector<Complex>(data, data + values.size()));
}

ComplexArray values_of(const GFunction& f) {
  const auto n = static_cast<py::ssize_t>(f.size());
  return ComplexArray({n}, {static_cast<py::ssize_t>(sizeof(Complex))}, f.values().data());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fourier analysis on finite abelian groups";
  m.attr("__version__") = io::kToolVersion;

  py::register_exception<Error>(m, "Error");
  py::register_exception<NotEssentiallyFourier>(m, "NotEssentiallyFourier", PyExc_RuntimeError);

  py::enum_<Side>(m, "Side").value("primal", Side::primal).value("dual", Side::dual);
  py::enum_<OperatorForm>(m, "OperatorForm").value("T", OperatorForm::T).value("U", OperatorForm::U);

  py::class_<Group>(m, "Group")
      .def(py::init([](const std::vector<std::int64_t>& orders) { return make_group(orders); }),
           py::arg("orders"))
      .def_property_readonly("orders", &Group::orders)
      .def_property_readonly("size", &Group::size)
      .def("index_of",
           [](const Group& g, const std::vector<std::int64_t>& coords) {
             return index_of(make_element(g, coords));
           })
      .def("element_of", [](const Group& g, std::size_t j) { return element_of(j, g).coords; })
      .def("add", &Group::add_index)
      .def("neg", &Group::neg_index)
      .def("character",
           [](const Group& g, std::size_t x, std::size_t xi) {
             return character(element_of(x, g), element_of(xi, g));
           })
      .def("__eq__", [](const Group& a, const Group& b) { return a == b; })
      .def("__repr__", [](const Group& g) { return "Group(" + py::repr(py::cast(g.orders())).cast<std::string>() + ")"; });

  py::class_<Automorphism>(m, "Automorphism")
      .def(py::init<Group, std::vector<std::size_t>>(), py::arg("group"), py::arg("perm"))
      .def_static("identity", &Automorphism::identity)
      .def_property_readonly("perm", &Automorphism::perm)
      .def_property_readonly("group", &Automorphism::group)
      .def("inverse", &Automorphism::inverse)
      .def("__call__", &Automorphism::operator());

  m.def("is_automorphism",
        [](const std::vector<std::size_t>& perm, const Group& g) { return is_automorphism(perm, g); });
  m.def("random_automorphism", &random_automorphism, py::arg("group"), py::arg("seed"),
        py::arg("max_attempts") = 10000);

  py::class_<GFunction>(m, "GFunction")
      .def(py::init(&make_function), py::arg("group"), py::arg("side"), py::arg("values"))
      .def_property_readonly("group", &GFunction::group)
      .def_property_readonly("side", &GFunction::side)
      .def_property_readonly("values", &values_of)
      .def("__len__", &GFunction::size);

  m.def("dft_naive", &dft_naive);
  m.def("fft_forward", &fft_forward);
  m.def("fft_inverse", &fft_inverse);
  m.def("star", &star);
  m.def("involution", &involution);
  m.def("pointwise_product", &pointwise_product);
  m.def("convolve", &convolve);
  m.def("convolve_fast", &convolve_fast);
  m.def("norm_2", &norm_2);
  m.def("norm_inf", &norm_inf);
  m.def("support", [](const GFunction& f, std::optional<double> tol) {
    return (tol ? support(f, *tol) : support(f)).indices();
  }, py::arg("f"), py::arg("tol") = py::none());

  py::class_<Operator>(m, "Operator")
      .def(py::init([](const Group& g, Side in, Side out, std::function<GFunction(const GFunction&)> fn) {
             // Python callables hold the GIL; keep recovery serial for them.
             return Operator(g, in, out, std::move(fn), false);
           }),
           py::arg("group"), py::arg("input_side"), py::arg("output_side"), py::arg("apply"))
      .def_static("from_matrix",
                  [](const Group& g, Side in, Side out, const ComplexArray& matrix, bool conjugate_input) {
                    const Complex* d = matrix.data();
                    return Operator::from_matrix(
                        g, in, out, MatrixForm{std::vector<Complex>(d, d + matrix.size()), conjugate_input});
                  },
                  py::arg("group"), py::arg("input_side"), py::arg("output_side"), py::arg("matrix"),
                  py::arg("conjugate_input") = false)
      .def("__call__", &Operator::operator())
      .def_property_readonly("group", &Operator::group)
      .def_property_readonly("form", &Operator::form);

  m.def("build_reference_operator", &build_reference_operator, py::arg("group"), py::arg("psi"),
        py::arg("conjugation"), py::arg("form"));

  py::class_<HypothesisReport>(m, "HypothesisReport")
      .def_readonly("max_err_a", &HypothesisReport::max_err_a)
      .def_readonly("max_err_b", &HypothesisReport::max_err_b)
      .def_readonly("max_err_c", &HypothesisReport::max_err_c)
      .def_readonly("trials", &HypothesisReport::trials)
      .def_readonly("basis_pairs", &HypothesisReport::basis_pairs)
      .def_property_readonly("passed", &HypothesisReport::pass);
  m.def("check_hypotheses", &check_hypotheses, py::arg("op"), py::arg("trials") = 8,
        py::arg("seed") = 0, py::arg("tol") = kDefaultTolerance);

  py::class_<RecoveryReport>(m, "RecoveryReport")
      .def_readonly("psi", &RecoveryReport::psi)
      .def_readonly("phi", &RecoveryReport::phi)
      .def_readonly("conjugation", &RecoveryReport::conjugation)
      .def_readonly("residual", &RecoveryReport::residual)
      .def_readonly("m_samples", &RecoveryReport::m_samples)
      .def_property_readonly("diagnostics", [](const RecoveryReport& r) {
        return py::module_::import("json").attr("loads")(io::diagnostics_to_json(r.diagnostics).dump());
      });
  m.def("recover", py::overload_cast<const Operator&, double>(&recover), py::arg("op"),
        py::arg("tol") = kDefaultTolerance);
  m.def("verify_recovery", &verify_recovery, py::arg("op"), py::arg("report"), py::arg("trials") = 8,
        py::arg("seed") = 0);
}

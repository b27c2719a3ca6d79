#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmorris/cli.hpp"
#include "qmorris/closed_forms.hpp"
#include "qmorris/ct_engine.hpp"
#include "qmorris/error.hpp"
#include "qmorris/kernels.hpp"
#include "qmorris/qpoly.hpp"
#include "qmorris/qrat.hpp"

namespace py = pybind11;
using namespace qmorris;

namespace {

py::object to_pyint(const Integer& z) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_pyint(r.get_num()), to_pyint(r.get_den()));
}

// Accepts int, fractions.Fraction or "num/den".
Rational to_rational(const py::handle& obj) {
  Rational r;
  if (r.set_str(py::str(obj).cast<std::string>(), 10) != 0) throw DomainError("not a rational number");
  r.canonicalize();
  return r;
}

ParamSet make_params(int n, int a, int b, int m, int l, int k, const py::object& q0) {
  ParamSet p{n, a, b, m, l, k, std::nullopt};
  if (!q0.is_none()) p.q0 = to_rational(q0);
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_qmorris, mod) {
  mod.doc() = "Exact constant-term computations for q-Dyson and q-Morris type products.";

  static py::exception<Error> base(mod, "QmorrisError", PyExc_RuntimeError);
  py::register_exception<DomainError>(mod, "DomainError", base.ptr());
  py::register_exception<DivisionByZero>(mod, "DivisionByZero", base.ptr());
  py::register_exception<NotPolynomial>(mod, "NotPolynomial", base.ptr());
  py::register_exception<DuplicateFactor>(mod, "DuplicateFactor", base.ptr());
  py::register_exception<PositiveDegree>(mod, "PositiveDegree", base.ptr());
  py::register_exception<ImproperBranch>(mod, "ImproperBranch", base.ptr());

  py::class_<QPoly>(mod, "QPoly")
      .def(py::init([](long c) { return QPoly(c); }), py::arg("c") = 0)
      .def(py::init([](const std::string& s) { return QPoly::parse(s); }))
      .def_static("monomial", [](long c, int e) { return QPoly::monomial(Integer(c), e); })
      .def("eval", [](const QPoly& p, const py::object& q0) { return to_fraction(p.eval(to_rational(q0))); })
      .def("coeff", [](const QPoly& p, int e) { return to_pyint(p.coeff(e)); })
      .def("terms",
           [](const QPoly& p) {
             py::list out;
             for (const auto& [e, c] : p.terms()) out.append(py::make_tuple(e, to_pyint(c)));
             return out;
           })
      .def_property_readonly("degree", &QPoly::degree)
      .def_property_readonly("low_degree", &QPoly::low_degree)
      .def("is_zero", &QPoly::is_zero)
      .def("__str__", &QPoly::to_string)
      .def("__repr__", [](const QPoly& p) { return "QPoly('" + p.to_string() + "')"; })
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self);

  py::class_<QRat>(mod, "QRat")
      .def(py::init([](const QPoly& num, const QPoly& den) { return QRat::normalize(num, den); }), py::arg("num"),
           py::arg("den") = QPoly(1))
      .def(py::init([](const std::string& s) { return QRat::parse(s); }))
      .def_property_readonly("num", &QRat::num)
      .def_property_readonly("den", &QRat::den)
      .def("is_poly", &QRat::is_poly)
      .def("is_zero", &QRat::is_zero)
      .def("eval", [](const QRat& r, const py::object& q0) { return to_fraction(r.eval(to_rational(q0))); })
      .def("__str__", &QRat::to_string)
      .def("__repr__", [](const QRat& r) { return "QRat('" + r.to_string() + "')"; })
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self);

  py::class_<ParamSet>(mod, "ParamSet")
      .def(py::init(&make_params), py::arg("n"), py::arg("a") = 0, py::arg("b") = 0, py::arg("m") = 0,
           py::arg("l") = 0, py::arg("k") = 0, py::arg("q0") = py::none())
      .def_readwrite("n", &ParamSet::n)
      .def_readwrite("a", &ParamSet::a)
      .def_readwrite("b", &ParamSet::b)
      .def_readwrite("m", &ParamSet::m)
      .def_readwrite("l", &ParamSet::l)
      .def_readwrite("k", &ParamSet::k)
      .def_property_readonly("d", &ParamSet::d)
      .def_property_readonly("h_extra", &ParamSet::h_extra)
      .def("__str__", &ParamSet::to_string)
      .def("__repr__", [](const ParamSet& p) { return "ParamSet(" + p.to_string() + ")"; });

  mod.def("q_factorial", &q_factorial, py::arg("m"));
  mod.def("gauss_binom", &gauss_binom, py::arg("N"), py::arg("k"));
  mod.def("qbinomial_theorem_finite", &qbinomial_theorem_finite, py::arg("N"));
  mod.def("dyson_rhs", [](const std::vector<int>& a) { return to_pyint(dyson_rhs(a)); }, py::arg("a"));
  mod.def("qdyson_rhs", [](const std::vector<int>& a) { return qdyson_rhs(a); }, py::arg("a"));
  mod.def(
      "morris_rhs",
      [](const ParamSet& p, const std::string& form) {
        if (form != "rewritten" && form != "factorial") throw DomainError("form must be 'rewritten' or 'factorial'");
        return morris_rhs(p, form == "factorial" ? MorrisForm::Factorial : MorrisForm::Rewritten);
      },
      py::arg("p"), py::arg("form") = "rewritten");
  mod.def(
      "vanishing_sets",
      [](const ParamSet& p) {
        VanishingSets v = vanishing_sets(p);
        py::dict d;
        d["d1"] = v.d1;
        d["d2"] = v.d2;
        d["d3"] = v.d3;
        d["distinct"] = v.distinct;
        return d;
      },
      py::arg("p"));
  mod.def("prop52_lhs", &prop52_lhs, py::arg("n"), py::arg("b"), py::arg("k"));
  mod.def("prop52_rhs", &prop52_rhs, py::arg("n"), py::arg("b"), py::arg("k"));

  mod.def("qdyson_ct", [](const std::vector<int>& a) { return ct_direct(build_qdyson_kernel(a)); }, py::arg("a"));
  mod.def(
      "dyson_ct",
      [](const std::vector<int>& a) {
        QRat v = ct_direct(build_dyson_kernel(a));
        return to_pyint(v.num().coeff(0));
      },
      py::arg("a"));
  mod.def(
      "hk_ct", [](const ParamSet& p) { return ct_direct(build_hk_kernel(p.n, p.a, p.b, p.m, p.l, p.k)); },
      py::arg("p"));
  mod.def(
      "ct_recursion",
      [](const ParamSet& p, int h) {
        RecursionResult r = ct_recursion(p, h);
        py::dict d;
        d["value"] = r.value;
        d["certificate"] = py::module_::import("json").attr("loads")(r.certificate.to_json());
        d["valid"] = revalidate(r.certificate);
        d["expanded_leaves"] = r.certificate.count(Verdict::Expanded);
        d["zero_leaves"] = r.certificate.count(Verdict::ZeroByFactor);
        return d;
      },
      py::arg("p"), py::arg("h"));
  mod.def(
      "interp_in_qa",
      [](const ParamSet& p) {
        py::list out;
        for (const auto& c : interp_in_qa(p).coeffs) out.append(to_fraction(c));
        return out;
      },
      py::arg("p"));
  mod.def(
      "mprime_at", [](const ParamSet& p, int h, const py::object& q0) { return to_fraction(mprime_at(p, h, to_rational(q0))); },
      py::arg("p"), py::arg("h"), py::arg("q0"));
  mod.def("aomoto_expansion_check", &aomoto_expansion_check, py::arg("p"));
  mod.def(
      "lemma_important",
      [](int k, int b, const std::vector<int>& tuple) {
        return lemma_important(k, b, static_cast<int>(tuple.size()), tuple).to_string();
      },
      py::arg("k"), py::arg("b"), py::arg("tuple"));
  mod.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "qmorris");
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}

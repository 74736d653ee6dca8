#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qgrkit/collection.hpp"
#include "qgrkit/error.hpp"
#include "qgrkit/mutation.hpp"
#include "qgrkit/report.hpp"

namespace py = pybind11;
using namespace qgrkit;

namespace {

Ring ring(int n) {
  if (n < 2) throw QgrError(ErrorKind::kInvalidParameter, "n must be at least 2");
  return make_ring(n, true);
}

std::string ext_report(int n, const std::string& src, const std::string& dst, int imax) {
  Ring A = ring(n);
  ExtOptions o;
  o.i_max = imax;
  auto M = parse_object(src, A), N = parse_object(dst, A);
  return ext_json(default_engine().ext(M.module, N.module, o)).dump();
}

NamedCollection collection(int n, const std::vector<std::string>& objects, const std::string& label) {
  Ring A = ring(n);
  if (objects.empty()) return builtin_collection(label, A);
  NamedCollection c{"custom", n, {}};
  for (const auto& e : objects) c.objects.push_back(parse_object(e, A));
  return c;
}

std::string verify_report(int n, const std::string& label, const std::vector<std::string>& objects, int jobs,
                          bool morphisms) {
  NamedCollection c = collection(n, objects, label);
  VerifyOptions o;
  o.jobs = jobs;
  CollectionReport r = verify_collection(c, o);
  if (!morphisms) return collection_json(r).dump();
  MorphismAlgebra alg = morphism_algebra(c, r);
  return collection_json(r, &alg).dump();
}

std::string mutate_report(int n, const std::string& object, const std::string& left, const std::string& right) {
  Ring A = ring(n);
  if (left.empty() == right.empty()) throw QgrError(ErrorKind::kInvalidParameter, "give exactly one of left, right");
  auto Y = parse_object(object, A);
  auto chain = left.empty() ? iterated_right_mutation(Y, parse_object_list(right, A))
                            : iterated_left_mutation(parse_object_list(left, A), Y);
  return mutation_json(chain).dump();
}

}  // namespace

PYBIND11_MODULE(_qgrkit, m) {
  m.doc() = "Ext groups, mutations and exceptional collections over A = B/(x0x3 + x1^(2n-1) + x2^2)";

  static py::exception<QgrError> base(m, "QgrError");
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const QgrError& e) {
      py::set_error(base, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("hilbert_dim", [](int n, int k) { return hilbert_dim(*ring(n), k); }, py::arg("n"), py::arg("k"));
  m.def("hilbert_series", &hilbert_series, py::arg("n"), py::arg("kmax"));
  m.def(
      "object_dims",
      [](int n, const std::string& expr, int lo, int hi) {
        return hilbert_window(parse_object(expr, ring(n)).module, lo, hi);
      },
      py::arg("n"), py::arg("expr"), py::arg("lo"), py::arg("hi"));
  m.def(
      "object_name", [](int n, const std::string& expr) { return parse_object(expr, ring(n)).label(); }, py::arg("n"),
      py::arg("expr"));
  m.def("_ext", &ext_report, py::arg("n"), py::arg("source"), py::arg("target"), py::arg("imax") = 2,
        py::call_guard<py::gil_scoped_release>());
  m.def("_verify", &verify_report, py::arg("n"), py::arg("label"), py::arg("objects"), py::arg("jobs"),
        py::arg("morphisms"), py::call_guard<py::gil_scoped_release>());
  m.def("_mutate", &mutate_report, py::arg("n"), py::arg("object"), py::arg("left"), py::arg("right"),
        py::call_guard<py::gil_scoped_release>());
  m.def("builtin_labels", &builtin_labels);
}

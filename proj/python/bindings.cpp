#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "permgraph/dynamics.hpp"
#include "permgraph/entropy.hpp"
#include "permgraph/errors.hpp"
#include "permgraph/graph.hpp"
#include "permgraph/io.hpp"
#include "permgraph/signal.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace permgraph;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw InvalidArgument("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

// Rows are channels, columns are time samples.
MultivariateSignal to_signal(const Array& a) {
  if (a.ndim() == 1) return MultivariateSignal(1, a.shape(0), to_vector(a));
  if (a.ndim() != 2) throw InvalidArgument("expected a (channels, samples) array");
  return MultivariateSignal(a.shape(0), a.shape(1), {a.data(), a.data() + a.size()});
}

py::array_t<double> to_array(const MultivariateSignal& u) {
  py::array_t<double> out({u.channels(), u.length()});
  std::copy(u.data().begin(), u.data().end(), out.mutable_data());
  return out;
}

Graph graph_from_array(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1))
    throw InvalidArgument("adjacency matrix must be square");
  return Graph::from_dense(a.shape(0), {a.data(), static_cast<std::size_t>(a.size())});
}

}  // namespace

PYBIND11_MODULE(_permgraph, m) {
  m.doc() = "Permutation entropy for time series, graph signals and multichannel signals.";

  py::register_exception<NoValidPatterns>(m, "NoValidPatterns", PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_array), "adjacency"_a)
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_arcs", &Graph::num_arcs)
      .def_property_readonly("is_sparse", &Graph::is_sparse)
      .def("weight", &Graph::weight, "source"_a, "target"_a)
      .def("to_dense",
           [](const Graph& g) {
             const std::size_t n = g.num_vertices();
             py::array_t<double> out({n, n});
             const auto dense = g.to_dense();
             std::copy(dense.begin(), dense.end(), out.mutable_data());
             return out;
           })
      .def(py::self == py::self)
      .def("__repr__", [](const Graph& g) {
        return "Graph(num_vertices=" + std::to_string(g.num_vertices()) +
               ", num_arcs=" + std::to_string(g.num_arcs()) + ")";
      });

  m.def("directed_path", &directed_path, "n"_a);
  m.def("complete_graph", &complete_graph, "p"_a);
  m.def("empty_graph", &empty_graph, "p"_a);
  m.def("cartesian_product", &cartesian_product, "g"_a, "h"_a);
  m.def("load_adjacency", &load_adjacency, "path"_a);

  m.def(
      "neighborhood_embedding",
      [](const Graph& g, const Array& x, std::size_t m, std::size_t L) {
        const auto e = neighborhood_embedding(g, to_vector(x), m, L);
        py::array_t<double> values({e.num_vertices(), e.dimension()});
        py::array_t<bool> valid(e.num_vertices());
        for (std::size_t i = 0; i < e.num_vertices(); ++i) {
          for (std::size_t k = 0; k < e.dimension(); ++k) values.mutable_at(i, k) = e.value(i, k);
          valid.mutable_at(i) = e.valid(i);
        }
        return py::make_tuple(values, valid);
      },
      "g"_a, "x"_a, "m"_a = 3, "L"_a = 1,
      "Returns (values, valid): an (n, m) array and a boolean mask of complete rows.");

  m.def(
      "ordinal_pattern",
      [](const Array& v) { return ordinal_pattern(to_vector(v)).ranks(); }, "v"_a,
      "1-based positions of v in ascending order, ties by position.");

  m.def(
      "permutation_entropy",
      [](const Array& x, std::size_t m, std::size_t L) {
        return permutation_entropy(to_vector(x), {m, L});
      },
      "x"_a, "m"_a = 3, "L"_a = 1);
  m.def(
      "pe_graph",
      [](const Graph& g, const Array& x, std::size_t m, std::size_t L) {
        return pe_graph(g, to_vector(x), {m, L});
      },
      "g"_a, "x"_a, "m"_a = 3, "L"_a = 1);
  m.def(
      "mmspe", [](const Array& u, std::size_t m, std::size_t L) { return mmspe(to_signal(u), {m, L}); },
      "u"_a, "m"_a = 3, "L"_a = 1);
  m.def(
      "mpe_graph",
      [](const Array& u, const std::optional<Graph>& interaction, std::size_t m, std::size_t L) {
        const auto signal = to_signal(u);
        return mpe_graph(signal, interaction ? *interaction : complete_graph(signal.channels()),
                         {m, L});
      },
      "u"_a, "interaction"_a = py::none(), "m"_a = 3, "L"_a = 1,
      "MPE_G of a (channels, samples) array; the interaction graph defaults to complete.");

  m.def(
      "henon",
      [](double a, double b, double x0, double y0, std::size_t n) {
        return to_array(henon({a, b, x0, y0, n}));
      },
      "a"_a = 1.4, "b"_a = 0.3, "x0"_a = 0.5, "y0"_a = 0.1, "n"_a = 100);
  m.def(
      "lorenz",
      [](double sigma, double rho, double beta, std::array<double, 3> init, double dt,
         std::size_t steps, std::size_t transient) {
        return to_array(lorenz({sigma, rho, beta, init, dt, steps, transient}));
      },
      "sigma"_a = 10.0, "rho"_a = 28.0, "beta"_a = 8.0 / 3.0,
      "init"_a = std::array<double, 3>{1.0, 1.0, 1.0}, "dt"_a = 0.01, "steps"_a = 15000,
      "transient"_a = 5000);

  m.def(
      "load_signal", [](const std::string& path) { return to_array(load_signal(path)); }, "path"_a,
      "CSV with one column per channel, returned as a (channels, samples) array.");
}

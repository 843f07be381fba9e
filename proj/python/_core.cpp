// Python bindings. Reports and certificates cross the boundary as JSON text
// and are decoded on the Python side, so both sides share one schema.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "loopforge/construct_even.hpp"
#include "loopforge/construct_odd.hpp"
#include "loopforge/loop_analysis.hpp"
#include "loopforge/perm_group.hpp"
#include "loopforge/search.hpp"
#include "loopforge/table_io.hpp"

namespace py = pybind11;
using namespace loopforge;

namespace {

CayleyTable table_from_rows(const std::vector<std::vector<Point>>& rows)
{
  const std::size_t n = rows.size();
  std::vector<Point> cells;
  cells.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n)
      throw std::invalid_argument("table rows must all have length " + std::to_string(n));
    cells.insert(cells.end(), r.begin(), r.end());
  }
  return CayleyTable(n, std::move(cells));
}

std::vector<std::vector<Point>> rows_of(const CayleyTable& t)
{
  std::vector<std::vector<Point>> out;
  for (Point a = 0; a < t.order(); ++a) {
    auto r = t.row(a);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::vector<Permutation> to_perms(const std::vector<std::vector<Point>>& gens)
{
  std::vector<Permutation> out;
  for (const auto& g : gens)
    out.emplace_back(g);
  return out;
}

py::object big(const BigInt& x)
{
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.str().c_str(), nullptr, 10));
}

TargetGroup target_of(const std::string& g)
{
  if (g == "sym")
    return TargetGroup::Symmetric;
  if (g == "alt")
    return TargetGroup::Alternating;
  throw std::invalid_argument("group must be 'sym' or 'alt', got '" + g + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Unbreakable loops: construction, verification and enumeration";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InfeasibleTarget>(m, "InfeasibleTarget", PyExc_ValueError);

  py::class_<CayleyTable>(m, "Table")
      .def(py::init(&table_from_rows), py::arg("rows"))
      .def_property_readonly("order", &CayleyTable::order)
      .def("rows", &rows_of)
      .def("__getitem__",
           [](const CayleyTable& t, std::pair<Point, Point> ab) {
             if (ab.first >= t.order() || ab.second >= t.order())
               throw py::index_error("cell out of range");
             return t(ab.first, ab.second);
           })
      .def("__len__", &CayleyTable::order)
      .def("__eq__", [](const CayleyTable& a, const CayleyTable& b) { return a == b; })
      .def("__str__", &format_table_text)
      .def("__repr__",
           [](const CayleyTable& t) { return "<Table of order " + std::to_string(t.order()) + ">"; })
      .def("to_json", [](const CayleyTable& t) { return table_to_json(t).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return table_from_json(nlohmann::json::parse(s)); });

  py::implicitly_convertible<py::list, CayleyTable>();

  m.def("parse_table", &parse_table_text, py::arg("text"));
  m.def("format_table", &format_table_text, py::arg("table"));
  m.def("read_table", &read_table_file, py::arg("path"));
  m.def("write_table", &write_table_file, py::arg("path"), py::arg("table"));

  m.def("_analyze_json", [](const CayleyTable& t) {
    py::gil_scoped_release release;
    return report_to_json(analyze(t)).dump();
  });
  m.def("is_unbreakable", &is_unbreakable, py::arg("table"));
  m.def("is_commutative", &is_commutative, py::arg("table"));
  m.def("is_associative", &is_associative, py::arg("table"));
  m.def("canonical_form", &canonical_form, py::arg("table"));
  m.def("subloop_closure", [](const CayleyTable& t, const std::vector<Point>& seed) {
    return subloop_closure(t, seed);
  }, py::arg("table"), py::arg("seed"));
  m.def("multiplication_group_order", [](const CayleyTable& t) {
    BigInt order;
    {
      py::gil_scoped_release release;
      order = multiplication_group(t).order();
    }
    return big(order);
  }, py::arg("table"));

  m.def("group_order", [](std::size_t degree, const std::vector<std::vector<Point>>& gens) {
    const auto perms = to_perms(gens);
    return big(GroupDescriptor::from_generators(degree, perms).order());
  }, py::arg("degree"), py::arg("generators"));
  m.def("classify", [](std::size_t degree, const std::vector<std::vector<Point>>& gens) {
    const auto perms = to_perms(gens);
    const GroupClass c = classify_group(GroupDescriptor::from_generators(degree, perms));
    return py::make_tuple(std::string(to_string(c.kind)), big(c.order));
  }, py::arg("degree"), py::arg("generators"));
  m.def("parity", [](const std::vector<Point>& images) {
    return std::string(to_string(parity(Permutation(images))));
  }, py::arg("images"));

  m.def("construct", [](std::size_t n, const std::string& group) {
    py::gil_scoped_release release;
    if (n % 2 == 0) {
      if (group != "sym")
        throw std::invalid_argument("even orders are only constructed with group 'sym'");
      return construct_even_loop(n);
    }
    return construct_odd_loop(n, target_of(group), cache_from_environment());
  }, py::arg("n"), py::arg("group") = "sym");
  m.def("_certificate_json", [](const CayleyTable& t) {
    return certificate_to_json(certify_even_generators(t)).dump();
  });

  m.def("_census_json", [](std::size_t n, unsigned jobs) {
    EnumerationOptions opts;
    opts.jobs = jobs;
    py::gil_scoped_release release;
    return census_to_json(census(n, opts)).dump();
  }, py::arg("n"), py::arg("jobs") = 1);
  m.def("enumerate_loops", [](std::size_t n, std::optional<std::size_t> limit) {
    std::vector<CayleyTable> out;
    enumerate_loops(n, [&](const CayleyTable& t) {
      out.push_back(t);
      return !limit || out.size() < *limit;
    });
    return out;
  }, py::arg("n"), py::arg("limit") = py::none());
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "imbrex/analysis.hpp"
#include "imbrex/axioms.hpp"
#include "imbrex/catalog.hpp"
#include "imbrex/mazzocca_melone.hpp"

namespace py = pybind11;
using namespace imbrex;

namespace {

Params params(std::optional<int> m, std::optional<int> n, std::optional<int> p, std::optional<int> r,
              std::optional<int> q, const std::string& from) {
  Params out;
  out.m = m, out.n = n, out.p = p, out.r = r, out.q = q, out.from = from;
  return out;
}

ScanOptions scan(const IncidenceGeometry& g, std::optional<std::size_t> sample, std::uint64_t seed, bool full) {
  auto o = default_scan(g.point_count());
  if (full) o.sample.reset();
  if (sample) o.sample = sample;
  o.seed = seed;
  return o;
}

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string reports_json(const std::vector<AxiomReport>& rs) {
  ojson a = ojson::array();
  for (const auto& r : rs) a.push_back(r.to_json());
  return a.dump();
}

}  // namespace

PYBIND11_MODULE(_imbrex, m) {
  m.doc() = "Finite incidence geometries and their axioms";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<IncidenceGeometry>(m, "Geometry")
      .def(py::init<std::size_t, std::vector<std::vector<Point>>, std::string>(), py::arg("point_count"),
           py::arg("lines"), py::arg("name") = "")
      .def_property_readonly("name", &IncidenceGeometry::name)
      .def_property_readonly("point_count", &IncidenceGeometry::point_count)
      .def_property_readonly("line_count", &IncidenceGeometry::line_count)
      .def_property_readonly("lines", &IncidenceGeometry::lines)
      .def("collinear",
           [](const IncidenceGeometry& g, Point a, Point b) {
             if (a >= g.point_count() || b >= g.point_count()) throw py::index_error("point out of range");
             return g.collinear(a, b);
           })
      .def("to_json", [](const IncidenceGeometry& g) { return canonical_json_text(g); })
      .def_static("from_json", [](const std::string& s) { return geometry_from_json(nlohmann::json::parse(s)); })
      .def("__repr__", [](const IncidenceGeometry& g) {
        return "<Geometry " + g.name() + ": " + std::to_string(g.point_count()) + " points, " +
               std::to_string(g.line_count()) + " lines>";
      });

  py::class_<EmbeddedMMSet>(m, "Embedded")
      .def_readonly("name", &EmbeddedMMSet::name)
      .def_readonly("ambient_dim", &EmbeddedMMSet::ambient_dim)
      .def_readonly("d", &EmbeddedMMSet::d)
      .def_readonly("r", &EmbeddedMMSet::r)
      .def_readonly("xi", &EmbeddedMMSet::xi)
      .def_property_readonly("point_count", [](const EmbeddedMMSet& e) { return e.points.size(); })
      .def("to_json", [](const EmbeddedMMSet& e) { return to_json(e).dump(); })
      .def_static("from_json", [](const std::string& s) { return embedded_from_json(nlohmann::json::parse(s)); });

  m.def("supported_entries", &supported_entries);
  m.def(
      "build",
      [](const std::string& name, std::optional<int> m_, std::optional<int> n, std::optional<int> p,
         std::optional<int> r, std::optional<int> q, const std::string& from) {
        py::gil_scoped_release nogil;
        return build(name, params(m_, n, p, r, q, from));
      },
      py::arg("name"), py::kw_only(), py::arg("m") = py::none(), py::arg("n") = py::none(), py::arg("p") = py::none(),
      py::arg("r") = py::none(), py::arg("q") = py::none(), py::arg("from_") = "");
  m.def(
      "build_embedded",
      [](const std::string& name, std::optional<int> n, std::optional<int> p, std::optional<int> r,
         std::optional<int> q) { return build_embedded(name, params(std::nullopt, n, p, r, q, "")); },
      py::arg("name"), py::kw_only(), py::arg("n") = py::none(), py::arg("p") = py::none(), py::arg("r") = py::none(),
      py::arg("q") = py::none());

  m.def(
      "symps",
      [](const IncidenceGeometry& g) {
        const auto sy = enumerate_symps(g);
        std::vector<std::vector<Point>> out;
        for (const auto& s : sy.symps()) {
          std::vector<Point> pts;
          for (auto p = s.points.find_first(); p != PointSet::npos; p = s.points.find_next(p))
            pts.push_back(static_cast<Point>(p));
          out.push_back(std::move(pts));
        }
        return out;
      },
      py::arg("geometry"));
  m.def(
      "check_polar_space",
      [](const IncidenceGeometry& g, std::optional<int> rank) { return check_polar_space(g, rank).to_json().dump(); },
      py::arg("geometry"), py::arg("rank") = py::none());
  m.def(
      "is_imbrex",
      [](const IncidenceGeometry& g, std::optional<std::size_t> sample, std::uint64_t seed, bool full) {
        py::gil_scoped_release nogil;
        return is_imbrex(g, scan(g, sample, seed, full)).to_json().dump();
      },
      py::arg("geometry"), py::arg("sample") = py::none(), py::arg("seed") = 0, py::arg("full") = false);
  m.def(
      "block_analysis",
      [](const IncidenceGeometry& g) {
        py::gil_scoped_release nogil;
        const auto sy = enumerate_symps(g);
        const auto bg = block_geometry(g, sy);
        auto rs = bg.reports;
        rs.push_back(check_pair_regularity(g, sy));
        rs.push_back(check_spreads(g, sy, bg));
        return reports_json(rs);
      },
      py::arg("geometry"));
  m.def(
      "verify_nonclosing",
      [](const IncidenceGeometry& g) {
        py::gil_scoped_release nogil;
        const auto sy = enumerate_symps(g);
        return verify_nonclosing_theorem(g, sy, block_geometry(g, sy)).to_json().dump();
      },
      py::arg("geometry"));

  m.def(
      "check_mm",
      [](const EmbeddedMMSet& e, bool lmm3, std::optional<std::size_t> sample, std::uint64_t seed) {
        py::gil_scoped_release nogil;
        MMIndex idx(e);
        const auto mm = check_mm_axioms(idx);
        auto rs = mm.reports;
        if (lmm3 && mm.pass) {
          ScanOptions o;
          o.sample = sample;
          o.seed = seed;
          rs.push_back(check_lmm3(idx, mm, o));
        }
        return reports_json(rs);
      },
      py::arg("embedded"), py::arg("lmm3") = true, py::arg("sample") = py::none(), py::arg("seed") = 0);
  m.def(
      "residue", [](const EmbeddedMMSet& e, Point x) { return residue(MMIndex(e), x); }, py::arg("embedded"),
      py::arg("point"));
  m.def("describe", [](const EmbeddedMMSet& e) { return describe(e).dump(); }, py::arg("embedded"));
  m.def(
      "abstract_geometry", [](const EmbeddedMMSet& e) { return abstract_geometry(MMIndex(e)); }, py::arg("embedded"));
  m.def("structurally_isomorphic", &structurally_isomorphic);
}

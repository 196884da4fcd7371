#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crushkit/cell_engine.hpp"
#include "crushkit/census.hpp"
#include "crushkit/crush.hpp"
#include "crushkit/decomp.hpp"
#include "crushkit/errors.hpp"
#include "crushkit/homology.hpp"
#include "crushkit/isomorphism.hpp"
#include "crushkit/normal.hpp"
#include "crushkit/skeleton.hpp"

namespace py = pybind11;
using namespace crushkit;

namespace {

// Coordinates cross the boundary as Python ints, which are unbounded.
py::list toPython(const IntVector& v) {
  py::list out;
  for (const BigInt& x : v) {
    const std::string digits = x.get_str();
    out.append(py::reinterpret_steal<py::int_>(PyLong_FromString(digits.c_str(), nullptr, 10)));
  }
  return out;
}

IntVector fromPython(const std::vector<py::int_>& v) {
  IntVector out;
  out.reserve(v.size());
  for (const py::int_& x : v) out.emplace_back(py::str(static_cast<py::handle>(x)).cast<std::string>());
  return out;
}

StandardCoords standard(const Triangulation& tri, const std::vector<py::int_>& coords) {
  StandardCoords s(fromPython(coords));
  if (s.coords.size() != static_cast<size_t>(7 * tri.size()))
    throw InadmissibleSurface("expected " + std::to_string(7 * tri.size()) + " standard coordinates");
  return s;
}

py::dict homologyDict(const HomologySummary& h) {
  py::dict d;
  d["r"] = h.r;
  d["t2"] = h.t2;
  d["t3"] = h.t3;
  d["factors"] = toPython(h.factors);
  return d;
}

}  // namespace

PYBIND11_MODULE(_crushkit, m) {
  m.doc() = "Triangulated 3-manifolds: normal surfaces, crushing and prime decomposition";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InadmissibleSurface>(m, "InadmissibleSurface", PyExc_ValueError);
  py::register_exception<InvariantFailure>(m, "InvariantFailure", PyExc_RuntimeError);

  py::class_<Triangulation>(m, "Triangulation")
      .def(py::init<>())
      .def(py::init<int>(), py::arg("tets"))
      .def_static("from_text", [](const std::string& text) { return parseTriangulation(text); })
      .def("to_text", [](const Triangulation& t) { return writeTriangulation(t); })
      .def("join",
           [](Triangulation& t, int tet, int face, int dest, const std::string& perm) {
             t.join(tet, face, dest, Perm4::fromString(perm));
           })
      .def("__len__", &Triangulation::size)
      .def_property_readonly("size", &Triangulation::size)
      .def(py::self == py::self)
      .def("__repr__", [](const Triangulation& t) { return "<Triangulation tets=" + std::to_string(t.size()) + ">"; });

  m.def("classify", [](const Triangulation& t) { return std::string(toString(classify(t))); });
  m.def("is_orientable", &isOrientable);
  m.def("is_isomorphic", &isIsomorphic);
  m.def("components", &connectedComponents);
  m.def("vertex_count", [](const Triangulation& t) { return Skeleton(t).vertices().size(); });
  m.def("invalid_edges", [](const Triangulation& t) { return Skeleton(t).invalidEdges(); });

  m.def("h1", [](const Triangulation& t) { return homologyDict(h1(t)); });

  m.def(
      "quad_vertex_surfaces",
      [](const Triangulation& t, int jobs) {
        EnumerationOptions opts;
        opts.jobs = jobs;
        py::list out;
        for (const auto& q : enumerateQuadVertexSurfaces(t, opts)) out.append(toPython(quadToStandard(t, q).coords));
        return out;
      },
      py::arg("tri"), py::arg("jobs") = 1, "Quad vertex surfaces, in standard coordinates.");
  m.def("vertex_link", [](const Triangulation& t, int v) { return toPython(vertexLink(t, v).coords); });
  m.def("recognize", [](const Triangulation& t, const std::vector<py::int_>& coords) {
    const SurfaceClass c = recognizeSurface(t, standard(t, coords));
    py::dict d;
    d["euler_char"] = c.eulerChar;
    d["connected"] = c.connected;
    d["orientable"] = c.orientable;
    d["two_sided"] = c.twoSided;
    d["vertex_linking"] = c.vertexLinking;
    return d;
  });
  m.def("find_nontrivial_sphere", [](const Triangulation& t) -> py::object {
    const auto s = findNontrivialSphere(t);
    if (!s) return py::none();
    return toPython(s->coords);
  });
  m.def("is_zero_efficient", [](const Triangulation& t) { return isZeroEfficient(t); });

  m.def("crush", [](const Triangulation& t, const std::vector<py::int_>& coords) {
    return crushBulk(t, standard(t, coords)).result;
  });
  m.def(
      "crush_sequential",
      [](const Triangulation& t, const std::vector<py::int_>& coords, std::optional<std::uint64_t> seed) {
        FlattenOptions opts;
        opts.seed = seed;
        return runSequentialFlatten(buildCrushedComplex(t, standard(t, coords)), opts).result;
      },
      py::arg("tri"), py::arg("surface"), py::arg("seed") = py::none());

  m.def("decompose", [](const Triangulation& t) {
    const DecompositionResult r = primeDecompose(t);
    py::dict d;
    d["input"] = homologyDict(r.input);
    py::list summands;
    for (size_t i = 0; i < r.summands.size(); ++i) {
      py::dict s;
      s["triangulation"] = r.summands[i];
      s["h1"] = homologyDict(r.summandHomology[i]);
      s["flag"] = toString(r.flags[i]);
      summands.append(s);
    }
    d["summands"] = summands;
    py::dict restored;
    restored["rp3"] = r.restored.rp3;
    restored["l31"] = r.restored.l31;
    restored["s2xs1"] = r.restored.s2xs1;
    restored["s2twisted"] = r.restored.s2twisted;
    d["restored"] = restored;
    d["crushes"] = r.crushLog.size();
    if (r.certificate) {
      py::dict c;
      c["triangulation"] = r.certificate->triangulation;
      c["edge"] = r.certificate->edge;
      c["step"] = r.certificate->step;
      d["certificate"] = c;
    } else {
      d["certificate"] = py::none();
    }
    return d;
  });

  m.def("closed_census", &closedCensus, py::arg("tets"));
}

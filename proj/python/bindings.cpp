#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "projinv/cli.hpp"
#include "projinv/curve.hpp"
#include "projinv/invariants.hpp"
#include "projinv/projection.hpp"
#include "projinv/signature.hpp"
#include "projinv/spaceinv.hpp"
#include "projinv/transform.hpp"
#include "projinv/verify.hpp"

namespace py = pybind11;
using namespace projinv;

namespace {

SampleWindow window_arg(const std::string& w) { return SampleWindow::parse(w); }

RandomCurveKind random_kind(const std::string& k) {
  if (k == "poly") return RandomCurveKind::Poly;
  if (k == "trig") return RandomCurveKind::TrigPoly;
  throw Error(ErrorKind::UnknownIdentifier, "random curve kind must be poly or trig");
}

CurveSpec transformed(const CurveSpec& c, const std::string& group, std::uint64_t seed) {
  const GroupElement g = random_group_element(seed, group_kind_from_string(group));
  return std::visit([&](const auto& e) { return transform_curve(c, e); }, g);
}

py::list jet_rows(const CurveSpec& c, double t, int order) {
  py::list rows;
  auto push = [&](const Jet& j) {
    std::vector<double> d(static_cast<std::size_t>(j.order()) + 1);
    for (int k = 0; k <= j.order(); ++k) d[static_cast<std::size_t>(k)] = j[k];
    rows.append(py::cast(d));
  };
  if (c.dimension == 3) {
    const SpaceCurveJet w = eval_space_jet(c, t, order);
    push(w.x), push(w.y), push(w.z);
  } else {
    const PlaneCurveJet p = eval_plane_jet(c, t, order);
    push(p.X), push(p.Y);
  }
  return rows;
}

py::dict record_dict(const InvariantRecord& r) {
  py::dict d;
  d["name"] = r.name;
  d["t"] = r.t;
  d["value"] = r.value;
  d["d1"] = r.d1;
  d["d2"] = r.d2;
  d["valid"] = r.valid();
  d["reason"] = r.reason;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differential invariants of space curves and their projections";

  static py::exception<Error> error(m, "ProjinvError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (kind, message); the package adds a .kind property
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(to_string(e.kind())), e.what()).ptr());
    }
  });

  m.attr("DEFAULT_ORDER") = kDefaultJetOrder;

  py::class_<CurveSpec>(m, "Curve")
      .def_static("parse", &parse_curve, py::arg("text"), py::arg("label") = "")
      .def_static("builtin", &builtin_curve, py::arg("name"))
      .def_static("load", &load_curve, py::arg("text_or_path"))
      .def_static("from_json", &curve_from_json, py::arg("text"))
      .def_static(
          "random",
          [](std::uint64_t seed, int dim, const std::string& kind, int degree) {
            return random_curve(seed, dim, random_kind(kind), degree);
          },
          py::arg("seed"), py::arg("dim") = 3, py::arg("kind") = "poly", py::arg("degree") = 5)
      .def_readonly("dimension", &CurveSpec::dimension)
      .def_readonly("label", &CurveSpec::label)
      .def_property_readonly("text", [](const CurveSpec& c) { return to_text(c); })
      .def("to_json", &curve_to_json)
      .def(
          "__call__",
          [](const CurveSpec& c, double t) {
            std::vector<double> v;
            for (int i = 0; i < c.dimension; ++i) v.push_back(eval_component(c, i, t));
            return py::tuple(py::cast(v));
          },
          py::arg("t"))
      .def("jet", &jet_rows, py::arg("t"), py::arg("order") = kDefaultJetOrder,
           "Derivatives 0..order of each component at t")
      .def(
          "project", [](const CurveSpec& c, const ProjectionSpec& p) { return project_curve(p, c); },
          py::arg("projection"))
      .def("transform", &transformed, py::arg("group"), py::arg("seed"),
           "Image under the seeded element of GL3+, SL3, GL3, PGL3, A2, SA2, A3 or H")
      .def("__repr__", [](const CurveSpec& c) { return "<Curve " + c.label + ">"; });

  py::class_<ProjectionSpec>(m, "Projection")
      .def_static(
          "central",
          [](double c1, double c2, double c3) { return ProjectionSpec::central({c1, c2, c3}); },
          py::arg("c1") = 0.0, py::arg("c2") = 0.0, py::arg("c3") = 0.0)
      .def_static("parallel", &ProjectionSpec::parallel, py::arg("b1") = 0.0, py::arg("b2") = 0.0)
      .def_static("from_json", &projection_from_json, py::arg("text"))
      .def("to_json", [](const ProjectionSpec& p) { return to_json(p); })
      .def("__repr__", [](const ProjectionSpec& p) { return "<Projection " + to_json(p) + ">"; });

  m.def("builtin_curves", &builtin_curve_names);
  m.def("checks", [] {
    std::vector<std::string> names;
    for (CheckId id : kAllChecks) names.emplace_back(to_string(id));
    return names;
  });

  m.def(
      "invariants",
      [](const CurveSpec& c, const std::string& group, const std::string& window, int order) {
        const InvariantGroup g = invariant_group_from_string(group);
        if (c.dimension != curve_dimension(g)) {
          throw Error(ErrorKind::DimensionMismatch, "group " + group + " needs a " +
                                                        std::to_string(curve_dimension(g)) + "D curve");
        }
        py::list out;
        for (const auto& r : invariant_records(g, c, window_arg(window), order)) out.append(record_dict(r));
        return out;
      },
      py::arg("curve"), py::arg("group"), py::arg("window") = "0.2:1.5:10",
      py::arg("order") = kDefaultJetOrder, "Per-sample invariant records for sa2, a2, pgl3, sl3, gl3 or H");

  m.def(
      "classify",
      [](const CurveSpec& c, const std::string& window) {
        const SampleWindow w = window_arg(window);
        return to_string(classify(c, w.t0, w.t1, w.n).verdict);
      },
      py::arg("curve"), py::arg("window") = "0.2:1.5:10");

  m.def(
      "check_json",
      [](const CurveSpec& c, const std::string& check, std::uint64_t seed, const std::string& window,
         std::optional<double> tolerance) {
        VerifyOptions o;
        o.seed = seed;
        o.window = window_arg(window);
        o.tolerance = tolerance;
        return to_json(check_identity(c, check_from_string(check), o));
      },
      py::arg("curve"), py::arg("check"), py::arg("seed") = 42, py::arg("window") = "0.2:1.5:10",
      py::arg("tolerance") = py::none());

  m.def(
      "fuzz_json",
      [](const CurveSpec& c, const std::string& quantity, const std::string& group, int trials,
         std::uint64_t seed, double tolerance, const std::string& window) {
        return to_json(fuzz_invariance(c, fuzz_quantity_from_string(quantity), group_kind_from_string(group),
                                       trials, seed, tolerance, window_arg(window)));
      },
      py::arg("curve"), py::arg("quantity"), py::arg("group"), py::arg("trials") = 100, py::arg("seed") = 42,
      py::arg("tolerance") = 1e-7, py::arg("window") = "0.2:1.5:10");

  py::class_<Signature>(m, "Signature")
      .def_property_readonly("group", [](const Signature& s) { return std::string(to_string(s.group)); })
      .def_readonly("label", &Signature::label)
      .def_readonly("t", &Signature::t)
      .def_readonly("points", &Signature::points)
      .def_property_readonly("dropped", [](const Signature& s) { return s.dropped.size(); })
      .def("diameter", &Signature::diameter)
      .def("to_json", [](const Signature& s) { return to_json(s); })
      .def("to_csv", [](const Signature& s) { return to_csv(s); })
      .def_static("from_json", &signature_from_json, py::arg("text"))
      .def("__len__", [](const Signature& s) { return s.points.size(); });

  m.def(
      "signature",
      [](const CurveSpec& c, const std::string& group, const std::string& window, int order) {
        return sample_signature(c, signature_group_from_string(group), window_arg(window), order);
      },
      py::arg("curve"), py::arg("group"), py::arg("window") = "0.2:1.5:200", py::arg("order") = kDefaultJetOrder);

  m.def(
      "compare",
      [](const Signature& a, const Signature& b, double tol) {
        const SignatureComparison r = compare(a, b, tol);
        py::dict d;
        d["distance"] = r.distance;
        d["equivalent"] = r.equivalent;
        d["degenerate"] = r.degenerate;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = 1e-4);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"projinv"};
        full.insert(full.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = run_cli(full, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a command line invocation in process; returns (exit code, stdout, stderr)");
}

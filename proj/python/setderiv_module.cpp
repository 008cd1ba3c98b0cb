// Python bindings for the core pipeline: shapes -> grid -> distance fields ->
// boundary bundle -> cylinder measures, plus the experiment registry.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "setderiv/errors.hpp"
#include "setderiv/experiments.hpp"
#include "setderiv/harness.hpp"
#include "setderiv/parallel.hpp"
#include "setderiv/steiner.hpp"

namespace py = pybind11;
using namespace setderiv;

namespace {

Vec2 to_vec(const std::pair<double, double>& p) { return {p.first, p.second}; }

std::shared_ptr<Analysis> analyze_py(const ShapePtr& shape, double h, double margin) {
    return analyze(shape, h, margin);
}

}  // namespace

PYBIND11_MODULE(_setderiv, m) {
    m.doc() = "set-derivative computations on grid geometry";

    py::register_exception<Error>(m, "SetderivError");

    m.def("set_thread_count", &set_thread_count);

    py::class_<Shape, ShapePtr>(m, "Shape")
        .def("contains", [](const Shape& s, double x, double y) { return s.contains({x, y}); })
        .def("signed_distance",
             [](const Shape& s, double x, double y) { return s.signed_distance({x, y}); })
        .def("describe", &Shape::describe);

    m.def("disk", [](std::pair<double, double> c, double r) { return make_disk(to_vec(c), r); });
    m.def("rect", [](std::pair<double, double> lo, std::pair<double, double> hi) {
        return make_rect(to_vec(lo), to_vec(hi));
    });
    m.def("segment", [](std::pair<double, double> a, std::pair<double, double> b) {
        return make_segment(to_vec(a), to_vec(b));
    });
    m.def("polygon", [](const std::vector<std::pair<double, double>>& pts) {
        std::vector<Vec2> v;
        for (auto& p : pts) v.push_back(to_vec(p));
        return make_polygon(std::move(v));
    });
    m.def("union_of", [](const std::vector<ShapePtr>& parts) { return make_union(parts); });
    m.def("difference", &make_difference);
    m.def("boundary_of", &make_boundary_of);

    py::class_<GridSet>(m, "GridSet")
        .def_readonly("nx", &GridSet::nx)
        .def_readonly("ny", &GridSet::ny)
        .def_readonly("h", &GridSet::h)
        .def_property_readonly("mode",
                               [](const GridSet& g) {
                                   return g.mode == GridMode::solid ? "solid" : "boundary";
                               })
        .def("count_occupied", &GridSet::count_occupied)
        .def("area", &GridSet::area)
        .def("save", &save_sdgs);
    m.def("load_grid", &load_sdgs);

    py::class_<BundleSample>(m, "BundleSample")
        .def_property_readonly("x", [](const BundleSample& s) { return std::pair(s.x.x, s.x.y); })
        .def_property_readonly("u", [](const BundleSample& s) { return std::pair(s.u.x, s.u.y); })
        .def_property_readonly("side",
                               [](const BundleSample& s) {
                                   return s.side == Side::outer ? "outer" : "inner";
                               })
        .def_readonly("r_plus", &BundleSample::r_plus)
        .def_readonly("r_minus", &BundleSample::r_minus)
        .def_readonly("weight", &BundleSample::weight);

    py::class_<Analysis, std::shared_ptr<Analysis>>(m, "Analysis")
        .def_property_readonly("grid", [](const Analysis& a) { return a.gs; })
        .def_property_readonly("boundary_length",
                               [](const Analysis& a) { return a.bp.total_length; })
        .def_property_readonly("samples", [](const Analysis& a) { return a.nb.samples; })
        .def_property_readonly("outer_weight",
                               [](const Analysis& a) { return a.nb.outer_weight(); })
        .def_property_readonly("inner_weight",
                               [](const Analysis& a) { return a.nb.inner_weight(); })
        .def_property_readonly("rejected_length", [](const Analysis& a) {
            return std::pair(a.nb.rejected_length_outer, a.nb.rejected_length_inner);
        })
        .def("distance",
             [](const Analysis& a, double x, double y, bool inner) {
                 int ix, iy;
                 a.gs.cell_of({x, y}, ix, iy);
                 if (!a.gs.in_range(ix, iy)) throw Error(ErrorCode::OutOfDomain, "outside grid");
                 return a.df.field(inner).dist(ix, iy);
             },
             py::arg("x"), py::arg("y"), py::arg("inner") = false)
        .def("magnify_point",
             [](const Analysis& a, double x, double y, double eps) {
                 auto mp = magnify_point(a.df, a.bp, {x, y}, eps);
                 py::dict d;
                 switch (mp.status) {
                     case MagnifyStatus::ok: d["status"] = "ok"; break;
                     case MagnifyStatus::skeleton: d["status"] = "skeleton"; break;
                     case MagnifyStatus::on_boundary: d["status"] = "boundary"; break;
                     default: d["status"] = "out_of_domain";
                 }
                 if (mp.status == MagnifyStatus::ok) {
                     d["t"] = mp.t;
                     d["x"] = std::pair(mp.x.x, mp.x.y);
                     d["u"] = std::pair(mp.u.x, mp.u.y);
                 }
                 return d;
             });
    m.def("analyze", &analyze_py, py::arg("shape"), py::arg("h"), py::arg("margin"));

    py::class_<FiberIntervalSet>(m, "FiberIntervalSet")
        .def("mass", [](const FiberIntervalSet& f) { return m_measure(f); })
        .def("to_csv", &fis_to_csv);
    m.def("sym_diff", &sym_diff_measure);
    m.def("fis_union", &fis_union);
    m.def("fis_intersect", &fis_intersect);
    m.def("fis_subtract", &fis_subtract);

    m.def("slab",
          [](const std::shared_ptr<Analysis>& a, double lo, double hi, double T) {
              return make_slab(a->nb, T, [&](const BundleSample& s) -> std::optional<Interval> {
                  if (s.side != Side::outer) return std::nullopt;
                  return Interval{lo, hi};
              });
          },
          py::arg("analysis"), py::arg("lo"), py::arg("hi"), py::arg("T") = 2.0);

    m.def("magnify_pred",
          [](const std::shared_ptr<Analysis>& a, const std::function<bool(double, double)>& pred,
             double eps, double T) {
              auto q = SetQuery::from_predicate(
                  [pred](const Vec2& z) { return pred(z.x, z.y); });
              return magnify_set(a->df, a->nb, q, eps, T);
          },
          py::arg("analysis"), py::arg("pred"), py::arg("eps"), py::arg("T") = 2.0);

    m.def("polygon_measures", [](const std::vector<std::pair<double, double>>& pts) {
        std::vector<Vec2> v;
        for (auto& p : pts) v.push_back(to_vec(p));
        PolygonMeasures pm = polygon_support_measures(v);
        py::dict d;
        d["total1"] = pm.total1;
        d["total0"] = pm.total0;
        d["theta1"] = pm.theta1;
        d["theta0"] = pm.theta0;
        return d;
    });

    m.def("comb_mass",
          [](int K, double h, int k, double T) {
              CombInstance ci = make_comb(dyadic_sequence(K + 1), K, h);
              auto base = analyze(ci.f, h, 0.3);
              FamilySpec fam = ci.family(base);
              double eps = ci.b(k);
              auto img = magnify_set(base->df, base->nb, fam.a_query(eps), eps, T);
              return m_measure(img);
          },
          py::arg("K"), py::arg("h"), py::arg("k"), py::arg("T") = 1.0);

    m.def("list_experiments", [] {
        std::vector<std::map<std::string, std::string>> out;
        for (const auto& e : experiment_registry())
            out.push_back({{"name", e.name}, {"description", e.description}, {"anchor", e.anchor}});
        return out;
    });
    m.def("run_experiment",
          [](const std::string& name, const std::string& config_text, const std::string& out_dir) {
              Config cfg = Config::parse_string(config_text.empty()
                                                    ? "[experiment]\nname = " + name + "\n"
                                                    : config_text);
              ExperimentConfig ec = experiment_config_from(cfg);
              ec.name = name;
              if (!out_dir.empty()) ec.out_dir = out_dir;
              ExperimentOutcome oc = run_experiment(ec);
              if (!out_dir.empty()) write_artifacts(oc, ec.out_dir);
              py::dict d;
              d["name"] = oc.name;
              d["pass"] = oc.pass;
              d["seconds"] = oc.seconds;
              d["lines"] = oc.lines;
              return d;
          },
          py::arg("name"), py::arg("config_text") = "", py::arg("out_dir") = "");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "nsi/cli.hpp"
#include "nsi/cohomology.hpp"
#include "nsi/io.hpp"

namespace py = pybind11;

namespace {

py::object to_fraction(const nsi::Rat& r) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(r.str());
}

nsi::Rat rat_from_py(py::handle h) {
    return nsi::Rat::parse(py::str(h).cast<std::string>());
}

nsi::QVector qvector_from(const py::sequence& seq) {
    nsi::QVector out;
    for (py::handle h : seq) out.push_back(rat_from_py(h));
    return out;
}

py::list qvector_to(const nsi::QVector& v) {
    py::list out;
    for (const nsi::Rat& r : v) out.append(to_fraction(r));
    return out;
}

nsi::json parse_json(const std::string& text) {
    try {
        return nsi::json::parse(text);
    } catch (const nsi::json::exception&) {
        throw nsi::ParseError("invalid JSON");
    }
}

} // namespace

PYBIND11_MODULE(_core, m) {
    using namespace nsi;

    m.doc() = "Exact intersection theory on normal surfaces and toric varieties";

    py::class_<Fan>(m, "Fan")
        .def_static("from_json",
                    [](const std::string& text) { return fan_from_json(parse_json(text)); })
        .def_static("load", &load_fan)
        .def("to_json", [](const Fan& f) { return render_json(fan_to_json(f)); })
        .def_readonly("rank", &Fan::rank)
        .def_readonly("rays", &Fan::rays)
        .def_readonly("cones", &Fan::cones);

    py::class_<NormalSurfaceModel>(m, "Model")
        .def_static("from_json",
                    [](const std::string& text) { return model_from_json(parse_json(text)); })
        .def_static("load", &load_model_or_fan)
        .def("to_json", [](const NormalSurfaceModel& mm) { return render_json(model_to_json(mm)); })
        .def_readonly("basis", &NormalSurfaceModel::basis)
        .def_readonly("toric_derived", &NormalSurfaceModel::toric_derived);

    py::class_<SheafData>(m, "Sheaf")
        .def_static("from_json",
                    [](const std::string& text) { return sheaf_from_json(parse_json(text)); })
        .def_static("load", &load_sheaf)
        .def("to_json", [](const SheafData& s) { return render_json(sheaf_to_json(s)); })
        .def_readonly("rank", &SheafData::rank);

    m.def("chi", &chi, py::arg("fan"), py::arg("d"));
    m.def(
        "chi_report",
        [](const Fan& f, const TorusDivisor& d, long long extra_pad) {
            GradedCohomologyReport r = chi_report(f, d, extra_pad);
            py::dict out;
            out["h"] = r.h;
            out["chi"] = r.chi;
            out["points"] = r.contributing_points;
            return out;
        },
        py::arg("fan"), py::arg("d"), py::arg("extra_pad") = 0);

    m.def(
        "pair",
        [](const Fan& f, const TorusDivisor& d1, const TorusDivisor& d2) {
            return to_fraction(make_toric_surface(f).pair_divisors(d1, d2));
        },
        py::arg("fan"), py::arg("d1"), py::arg("d2"));
    m.def(
        "pullback",
        [](const Fan& f, const TorusDivisor& d) {
            ToricSurface ts = make_toric_surface(f);
            QVector coeffs = support_pullback(ts.fan, ts.res, d);
            py::dict out;
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                out[py::str(ts.model.basis[i])] = to_fraction(coeffs[i]);
            return out;
        },
        py::arg("fan"), py::arg("d"));

    m.def(
        "model_pair",
        [](const NormalSurfaceModel& mm, const py::sequence& d1, const py::sequence& d2) {
            return to_fraction(pair(mm, qvector_from(d1), qvector_from(d2)));
        },
        py::arg("model"), py::arg("d1"), py::arg("d2"));
    m.def(
        "mumford_pullback",
        [](const NormalSurfaceModel& mm, const py::sequence& d) {
            return qvector_to(mumford_pullback(mm, qvector_from(d)));
        },
        py::arg("model"), py::arg("d"));
    m.def(
        "sharp_pullback",
        [](const NormalSurfaceModel& mm, const py::sequence& d) {
            return qvector_to(sharp_pullback(mm, qvector_from(d)));
        },
        py::arg("model"), py::arg("d"));

    m.def("is_cartier", &is_cartier, py::arg("fan"), py::arg("d"));
    m.def("cartier_index", &cartier_index, py::arg("fan"), py::arg("d"));
    m.def("is_ample", &is_ample, py::arg("fan"), py::arg("d"));
    m.def("canonical_divisor", &canonical_divisor, py::arg("fan"));
    m.def("export_model", &export_surface_model, py::arg("fan"));

    m.def(
        "self_pair_limit",
        [](const Fan& f, const TorusDivisor& d, const std::vector<TorusDivisor>& Ls,
           long long period) {
            LimitResult r = self_pair_limit(f, d, Ls, period);
            py::dict out;
            out["value"] = to_fraction(r.value);
            out["period"] = r.period_used;
            out["samples"] = r.samples;
            return out;
        },
        py::arg("fan"), py::arg("d"), py::arg("Ls") = std::vector<TorusDivisor>{},
        py::arg("period") = 0);
    m.def(
        "pair_limit",
        [](const Fan& f, const TorusDivisor& d1, const TorusDivisor& d2,
           const std::vector<TorusDivisor>& Ls, long long period) {
            return to_fraction(pair_limit(f, d1, d2, Ls, period));
        },
        py::arg("fan"), py::arg("d1"), py::arg("d2"),
        py::arg("Ls") = std::vector<TorusDivisor>{}, py::arg("period") = 0);
    m.def(
        "frobenius_ch2_limit",
        [](const Fan& f, const TorusDivisor& d, long long p,
           const std::vector<TorusDivisor>& Ls) {
            return to_fraction(frobenius_ch2_limit(f, d, p, Ls));
        },
        py::arg("fan"), py::arg("d"), py::arg("p"),
        py::arg("Ls") = std::vector<TorusDivisor>{});
    m.def(
        "cartier_product",
        [](const Fan& f, const std::vector<TorusDivisor>& Ls) {
            return to_fraction(cartier_product(f, Ls));
        },
        py::arg("fan"), py::arg("Ls"));

    m.def(
        "rr_defect",
        [](const Fan& f, const TorusDivisor& d) {
            DefectReport r = rr_defect(f, d);
            py::dict per_point;
            for (const auto& [g, v] : r.per_point) per_point[py::int_(g)] = to_fraction(v);
            py::dict out;
            out["total"] = to_fraction(r.total);
            out["per_point"] = per_point;
            return out;
        },
        py::arg("fan"), py::arg("d"));
    m.def(
        "defect_sweep",
        [](const Fan& f, long long bound) {
            DefectSweep s = defect_sweep(f, bound);
            py::list values;
            for (const Rat& v : s.values) values.append(to_fraction(v));
            py::dict out;
            out["min"] = to_fraction(s.min);
            out["max"] = to_fraction(s.max);
            out["values"] = values;
            return out;
        },
        py::arg("fan"), py::arg("bound"));

    m.def(
        "delta",
        [](const SheafData& s, const NormalSurfaceModel& mm) { return to_fraction(delta(s, mm)); },
        py::arg("sheaf"), py::arg("model"));
    m.def(
        "ch2",
        [](const SheafData& s, const NormalSurfaceModel& mm) { return to_fraction(ch2(s, mm)); },
        py::arg("sheaf"), py::arg("model"));
    m.def("bogomolov_check", &bogomolov_check, py::arg("sheaf"), py::arg("model"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}

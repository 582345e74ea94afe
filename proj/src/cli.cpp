#include "nsi/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nsi/cohomology.hpp"
#include "nsi/io.hpp"

namespace nsi {

namespace {

struct Options {
    std::map<std::string, std::string> scalar;
    std::vector<std::string> line_classes; // repeatable --L
};

Options parse_flags(const std::vector<std::string>& args, std::size_t start) {
    Options o;
    for (std::size_t i = start; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0) throw Usage("unexpected argument '" + a + "'");
        std::string key = a.substr(2);
        if (key.empty()) throw Usage("empty flag");
        if (key == "report") {
            o.scalar["report"] = "1";
            continue;
        }
        if (i + 1 >= args.size()) throw Usage("flag --" + key + " needs a value");
        std::string value = args[++i];
        if (key == "L")
            o.line_classes.push_back(value);
        else
            o.scalar[key] = value;
    }
    return o;
}

void restrict_flags(const Options& o, std::initializer_list<const char*> allowed) {
    auto ok = [&](const std::string& key) {
        for (const char* a : allowed)
            if (key == a) return true;
        return false;
    };
    for (const auto& [key, value] : o.scalar)
        if (!ok(key)) throw Usage("unknown flag --" + key);
    if (!o.line_classes.empty() && !ok("L")) throw Usage("unknown flag --L");
}

const std::string& need(const Options& o, const std::string& key) {
    auto it = o.scalar.find(key);
    if (it == o.scalar.end()) throw Usage("missing --" + key);
    return it->second;
}

std::optional<std::string> maybe(const Options& o, const std::string& key) {
    auto it = o.scalar.find(key);
    if (it == o.scalar.end()) return std::nullopt;
    return it->second;
}

long long parse_integer(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Usage("bad integer for " + what + ": '" + s + "'");
    }
}

std::vector<long long> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<long long> out;
    std::istringstream in(s);
    std::string piece;
    while (std::getline(in, piece, ','))
        out.push_back(parse_integer(piece, what));
    if (out.empty()) throw Usage("empty vector for " + what);
    return out;
}

QVector to_qvector(const std::vector<long long>& v) {
    QVector out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(x);
    return out;
}

std::vector<TorusDivisor> parse_line_classes(const Options& o) {
    std::vector<TorusDivisor> out;
    for (const std::string& s : o.line_classes)
        out.push_back(parse_int_list(s, "--L"));
    return out;
}

// Routes text to --output when given, stdout otherwise.
void emit(const Options& o, const std::string& text, std::ostream& out) {
    auto path = maybe(o, "output");
    if (!path) {
        out << text;
        return;
    }
    std::ofstream file(*path);
    if (!file) throw SinkFailure("cannot write " + *path);
    file << text;
    file.flush();
    if (!file) throw SinkFailure("cannot write " + *path);
}

int run_validate(const Options& o, std::ostream& out) {
    restrict_flags(o, {"fan", "model", "graph"});
    int sources = 0;
    sources += o.scalar.count("fan");
    sources += o.scalar.count("model");
    sources += o.scalar.count("graph");
    if (sources != 1) throw Usage("validate takes exactly one of --fan, --model, --graph");
    if (auto p = maybe(o, "fan"))
        load_fan(*p);
    else if (auto p2 = maybe(o, "model"))
        load_model(*p2);
    else {
        ResolutionGraph g = load_graph(need(o, "graph"));
        validate(g);
    }
    out << "ok\n";
    return 0;
}

int run_resolve(const Options& o, std::ostream& out) {
    restrict_flags(o, {"fan", "output"});
    Fan f = load_fan(need(o, "fan"));
    Resolution2D r = resolve_fan_2d(f);
    json j;
    j["resolved"] = fan_to_json(r.resolved);
    j["origin"] = r.origin;
    json groups = json::array();
    for (const auto& g : r.groups) {
        json e;
        e["source_cone"] = g.source_cone;
        e["rays"] = g.ray_indices;
        groups.push_back(e);
    }
    j["exceptional_groups"] = groups;
    emit(o, render_json(j), out);
    return 0;
}

int run_pullback(const Options& o, std::ostream& out) {
    restrict_flags(o, {"fan", "model", "d", "output"});
    if (o.scalar.count("fan") + o.scalar.count("model") != 1)
        throw Usage("pullback takes exactly one of --fan, --model");
    std::ostringstream text;
    if (auto p = maybe(o, "fan")) {
        ToricSurface ts = make_toric_surface(load_fan(*p));
        TorusDivisor d = parse_int_list(need(o, "d"), "--d");
        QVector coeffs = support_pullback(ts.fan, ts.res, d);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            text << ts.model.basis[i] << " " << coeffs[i].str() << "\n";
    } else {
        NormalSurfaceModel m = load_model(need(o, "model"));
        QVector d = to_qvector(parse_int_list(need(o, "d"), "--d"));
        QVector coeffs = mumford_pullback(m, d);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            text << m.basis[i] << " " << coeffs[i].str() << "\n";
    }
    emit(o, text.str(), out);
    return 0;
}

int run_pair(const Options& o, std::ostream& out) {
    restrict_flags(o, {"model", "d1", "d2"});
    json j = load_json_file(need(o, "model"));
    std::vector<long long> d1 = parse_int_list(need(o, "d1"), "--d1");
    std::vector<long long> d2 = parse_int_list(need(o, "d2"), "--d2");
    Rat value;
    if (j.is_object() && j.contains("basis")) {
        NormalSurfaceModel m = model_from_json(j);
        value = pair(m, to_qvector(d1), to_qvector(d2));
    } else {
        ToricSurface ts = make_toric_surface(fan_from_json(j));
        value = ts.pair_divisors(d1, d2);
    }
    out << value.str() << "\n";
    return 0;
}

int run_chi(const Options& o, std::ostream& out) {
    restrict_flags(o, {"fan", "d", "report"});
    Fan f = load_fan(need(o, "fan"));
    TorusDivisor d = parse_int_list(need(o, "d"), "--d");
    GradedCohomologyReport r = chi_report(f, d);
    if (maybe(o, "report")) {
        for (std::size_t i = 0; i < r.h.size(); ++i)
            out << "h" << i << " " << r.h[i] << "\n";
        out << "chi " << r.chi << "\n";
        out << "points " << r.contributing_points << "\n";
    } else {
        out << r.chi << "\n";
    }
    return 0;
}

int run_limit_pair(const Options& o, std::ostream& out) {
    restrict_flags(o, {"fan", "d1", "d2", "L", "period", "output"});
    Fan f = load_fan(need(o, "fan"));
    TorusDivisor d1 = parse_int_list(need(o, "d1"), "--d1");
    std::vector<TorusDivisor> Ls = parse_line_classes(o);
    long long period = 0;
    if (auto p = maybe(o, "period")) period = parse_integer(*p, "--period");
    if (auto d2s = maybe(o, "d2")) {
        if (maybe(o, "output"))
            throw Usage("convergence table is only produced for a single divisor");
        TorusDivisor d2 = parse_int_list(*d2s, "--d2");
        out << pair_limit(f, d1, d2, Ls, period).str() << "\n";
        return 0;
    }
    LimitResult r = self_pair_limit(f, d1, Ls, period);
    out << r.value.str() << "\n";
    if (maybe(o, "output")) emit(o, convergence_csv(r), out);
    return 0;
}

int run_frobenius(const Options& o, std::ostream& out) {
    restrict_flags(o, {"fan", "d", "p", "L"});
    Fan f = load_fan(need(o, "fan"));
    TorusDivisor d = parse_int_list(need(o, "d"), "--d");
    long long p = parse_integer(need(o, "p"), "--p");
    out << frobenius_ch2_limit(f, d, p, parse_line_classes(o)).str() << "\n";
    return 0;
}

int run_discrepancy(const Options& o, std::ostream& out) {
    restrict_flags(o, {"graph"});
    ResolutionGraph g = load_graph(need(o, "graph"));
    QVector a = discrepancies(g);
    for (std::size_t i = 0; i < a.size(); ++i)
        out << g.curves[i].label << " " << a[i].str() << "\n";
    return 0;
}

int run_rr_defect(const Options& o, std::ostream& out) {
    restrict_flags(o, {"fan", "d", "output"});
    Fan f = load_fan(need(o, "fan"));
    TorusDivisor d = parse_int_list(need(o, "d"), "--d");
    emit(o, defect_csv(rr_defect(f, d)), out);
    return 0;
}

int run_defect_sweep(const Options& o, std::ostream& out) {
    restrict_flags(o, {"fan", "bound", "output"});
    Fan f = load_fan(need(o, "fan"));
    long long bound = parse_integer(need(o, "bound"), "--bound");
    DefectSweep s = defect_sweep(f, bound);
    json j;
    j["min"] = s.min.str();
    j["max"] = s.max.str();
    json values = json::array();
    for (const Rat& v : s.values) values.push_back(v.str());
    j["values"] = values;
    emit(o, render_json(j), out);
    return 0;
}

int run_export_model(const Options& o, std::ostream& out) {
    restrict_flags(o, {"fan", "output"});
    Fan f = load_fan(need(o, "fan"));
    emit(o, render_json(model_to_json(export_surface_model(f))), out);
    return 0;
}

int run_bogomolov(const Options& o, std::ostream& out) {
    restrict_flags(o, {"sheaf", "model"});
    NormalSurfaceModel m = load_model_or_fan(need(o, "model"));
    SheafData s = load_sheaf(need(o, "sheaf"));
    validate(s, m);
    out << (bogomolov_check(s, m) ? "true" : "false") << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    try {
        if (args.empty())
            throw Usage(
                "expected a verb: validate resolve pullback pair chi limit-pair "
                "frobenius-ch2 discrepancy rr-defect defect-sweep export-model "
                "bogomolov");
        const std::string& verb = args[0];
        Options o = parse_flags(args, 1);
        if (verb == "validate") return run_validate(o, out);
        if (verb == "resolve") return run_resolve(o, out);
        if (verb == "pullback") return run_pullback(o, out);
        if (verb == "pair") return run_pair(o, out);
        if (verb == "chi") return run_chi(o, out);
        if (verb == "limit-pair") return run_limit_pair(o, out);
        if (verb == "frobenius-ch2") return run_frobenius(o, out);
        if (verb == "discrepancy") return run_discrepancy(o, out);
        if (verb == "rr-defect") return run_rr_defect(o, out);
        if (verb == "defect-sweep") return run_defect_sweep(o, out);
        if (verb == "export-model") return run_export_model(o, out);
        if (verb == "bogomolov") return run_bogomolov(o, out);
        throw Usage("unknown verb '" + verb + "'");
    } catch (const Usage& u) {
        err << u.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

} // namespace nsi

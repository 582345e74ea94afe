#include "nsi/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace nsi {

namespace {

long long as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer())
        throw ParseError(what + " must be an integer");
    return j.get<long long>();
}

Rat as_rat(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    throw ParseError(what + " must be an integer or \"num/den\" string");
}

const json& field(const json& j, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError("missing field '" + key + "'");
    return *it;
}

std::vector<long long> int_vector(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be an array");
    std::vector<long long> out;
    for (const auto& e : j) out.push_back(as_int(e, what + " entry"));
    return out;
}

std::vector<int> index_vector(const json& j, const std::string& what) {
    std::vector<int> out;
    for (long long v : int_vector(j, what)) out.push_back(static_cast<int>(v));
    return out;
}

} // namespace

Fan fan_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("fan file must be a JSON object");
    Fan f;
    f.rank = static_cast<int>(as_int(field(j, "rank"), "rank"));
    const json& rays = field(j, "rays");
    if (!rays.is_array()) throw ParseError("rays must be an array");
    for (const auto& r : rays) f.rays.push_back(int_vector(r, "ray"));
    if (j.contains("cones")) {
        const json& cones = j["cones"];
        if (!cones.is_array()) throw ParseError("cones must be an array");
        for (const auto& c : cones) f.cones.push_back(index_vector(c, "cone"));
    } else if (f.rank == 2) {
        const int n = static_cast<int>(f.rays.size());
        for (int i = 0; i < n; ++i) f.cones.push_back({i, (i + 1) % n});
    } else {
        throw ParseError("rank-3 fan file needs explicit cones");
    }
    validate_fan(f);
    return f;
}

json fan_to_json(const Fan& f) {
    json j;
    j["rank"] = f.rank;
    j["rays"] = f.rays;
    j["cones"] = f.cones;
    return j;
}

NormalSurfaceModel model_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("model file must be a JSON object");
    NormalSurfaceModel m;
    for (const auto& b : field(j, "basis")) {
        if (!b.is_string()) throw ParseError("basis entries must be strings");
        m.basis.push_back(b.get<std::string>());
    }
    const json& gram = field(j, "gram");
    if (!gram.is_array()) throw ParseError("gram must be an array of rows");
    m.gram = QMatrix(gram.size(), gram.size() ? gram[0].size() : 0);
    for (std::size_t i = 0; i < gram.size(); ++i) {
        const json& row = gram[i];
        if (!row.is_array() || row.size() != m.gram.cols())
            throw ParseError("gram rows must have equal length");
        for (std::size_t k = 0; k < row.size(); ++k)
            m.gram.at(i, k) = as_rat(row[k], "gram entry");
    }
    for (const auto& g : field(j, "exceptional_groups"))
        m.exceptional_groups.push_back(index_vector(g, "exceptional group"));
    for (const auto& c : field(j, "canonical"))
        m.canonical.push_back(as_rat(c, "canonical entry"));
    const json& toric = field(j, "toric_derived");
    if (!toric.is_boolean()) throw ParseError("toric_derived must be a boolean");
    m.toric_derived = toric.get<bool>();
    if (j.contains("chi_o")) m.chi_o = as_int(j["chi_o"], "chi_o");
    validate(m);
    return m;
}

json model_to_json(const NormalSurfaceModel& m) {
    json j;
    j["basis"] = m.basis;
    json gram = json::array();
    for (std::size_t i = 0; i < m.gram.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.gram.cols(); ++k) {
            const Rat& v = m.gram.at(i, k);
            if (v.is_integer())
                row.push_back(static_cast<long long>(v.num()));
            else
                row.push_back(v.str());
        }
        gram.push_back(row);
    }
    j["gram"] = gram;
    j["exceptional_groups"] = m.exceptional_groups;
    json canonical = json::array();
    for (const Rat& c : m.canonical) canonical.push_back(c.str());
    j["canonical"] = canonical;
    j["toric_derived"] = m.toric_derived;
    if (m.chi_o) j["chi_o"] = *m.chi_o;
    return j;
}

ResolutionGraph graph_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("graph file must be a JSON object");
    ResolutionGraph g;
    for (const auto& c : field(j, "curves")) {
        if (!c.is_object()) throw ParseError("curve entries must be objects");
        ExceptionalCurve curve;
        const json& label = field(c, "label");
        if (!label.is_string()) throw ParseError("curve label must be a string");
        curve.label = label.get<std::string>();
        curve.self_intersection = as_int(field(c, "self_int"), "self_int");
        curve.arithmetic_genus = as_int(field(c, "genus"), "genus");
        g.curves.push_back(curve);
    }
    const std::size_t n = g.curves.size();
    g.adjacency = QMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        g.adjacency.at(i, i) = Rat(g.curves[i].self_intersection);
    std::set<std::pair<int, int>> seen;
    for (const auto& t : field(j, "adjacency")) {
        std::vector<long long> triple = int_vector(t, "adjacency triple");
        if (triple.size() != 3) throw ParseError("adjacency entries must be [i,j,value]");
        long long i = triple[0], k = triple[1];
        if (i < 0 || k < 0 || i >= static_cast<long long>(n) ||
            k >= static_cast<long long>(n) || i == k)
            throw ParseError("adjacency indices out of range");
        auto key = std::minmax(static_cast<int>(i), static_cast<int>(k));
        if (!seen.insert({key.first, key.second}).second)
            throw ParseError("duplicate adjacency pair");
        g.adjacency.at(i, k) = Rat(triple[2]);
        g.adjacency.at(k, i) = Rat(triple[2]);
    }
    return g;
}

json graph_to_json(const ResolutionGraph& g) {
    json j;
    json curves = json::array();
    for (const auto& c : g.curves) {
        json e;
        e["label"] = c.label;
        e["self_int"] = c.self_intersection;
        e["genus"] = c.arithmetic_genus;
        curves.push_back(e);
    }
    j["curves"] = curves;
    json adj = json::array();
    for (std::size_t i = 0; i < g.curves.size(); ++i)
        for (std::size_t k = i + 1; k < g.curves.size(); ++k)
            if (!g.adjacency.at(i, k).is_zero())
                adj.push_back({static_cast<long long>(i), static_cast<long long>(k),
                               static_cast<long long>(g.adjacency.at(i, k).num())});
    j["adjacency"] = adj;
    return j;
}

SheafData sheaf_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("sheaf file must be a JSON object");
    SheafData s;
    s.rank = as_int(field(j, "rank"), "rank");
    for (const auto& c : field(j, "c1")) s.c1.push_back(as_rat(c, "c1 entry"));
    if (j.contains("local_c2")) {
        const json& locals = j["local_c2"];
        if (!locals.is_object()) throw ParseError("local_c2 must be an object");
        for (auto it = locals.begin(); it != locals.end(); ++it) {
            int g;
            try {
                g = std::stoi(it.key());
            } catch (const std::exception&) {
                throw ParseError("local_c2 keys must be group indices");
            }
            s.local_c2[g] = as_rat(it.value(), "local_c2 entry");
        }
    }
    if (j.contains("smooth_c2")) s.smooth_c2 = as_rat(j["smooth_c2"], "smooth_c2");
    return s;
}

json sheaf_to_json(const SheafData& s) {
    json j;
    j["rank"] = s.rank;
    json c1 = json::array();
    for (const Rat& c : s.c1) c1.push_back(c.str());
    j["c1"] = c1;
    json locals = json::object();
    for (const auto& [g, v] : s.local_c2) locals[std::to_string(g)] = v.str();
    j["local_c2"] = locals;
    j["smooth_c2"] = s.smooth_c2.str();
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception&) {
        throw ParseError("invalid JSON in " + path);
    }
}

Fan load_fan(const std::string& path) { return fan_from_json(load_json_file(path)); }

NormalSurfaceModel load_model(const std::string& path) {
    return model_from_json(load_json_file(path));
}

ResolutionGraph load_graph(const std::string& path) {
    return graph_from_json(load_json_file(path));
}

SheafData load_sheaf(const std::string& path) {
    return sheaf_from_json(load_json_file(path));
}

NormalSurfaceModel load_model_or_fan(const std::string& path) {
    json j = load_json_file(path);
    if (j.is_object() && j.contains("basis")) return model_from_json(j);
    return export_surface_model(fan_from_json(j));
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

std::string convergence_csv(const LimitResult& r) {
    std::ostringstream out;
    out << "m,chi,two_chi_over_m2\n";
    for (const auto& [m, chi] : r.samples) {
        Rat ratio = Rat(2 * chi) / Rat(m * m);
        out << m << "," << chi << "," << ratio.str_frac() << "\n";
    }
    out << "limit," << r.value.str_frac() << "\n";
    return out.str();
}

std::string defect_csv(const DefectReport& r) {
    std::ostringstream out;
    out << "group,defect\n";
    for (const auto& [g, v] : r.per_point) out << g << "," << v.str_frac() << "\n";
    out << "total," << r.total.str_frac() << "\n";
    return out.str();
}

std::string rat_to_string(const Rat& r) { return r.str(); }

Rat rat_from_string(const std::string& s) { return Rat::parse(s); }

} // namespace nsi

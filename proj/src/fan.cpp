#include "nsi/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "nsi/resolution_graph.hpp"

namespace nsi {

long long det2(const IVec& a, const IVec& b) {
    return a[0] * b[1] - a[1] * b[0];
}

long long det3(const IVec& a, const IVec& b, const IVec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Fan fan2(std::vector<IVec> rays) {
    Fan f;
    f.rank = 2;
    f.rays = std::move(rays);
    const int n = static_cast<int>(f.rays.size());
    for (int i = 0; i < n; ++i) f.cones.push_back({i, (i + 1) % n});
    validate_fan(f);
    return f;
}

Fan fan3(std::vector<IVec> rays, std::vector<std::vector<int>> cones) {
    Fan f;
    f.rank = 3;
    f.rays = std::move(rays);
    f.cones = std::move(cones);
    validate_fan(f);
    return f;
}

namespace {

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

bool primitive(const IVec& v) {
    long long g = 0;
    for (long long x : v) g = gcd_ll(g, x < 0 ? -x : x);
    return g == 1;
}

// upper half plane first (angle in [0, pi)), then lower
int half(const IVec& v) {
    if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
    return 1;
}

bool angular_less(const IVec& a, const IVec& b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return det2(a, b) > 0;
}

void validate_fan_2d(const Fan& f) {
    const int n = static_cast<int>(f.rays.size());
    if (n < 3) throw NotComplete("a complete rank-2 fan needs at least 3 rays");
    if (f.cones.size() != static_cast<std::size_t>(n))
        throw NotComplete("rank-2 cones must be the consecutive ray pairs");
    std::set<std::pair<int, int>> want;
    for (int i = 0; i < n; ++i) want.insert({i, (i + 1) % n});
    std::set<std::pair<int, int>> got;
    for (const auto& c : f.cones) {
        if (c.size() != 2) throw NotSimplicial("rank-2 cone must have 2 rays");
        if (c[0] < 0 || c[0] >= n || c[1] < 0 || c[1] >= n || c[0] == c[1])
            throw NotSimplicial("bad ray indices in cone");
        got.insert({c[0], c[1]});
    }
    if (got != want) throw NotComplete("rank-2 cones must be the consecutive ray pairs");
    for (int i = 0; i < n; ++i)
        if (det2(f.rays[i], f.rays[(i + 1) % n]) <= 0)
            throw NotComplete("consecutive determinant not positive at ray " +
                              std::to_string(i));
    // with all consecutive determinants positive the rays wind at least once;
    // exactly one angular wrap means exactly one full turn
    int wraps = 0;
    for (int i = 0; i < n; ++i)
        if (!angular_less(f.rays[i], f.rays[(i + 1) % n])) ++wraps;
    if (wraps != 1) throw NotComplete("rays wind around more than once");
}

void validate_fan_3d(const Fan& f) {
    const int n = static_cast<int>(f.rays.size());
    if (f.cones.empty()) throw NotComplete("no maximal cones");
    std::map<std::pair<int, int>, int> edge_count;
    std::vector<int> used(n, 0);
    std::set<std::vector<int>> seen;
    for (const auto& c : f.cones) {
        if (c.size() != 3) throw NotSimplicial("rank-3 cone must have 3 rays");
        for (int idx : c)
            if (idx < 0 || idx >= n) throw NotSimplicial("ray index out of range");
        if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2])
            throw NotSimplicial("repeated ray in cone");
        std::vector<int> key = c;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) throw NotComplete("duplicate maximal cone");
        if (det3(f.rays[c[0]], f.rays[c[1]], f.rays[c[2]]) == 0)
            throw NotSimplicial("cone rays are linearly dependent");
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                ++edge_count[{std::min(key[a], key[b]), std::max(key[a], key[b])}];
        for (int idx : c) used[idx] = 1;
    }
    for (int i = 0; i < n; ++i)
        if (!used[i]) throw NotComplete("ray " + std::to_string(i) + " not in any cone");
    for (const auto& [e, cnt] : edge_count)
        if (cnt != 2)
            throw NotComplete("edge (" + std::to_string(e.first) + "," +
                              std::to_string(e.second) + ") lies in " +
                              std::to_string(cnt) + " cones");
    long long V = n, E = static_cast<long long>(edge_count.size()),
              F = static_cast<long long>(f.cones.size());
    if (V - E + F != 2)
        throw NotComplete("Euler characteristic V-E+F = " + std::to_string(V - E + F));
    // connectivity across shared edges
    std::vector<int> comp(f.cones.size(), -1);
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (std::size_t ci = 0; ci < f.cones.size(); ++ci) {
        const auto& c = f.cones[ci];
        std::vector<int> key = c;
        std::sort(key.begin(), key.end());
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                by_edge[{key[a], key[b]}].push_back(static_cast<int>(ci));
    }
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        int ci = stack.back();
        stack.pop_back();
        std::vector<int> key = f.cones[ci];
        std::sort(key.begin(), key.end());
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                for (int other : by_edge[{key[a], key[b]}])
                    if (comp[other] < 0) {
                        comp[other] = 0;
                        stack.push_back(other);
                    }
    }
    for (int c : comp)
        if (c < 0) throw NotComplete("cone complex is disconnected");
}

} // namespace

void validate_fan(const Fan& f) {
    if (f.rank != 2 && f.rank != 3)
        throw DimensionMismatch("rank must be 2 or 3");
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        if (f.rays[i].size() != static_cast<std::size_t>(f.rank))
            throw DimensionMismatch("ray " + std::to_string(i) + " has wrong length");
        if (!primitive(f.rays[i]))
            throw NotPrimitive("ray " + std::to_string(i));
    }
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        for (std::size_t j = i + 1; j < f.rays.size(); ++j)
            if (f.rays[i] == f.rays[j])
                throw DuplicateRay("rays " + std::to_string(i) + " and " +
                                   std::to_string(j));
    if (f.rank == 2)
        validate_fan_2d(f);
    else
        validate_fan_3d(f);
}

namespace {

// x with det(a, x) = 1, from the extended gcd of a's coordinates.
IVec unimodular_partner(const IVec& a) {
    long long old_r = a[0], r = a[1];
    long long old_s = 1, s = 0;
    long long old_t = 0, t = 1;
    while (r != 0) {
        long long qq = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - qq * r};
        std::tie(old_s, s) = std::pair{s, old_s - qq * s};
        std::tie(old_t, t) = std::pair{t, old_t - qq * t};
    }
    // old_s * a0 + old_t * a1 = old_r = +-gcd = +-1
    long long sgn = old_r > 0 ? 1 : -1;
    long long y = sgn * old_s, x = -sgn * old_t;
    return {x, y};
}

// Hirzebruch-Jung chain strictly between a and b; det(a,b) = d > 1.
std::vector<IVec> hj_chain(const IVec& a, const IVec& b, long long d) {
    IVec u = unimodular_partner(a);
    long long beta = det2(b, u);
    long long q = ((-beta) % d + d) % d;
    long long shift = (beta + q) / d;
    IVec w1 = {u[0] + shift * a[0], u[1] + shift * a[1]};
    auto bs = hj_expand(d, q);
    std::vector<IVec> chain;
    IVec prev = a, cur = w1;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        chain.push_back(cur);
        IVec next = {bs[i] * cur[0] - prev[0], bs[i] * cur[1] - prev[1]};
        prev = cur;
        cur = next;
    }
    if (cur != b) throw std::logic_error("hj chain did not close onto the cone");
    return chain;
}

} // namespace

Resolution2D resolve_fan_2d(const Fan& f) {
    validate_fan(f);
    if (f.rank != 2) throw DimensionMismatch("resolution is rank-2 only");
    const int n = static_cast<int>(f.rays.size());
    Resolution2D out;
    std::vector<IVec> rays;
    std::vector<int> origin;
    // walk the boundary in CCW order, inserting each cone's chain
    struct PendingGroup {
        int source_cone;
        std::vector<int> ray_indices;
    };
    std::vector<PendingGroup> groups;
    for (int i = 0; i < n; ++i) {
        rays.push_back(f.rays[i]);
        origin.push_back(i);
        const IVec& a = f.rays[i];
        const IVec& b = f.rays[(i + 1) % n];
        long long d = det2(a, b);
        if (d == 1) continue;
        PendingGroup g{i, {}};
        for (const IVec& w : hj_chain(a, b, d)) {
            g.ray_indices.push_back(static_cast<int>(rays.size()));
            rays.push_back(w);
            origin.push_back(-1);
        }
        groups.push_back(std::move(g));
    }
    out.resolved = fan2(std::move(rays));
    out.origin = std::move(origin);
    for (auto& g : groups) out.groups.push_back({g.source_cone, g.ray_indices});
    return out;
}

QMatrix smooth_gram(const Fan& f) {
    validate_fan(f);
    if (f.rank != 2) throw DimensionMismatch("smooth_gram is rank-2 only");
    const int n = static_cast<int>(f.rays.size());
    for (int i = 0; i < n; ++i)
        if (det2(f.rays[i], f.rays[(i + 1) % n]) != 1)
            throw NotSmooth("cone at ray " + std::to_string(i) + " is singular");
    QMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
        const IVec& prev = f.rays[(i + n - 1) % n];
        const IVec& next = f.rays[(i + 1) % n];
        const IVec& v = f.rays[i];
        long long sx = prev[0] + next[0], sy = prev[1] + next[1];
        long long b;
        if (v[0] != 0) {
            if (sx % v[0] != 0) throw std::logic_error("wall relation not integral");
            b = sx / v[0];
        } else {
            if (sy % v[1] != 0) throw std::logic_error("wall relation not integral");
            b = sy / v[1];
        }
        if (b * v[0] != sx || b * v[1] != sy)
            throw std::logic_error("wall relation violated");
        g.at(i, i) = Rat(-b);
        g.at(i, (i + 1) % n) = 1;
        g.at((i + 1) % n, i) = 1;
    }
    return g;
}

QVector cone_vertex(const Fan& f, const std::vector<int>& cone, const TorusDivisor& d) {
    if (d.size() != f.rays.size()) throw DimensionMismatch("divisor length");
    const std::size_t r = f.rank;
    QMatrix M(r, r);
    QVector rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) M.at(i, j) = Rat(f.rays[cone[i]][j]);
        rhs[i] = Rat(-d[cone[i]]);
    }
    return solve_linear(M, rhs);
}

QVector support_pullback(const Fan& f, const Resolution2D& r, const TorusDivisor& d) {
    if (d.size() != f.rays.size()) throw DimensionMismatch("divisor length");
    QVector out(r.resolved.rays.size());
    for (std::size_t i = 0; i < r.resolved.rays.size(); ++i)
        if (r.origin[i] >= 0) out[i] = Rat(d[r.origin[i]]);
    for (const auto& g : r.groups) {
        QVector u = cone_vertex(f, f.cones[g.source_cone], d);
        for (int idx : g.ray_indices) {
            const IVec& w = r.resolved.rays[idx];
            Rat val = u[0] * Rat(w[0]) + u[1] * Rat(w[1]);
            out[idx] = -val;
        }
    }
    return out;
}

bool is_cartier(const Fan& f, const TorusDivisor& d) {
    for (const auto& c : f.cones) {
        QVector u = cone_vertex(f, c, d);
        for (const Rat& x : u)
            if (!x.is_integer()) return false;
    }
    return true;
}

long long cartier_index(const Fan& f, const TorusDivisor& d) {
    long long l = 1;
    auto fold = [&l](const Rat& x) {
        long long den = static_cast<long long>(x.den());
        l = std::lcm(l, den);
    };
    if (f.rank == 2) {
        Resolution2D r = resolve_fan_2d(f);
        QVector pb = support_pullback(f, r, d);
        for (std::size_t i = 0; i < pb.size(); ++i)
            if (r.origin[i] < 0) fold(pb[i]);
    } else {
        for (const auto& c : f.cones)
            for (const Rat& x : cone_vertex(f, c, d)) fold(x);
    }
    return l;
}

bool is_ample(const Fan& f, const TorusDivisor& d) {
    for (const auto& c : f.cones) {
        QVector u = cone_vertex(f, c, d);
        std::set<int> inside(c.begin(), c.end());
        for (std::size_t rho = 0; rho < f.rays.size(); ++rho) {
            if (inside.count(static_cast<int>(rho))) continue;
            Rat val;
            for (std::size_t j = 0; j < u.size(); ++j)
                val += u[j] * Rat(f.rays[rho][j]);
            if (!(val > Rat(-d[rho]))) return false;
        }
    }
    return true;
}

TorusDivisor canonical_divisor(const Fan& f) {
    return TorusDivisor(f.rays.size(), -1);
}

Fan sublattice_cover(const Fan& f, long long d) {
    if (d < 1) throw InvalidPair("cover degree must be positive");
    validate_fan(f);
    return f;
}

TorusDivisor cover_pullback(const TorusDivisor& d, long long scale) {
    TorusDivisor out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] * scale;
    return out;
}

namespace {

std::string ray_label(const IVec& v) {
    std::string s = "D(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

} // namespace

NormalSurfaceModel export_surface_model(const Fan& f) {
    Resolution2D r = resolve_fan_2d(f);
    NormalSurfaceModel m;
    m.gram = smooth_gram(r.resolved);
    for (const auto& v : r.resolved.rays) m.basis.push_back(ray_label(v));
    for (const auto& g : r.groups) m.exceptional_groups.push_back(g.ray_indices);
    m.canonical = QVector(r.resolved.rays.size(), Rat(-1));
    m.toric_derived = true;
    m.chi_o = 1;
    validate(m);
    return m;
}

ToricSurface make_toric_surface(const Fan& f) {
    ToricSurface s;
    s.fan = f;
    s.res = resolve_fan_2d(f);
    NormalSurfaceModel m;
    m.gram = smooth_gram(s.res.resolved);
    for (const auto& v : s.res.resolved.rays) m.basis.push_back(ray_label(v));
    for (const auto& g : s.res.groups) m.exceptional_groups.push_back(g.ray_indices);
    m.canonical = QVector(s.res.resolved.rays.size(), Rat(-1));
    m.toric_derived = true;
    m.chi_o = 1;
    validate(m);
    s.model = std::move(m);
    return s;
}

QVector ToricSurface::strict_class(const TorusDivisor& d) const {
    if (d.size() != fan.rays.size()) throw DimensionMismatch("divisor length");
    QVector out(res.resolved.rays.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        if (res.origin[i] >= 0) out[i] = Rat(d[res.origin[i]]);
    return out;
}

QVector ToricSurface::pullback(const TorusDivisor& d) const {
    return mumford_pullback(model, strict_class(d));
}

Rat ToricSurface::pair_divisors(const TorusDivisor& d1, const TorusDivisor& d2) const {
    return pair(model, strict_class(d1), strict_class(d2));
}

} // namespace nsi

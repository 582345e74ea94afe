#include "nsi/cohomology.hpp"

#include <array>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>
#include <vector>

namespace nsi {

namespace {

// The subcomplex of failing rays only matters through which rays fail, so
// homology ranks are cached per failing-set bitmask.
struct SphereComplex {
    int rank = 2;
    int nrays = 0;
    std::vector<std::pair<int, int>> edges;       // i < j, pairs inside a cone
    std::vector<std::array<int, 3>> triangles;    // rank 3 only, sorted triples
};

SphereComplex build_complex(const Fan& f) {
    SphereComplex c;
    c.rank = f.rank;
    c.nrays = static_cast<int>(f.rays.size());
    std::set<std::pair<int, int>> edges;
    for (const auto& cone : f.cones) {
        std::vector<int> s(cone.begin(), cone.end());
        std::sort(s.begin(), s.end());
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b)
                edges.insert({s[a], s[b]});
        if (f.rank == 3) c.triangles.push_back({s[0], s[1], s[2]});
    }
    c.edges.assign(edges.begin(), edges.end());
    return c;
}

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

// contributions of one failing set to (h^0, h^1, h^2, h^3)
std::array<long long, 4> homology_of_mask(const SphereComplex& c, std::uint64_t mask) {
    std::array<long long, 4> h{0, 0, 0, 0};
    if (mask == 0) {
        h[0] = 1;
        return h;
    }
    std::vector<int> verts;
    for (int i = 0; i < c.nrays; ++i)
        if (mask >> i & 1) verts.push_back(i);
    std::vector<int> parent(c.nrays);
    for (int i = 0; i < c.nrays; ++i) parent[i] = i;
    long long E = 0;
    std::vector<int> live_edges;
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        auto [a, b] = c.edges[e];
        if ((mask >> a & 1) && (mask >> b & 1)) {
            ++E;
            live_edges.push_back(static_cast<int>(e));
            parent[find_root(parent, a)] = find_root(parent, b);
        }
    }
    std::set<int> roots;
    for (int v : verts) roots.insert(find_root(parent, v));
    long long components = static_cast<long long>(roots.size());
    long long V = static_cast<long long>(verts.size());
    long long cycles = E - V + components;
    h[1] = components - 1;
    if (c.rank == 2) {
        h[2] = cycles;
        return h;
    }
    std::vector<int> live_tris;
    for (std::size_t t = 0; t < c.triangles.size(); ++t) {
        const auto& tr = c.triangles[t];
        if ((mask >> tr[0] & 1) && (mask >> tr[1] & 1) && (mask >> tr[2] & 1))
            live_tris.push_back(static_cast<int>(t));
    }
    long long T = static_cast<long long>(live_tris.size());
    long long rank_d2 = 0;
    if (T > 0) {
        std::map<int, int> edge_row;
        for (std::size_t i = 0; i < live_edges.size(); ++i)
            edge_row[live_edges[i]] = static_cast<int>(i);
        auto edge_index = [&](int a, int b) {
            auto it = std::lower_bound(c.edges.begin(), c.edges.end(),
                                       std::pair<int, int>{a, b});
            return edge_row.at(static_cast<int>(it - c.edges.begin()));
        };
        QMatrix boundary(live_edges.size(), live_tris.size());
        for (std::size_t col = 0; col < live_tris.size(); ++col) {
            const auto& tr = c.triangles[live_tris[col]];
            boundary.at(edge_index(tr[1], tr[2]), col) = 1;
            boundary.at(edge_index(tr[0], tr[2]), col) = -1;
            boundary.at(edge_index(tr[0], tr[1]), col) = 1;
        }
        rank_d2 = rank(boundary);
    }
    h[2] = cycles - rank_d2;
    h[3] = T - rank_d2;
    return h;
}

int thread_budget() {
    const char* env = std::getenv("NSI_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

struct Box {
    std::vector<long long> lo, hi;
    long long volume() const {
        long long v = 1;
        for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i] + 1;
        return v;
    }
};

Box character_box(const Fan& f, const TorusDivisor& d, long long extra_pad) {
    Box box;
    box.lo.assign(f.rank, 0);
    box.hi.assign(f.rank, 0);
    bool first = true;
    for (const auto& cone : f.cones) {
        QVector u = cone_vertex(f, cone, d);
        for (int i = 0; i < f.rank; ++i) {
            long long lo = static_cast<long long>(u[i].floor());
            long long hi = static_cast<long long>(u[i].ceil());
            if (first) {
                box.lo[i] = lo;
                box.hi[i] = hi;
            } else {
                box.lo[i] = std::min(box.lo[i], lo);
                box.hi[i] = std::max(box.hi[i], hi);
            }
        }
        first = false;
    }
    for (int i = 0; i < f.rank; ++i) {
        box.lo[i] -= 1 + extra_pad;
        box.hi[i] += 1 + extra_pad;
    }
    return box;
}

struct Accumulator {
    std::array<long long, 4> h{0, 0, 0, 0};
    std::unordered_map<std::uint64_t, std::array<long long, 4>> cache;

    void add(const SphereComplex& c, std::uint64_t mask) {
        auto it = cache.find(mask);
        if (it == cache.end())
            it = cache.emplace(mask, homology_of_mask(c, mask)).first;
        for (int i = 0; i < 4; ++i) h[i] += it->second[i];
    }
};

void scan_range(const Fan& f, const TorusDivisor& d, const SphereComplex& c,
                const Box& box, long long x_lo, long long x_hi, Accumulator& acc) {
    const int n = static_cast<int>(f.rays.size());
    std::vector<long long> u(f.rank, 0);
    auto mask_at = [&]() {
        std::uint64_t mask = 0;
        for (int r = 0; r < n; ++r) {
            long long s = d[r];
            for (int i = 0; i < f.rank; ++i) s += u[i] * f.rays[r][i];
            if (s < 0) mask |= std::uint64_t(1) << r;
        }
        return mask;
    };
    for (long long x = x_lo; x <= x_hi; ++x) {
        u[0] = x;
        for (long long y = box.lo[1]; y <= box.hi[1]; ++y) {
            u[1] = y;
            if (f.rank == 2) {
                acc.add(c, mask_at());
            } else {
                for (long long z = box.lo[2]; z <= box.hi[2]; ++z) {
                    u[2] = z;
                    acc.add(c, mask_at());
                }
            }
        }
    }
}

} // namespace

GradedCohomologyReport chi_report(const Fan& f, const TorusDivisor& d,
                                  long long extra_pad) {
    validate_fan(f);
    if (d.size() != f.rays.size()) throw DimensionMismatch("divisor length");
    if (f.rays.size() > 63) throw DimensionMismatch("too many rays for the oracle");
    SphereComplex complex = build_complex(f);
    Box box = character_box(f, d, extra_pad);

    int threads = thread_budget();
    long long span = box.hi[0] - box.lo[0] + 1;
    if (threads > span) threads = static_cast<int>(span);

    std::vector<Accumulator> parts(threads);
    if (threads == 1) {
        scan_range(f, d, complex, box, box.lo[0], box.hi[0], parts[0]);
    } else {
        std::vector<std::thread> pool;
        long long chunk = (span + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            long long lo = box.lo[0] + t * chunk;
            long long hi = std::min(box.hi[0], lo + chunk - 1);
            if (lo > box.hi[0]) break;
            pool.emplace_back([&, lo, hi, t] {
                scan_range(f, d, complex, box, lo, hi, parts[t]);
            });
        }
        for (auto& th : pool) th.join();
    }

    GradedCohomologyReport rep;
    rep.h.assign(f.rank + 1, 0);
    for (const auto& p : parts)
        for (int i = 0; i <= f.rank; ++i) rep.h[i] += p.h[i];
    for (int i = 0; i <= f.rank; ++i)
        rep.chi += (i % 2 == 0 ? 1 : -1) * rep.h[i];
    rep.contributing_points = box.volume();
    return rep;
}

long long chi(const Fan& f, const TorusDivisor& d) { return chi_report(f, d).chi; }

long long nef_section_count(const Fan& f, const TorusDivisor& d) {
    validate_fan(f);
    if (d.size() != f.rays.size()) throw DimensionMismatch("divisor length");
    Box box = character_box(f, d, 0);
    const int n = static_cast<int>(f.rays.size());
    long long count = 0;
    std::vector<long long> u(f.rank, 0);
    auto admissible = [&]() {
        for (int r = 0; r < n; ++r) {
            long long s = d[r];
            for (int i = 0; i < f.rank; ++i) s += u[i] * f.rays[r][i];
            if (s < 0) return false;
        }
        return true;
    };
    for (long long x = box.lo[0]; x <= box.hi[0]; ++x) {
        u[0] = x;
        for (long long y = box.lo[1]; y <= box.hi[1]; ++y) {
            u[1] = y;
            if (f.rank == 2) {
                if (admissible()) ++count;
            } else {
                for (long long z = box.lo[2]; z <= box.hi[2]; ++z) {
                    u[2] = z;
                    if (admissible()) ++count;
                }
            }
        }
    }
    return count;
}

} // namespace nsi

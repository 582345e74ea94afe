#include "nsi/chern.hpp"

#include <set>

#include "nsi/cohomology.hpp"

namespace nsi {

void validate(const SheafData& s, const NormalSurfaceModel& m) {
    validate(m);
    if (s.rank < 1) throw ModelMismatch("rank must be positive");
    if (s.c1.size() != m.basis.size()) throw ModelMismatch("c1 length");
    for (const auto& [g, v] : s.local_c2) {
        if (g < 0 || static_cast<std::size_t>(g) >= m.exceptional_groups.size())
            throw ModelMismatch("local c2 key " + std::to_string(g) +
                                " is not an exceptional group");
        if (s.rank == 1 && !v.is_zero())
            throw ModelMismatch("rank-1 local c2 must vanish");
    }
}

SheafData line_bundle(const NormalSurfaceModel& m, const QVector& c1) {
    SheafData s;
    s.rank = 1;
    s.c1 = c1;
    validate(s, m);
    return s;
}

Rat int_c2(const SheafData& s, const NormalSurfaceModel& m) {
    validate(s, m);
    Rat total = s.smooth_c2;
    for (const auto& [g, v] : s.local_c2) total -= v;
    return total;
}

Rat delta(const SheafData& s, const NormalSurfaceModel& m) {
    Rat c2 = int_c2(s, m);
    return Rat(2 * s.rank) * c2 - Rat(s.rank - 1) * pair(m, s.c1, s.c1);
}

Rat ch2(const SheafData& s, const NormalSurfaceModel& m) {
    return pair(m, s.c1, s.c1) / Rat(2) - int_c2(s, m);
}

SheafData twist(const SheafData& s, const NormalSurfaceModel& m, const QVector& L) {
    validate(s, m);
    if (L.size() != m.basis.size()) throw DimensionMismatch("twist class length");
    SheafData out = s;
    const long long r = s.rank;
    out.c1 = add(s.c1, scale(Rat(r), L));
    out.smooth_c2 = s.smooth_c2 + Rat(r - 1) * pair(m, s.c1, L) +
                    Rat(r * (r - 1) / 2) * pair(m, L, L);
    return out;
}

SheafData direct_sum(const SheafData& a, const SheafData& b,
                     const NormalSurfaceModel& m) {
    validate(a, m);
    validate(b, m);
    SheafData out;
    out.rank = a.rank + b.rank;
    out.c1 = add(a.c1, b.c1);
    out.local_c2 = a.local_c2;
    for (const auto& [g, v] : b.local_c2) out.local_c2[g] += v;
    out.smooth_c2 = a.smooth_c2 + b.smooth_c2 + pair(m, a.c1, b.c1);
    return out;
}

SheafData frobenius_scale(const SheafData& s, long long p, long long m) {
    if (p < 1 || m < 0) throw InvalidPair("need p >= 1 and m >= 0");
    Int factor = 1;
    for (long long i = 0; i < m; ++i) factor *= p;
    SheafData out = s;
    out.c1 = scale(Rat(factor), s.c1);
    Rat sq = Rat(factor * factor);
    out.smooth_c2 = s.smooth_c2 * sq;
    for (auto& [g, v] : out.local_c2) v *= sq;
    return out;
}

bool bogomolov_check(const SheafData& s, const NormalSurfaceModel& m) {
    return delta(s, m) >= Rat(0);
}

Rat riemann_roch(const SheafData& s, const NormalSurfaceModel& m,
                 const DefectReport& defects) {
    validate(s, m);
    if (!m.chi_o) throw MissingChiO("model carries no chi(O) value");
    QVector k_pullback = sub(m.canonical, discrepancy_cycle(m));
    QVector pb = mumford_pullback(m, s.c1);
    Rat c1_sq = dot(pb, mul(m.gram, pb));
    Rat c1_k = dot(pb, mul(m.gram, k_pullback));
    return (c1_sq - c1_k) / Rat(2) - int_c2(s, m) + Rat(s.rank) * Rat(*m.chi_o) +
           defects.total;
}

namespace {

Rat defect_total(const ToricSurface& surface, const TorusDivisor& d) {
    const NormalSurfaceModel& m = surface.model;
    QVector pb = surface.pullback(d);
    QVector gp = mul(m.gram, pb);
    Rat self = dot(pb, gp);
    Rat k_pair = dot(m.canonical, gp);
    Rat predicted = (self - k_pair) / Rat(2) + Rat(*m.chi_o);
    return Rat(chi(surface.fan, d)) - predicted;
}

} // namespace

DefectReport rr_defect(const ToricSurface& surface, const TorusDivisor& d) {
    const NormalSurfaceModel& m = surface.model;
    if (!m.chi_o) throw MissingChiO("model carries no chi(O) value");
    DefectReport report;
    report.total = defect_total(surface, d);

    // sections of O(D) are the sections of the rounded-down pullback, so the
    // defect at one group is the smooth Riemann-Roch difference between
    // floor(pullback) and the pullback there
    QVector pb = surface.pullback(d);
    Rat sum;
    for (std::size_t g = 0; g < m.exceptional_groups.size(); ++g) {
        QVector correction(pb.size());
        for (int idx : m.exceptional_groups[g]) correction[idx] = pb[idx].frac();
        QVector gc = mul(m.gram, correction);
        Rat value = (dot(correction, gc) + dot(m.canonical, gc)) / Rat(2);
        report.per_point[static_cast<int>(g)] = value;
        sum += value;
    }
    if (sum != report.total)
        throw ModelMismatch("per-point defects do not sum to the total defect");
    return report;
}

DefectReport rr_defect(const Fan& f, const TorusDivisor& d) {
    return rr_defect(make_toric_surface(f), d);
}

DefectSweep defect_sweep(const Fan& f, long long bound) {
    if (bound < 0) throw InvalidPair("bound must be non-negative");
    ToricSurface surface = make_toric_surface(f);
    if (surface.fan.rank != 2) throw DimensionMismatch("sweep is rank-2 only");
    const std::size_t n = f.rays.size();
    std::set<Rat> seen;
    TorusDivisor d(n, -bound);
    while (true) {
        seen.insert(defect_total(surface, d));
        std::size_t i = 0;
        while (i < n && d[i] == bound) d[i++] = -bound;
        if (i == n) break;
        ++d[i];
    }
    DefectSweep sweep;
    sweep.values.assign(seen.begin(), seen.end());
    sweep.min = sweep.values.front();
    sweep.max = sweep.values.back();
    return sweep;
}

} // namespace nsi

#include "nsi/surface_model.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace nsi {

namespace {

std::vector<int> all_exceptional(const NormalSurfaceModel& m) {
    std::vector<int> idx;
    for (const auto& g : m.exceptional_groups)
        idx.insert(idx.end(), g.begin(), g.end());
    std::sort(idx.begin(), idx.end());
    return idx;
}

QMatrix sub_gram(const QMatrix& g, const std::vector<int>& idx) {
    QMatrix b(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            b.at(i, j) = g.at(idx[i], idx[j]);
    return b;
}

// correction on the given indices making (d + correction) orthogonal to them
QVector orthogonalize(const NormalSurfaceModel& m, const QVector& d,
                      const std::vector<int>& idx) {
    QVector result = d;
    if (idx.empty()) return result;
    QVector rhs(idx.size());
    QVector paired = mul(m.gram, d);
    for (std::size_t j = 0; j < idx.size(); ++j) rhs[j] = -paired[idx[j]];
    QVector lambda = solve_symmetric(sub_gram(m.gram, idx), rhs);
    for (std::size_t j = 0; j < idx.size(); ++j) result[idx[j]] += lambda[j];
    return result;
}

} // namespace

void validate(const NormalSurfaceModel& m) {
    const std::size_t n = m.basis.size();
    if (m.gram.rows() != n || m.gram.cols() != n)
        throw ModelMismatch("gram size does not match basis");
    if (!m.gram.is_symmetric()) throw NotSymmetric("intersection form");
    if (!m.gram.is_integral()) throw ModelMismatch("gram entries must be integers");
    if (m.canonical.size() != n)
        throw ModelMismatch("canonical class length does not match basis");
    std::set<int> seen;
    for (std::size_t g = 0; g < m.exceptional_groups.size(); ++g) {
        const auto& grp = m.exceptional_groups[g];
        if (grp.empty()) throw ModelMismatch("empty exceptional group");
        for (int idx : grp) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= n)
                throw ModelMismatch("exceptional index out of range");
            if (!seen.insert(idx).second)
                throw ModelMismatch("exceptional groups overlap");
        }
        std::vector<int> sorted(grp.begin(), grp.end());
        std::sort(sorted.begin(), sorted.end());
        if (!is_negative_definite(sub_gram(m.gram, sorted)))
            throw NotNegativeDefinite("exceptional group " + std::to_string(g));
    }
}

QVector mumford_pullback(const NormalSurfaceModel& m, const WeilClass& d) {
    if (d.size() != m.basis.size())
        throw DimensionMismatch("class length does not match basis");
    return orthogonalize(m, d, all_exceptional(m));
}

Rat pair(const NormalSurfaceModel& m, const WeilClass& d1, const WeilClass& d2) {
    QVector p1 = mumford_pullback(m, d1);
    QVector p2 = mumford_pullback(m, d2);
    return dot(p1, mul(m.gram, p2));
}

QVector sharp_pullback(const NormalSurfaceModel& m, const WeilClass& d) {
    if (!m.toric_derived)
        throw UnsupportedModel("rounding pullback needs a toric-derived model");
    QVector pb = mumford_pullback(m, d);
    for (int idx : all_exceptional(m)) pb[idx] = Rat(pb[idx].ceil());
    return pb;
}

Rat canonical_pair(const NormalSurfaceModel& m, const WeilClass& d) {
    QVector pb = mumford_pullback(m, d);
    return dot(pb, mul(m.gram, m.canonical));
}

QVector discrepancy_cycle(const NormalSurfaceModel& m) {
    validate(m);
    std::vector<int> idx = all_exceptional(m);
    QVector cycle(m.basis.size());
    if (idx.empty()) return cycle;
    QVector paired = mul(m.gram, m.canonical);
    QVector rhs(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) rhs[j] = paired[idx[j]];
    QVector a = solve_symmetric(sub_gram(m.gram, idx), rhs);
    for (std::size_t j = 0; j < idx.size(); ++j) cycle[idx[j]] = a[j];
    return cycle;
}

NumericalLattice numerical_lattice(const NormalSurfaceModel& m,
                                   const std::vector<WeilClass>& classes) {
    NumericalLattice out;
    out.gram = QMatrix(classes.size(), classes.size());
    std::vector<QVector> pbs;
    pbs.reserve(classes.size());
    for (const auto& c : classes) pbs.push_back(mumford_pullback(m, c));
    for (std::size_t i = 0; i < classes.size(); ++i) {
        QVector gi = mul(m.gram, pbs[i]);
        for (std::size_t j = 0; j < classes.size(); ++j)
            out.gram.at(i, j) = dot(gi, pbs[j]);
    }
    out.sig = signature(out.gram);
    return out;
}

} // namespace nsi

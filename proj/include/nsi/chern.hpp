#pragma once

#include <map>

#include "nsi/fan.hpp"
#include "nsi/surface_model.hpp"

namespace nsi {

// Ledger for a reflexive sheaf on a modeled normal surface: rank, first
// Chern class in model coordinates, the supplied local second Chern terms
// keyed by exceptional group, and the second Chern number of a smooth
// comparison pull-back.
struct SheafData {
    long long rank = 1;
    QVector c1;
    std::map<int, Rat> local_c2;
    Rat smooth_c2;
    bool operator==(const SheafData&) const = default;
};

void validate(const SheafData& s, const NormalSurfaceModel& m);

SheafData line_bundle(const NormalSurfaceModel& m, const QVector& c1);

// c2 = smooth term minus the sum of local corrections.
Rat int_c2(const SheafData& s, const NormalSurfaceModel& m);

// Discriminant 2 r c2 - (r-1) c1^2.
Rat delta(const SheafData& s, const NormalSurfaceModel& m);

Rat ch2(const SheafData& s, const NormalSurfaceModel& m); // c1^2/2 - c2

// Splitting-principle twist by a line class L:
// c1 += r L, c2 += (r-1) c1.L + C(r,2) L.L.
SheafData twist(const SheafData& s, const NormalSurfaceModel& m, const QVector& L);

// Whitney sum: ranks and c1 add, local tables add keywise, the smooth term
// gains the cross pairing c1(a).c1(b).
SheafData direct_sum(const SheafData& a, const SheafData& b,
                     const NormalSurfaceModel& m);

// c1 -> p^m c1, every c2 entry -> p^{2m} entry.
SheafData frobenius_scale(const SheafData& s, long long p, long long m);

bool bogomolov_check(const SheafData& s, const NormalSurfaceModel& m);

struct DefectReport {
    Rat total;
    std::map<int, Rat> per_point; // keyed by exceptional group
    bool operator==(const DefectReport&) const = default;
};

// chi = c1.(c1 - K)/2 - c2 + r chi(O) + total defect.
Rat riemann_roch(const SheafData& s, const NormalSurfaceModel& m,
                 const DefectReport& defects);

// Riemann-Roch defect of O(D) on a rank-2 fan: total = oracle chi minus the
// defect-free prediction. Per-point attribution rounds the pullback down to
// an integral class one group at a time and takes differences of the smooth
// Riemann-Roch values; the per-point sum is checked against the total.
DefectReport rr_defect(const Fan& f, const TorusDivisor& d);
DefectReport rr_defect(const ToricSurface& surface, const TorusDivisor& d);

struct DefectSweep {
    Rat min;
    Rat max;
    std::vector<Rat> values; // distinct totals, ascending
};

// Total defects of all divisors with coefficients in [-bound, bound].
DefectSweep defect_sweep(const Fan& f, long long bound);

} // namespace nsi

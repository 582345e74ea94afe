#pragma once

#include "nsi/fan.hpp"

namespace nsi {

struct GradedCohomologyReport {
    std::vector<long long> h;        // h^0 .. h^rank
    long long chi = 0;
    long long contributing_points = 0; // lattice points examined
    bool operator==(const GradedCohomologyReport&) const = default;
};

// Euler characteristic of O(d) on a complete simplicial fan, computed
// character by character: for each lattice point u of the search box the
// rays with <u, v> < -d_v span a subcomplex of the boundary sphere, and
// h^i picks up its reduced (i-1)-cohomology over Q. The box is the integral
// hull of the per-cone vertex solves, padded by `extra_pad + 1`.
GradedCohomologyReport chi_report(const Fan& f, const TorusDivisor& d,
                                  long long extra_pad = 0);

long long chi(const Fan& f, const TorusDivisor& d);

// Fast path for divisors the caller declares nef: section count of the
// polytope {u : <u, v> >= -d_v for all rays}. Nefness is never inferred.
long long nef_section_count(const Fan& f, const TorusDivisor& d);

} // namespace nsi

#pragma once

#include <string>
#include <vector>

#include "nsi/qlinalg.hpp"

namespace nsi {

struct ExceptionalCurve {
    std::string label;
    long long self_intersection = 0;
    long long arithmetic_genus = 0;
    bool operator==(const ExceptionalCurve&) const = default;
};

// Dual graph of a resolution: curves plus the full intersection matrix
// (diagonal = self-intersections, off-diagonal = pairwise intersections).
struct ResolutionGraph {
    std::vector<ExceptionalCurve> curves;
    QMatrix adjacency;
    bool operator==(const ResolutionGraph&) const = default;
};

// Symmetry, non-negative off-diagonal entries, diagonal consistent with the
// curve records, negative definiteness (reports the failing principal minor).
void validate(const ResolutionGraph& g);

// Degree of K restricted to each curve via adjunction:
// K.E = 2 p_a(E) - 2 - E^2.
QVector canonical_degrees(const ResolutionGraph& g);

// Unique exceptional cycle c with <c, E_j> = degrees[j] for every j.
QVector relative_c1(const ResolutionGraph& g, const std::vector<long long>& degrees);

// Discrepancy coefficients: the cycle a with <a, E_j> = K.E_j.
QVector discrepancies(const ResolutionGraph& g);

// Hirzebruch-Jung expansion n/q = b1 - 1/(b2 - 1/(...)), all b_i >= 2.
// Preconditions: n > q >= 1, gcd(n, q) = 1.
std::vector<long long> hj_expand(long long n, long long q);

// Chain of rational curves with self-intersections -b_i from hj_expand.
ResolutionGraph graph_from_hj(long long n, long long q);

} // namespace nsi

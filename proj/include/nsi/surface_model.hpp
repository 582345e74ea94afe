#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsi/qlinalg.hpp"

namespace nsi {

// Numerical model of a resolved normal surface: a basis of divisor classes
// on the resolution with its integral intersection form, the exceptional
// curves grouped by the singular point they contract to, and the canonical
// class in that basis. toric_derived marks models exported by the toric
// oracle (it gates the rounding pullback), chi_o carries chi(O_X) when known.
struct NormalSurfaceModel {
    std::vector<std::string> basis;
    QMatrix gram;
    std::vector<std::vector<int>> exceptional_groups;
    QVector canonical;
    bool toric_derived = false;
    std::optional<long long> chi_o;
    bool operator==(const NormalSurfaceModel&) const = default;
};

void validate(const NormalSurfaceModel& m);

// Divisor classes in model coordinates. Weil classes from the base surface
// are integer vectors supported away from exceptional indices; operations
// accept any rational vector of matching length.
using WeilClass = QVector;

// Numerical pullback: strict part plus the unique exceptional correction
// making the result orthogonal to every exceptional curve, solved per group.
QVector mumford_pullback(const NormalSurfaceModel& m, const WeilClass& d);

// <pullback(d1), pullback(d2)> under the model's intersection form.
Rat pair(const NormalSurfaceModel& m, const WeilClass& d1, const WeilClass& d2);

// Rounding pullback: exceptional coefficients of the numerical pullback are
// rounded up to integers. Only meaningful on toric-derived models.
QVector sharp_pullback(const NormalSurfaceModel& m, const WeilClass& d);

// <pullback(d), canonical>; exceptional cycles pair to zero with pullbacks,
// so this is the pairing against the canonical class of the base surface.
Rat canonical_pair(const NormalSurfaceModel& m, const WeilClass& d);

// Cycle a supported on exceptional indices with <a, E_j> = K.E_j; the
// pullback of K is canonical - a.
QVector discrepancy_cycle(const NormalSurfaceModel& m);

struct NumericalLattice {
    QMatrix gram;
    Signature sig;
    bool operator==(const NumericalLattice&) const = default;
};

// Pairing matrix of the given classes together with its exact inertia.
NumericalLattice numerical_lattice(const NormalSurfaceModel& m,
                                   const std::vector<WeilClass>& classes);

} // namespace nsi

#pragma once

#include <string>
#include <vector>

#include "nsi/qlinalg.hpp"
#include "nsi/surface_model.hpp"

namespace nsi {

using IVec = std::vector<long long>;
using TorusDivisor = std::vector<long long>; // coefficient per ray

// Complete simplicial fan in rank 2 or 3. Rank-2 rays are stored in strict
// counterclockwise order and the cones are the consecutive pairs; rank-3
// cones are ray-index triples triangulating the sphere.
struct Fan {
    int rank = 2;
    std::vector<IVec> rays;
    std::vector<std::vector<int>> cones;
    bool operator==(const Fan&) const = default;
};

long long det2(const IVec& a, const IVec& b);
long long det3(const IVec& a, const IVec& b, const IVec& c);

// Convenience constructor: rank-2 fan from CCW rays with consecutive cones.
Fan fan2(std::vector<IVec> rays);
Fan fan3(std::vector<IVec> rays, std::vector<std::vector<int>> cones);

void validate_fan(const Fan& f);

// Exceptional data produced by subdividing one singular cone.
struct ExceptionalGroup {
    int source_cone = 0;                // cone index in the original fan
    std::vector<int> ray_indices;       // indices into the resolved fan's rays
    bool operator==(const ExceptionalGroup&) const = default;
};

struct Resolution2D {
    Fan resolved;
    std::vector<int> origin;            // resolved ray -> original ray index, -1 if inserted
    std::vector<ExceptionalGroup> groups;
};

// Minimal resolution of a complete rank-2 fan: every singular cone is
// subdivided along its Hirzebruch-Jung chain.
Resolution2D resolve_fan_2d(const Fan& f);

// Intersection matrix of the invariant divisors on a smooth complete
// rank-2 fan: adjacency 1, self-intersection -b with prev + next = b * v.
QMatrix smooth_gram(const Fan& f);

// Pullback via the per-cone linear extension of the support function;
// coefficients on the resolved fan's rays, rational at inserted rays.
QVector support_pullback(const Fan& f, const Resolution2D& r, const TorusDivisor& d);

// Vertex solve for one cone: u with <u, v_i> = -d_i over the cone's rays.
QVector cone_vertex(const Fan& f, const std::vector<int>& cone, const TorusDivisor& d);

bool is_cartier(const Fan& f, const TorusDivisor& d);

// Smallest positive integer m with m*d Cartier; in rank 2, computed as the
// lcm of denominators of the numerical pullback coefficients, in rank 3 as
// the lcm of per-cone vertex denominators.
long long cartier_index(const Fan& f, const TorusDivisor& d);

// Strict convexity of the support function across every wall.
bool is_ample(const Fan& f, const TorusDivisor& d);

TorusDivisor canonical_divisor(const Fan& f); // minus the sum of all rays

// The degree-d^rank toric cover from rescaling the lattice. The fan is
// unchanged (primitive generators do not move); divisors pull back by
// multiplying every coefficient by d.
Fan sublattice_cover(const Fan& f, long long d);
TorusDivisor cover_pullback(const TorusDivisor& d, long long scale);

// Surface model export for a rank-2 fan: basis = resolved rays in CCW
// order, exceptional groups from the subdivision, canonical = minus the sum
// of all resolved rays, chi_o = 1.
NormalSurfaceModel export_surface_model(const Fan& f);

// Bundled fan + resolution + model, built once and reused.
struct ToricSurface {
    Fan fan;
    Resolution2D res;
    NormalSurfaceModel model;

    QVector strict_class(const TorusDivisor& d) const;
    QVector pullback(const TorusDivisor& d) const;
    Rat pair_divisors(const TorusDivisor& d1, const TorusDivisor& d2) const;
};

ToricSurface make_toric_surface(const Fan& f);

} // namespace nsi

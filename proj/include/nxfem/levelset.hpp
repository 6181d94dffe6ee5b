#pragma once

#include "nxfem/mesh.hpp"

#include <vector>

namespace nxfem {

/// Exact signed distance to a box of half-side l whose corners are rounded
/// off with radius r. Negative inside (subdomain 1), positive outside
/// (subdomain 2), zero on the interface.
struct RoundedBoxLevelSet {
    Point center = Point(0.5, 0.5, 0.5);
    double half_side = 0.2;
    double corner_radius = 0.05;
    int dim = 2;

    double value(const Point& x) const;
};

inline double eval_levelset(const RoundedBoxLevelSet& ls, const Point& x) { return ls.value(x); }

/// Level-set values at mesh vertices. Values with |v| < snap_tol * h are
/// replaced by +snap_tol * h, so no vertex sits exactly on the discrete
/// interface (snapped vertices end up in subdomain 2).
std::vector<double> vertex_levelset(const SimplicialMesh& mesh, const RoundedBoxLevelSet& ls,
                                    double snap_tol = 1e-10);

} // namespace nxfem

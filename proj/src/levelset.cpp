#include "nxfem/levelset.hpp"

#include <algorithm>
#include <cmath>

namespace nxfem {

double RoundedBoxLevelSet::value(const Point& x) const {
    double inside = -1e300; // max component of q
    double outside2 = 0.0;  // |max(q,0)|^2
    for (int c = 0; c < dim; ++c) {
        const double q = std::abs(x[c] - center[c]) - half_side;
        inside = std::max(inside, q);
        outside2 += std::max(q, 0.0) * std::max(q, 0.0);
    }
    return std::sqrt(outside2) + std::min(inside, 0.0) - corner_radius;
}

std::vector<double> vertex_levelset(const SimplicialMesh& mesh, const RoundedBoxLevelSet& ls,
                                    double snap_tol) {
    const double snap = snap_tol * mesh.h;
    std::vector<double> values(mesh.n_vertices());
    for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
        double val = ls.value(mesh.vertices[v]);
        if (std::abs(val) < snap) val = snap;
        values[v] = val;
    }
    return values;
}

} // namespace nxfem

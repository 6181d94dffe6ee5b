#pragma once

#include "nxfem/mesh.hpp"

#include <cstdint>
#include <vector>

namespace nxfem {

enum class ElemClass : std::uint8_t { Inside1, Inside2, Cut };

/// Geometry of one element intersected by the discrete interface: the
/// sub-simplex decomposition of both sides, the interface facet(s) and the
/// element-wise constant unit normal pointing from subdomain 1 into 2.
struct CutElement {
    int elem = -1;
    double meas1 = 0.0, meas2 = 0.0; // |T_1|, |T_2|
    double kappa1 = 0.0, kappa2 = 0.0;
    Point normal = Point::Zero();
    double facet_measure = 0.0; // |Gamma_T|
    std::vector<Point> cut_points;
    // facet pieces: a segment (2 points) in 2D, one or two triangles in 3D
    std::vector<std::array<Point, 3>> facet;
    // sub-simplex decompositions, dim+1 points each
    std::vector<std::array<Point, 4>> sub1, sub2;
};

struct CutData {
    int dim = 2;
    std::vector<ElemClass> elem_class;    // per element
    std::vector<int> cut_index;           // element -> index into cut_elems, -1 if uncut
    std::vector<CutElement> cut_elems;
    std::vector<std::int8_t> vertex_side; // 1 or 2
    std::vector<double> vertex_values;    // snapped level-set values

    bool is_cut(int elem) const { return elem_class[elem] == ElemClass::Cut; }
};

/// Cut a single simplex against the linear interpolant of the vertex values.
/// All values must be nonzero; signs must be mixed.
CutElement cut_simplex(int dim, const Point* verts, const double* values);

/// Classify every element and compute the full cut geometry. No vertex value
/// may be exactly zero (guaranteed upstream by snapping).
CutData compute_cut(const SimplicialMesh& mesh, const std::vector<double>& vertex_values);

} // namespace nxfem

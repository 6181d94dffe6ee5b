#include "nxfem/cut.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nxfem {

namespace {

double measure(int dim, const Point* v) { return std::abs(simplex_signed_volume(dim, v)); }

Point edge_cut(const Point& a, const Point& b, double fa, double fb) {
    const double t = fa / (fa - fb); // zero of the linear interpolant along the edge
    return a + t * (b - a);
}

double tri_area(const Point& a, const Point& b, const Point& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

// Split a (convex) prism with triangle faces (a0,a1,a2) and (b0,b1,b2),
// ai joined to bi, into three tetrahedra.
void push_prism(std::vector<std::array<Point, 4>>& out, const Point& a0, const Point& a1,
                const Point& a2, const Point& b0, const Point& b1, const Point& b2) {
    out.push_back({a0, a1, a2, b0});
    out.push_back({a1, a2, b0, b1});
    out.push_back({a2, b0, b1, b2});
}

// Constant gradient of the linear interpolant on the simplex.
Point interpolant_gradient(int dim, const Point* v, const double* f) {
    if (dim == 2) {
        Eigen::Matrix2d M;
        M << (v[1] - v[0]).head<2>().transpose(), (v[2] - v[0]).head<2>().transpose();
        const Eigen::Vector2d rhs(f[1] - f[0], f[2] - f[0]);
        const Eigen::Vector2d g = M.inverse() * rhs;
        return Point(g.x(), g.y(), 0.0);
    }
    Eigen::Matrix3d M;
    M << (v[1] - v[0]).transpose(), (v[2] - v[0]).transpose(), (v[3] - v[0]).transpose();
    return M.inverse() * Eigen::Vector3d(f[1] - f[0], f[2] - f[0], f[3] - f[0]);
}

void cut_triangle(CutElement& ce, const Point* v, const double* f) {
    // lone vertex = the one whose sign differs from the other two
    int lone = -1;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        if ((f[i] < 0) != (f[j] < 0) && (f[i] < 0) != (f[k] < 0)) lone = i;
    }
    const int j = (lone + 1) % 3, k = (lone + 2) % 3;
    const Point pj = edge_cut(v[lone], v[j], f[lone], f[j]);
    const Point pk = edge_cut(v[lone], v[k], f[lone], f[k]);
    ce.cut_points = {pj, pk};

    std::vector<std::array<Point, 4>> lone_side, other_side;
    lone_side.push_back({v[lone], pj, pk, Point::Zero()});
    // quadrilateral (pj, v[j], v[k], pk): split along the shorter diagonal
    if ((pj - v[k]).norm() <= (v[j] - pk).norm()) {
        other_side.push_back({pj, v[j], v[k], Point::Zero()});
        other_side.push_back({pj, v[k], pk, Point::Zero()});
    } else {
        other_side.push_back({pj, v[j], pk, Point::Zero()});
        other_side.push_back({v[j], v[k], pk, Point::Zero()});
    }
    if (f[lone] < 0) {
        ce.sub1 = std::move(lone_side);
        ce.sub2 = std::move(other_side);
    } else {
        ce.sub1 = std::move(other_side);
        ce.sub2 = std::move(lone_side);
    }
    ce.facet.push_back({pj, pk, Point::Zero()});
    ce.facet_measure = (pj - pk).norm();
}

void cut_tetrahedron(CutElement& ce, const Point* v, const double* f) {
    int neg[4], pos[4], nn = 0, np = 0;
    for (int i = 0; i < 4; ++i) (f[i] < 0 ? neg[nn++] : pos[np++]) = i;

    if (nn == 1 || np == 1) {
        // 3-1 split: tetrahedron around the lone vertex, prism on the other side
        const int lone = (nn == 1) ? neg[0] : pos[0];
        const int* rest = (nn == 1) ? pos : neg;
        Point p[3];
        for (int i = 0; i < 3; ++i)
            p[i] = edge_cut(v[lone], v[rest[i]], f[lone], f[rest[i]]);
        ce.cut_points = {p[0], p[1], p[2]};

        std::vector<std::array<Point, 4>> lone_side, other_side;
        lone_side.push_back({v[lone], p[0], p[1], p[2]});
        push_prism(other_side, p[0], p[1], p[2], v[rest[0]], v[rest[1]], v[rest[2]]);
        if (nn == 1) {
            ce.sub1 = std::move(lone_side);
            ce.sub2 = std::move(other_side);
        } else {
            ce.sub1 = std::move(other_side);
            ce.sub2 = std::move(lone_side);
        }
        ce.facet.push_back({p[0], p[1], p[2]});
        ce.facet_measure = tri_area(p[0], p[1], p[2]);
    } else {
        // 2-2 split: planar quadrilateral facet, a prism on each side
        const int n0 = neg[0], n1 = neg[1], p0 = pos[0], p1 = pos[1];
        const Point q00 = edge_cut(v[n0], v[p0], f[n0], f[p0]);
        const Point q01 = edge_cut(v[n0], v[p1], f[n0], f[p1]);
        const Point q10 = edge_cut(v[n1], v[p0], f[n1], f[p0]);
        const Point q11 = edge_cut(v[n1], v[p1], f[n1], f[p1]);
        ce.cut_points = {q00, q01, q10, q11};

        // cyclic order q00 -> q01 -> q11 -> q10
        ce.facet.push_back({q00, q01, q11});
        ce.facet.push_back({q00, q11, q10});
        ce.facet_measure = tri_area(q00, q01, q11) + tri_area(q00, q11, q10);

        push_prism(ce.sub1, v[n0], q00, q01, v[n1], q10, q11);
        push_prism(ce.sub2, v[p0], q00, q10, v[p1], q01, q11);
    }
}

} // namespace

CutElement cut_simplex(int dim, const Point* verts, const double* values) {
    for (int i = 0; i < dim + 1; ++i)
        if (values[i] == 0.0)
            throw std::invalid_argument("cut_simplex: vertex value exactly zero");

    CutElement ce;
    if (dim == 2)
        cut_triangle(ce, verts, values);
    else
        cut_tetrahedron(ce, verts, values);

    for (const auto& s : ce.sub1) ce.meas1 += measure(dim, s.data());
    for (const auto& s : ce.sub2) ce.meas2 += measure(dim, s.data());
    const double total = ce.meas1 + ce.meas2;
    ce.kappa1 = ce.meas1 / total;
    ce.kappa2 = ce.meas2 / total;

    // gradient of the interpolant points from negative (side 1) to positive (side 2)
    ce.normal = interpolant_gradient(dim, verts, values).normalized();
    return ce;
}

CutData compute_cut(const SimplicialMesh& mesh, const std::vector<double>& vertex_values) {
    if (vertex_values.size() != mesh.n_vertices())
        throw std::invalid_argument("compute_cut: value count does not match vertex count");

    CutData cut;
    cut.dim = mesh.dim;
    cut.vertex_values = vertex_values;
    cut.vertex_side.resize(mesh.n_vertices());
    for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
        if (vertex_values[v] == 0.0)
            throw std::invalid_argument("compute_cut: vertex value exactly zero (snap first)");
        cut.vertex_side[v] = vertex_values[v] < 0 ? 1 : 2;
    }

    const int nv = mesh.verts_per_simplex();
    cut.elem_class.resize(mesh.n_simplices());
    cut.cut_index.assign(mesh.n_simplices(), -1);
    Point verts[4];
    double vals[4];
    for (std::size_t e = 0; e < mesh.n_simplices(); ++e) {
        int n_neg = 0;
        for (int i = 0; i < nv; ++i) {
            const int v = mesh.simplices[e][i];
            verts[i] = mesh.vertices[v];
            vals[i] = vertex_values[v];
            if (vals[i] < 0) ++n_neg;
        }
        if (n_neg == 0) {
            cut.elem_class[e] = ElemClass::Inside2;
        } else if (n_neg == nv) {
            cut.elem_class[e] = ElemClass::Inside1;
        } else {
            cut.elem_class[e] = ElemClass::Cut;
            cut.cut_index[e] = int(cut.cut_elems.size());
            CutElement ce = cut_simplex(mesh.dim, verts, vals);
            ce.elem = int(e);
            cut.cut_elems.push_back(std::move(ce));
        }
    }
    return cut;
}

} // namespace nxfem

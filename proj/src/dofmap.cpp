#include "nxfem/dofmap.hpp"

#include <algorithm>
#include <stdexcept>

namespace nxfem {

std::pair<int, int> DofMap::block_range(int l) const {
    switch (l) {
    case 0: return {0, n_std};
    case 1: return {n_std, n_std + n_enr1};
    case 2: return {n_std + n_enr1, n_dofs()};
    default: throw std::invalid_argument("block_range: l must be 0, 1 or 2");
    }
}

std::vector<int> standard_dof_numbering(const SimplicialMesh& mesh) {
    std::vector<int> dof(mesh.n_vertices(), -1);
    int next = 0;
    for (std::size_t v = 0; v < mesh.n_vertices(); ++v)
        if (!mesh.boundary_vertex[v]) dof[v] = next++;
    return dof;
}

DofMap build_dofmap(const SimplicialMesh& mesh, const CutData& cut) {
    DofMap dm;
    dm.vertex_side = cut.vertex_side;
    dm.std_dof_of_vertex = standard_dof_numbering(mesh);
    dm.n_std = 0;
    for (int d : dm.std_dof_of_vertex) dm.n_std += (d >= 0);

    std::vector<std::uint8_t> enriched(mesh.n_vertices(), 0);
    for (const auto& ce : cut.cut_elems)
        for (int i = 0; i < mesh.verts_per_simplex(); ++i) {
            const int v = mesh.simplices[ce.elem][i];
            if (mesh.boundary_vertex[v])
                throw std::runtime_error(
                    "build_dofmap: cut element touches a boundary vertex; the interface "
                    "must stay away from the domain boundary");
            enriched[v] = 1;
        }

    for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
        if (!enriched[v]) continue;
        // enrichment of a vertex in subdomain 2 is supported on side 1 and vice versa
        (cut.vertex_side[v] == 2 ? dm.j_gamma_1 : dm.j_gamma_2).push_back(int(v));
    }
    dm.n_enr1 = int(dm.j_gamma_1.size());
    dm.n_enr2 = int(dm.j_gamma_2.size());

    dm.enr_dof_of_vertex.assign(mesh.n_vertices(), -1);
    dm.vertex_of_dof.resize(dm.n_dofs());
    for (std::size_t v = 0; v < mesh.n_vertices(); ++v)
        if (dm.std_dof_of_vertex[v] >= 0) dm.vertex_of_dof[dm.std_dof_of_vertex[v]] = int(v);
    int next = dm.n_std;
    for (int v : dm.j_gamma_1) {
        dm.enr_dof_of_vertex[v] = next;
        dm.vertex_of_dof[next++] = v;
    }
    for (int v : dm.j_gamma_2) {
        dm.enr_dof_of_vertex[v] = next;
        dm.vertex_of_dof[next++] = v;
    }
    return dm;
}

std::vector<ActiveDof> local_active_basis(const SimplicialMesh& mesh, const CutData& cut,
                                          const DofMap& dofmap, int elem, int side) {
    if (side != 1 && side != 2) throw std::invalid_argument("local_active_basis: side must be 1 or 2");
    const ElemClass cls = cut.elem_class[elem];
    if (cls != ElemClass::Cut) {
        const int elem_side = (cls == ElemClass::Inside1) ? 1 : 2;
        if (side != elem_side)
            throw std::invalid_argument("local_active_basis: element lies entirely on the other side");
    }
    std::vector<ActiveDof> active;
    for (int i = 0; i < mesh.verts_per_simplex(); ++i) {
        const int v = mesh.simplices[elem][i];
        if (dofmap.std_dof_of_vertex[v] >= 0)
            active.push_back({dofmap.std_dof_of_vertex[v], i, false});
        if (cls == ElemClass::Cut && dofmap.enr_dof_of_vertex[v] >= 0 &&
            dofmap.vertex_side[v] != side)
            active.push_back({dofmap.enr_dof_of_vertex[v], i, true});
    }
    return active;
}

double evaluate_on_side(const SimplicialMesh& mesh, const CutData& cut, const DofMap& dofmap,
                        const Eigen::VectorXd& u, int elem, int side, const Point& x) {
    // barycentric coordinates of x within the element
    const int nv = mesh.verts_per_simplex();
    const Point& x0 = mesh.vertices[mesh.simplices[elem][0]];
    Eigen::Matrix3d M = Eigen::Matrix3d::Identity();
    for (int i = 1; i < nv; ++i)
        M.col(i - 1) = mesh.vertices[mesh.simplices[elem][i]] - x0;
    const Eigen::Vector3d xi = M.inverse() * (x - x0);
    double hat[4];
    hat[0] = 1.0;
    for (int i = 1; i < nv; ++i) {
        hat[i] = xi[i - 1];
        hat[0] -= xi[i - 1];
    }

    double val = 0.0;
    for (const ActiveDof& a : local_active_basis(mesh, cut, dofmap, elem, side))
        val += u[a.dof] * hat[a.local_vertex];
    return val;
}

SpMat beta_transform(const DofMap& dofmap, double beta1, double beta2) {
    if (beta1 <= 0 || beta2 <= 0)
        throw std::invalid_argument("beta_transform: beta coefficients must be positive");
    const double inv_b[3] = {0.0, 1.0 / beta1, 1.0 / beta2};

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(dofmap.n_dofs() + dofmap.n_enr());
    for (int dof = 0; dof < dofmap.n_dofs(); ++dof) {
        const int v = dofmap.vertex_of_dof[dof];
        const int s = dofmap.vertex_side[v];
        const int o = 3 - s;
        if (!dofmap.is_enrichment_dof(dof)) {
            trip.emplace_back(dof, dof, inv_b[s]);
            const int e = dofmap.enr_dof_of_vertex[v];
            if (e >= 0) trip.emplace_back(dof, e, inv_b[o] - inv_b[s]);
        } else {
            trip.emplace_back(dof, dof, inv_b[o]); // supported on the opposite side
        }
    }
    SpMat T(dofmap.n_dofs(), dofmap.n_dofs());
    T.setFromTriplets(trip.begin(), trip.end());
    return T;
}

} // namespace nxfem

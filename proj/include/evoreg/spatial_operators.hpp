#pragma once

// Discrete spatial complexes (C, C*) on uniform grids over (0,1)^d.
//
// Staggered first-order differences: scalar unknowns u on the vertex lattice,
// fluxes q on cell lattices, one component per axis.  With uniform volume
// weights, the weighted adjoint of C is exactly its transpose, so the block
//
//   A = ( 0   -C* )
//       ( C    0  )
//
// is exactly skew-adjoint: C* must be the adjoint of C, not an approximation
// of it, or the energy identities downstream pick up spurious real parts.
//
//   dirichlet_on_u:  u on interior vertices, ghost zeros at the boundary
//                    (C = grad with the boundary condition), C* = -div free
//   neumann_on_u:    u on all vertices, C = grad unconstrained,
//                    C* = -div with zero normal flux built in
//   tangential_zero: 3-d edge/face pair, C = curl with vanishing tangential
//                    boundary trace, C* = curl on the dual complex
//
// Matrices are immutable after assembly; concurrent reads are safe.

#include <array>
#include <vector>

#include <Eigen/Sparse>

#include "evoreg/errors.hpp"
#include "evoreg/weighted_space.hpp"

namespace evoreg {

struct SpatialComplex {
    enum class Boundary { dirichlet_on_u, neumann_on_u, tangential_zero };

    Eigen::SparseMatrix<double> C;      // m1 x m0
    Eigen::SparseMatrix<double> Cstar;  // m0 x m1, exactly C^T here
    std::array<int, 3> dims{0, 0, 0};   // cells per axis
    double h = 0.0;
    Boundary boundary = Boundary::dirichlet_on_u;

    int m0() const { return static_cast<int>(C.cols()); }
    int m1() const { return static_cast<int>(C.rows()); }
};

namespace detail {

// Row-major index into a lattice with per-axis sizes.
inline int lattice_index(const std::array<int, 3>& size, int i, int j, int k) {
    return (i * size[1] + j) * size[2] + k;
}

// Apply a spatial operator to every time row of a signal value matrix:
// X is n x b (rows = time), the result is n x a.
inline Eigen::MatrixXcd sparse_apply_rows(const Eigen::SparseMatrix<double>& S,
                                          const Eigen::MatrixXcd& X) {
    return (S * X.transpose()).transpose();
}

}  // namespace detail

// Gradient/divergence pair on (0,1)^d, d in {1,2,3}, n cells per axis.
inline SpatialComplex build_grad_pair(int n_per_axis, int d,
                                      SpatialComplex::Boundary boundary) {
    if (n_per_axis < 3) throw parameter_error("build_grad_pair: need n_per_axis >= 3");
    if (d < 1 || d > 3) throw parameter_error("build_grad_pair: d must be 1, 2 or 3");
    if (boundary == SpatialComplex::Boundary::tangential_zero)
        throw parameter_error("build_grad_pair: tangential_zero belongs to the curl pair");

    const int n = n_per_axis;
    const double h = 1.0 / n;
    const bool dirichlet = boundary == SpatialComplex::Boundary::dirichlet_on_u;

    // u lattice: interior vertices (n-1 per axis) for Dirichlet, all
    // vertices (n+1 per axis) for Neumann; unused axes collapse to size 1.
    std::array<int, 3> usize{1, 1, 1};
    for (int a = 0; a < d; ++a) usize[a] = dirichlet ? n - 1 : n + 1;
    const int m0 = usize[0] * usize[1] * usize[2];

    // q components: axis a has n cells along a and the u lattice elsewhere.
    std::array<std::array<int, 3>, 3> qsize;
    std::array<int, 3> qoffset{0, 0, 0};
    int m1 = 0;
    for (int a = 0; a < d; ++a) {
        qsize[a] = usize;
        qsize[a][a] = n;
        qoffset[a] = m1;
        m1 += qsize[a][0] * qsize[a][1] * qsize[a][2];
    }

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(2 * m1));
    for (int a = 0; a < d; ++a) {
        const auto& qs = qsize[a];
        for (int i = 0; i < qs[0]; ++i)
            for (int j = 0; j < qs[1]; ++j)
                for (int k = 0; k < qs[2]; ++k) {
                    const int row = qoffset[a] + detail::lattice_index(qs, i, j, k);
                    std::array<int, 3> cell{i, j, k};
                    // difference (u at upper vertex - u at lower vertex)/h
                    // along axis a; for Dirichlet the vertex index shifts by
                    // one and boundary vertices are ghost zeros.
                    for (int side = 0; side < 2; ++side) {
                        std::array<int, 3> v = cell;
                        v[a] = cell[a] + side;  // vertex index in the full lattice
                        if (dirichlet) {
                            v[a] -= 1;  // interior vertex numbering starts at 1
                            if (v[a] < 0 || v[a] >= usize[a]) continue;  // ghost zero
                        }
                        const int col = detail::lattice_index(usize, v[0], v[1], v[2]);
                        trip.emplace_back(row, col, (side == 1 ? 1.0 : -1.0) / h);
                    }
                }
    }

    SpatialComplex sc;
    sc.C.resize(m1, m0);
    sc.C.setFromTriplets(trip.begin(), trip.end());
    sc.C.makeCompressed();
    sc.Cstar = sc.C.transpose();
    sc.Cstar.makeCompressed();
    sc.dims = {n, d > 1 ? n : 1, d > 2 ? n : 1};
    sc.h = h;
    sc.boundary = boundary;
    return sc;
}

// Curl pair on the unit cube: u on tangential-interior edges, q on faces.
// Edge of direction a at (i,j,k): along-axis cell index i in [0,n), the two
// transverse vertex indices in [0,n]; tangential-zero keeps transverse
// indices in [1,n-1].  Face of normal a: vertex index along a in [0,n],
// transverse cell indices in [0,n).  The circulation of the four edges
// around a face gives (curl E)_face / h entries of +-1/h.
inline SpatialComplex build_curl_pair(int n_per_axis) {
    if (n_per_axis < 3) throw parameter_error("build_curl_pair: need n_per_axis >= 3");
    const int n = n_per_axis;
    const double h = 1.0 / n;

    // edge lattices (columns): direction a
    std::array<std::array<int, 3>, 3> esize;
    std::array<int, 3> eoffset{0, 0, 0};
    int m0 = 0;
    for (int a = 0; a < 3; ++a) {
        esize[a] = {n - 1, n - 1, n - 1};
        esize[a][a] = n;
        eoffset[a] = m0;
        m0 += esize[a][0] * esize[a][1] * esize[a][2];
    }
    // face lattices (rows): normal a
    std::array<std::array<int, 3>, 3> fsize;
    std::array<int, 3> foffset{0, 0, 0};
    int m1 = 0;
    for (int a = 0; a < 3; ++a) {
        fsize[a] = {n, n, n};
        fsize[a][a] = n + 1;
        foffset[a] = m1;
        m1 += fsize[a][0] * fsize[a][1] * fsize[a][2];
    }

    auto edge_col = [&](int dir, int i, int j, int k) -> int {
        // (i,j,k) indexes the edge lattice of direction dir: along-axis in
        // [0,n), transverse VERTEX indices in [1,n-1] mapped to [0,n-2].
        std::array<int, 3> idx{i, j, k};
        for (int a = 0; a < 3; ++a) {
            if (a == dir) {
                if (idx[a] < 0 || idx[a] >= n) return -1;
            } else {
                idx[a] -= 1;
                if (idx[a] < 0 || idx[a] >= n - 1) return -1;  // boundary edge: zero
            }
        }
        return eoffset[dir] + detail::lattice_index(esize[dir], idx[0], idx[1], idx[2]);
    };

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(4 * m1));
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        const auto& fs = fsize[a];
        for (int i = 0; i < fs[0]; ++i)
            for (int j = 0; j < fs[1]; ++j)
                for (int k = 0; k < fs[2]; ++k) {
                    const int row = foffset[a] + detail::lattice_index(fs, i, j, k);
                    std::array<int, 3> f{i, j, k};  // vertex along a, cells along b,c
                    // (curl E)_a = dE_c/db - dE_b/dc, circulation over the
                    // face's four edges.
                    auto add = [&](int dir, std::array<int, 3> e, double sgn) {
                        const int col = edge_col(dir, e[0], e[1], e[2]);
                        if (col >= 0) trip.emplace_back(row, col, sgn / h);
                    };
                    std::array<int, 3> e = f;
                    // edges of direction c at b-faces f[b] and f[b]+1
                    e[b] = f[b] + 1;
                    add(c, e, +1.0);
                    e[b] = f[b];
                    add(c, e, -1.0);
                    // edges of direction b at c-faces f[c] and f[c]+1
                    e = f;
                    e[c] = f[c] + 1;
                    add(b, e, -1.0);
                    e[c] = f[c];
                    add(b, e, +1.0);
                }
    }

    SpatialComplex sc;
    sc.C.resize(m1, m0);
    sc.C.setFromTriplets(trip.begin(), trip.end());
    sc.C.makeCompressed();
    sc.Cstar = sc.C.transpose();
    sc.Cstar.makeCompressed();
    sc.dims = {n, n, n};
    sc.h = h;
    sc.boundary = SpatialComplex::Boundary::tangential_zero;
    return sc;
}

// Swap the roles of the pair: the returned complex has C' = -C*, C'* = -C.
// The Maxwell block arranges the H-field on the face space, which is this
// complex with the original curl pair's roles reversed.
inline SpatialComplex swapped_negated(const SpatialComplex& sc) {
    SpatialComplex out;
    out.C = -sc.Cstar;
    out.Cstar = -sc.C;
    out.C.makeCompressed();
    out.Cstar.makeCompressed();
    out.dims = sc.dims;
    out.h = sc.h;
    out.boundary = sc.boundary;
    return out;
}

// One application of the block A = (0, -C*; C, 0).
inline std::pair<Eigen::VectorXcd, Eigen::VectorXcd> block_apply(
    const SpatialComplex& sc, const Eigen::VectorXcd& u_part,
    const Eigen::VectorXcd& v_part) {
    if (u_part.size() != sc.m0() || v_part.size() != sc.m1())
        throw dimension_error("block_apply: part sizes do not match the complex");
    Eigen::VectorXcd top = -(sc.Cstar * v_part);
    Eigen::VectorXcd bottom = sc.C * u_part;
    return {std::move(top), std::move(bottom)};
}

// Discrete gradient of a vertex potential, for the complex property
// curl(grad phi) = 0: returns the edge field of (phi_head - phi_tail)/h on
// the tangential-interior edge set of build_curl_pair(n).
inline Eigen::VectorXd edge_gradient(int n, const Eigen::VectorXd& phi) {
    // phi on the full vertex lattice (n+1)^3
    const std::array<int, 3> vs{n + 1, n + 1, n + 1};
    if (phi.size() != (n + 1) * (n + 1) * (n + 1))
        throw dimension_error("edge_gradient: potential must live on the vertex lattice");
    std::array<std::array<int, 3>, 3> esize;
    int m0 = 0;
    std::array<int, 3> eoffset{0, 0, 0};
    for (int a = 0; a < 3; ++a) {
        esize[a] = {n - 1, n - 1, n - 1};
        esize[a][a] = n;
        eoffset[a] = m0;
        m0 += esize[a][0] * esize[a][1] * esize[a][2];
    }
    Eigen::VectorXd E = Eigen::VectorXd::Zero(m0);
    const double h = 1.0 / n;
    for (int a = 0; a < 3; ++a) {
        for (int i = 0; i < esize[a][0]; ++i)
            for (int j = 0; j < esize[a][1]; ++j)
                for (int k = 0; k < esize[a][2]; ++k) {
                    // lattice coords -> vertex coords: transverse indices +1
                    std::array<int, 3> lo{i, j, k};
                    for (int ax = 0; ax < 3; ++ax)
                        if (ax != a) lo[ax] += 1;
                    std::array<int, 3> hi = lo;
                    hi[a] += 1;
                    const int row =
                        eoffset[a] + detail::lattice_index(esize[a], i, j, k);
                    E(row) = (phi(detail::lattice_index(vs, hi[0], hi[1], hi[2])) -
                              phi(detail::lattice_index(vs, lo[0], lo[1], lo[2]))) /
                             h;
                }
    }
    return E;
}

}  // namespace evoreg

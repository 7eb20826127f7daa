#pragma once

#include "intmat.hpp"
#include "matroid.hpp"

namespace memb {

// Cochain complex of integer-affine functions on the interior faces of a
// polyhedral decomposition, in codimensions 0, 1, 2.  Aff(Q, Z) is presented
// by the value at a base vertex and the gradient on a saturated lattice basis
// of the direction space; differentials are restrictions with orientation
// signs.

struct PolyDecomposition {
    int ambient_dim = 0;
    std::vector<VPoly> cells;
    std::vector<std::pair<std::vector<long>, long>> boundary; // ambient facets a.x <= c
};

struct AffCohomology {
    long h0 = 0, h1 = 0;
    long c0 = 0, c1 = 0, c2 = 0;
    long rank_d0 = 0, rank_d1 = 0;
};

namespace affdetail {

using Key = std::vector<std::vector<long>>; // sorted vertex coordinate lists

struct FaceData {
    std::vector<std::vector<long>> verts; // sorted
    ZMat basis;                           // rows: saturated direction basis
    int dim = 0;
};

inline FaceData face_data(std::vector<std::vector<long>> verts) {
    std::sort(verts.begin(), verts.end());
    FaceData f;
    f.verts = std::move(verts);
    int D = (int)f.verts[0].size();
    ZMat diffs((int)f.verts.size() - 1, D);
    for (int i = 1; i < (int)f.verts.size(); ++i)
        for (int k = 0; k < D; ++k) diffs(i - 1, k) = f.verts[i][k] - f.verts[0][k];
    f.basis = saturated_row_basis(diffs);
    f.dim = f.basis.rows;
    return f;
}

// integer coordinates of x in the saturated basis (rows of b)
inline std::vector<mpz_class> coords_in_basis(const ZMat& b, const std::vector<mpz_class>& x) {
    int d = b.rows, D = b.cols;
    Mat<mpq_class> sys(D, d + 1, mpq_class(0));
    for (int i = 0; i < D; ++i) {
        for (int j = 0; j < d; ++j) sys(i, j) = mpq_class(b(j, i));
        sys(i, d) = mpq_class(x[i]);
    }
    auto piv = rref(sys);
    std::vector<mpq_class> sol(d, 0);
    for (size_t t = 0; t < piv.size(); ++t) {
        if (piv[t] == d) fail(errc::bad_input, "vector outside face span");
        sol[piv[t]] = sys((int)t, d);
    }
    std::vector<mpz_class> out(d);
    for (int j = 0; j < d; ++j) {
        if (sol[j].get_den() != 1) fail(errc::bad_input, "non-integer basis coordinate");
        out[j] = sol[j].get_num();
    }
    return out;
}

// restriction matrix Aff(Q) -> Aff(R) in (value, gradient) coordinates
inline ZMat restriction_matrix(const FaceData& q, const FaceData& r) {
    int dq = q.dim, dr = r.dim, D = q.basis.cols;
    ZMat m(dr + 1, dq + 1);
    std::vector<mpz_class> shift(D);
    for (int k = 0; k < D; ++k) shift[k] = r.verts[0][k] - q.verts[0][k];
    auto sc = coords_in_basis(q.basis, shift);
    m(0, 0) = 1;
    for (int j = 0; j < dq; ++j) m(0, j + 1) = sc[j];
    for (int i = 0; i < dr; ++i) {
        std::vector<mpz_class> dir(D);
        for (int k = 0; k < D; ++k) dir[k] = r.basis(i, k);
        auto dc = coords_in_basis(q.basis, dir);
        for (int j = 0; j < dq; ++j) m(i + 1, j + 1) = dc[j];
    }
    return m;
}

// orientation sign: +1 iff [outward direction, basis of R] agrees with the
// reference orientation of Q
inline int orientation_sign(const FaceData& q, const FaceData& r) {
    int D = q.basis.cols;
    // outward = centroid(R) - centroid(Q), scaled to integers
    std::vector<mpz_class> out(D);
    long nq = (long)q.verts.size(), nr = (long)r.verts.size();
    for (int k = 0; k < D; ++k) {
        mpz_class sq = 0, sr = 0;
        for (auto& v : q.verts) sq += v[k];
        for (auto& v : r.verts) sr += v[k];
        out[k] = sr * nq - sq * nr;
    }
    auto oc = coords_in_basis(q.basis, out);
    Mat<mpq_class> m(q.dim, q.dim, mpq_class(0));
    for (int j = 0; j < q.dim; ++j) m(j, 0) = mpq_class(oc[j]);
    for (int i = 0; i < r.dim; ++i) {
        std::vector<mpz_class> dir(D);
        for (int k = 0; k < D; ++k) dir[k] = r.basis(i, k);
        auto dc = coords_in_basis(q.basis, dir);
        for (int j = 0; j < q.dim; ++j) m(j, i + 1) = mpq_class(dc[j]);
    }
    mpq_class d = det_field(m);
    if (d == 0) fail(errc::bad_input, "degenerate orientation frame");
    return sgn(d) > 0 ? 1 : -1;
}

} // namespace affdetail

inline AffCohomology aff_cohomology(const PolyDecomposition& dec) {
    using namespace affdetail;
    auto on_boundary = [&](const std::vector<std::vector<long>>& verts) {
        for (auto& [a, c] : dec.boundary) {
            bool all = true;
            for (auto& v : verts) {
                long dot = 0;
                for (size_t k = 0; k < a.size(); ++k) dot += a[k] * v[k];
                if (dot != c) { all = false; break; }
            }
            if (all) return true;
        }
        return false;
    };

    // cells, then deduped interior faces in codimensions 1 and 2
    std::vector<FaceData> cells;
    for (auto& c : dec.cells) cells.push_back(face_data(c.verts));
    int top_dim = cells.empty() ? 0 : cells[0].dim;
    for (auto& c : cells)
        if (c.dim != top_dim) fail(errc::bad_input, "cells of mixed dimension");

    std::map<Key, FaceData> walls;                     // codim 1 interior
    std::map<Key, std::vector<std::pair<int, int>>> wall_cells; // cell idx + sign
    std::map<Key, FaceData> ridges;                    // codim 2 interior
    std::map<Key, std::vector<std::pair<Key, int>>> ridge_walls;

    std::vector<std::vector<Key>> cell_wall_keys(dec.cells.size());
    for (size_t ci = 0; ci < dec.cells.size(); ++ci) {
        faces::FaceWalker w(dec.cells[ci]);
        auto full = faces::full_set((int)dec.cells[ci].verts.size());
        for (auto& f : w.facets(full)) {
            std::vector<std::vector<long>> verts;
            for (int v : faces::members(f)) verts.push_back(dec.cells[ci].verts[v]);
            std::sort(verts.begin(), verts.end());
            if (on_boundary(verts)) continue;
            Key key = verts;
            if (!walls.count(key)) walls[key] = face_data(verts);
            wall_cells[key].push_back({(int)ci, orientation_sign(cells[ci], walls[key])});
            cell_wall_keys[ci].push_back(key);
        }
    }
    for (auto& [key, wall] : walls) {
        // the wall's own facets, computed inside one incident cell
        VPoly wp;
        wp.verts = wall.verts;
        int owner = wall_cells[key][0].first;
        wp.pool = dec.cells[owner].pool;
        faces::FaceWalker w(wp);
        auto full = faces::full_set((int)wp.verts.size());
        for (auto& f : w.facets(full)) {
            std::vector<std::vector<long>> verts;
            for (int v : faces::members(f)) verts.push_back(wp.verts[v]);
            std::sort(verts.begin(), verts.end());
            if (on_boundary(verts)) continue;
            Key rkey = verts;
            if (!ridges.count(rkey)) ridges[rkey] = face_data(verts);
            ridge_walls[rkey].push_back({key, orientation_sign(wall, ridges[rkey])});
        }
    }

    AffCohomology out;
    std::vector<long> cell_off(cells.size() + 1, 0);
    for (size_t i = 0; i < cells.size(); ++i)
        cell_off[i + 1] = cell_off[i] + cells[i].dim + 1;
    out.c0 = cell_off.back();
    std::map<Key, long> wall_off;
    long c1 = 0;
    for (auto& [key, wall] : walls) {
        wall_off[key] = c1;
        c1 += wall.dim + 1;
    }
    out.c1 = c1;
    std::map<Key, long> ridge_off;
    long c2 = 0;
    for (auto& [key, ridge] : ridges) {
        ridge_off[key] = c2;
        c2 += ridge.dim + 1;
    }
    out.c2 = c2;

    ZMat d0(out.c1, out.c0);
    for (auto& [key, wall] : walls) {
        long row0 = wall_off[key];
        for (auto& [ci, sign] : wall_cells[key]) {
            ZMat m = restriction_matrix(cells[ci], wall);
            for (int i = 0; i <= wall.dim; ++i)
                for (int j = 0; j <= cells[ci].dim; ++j)
                    d0(row0 + i, cell_off[ci] + j) += sign * m(i, j);
        }
    }
    ZMat d1(out.c2, out.c1);
    for (auto& [rkey, ridge] : ridges) {
        long row0 = ridge_off[rkey];
        for (auto& [wkey, sign] : ridge_walls[rkey]) {
            ZMat m = restriction_matrix(walls[wkey], ridge);
            for (int i = 0; i <= ridge.dim; ++i)
                for (int j = 0; j <= walls[wkey].dim; ++j)
                    d1(row0 + i, wall_off[wkey] + j) += sign * m(i, j);
        }
    }

    // d1 d0 = 0 is a structural identity; verify while we are exact anyway
    for (int i = 0; i < d1.rows; ++i)
        for (int j = 0; j < d0.cols; ++j) {
            mpz_class acc = 0;
            for (int k = 0; k < d1.cols; ++k) acc += d1(i, k) * d0(k, j);
            if (acc != 0) fail(errc::bad_input, "cochain differentials do not compose to zero");
        }

    out.rank_d0 = zrank(d0);
    out.rank_d1 = zrank(d1);
    out.h0 = out.c0 - out.rank_d0;
    out.h1 = (out.c1 - out.rank_d1) - out.rank_d0;
    return out;
}

// decomposition view of a matroid decomposition, boundary = the hypersimplex
inline PolyDecomposition decomposition_complex(const MatroidDecomposition& d) {
    PolyDecomposition out;
    out.ambient_dim = d.n;
    for (auto& p : d.parts) out.cells.push_back(p.poly);
    for (int i = 0; i < d.n; ++i) {
        std::vector<long> e(d.n, 0);
        e[i] = 1;
        out.boundary.push_back({e, 1});
        std::vector<long> mi(d.n, 0);
        mi[i] = -1;
        out.boundary.push_back({mi, 0});
    }
    return out;
}

// inequality pool for a 2-dimensional cell given by its vertices
inline std::vector<std::pair<std::vector<long>, long>> polygon_pool(
    const std::vector<std::vector<long>>& verts) {
    std::vector<std::pair<std::vector<long>, long>> pool;
    int n = (int)verts.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long ax = verts[j][1] - verts[i][1];
            long ay = verts[i][0] - verts[j][0];
            if (ax == 0 && ay == 0) continue;
            long c = ax * verts[i][0] + ay * verts[i][1];
            bool leq = true, geq = true;
            for (auto& v : verts) {
                long dot = ax * v[0] + ay * v[1];
                leq = leq && dot <= c;
                geq = geq && dot >= c;
            }
            if (leq) pool.push_back({{ax, ay}, c});
            if (geq) pool.push_back({{-ax, -ay}, -c});
        }
    return pool;
}

} // namespace memb

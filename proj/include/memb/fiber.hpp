#pragma once

#include "arrangement.hpp"

namespace memb {

// Dual complex of the Deligne special fibre S_Y: vertices are the classes of
// Y, simplices the pairwise-incident subsets, together with the blowup data
// Res_M(Y) (depth-stratified residue subspaces) and the boundary table.

struct ResidueEntry {
    MatQ span;
    int dim = 0;
    int depth = 0; // longest proper chain up to the full space inside the family
};

struct FiberVertex {
    LatticeClass cls;
    std::vector<ResidueEntry> residues;
};

struct FiberComplex {
    int r = 0, n = 0;
    std::vector<FiberVertex> vertices;
    std::vector<std::vector<int>> simplices;           // size >= 2, sorted vertex ids
    std::vector<std::vector<int>> simplex_quot_dims;   // dims of M_i/M_(i-1) per simplex
    std::vector<std::vector<int>> boundary;            // per index i: vertex ids with a B_i part

    int vertex_index(const LatticeClass& c) const {
        for (int i = 0; i < (int)vertices.size(); ++i)
            if (vertices[i].cls == c) return i;
        return -1;
    }
};

inline bool convex_equals(const std::vector<LatticeClass>& y) {
    auto h = convex_hull(y);
    std::vector<LatticeClass> s = y;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return h == s;
}

// B_i has a component on M's part iff [M + z^-1 f_i^M R] is not in Y
inline std::vector<std::vector<int>> boundary_incidence(const Arrangement& F,
                                                        const std::vector<LatticeClass>& y) {
    std::set<LatticeClass> yset(y.begin(), y.end());
    std::vector<LatticeClass> sorted(yset.begin(), yset.end());
    std::vector<std::vector<int>> out(F.n);
    for (int vi = 0; vi < (int)sorted.size(); ++vi) {
        const LatticeClass& m = sorted[vi];
        for (int i = 0; i < F.n; ++i) {
            auto [w, a] = theta_limit(m, F.vec(i));
            MatK gens(F.r, F.r + 1);
            for (int row = 0; row < F.r; ++row) {
                for (int col = 0; col < F.r; ++col) gens(row, col) = m.basis(row, col);
                gens(row, F.r) = w[row] * zpow(-1);
            }
            if (!yset.count(lattice_from_generators(gens))) out[i].push_back(vi);
        }
    }
    return out;
}

inline FiberComplex fiber_complex(const Arrangement& F, std::vector<LatticeClass> y) {
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());
    if (y.empty()) fail(errc::bad_input, "empty Y");
    if (!convex_equals(y)) fail(errc::not_convex, "Y is not convex");
    std::vector<LatticeClass> stab;
    try {
        stab = stable_lattices(F).classes;
    } catch (const error& e) {
        if (e.code != errc::no_stable_lattice) throw; // n = r has an empty Stab
    }
    for (auto& lam : stab)
        if (!std::binary_search(y.begin(), y.end(), lam))
            fail(errc::missing_stable, "Y does not contain all stable lattices");

    FiberComplex fc;
    fc.r = F.r;
    fc.n = F.n;
    int m = (int)y.size();

    // residue families with depths
    for (auto& lam : y) {
        FiberVertex v;
        v.cls = lam;
        std::vector<ResidueEntry> fam;
        for (auto& other : y) {
            ResidueSubspace rs = residue(lam, other.basis);
            bool dup = false;
            for (auto& e : fam) dup = dup || e.span == rs.span;
            if (!dup) fam.push_back(ResidueEntry{rs.span, rs.dim(), 0});
        }
        std::sort(fam.begin(), fam.end(),
                  [](const ResidueEntry& a, const ResidueEntry& b) { return a.dim > b.dim; });
        for (auto& e : fam) {
            if (e.dim == F.r) { e.depth = 0; continue; }
            int best = -1;
            for (auto& o : fam)
                if (o.dim > e.dim && subspace_leq(e.span, o.span)) best = std::max(best, o.depth);
            if (best < 0) fail(errc::bad_input, "residue family misses the full space");
            e.depth = best + 1;
        }
        // centers of equal depth are disjoint: their span lies at smaller depth
        for (auto& a : fam)
            for (auto& b : fam) {
                if (&a == &b || a.depth != b.depth || a.depth == 0) continue;
                MatQ stack(a.span.rows + b.span.rows, F.r, mpq_class(0));
                for (int i = 0; i < a.span.rows; ++i)
                    for (int j = 0; j < F.r; ++j) stack(i, j) = a.span(i, j);
                for (int i = 0; i < b.span.rows; ++i)
                    for (int j = 0; j < F.r; ++j) stack(a.span.rows + i, j) = b.span(i, j);
                MatQ sum = rref_rows(stack);
                bool found = false;
                for (auto& o : fam)
                    if (o.span == sum) {
                        found = true;
                        if (o.depth >= a.depth)
                            fail(errc::bad_input, "blowup centers of equal depth meet");
                    }
                if (!found) fail(errc::bad_input, "residue family not closed under sums");
            }
        fc.vertices.push_back(std::move(v));
        fc.vertices.back().residues = std::move(fam);
    }

    // simplices: cliques of the incidence graph
    std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            adj[i][j] = adj[j][i] = (position_spread(y[i], y[j]) == 1);
    std::vector<int> clique;
    std::function<void(int)> grow = [&](int start) {
        if (clique.size() >= 2) {
            fc.simplices.push_back(clique);
            std::vector<LatticeClass> cls;
            for (int id : clique) cls.push_back(y[id]);
            auto sig = simplex_of(cls);
            if (!sig) fail(errc::bad_input, "pairwise incident set is not a simplex");
            std::vector<int> dims;
            for (size_t t = 1; t < sig->flag.size(); ++t) {
                MatK a = inverse(sig->flag[t]) * sig->flag[t - 1];
                MatQ red(F.r, F.r, mpq_class(0));
                for (int i = 0; i < F.r; ++i)
                    for (int j = 0; j < F.r; ++j) red(i, j) = a(i, j).at_zero();
                dims.push_back(F.r - rank(red));
            }
            fc.simplex_quot_dims.push_back(std::move(dims));
        }
        for (int c = start; c < m; ++c) {
            bool ok = true;
            for (int x : clique) ok = ok && adj[x][c];
            if (!ok) continue;
            clique.push_back(c);
            grow(c + 1);
            clique.pop_back();
        }
    };
    grow(0);
    for (auto& s : fc.simplices)
        if ((int)s.size() > F.r) fail(errc::bad_input, "simplex with more than r vertices");

    fc.boundary = boundary_incidence(F, y);
    return fc;
}

// enlarge Y so that M's component carries no boundary
inline std::vector<LatticeClass> enlarge_off_boundary(const Arrangement& F,
                                                      const std::vector<LatticeClass>& y,
                                                      const LatticeClass& m) {
    if (!std::count(y.begin(), y.end(), m)) fail(errc::bad_input, "M must lie in Y");
    std::vector<LatticeClass> gen = y;
    for (int i = 0; i < F.n; ++i) {
        auto [w, a] = theta_limit(m, F.vec(i));
        MatK gens(F.r, F.r + 1);
        for (int row = 0; row < F.r; ++row) {
            for (int col = 0; col < F.r; ++col) gens(row, col) = m.basis(row, col);
            gens(row, F.r) = w[row] * zpow(-1);
        }
        gen.push_back(lattice_from_generators(gens));
    }
    auto enlarged = convex_hull(gen);
    // postcondition: no B_i component remains on M
    auto table = boundary_incidence(F, enlarged);
    std::vector<LatticeClass> sorted(enlarged.begin(), enlarged.end());
    std::sort(sorted.begin(), sorted.end());
    int idx = (int)(std::lower_bound(sorted.begin(), sorted.end(), m) - sorted.begin());
    for (int i = 0; i < F.n; ++i)
        if (std::count(table[i].begin(), table[i].end(), idx))
            fail(errc::bad_input, "enlargement left a boundary component");
    return enlarged;
}

// --------------------------------------------------------------------------
// quotient membranes Y^I

struct QuotientMembrane {
    std::vector<int> I;            // 0-based quotiented indices
    std::vector<int> kept;         // original indices of surviving vectors
    std::vector<int> dropped;      // j not in I with f_j inside V_I
    Arrangement quotient;          // arrangement of the surviving images
    std::vector<LatticeClass> y;   // quotient classes, deduped
    std::vector<int> vertex_map;   // original Y index -> quotient class index
    FiberComplex complex;
};

inline QuotientMembrane quotient_membrane(const Arrangement& F,
                                          const std::vector<LatticeClass>& yin,
                                          std::vector<int> I) {
    std::sort(I.begin(), I.end());
    I.erase(std::unique(I.begin(), I.end()), I.end());
    std::vector<LatticeClass> y = yin;
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());

    // basis of V_I by greedy rank
    MatK basis(F.r, 0);
    auto try_add = [&](const VecK& v) {
        MatK cand(F.r, basis.cols + 1);
        for (int i = 0; i < F.r; ++i) {
            for (int j = 0; j < basis.cols; ++j) cand(i, j) = basis(i, j);
            cand(i, basis.cols) = v[i];
        }
        Mat<Scalar> probe = cand;
        if (rank(probe) == cand.cols) {
            basis = cand;
            return true;
        }
        return false;
    };
    for (int i : I) try_add(F.vec(i));
    int d = basis.cols;
    if (d == F.r) fail(errc::trivial_quotient, "V_I is all of K^r");

    FiberComplex base;
    QuotientMembrane out;
    out.I = I;
    if (d == 0) { // nothing to quotient
        out.quotient = F;
        for (int j = 0; j < F.n; ++j) out.kept.push_back(j);
        out.y = y;
        for (int i = 0; i < (int)y.size(); ++i) out.vertex_map.push_back(i);
        out.complex = fiber_complex(F, y);
        return out;
    }

    // complete to a K-basis with standard vectors, project to the quotient
    MatK full = basis;
    for (int j = 0; j < F.r && full.cols < F.r; ++j) {
        VecK e(F.r, Scalar{});
        e[j] = Scalar(mpq_class(1));
        MatK cand(F.r, full.cols + 1);
        for (int i = 0; i < F.r; ++i) {
            for (int c = 0; c < full.cols; ++c) cand(i, c) = full(i, c);
            cand(i, full.cols) = e[i];
        }
        Mat<Scalar> probe = cand;
        if (rank(probe) == cand.cols) full = cand;
    }
    MatK pi_full = inverse(full);
    MatK pi(F.r - d, F.r);
    for (int i = 0; i < F.r - d; ++i)
        for (int j = 0; j < F.r; ++j) pi(i, j) = pi_full(d + i, j);

    MatK qcols(F.r - d, 0);
    for (int j = 0; j < F.n; ++j) {
        if (std::binary_search(I.begin(), I.end(), j)) continue;
        MatK col(F.r, 1);
        for (int i = 0; i < F.r; ++i) col(i, 0) = F.f(i, j);
        MatK img = pi * col;
        bool zero = true;
        for (auto& x : img.a) zero = zero && x.is_zero();
        if (zero) {
            out.dropped.push_back(j);
            continue;
        }
        out.kept.push_back(j);
        MatK next(F.r - d, qcols.cols + 1);
        for (int i = 0; i < F.r - d; ++i) {
            for (int c = 0; c < qcols.cols; ++c) next(i, c) = qcols(i, c);
            next(i, qcols.cols) = img(i, 0);
        }
        qcols = next;
    }
    out.quotient = Arrangement::make(F.r - d, qcols.cols, qcols);

    std::vector<LatticeClass> qy;
    for (auto& m : y) {
        LatticeClass q = lattice_from_generators(pi * m.basis);
        out.vertex_map.push_back(-1);
        auto it = std::find(qy.begin(), qy.end(), q);
        if (it == qy.end()) {
            qy.push_back(q);
            out.vertex_map.back() = (int)qy.size() - 1;
        } else {
            out.vertex_map.back() = (int)(it - qy.begin());
        }
    }
    out.y = qy;
    if (!convex_equals(qy)) fail(errc::not_convex, "quotient family is not convex");
    out.complex = fiber_complex(out.quotient, qy);
    return out;
}

} // namespace memb

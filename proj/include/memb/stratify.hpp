#pragma once

#include <array>
#include <map>

#include "arrangement.hpp"

namespace memb {

// Stratification of the apartment on an independent r-subset T, r <= 3.
// Coordinates: y in Z^(r-1) stands for the lattice < z^(-b_k) f_(t_k) > with
// b = (y_1, ..., y_(r-1), 0); then psi(Lambda_y) restricted to T is b.  The
// limit covector of f_i (i not in T) is supported on argmin_k(a^i_k + b_k)
// where a^i is the valuation vector of f_i over the basis T, so cells of the
// common refinement of those fans carry constant limit matroids.

struct StratumCell {
    std::vector<uint8_t> type;   // per i not in T: bitmask of the argmin set
    int dim = 0;
    bool bounded = true;
    std::vector<std::array<long, 2>> samples;      // quarter-grid points (scaled by 4)
    std::optional<std::array<long, 2>> int_point;  // an interior integer point, if any
    std::optional<LatticeClass> label;             // lattice class at int_point
    std::vector<std::vector<int>> matroid_bases;   // 0-based r-subsets of N
    bool git_stable = false;                       // meaningful for 0-cells
};

struct StratumComplex {
    int r = 0, n = 0;
    std::vector<int> T; // 0-based
    long window = 0;
    std::vector<StratumCell> cells;

    // tau' is a face of tau iff every argmin set grew
    static bool is_face(const StratumCell& tau, const StratumCell& face) {
        for (size_t i = 0; i < tau.type.size(); ++i)
            if ((tau.type[i] & face.type[i]) != tau.type[i]) return false;
        return true;
    }
    std::vector<int> faces_of(int cell, int dim) const {
        std::vector<int> out;
        for (int j = 0; j < (int)cells.size(); ++j)
            if (j != cell && cells[j].dim == dim && is_face(cells[cell], cells[j]))
                out.push_back(j);
        return out;
    }
};

namespace detail {

struct ApartmentData {
    std::vector<std::vector<long>> a;          // valuations, VAL_INF allowed
    std::vector<std::vector<mpq_class>> lead;  // leading coefficients
};

inline ApartmentData apartment_coefficients(const Arrangement& F, const std::vector<int>& T) {
    ApartmentData d;
    MatK cols = F.columns(T);
    for (int i = 0; i < F.n; ++i) {
        if (std::find(T.begin(), T.end(), i) != T.end()) continue;
        auto x = solve_linear(cols, F.vec(i));
        std::vector<long> av(F.r);
        std::vector<mpq_class> lv(F.r, mpq_class(0));
        for (int k = 0; k < F.r; ++k) {
            av[k] = x[k].val();
            if (av[k] != VAL_INF) lv[k] = (x[k] * zpow(-av[k])).at_zero();
        }
        d.a.push_back(std::move(av));
        d.lead.push_back(std::move(lv));
    }
    return d;
}

// argmin_k of (4*a_k + B_k) as a bitmask; B is the quarter-scaled b vector
inline uint8_t argmin_mask(const std::vector<long>& a, const std::array<long, 3>& B, int r) {
    long best = VAL_INF;
    uint8_t mask = 0;
    for (int k = 0; k < r; ++k) {
        if (a[k] == VAL_INF) continue;
        long v = 4 * a[k] + B[k];
        if (v < best) { best = v; mask = (uint8_t)(1 << k); }
        else if (v == best) mask |= (uint8_t)(1 << k);
    }
    return mask;
}

} // namespace detail

inline std::vector<std::vector<int>> matroid_bases_from_covectors(
    const Mat<mpq_class>& cov, int r) {
    std::vector<std::vector<int>> bases;
    std::vector<int> pick(r);
    std::function<void(int, int)> go = [&](int start, int d) {
        if (d == r) {
            Mat<mpq_class> m(r, r);
            for (int j = 0; j < r; ++j)
                for (int i = 0; i < r; ++i) m(i, j) = cov(i, pick[j]);
            if (rank(m) == r) bases.push_back(pick);
            return;
        }
        for (int c = start; c + (r - d) <= cov.cols; ++c) {
            pick[d] = c;
            go(c + 1, d + 1);
        }
    };
    go(0, 0);
    return bases;
}

inline StratumComplex apartment_stratification(const Arrangement& F, std::vector<int> T,
                                               long window) {
    if (F.r != 2 && F.r != 3)
        fail(errc::not_implemented, "apartment stratification only for r in {2,3}");
    std::sort(T.begin(), T.end());
    if ((int)T.size() != F.r || det(F.columns(T)).is_zero())
        fail(errc::bad_input, "T must be an independent r-subset");
    auto data = detail::apartment_coefficients(F, T);
    std::vector<int> others;
    for (int i = 0; i < F.n; ++i)
        if (std::find(T.begin(), T.end(), i) == T.end()) others.push_back(i);

    int dims = F.r - 1;
    StratumComplex sc;
    sc.r = F.r;
    sc.n = F.n;
    sc.T = T;
    sc.window = window;

    std::map<std::vector<uint8_t>, StratumCell> cells;
    long lim = 4 * window;
    std::array<long, 3> B{0, 0, 0};
    auto visit = [&](long Y1, long Y2) {
        B = {Y1, dims == 2 ? Y2 : 0, 0};
        std::vector<uint8_t> type;
        for (auto& av : data.a) type.push_back(detail::argmin_mask(av, B, F.r));
        auto& cell = cells[type];
        cell.type = type;
        cell.samples.push_back({Y1, dims == 2 ? Y2 : 0});
    };
    for (long Y1 = -lim; Y1 <= lim; ++Y1) {
        if (dims == 1) visit(Y1, 0);
        else
            for (long Y2 = -lim; Y2 <= lim; ++Y2) visit(Y1, Y2);
    }

    for (auto& [type, cell] : cells) {
        // affine dimension of the sampled point set
        Mat<mpq_class> diffs((int)cell.samples.size() - 1, dims, mpq_class(0));
        for (int i = 1; i < (int)cell.samples.size(); ++i)
            for (int d = 0; d < dims; ++d)
                diffs(i - 1, d) = mpq_class(cell.samples[i][d] - cell.samples[0][d]);
        cell.dim = (cell.samples.size() <= 1) ? 0 : rank(diffs);

        // recession directions of the (in)equality system: all cells are
        // alcoved, so the edge directions below are exhaustive
        static const std::vector<std::array<long, 3>> dirs3 = {
            {1, 0, 0},  {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {1, 1, 0}, {-1, -1, 0}};
        static const std::vector<std::array<long, 3>> dirs2 = {{1, 0, 0}, {-1, 0, 0}};
        cell.bounded = true;
        for (auto& u : (dims == 2 ? dirs3 : dirs2)) {
            bool ok = true;
            for (size_t i = 0; i < data.a.size() && ok; ++i) {
                uint8_t A = type[i];
                if (A == 0) continue;
                int kmin = -1;
                for (int k = 0; k < F.r; ++k)
                    if (A & (1 << k)) { kmin = k; break; }
                for (int k = 0; k < F.r && ok; ++k) {
                    if (data.a[i][k] == VAL_INF) continue;
                    long du = u[k] - u[kmin];
                    if (A & (1 << k)) ok = ok && du == 0; // stay tied
                    else ok = ok && du >= 0;              // keep losing the argmin
                }
            }
            if (ok) { cell.bounded = false; break; }
        }

        for (auto& s : cell.samples)
            if (s[0] % 4 == 0 && s[1] % 4 == 0) {
                std::array<long, 2> p{s[0] / 4, s[1] / 4};
                if (!cell.int_point || p < *cell.int_point) cell.int_point = p;
            }
        if (cell.int_point) {
            MatK gens = F.columns(T);
            std::array<long, 3> b{(*cell.int_point)[0], dims == 2 ? (*cell.int_point)[1] : 0, 0};
            for (int k = 0; k < F.r; ++k) {
                Scalar s = zpow(-b[k]);
                for (int i = 0; i < F.r; ++i) gens(i, k) *= s;
            }
            cell.label = lattice_from_generators(gens);
        }

        // limit covectors determined by the cell type
        Mat<mpq_class> cov(F.r, F.n, mpq_class(0));
        for (int k = 0; k < F.r; ++k) cov(k, T[k]) = 1;
        for (size_t i = 0; i < others.size(); ++i)
            for (int k = 0; k < F.r; ++k)
                if (type[i] & (1 << k)) cov(k, others[i]) = data.lead[i][k];
        cell.matroid_bases = matroid_bases_from_covectors(cov, F.r);
        if (cell.dim == 0) {
            LimitConfiguration lc;
            lc.r = F.r;
            lc.n = F.n;
            for (int j = 0; j < F.n; ++j) {
                std::vector<mpq_class> v(F.r);
                for (int i = 0; i < F.r; ++i) v[i] = cov(i, j);
                lc.covectors.push_back(std::move(v));
            }
            cell.git_stable = is_git_stable_configuration(lc);
        }
    }

    for (auto& [_, cell] : cells) sc.cells.push_back(cell);
    return sc;
}

} // namespace memb

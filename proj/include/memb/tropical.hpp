#pragma once

#include "arrangement.hpp"

namespace memb {

// Independent tropical oracle for the membrane: valuated Pluecker data,
// circuits with the min-twice membership rule, and the windowed two-sided
// check of the correspondence Psi : [F] -> Ord(Z).

struct TropicalPluecker {
    int r = 0, n = 0;
    std::map<std::vector<int>, long> vals; // sorted r-subsets -> valuation
};

inline TropicalPluecker pluecker_valuations(const Arrangement& F) {
    TropicalPluecker tp;
    tp.r = F.r;
    tp.n = F.n;
    std::vector<int> pick(F.r);
    std::function<void(int, int)> go = [&](int start, int d) {
        if (d == F.r) {
            tp.vals[pick] = det(F.columns(pick)).val();
            return;
        }
        for (int c = start; c + (F.r - d) <= F.n; ++c) {
            pick[d] = c;
            go(c + 1, d + 1);
        }
    };
    go(0, 0);
    return tp;
}

struct Circuit {
    std::vector<int> support;  // 0-based, ascending
    VecK coeffs;               // length n, zero outside the support
    std::vector<long> vals;    // valuations of the coefficients
};

struct CircuitSet {
    int r = 0, n = 0;
    std::vector<Circuit> circuits;
};

// minimal-support kernel vectors, one per support, from subsets of size <= r+1
inline CircuitSet circuits(const Arrangement& F) {
    CircuitSet cs;
    cs.r = F.r;
    cs.n = F.n;
    std::set<std::vector<int>> seen;
    for (int size = 2; size <= F.r + 1; ++size) {
        std::vector<int> pick(size);
        std::function<void(int, int)> go = [&](int start, int d) {
            if (d == size) {
                Mat<Scalar> sub = F.columns(pick);
                if (rank(sub) != size - 1) return;
                for (int skip = 0; skip < size; ++skip) {
                    std::vector<int> s;
                    for (int t = 0; t < size; ++t)
                        if (t != skip) s.push_back(pick[t]);
                    Mat<Scalar> m = F.columns(s);
                    if (rank(m) != size - 1) return; // support not minimal
                }
                if (!seen.insert(pick).second) return;
                Mat<Scalar> m = F.columns(pick);
                Mat<Scalar> K = kernel(m);
                if (K.cols != 1) return;
                Circuit c;
                c.support = pick;
                c.coeffs.assign(F.n, Scalar{});
                c.vals.assign(F.n, VAL_INF);
                // normalise: first coefficient 1
                Scalar lead = K(0, 0);
                for (int t = 0; t < size; ++t) {
                    Scalar x = K(t, 0) / lead;
                    c.coeffs[pick[t]] = x;
                    c.vals[pick[t]] = x.val();
                }
                cs.circuits.push_back(std::move(c));
                return;
            }
            for (int x = start; x + (size - d) <= F.n; ++x) {
                pick[d] = x;
                go(x + 1, d + 1);
            }
        };
        go(0, 0);
    }
    return cs;
}

// min over the support of val(c_i) + w_i is attained at least twice
inline bool trop_membership(const std::vector<long>& w, const CircuitSet& cs) {
    for (auto& c : cs.circuits) {
        long best = VAL_INF;
        int count = 0;
        for (int i : c.support) {
            long v = c.vals[i] + w[i];
            if (v < best) { best = v; count = 1; }
            else if (v == best) ++count;
        }
        if (count < 2) return false;
    }
    return true;
}

// the proof's witness lattice Lambda_w = sum_i R z^(-w_i) f_i
inline LatticeClass sum_lattice(const Arrangement& F, const std::vector<long>& w) {
    MatK gens(F.r, F.n);
    for (int j = 0; j < F.n; ++j) {
        Scalar s = zpow(-w[j]);
        for (int i = 0; i < F.r; ++i) gens(i, j) = F.f(i, j) * s;
    }
    return lattice_from_generators(gens);
}

struct CorrespondenceWitness {
    std::vector<long> w;
    bool trop = false;
    bool psi_match = false;
    std::string reason;
};

struct CorrespondenceReport {
    long checked = 0;
    long accepted = 0;
    bool ok = true;
    std::vector<CorrespondenceWitness> witnesses;
};

// Two-sided windowed verification: trop_membership(w) must coincide with the
// existence of a membrane lattice with Psi = w, realized by the sum lattice;
// uniqueness is cross-checked against the windowed apartment enumeration.
inline CorrespondenceReport verify_correspondence(const Arrangement& F, long window) {
    CorrespondenceReport rep;
    auto cs = circuits(F);

    // Windowed apartment enumeration: Psi restricted to the apartment basis T
    // recovers the scaling exponents up to a common shift, so every membrane
    // lattice whose Psi has coordinate span <= 2*window shows up below.  The
    // map is therefore a complete oracle for lattice existence on the window.
    long bwin = 2 * window + 1;
    std::map<std::vector<long>, std::set<LatticeClass>> by_psi;
    for (auto& T : independent_r_subsets(F)) {
        MatK cols = F.columns(T);
        std::vector<long> b(F.r, 0);
        std::function<void(int)> go = [&](int d) {
            if (d == F.r) {
                MatK gens = cols;
                for (int j = 0; j < F.r; ++j) {
                    Scalar s = zpow(b[j]);
                    for (int i = 0; i < F.r; ++i) gens(i, j) = cols(i, j) * s;
                }
                LatticeClass lam = lattice_from_generators(gens);
                by_psi[psi(F, lam)].insert(lam);
                return;
            }
            for (long v = -bwin; v <= bwin; ++v) {
                bool ok = true;
                for (int t = 1; t < d; ++t) ok = ok && std::abs(v - b[t]) <= bwin;
                if (!ok) continue;
                b[d] = v;
                go(d + 1);
            }
        };
        go(1);
        (void)cols;
    }

    std::vector<long> w(F.n, 0);
    std::function<void(int)> sweep = [&](int d) {
        if (d == F.n) {
            // only classes with a representative inside [-window, window]^n
            long mx = 0, mn = 0;
            for (long v : w) {
                mx = std::max(mx, v);
                mn = std::min(mn, v);
            }
            if (mx - mn > 2 * window) return;
            ++rep.checked;
            bool t = trop_membership(w, cs);
            auto it = by_psi.find(w);
            bool exists = it != by_psi.end();
            if (t != exists) {
                rep.ok = false;
                rep.witnesses.push_back({w, t, exists, "membership mismatch"});
                return;
            }
            if (t) {
                ++rep.accepted;
                // the proof's witness realizes w, uniquely in the window
                LatticeClass lam = sum_lattice(F, w);
                bool match = psi(F, lam) == w && in_membrane(F, lam);
                if (!match) {
                    rep.ok = false;
                    rep.witnesses.push_back({w, t, match, "sum lattice misses w"});
                    return;
                }
                for (auto& other : it->second)
                    if (!(other == lam)) {
                        rep.ok = false;
                        rep.witnesses.push_back({w, t, match, "nonunique lattice"});
                        return;
                    }
            }
            return;
        }
        for (long v = -2 * window; v <= 2 * window; ++v) {
            w[d] = v;
            sweep(d + 1);
        }
    };
    w[0] = 0; // Psi is taken modulo the all-ones vector
    sweep(1);
    return rep;
}

} // namespace memb

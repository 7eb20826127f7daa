#pragma once

#include <cstdint>
#include <memory>
#include <functional>
#include <map>
#include <set>

#include "intmat.hpp"
#include "matrix.hpp"

namespace memb {

using Subset = uint32_t; // bitmask over N = {0,...,n-1}, n <= 20 at desk scale

inline int popcount(Subset s) { return __builtin_popcount(s); }

// --------------------------------------------------------------------------
// matroids by their bases

struct Matroid {
    int n = 0, r = 0;
    std::vector<Subset> bases; // sorted bitmasks

    bool is_basis(Subset s) const {
        return std::binary_search(bases.begin(), bases.end(), s);
    }
    int rank_of(Subset s) const {
        int best = 0;
        for (Subset b : bases) best = std::max(best, popcount(b & s));
        return best;
    }
    std::vector<Subset> flats() const {
        std::vector<Subset> out;
        Subset full = (n == 32) ? ~0u : ((1u << n) - 1);
        for (Subset s = 0; s <= full; ++s) {
            int rk = rank_of(s);
            bool flat = true;
            for (int e = 0; e < n && flat; ++e)
                if (!(s & (1u << e)) && rank_of(s | (1u << e)) == rk) flat = false;
            if (flat) out.push_back(s);
            if (s == full) break;
        }
        return out;
    }
};

inline void verify_basis_exchange(const Matroid& m) {
    if (m.bases.empty()) fail(errc::rank_deficient, "matroid with no bases");
    for (Subset a : m.bases)
        for (Subset b : m.bases) {
            Subset diff = a & ~b;
            for (int e = 0; e < m.n; ++e) {
                if (!(diff & (1u << e))) continue;
                bool found = false;
                Subset rest = b & ~a;
                for (int f = 0; f < m.n && !found; ++f)
                    if ((rest & (1u << f)) && m.is_basis((a ^ (1u << e)) | (1u << f)))
                        found = true;
                if (!found)
                    fail(errc::bad_input, "basis exchange fails; not a matroid");
            }
        }
}

inline Matroid matroid_from_bases(int n, int r, std::vector<Subset> bases, bool verify = true) {
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    Matroid m{n, r, std::move(bases)};
    for (Subset b : m.bases)
        if (popcount(b) != r) fail(errc::bad_input, "basis of wrong size");
    if (verify) verify_basis_exchange(m);
    return m;
}

// realizable matroid of a configuration of covectors (columns)
template <class F>
Matroid matroid_of_covectors(const Mat<F>& cov, int r) {
    int n = cov.cols;
    std::vector<Subset> bases;
    std::vector<int> pick(r);
    std::function<void(int, int)> go = [&](int start, int d) {
        if (d == r) {
            Mat<F> m(r, r);
            for (int j = 0; j < r; ++j)
                for (int i = 0; i < r; ++i) m(i, j) = cov(i, pick[j]);
            if (rank(m) == r) {
                Subset s = 0;
                for (int x : pick) s |= (1u << x);
                bases.push_back(s);
            }
            return;
        }
        for (int c = start; c + (r - d) <= n; ++c) {
            pick[d] = c;
            go(c + 1, d + 1);
        }
    };
    go(0, 0);
    if (bases.empty()) fail(errc::rank_deficient, "configuration has rank < r");
    return matroid_from_bases(n, r, std::move(bases), false);
}

// --------------------------------------------------------------------------
// vertex-presented lattice polytopes with an inequality pool covering all
// facets; this is enough to walk the whole face lattice

struct VPoly {
    std::vector<std::vector<long>> verts;     // ambient integer coordinates
    std::vector<std::vector<long>> vol_coords; // unimodular coords of the affine lattice
    std::vector<std::pair<std::vector<long>, long>> pool; // a.x <= c, valid, contains facets
};

namespace faces {

using VSet = std::vector<uint64_t>;

inline VSet full_set(int n) {
    VSet s((n + 63) / 64, ~0ull);
    if (n % 64) s.back() = (1ull << (n % 64)) - 1;
    return s;
}
inline bool get(const VSet& s, int i) { return (s[i / 64] >> (i % 64)) & 1; }
inline VSet intersect(const VSet& a, const VSet& b) {
    VSet r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
    return r;
}
inline int count(const VSet& s) {
    int c = 0;
    for (auto w : s) c += __builtin_popcountll(w);
    return c;
}
inline std::vector<int> members(const VSet& s) {
    std::vector<int> out;
    for (int i = 0; i < (int)s.size() * 64; ++i)
        if (get(s, i)) out.push_back(i);
    return out;
}

struct FaceWalker {
    const VPoly& p;
    std::vector<VSet> tights; // per pool inequality
    std::map<VSet, int> dim_memo;
    std::map<VSet, std::vector<VSet>> facet_memo;
    std::map<VSet, std::vector<std::vector<int>>> pull_memo;

    explicit FaceWalker(const VPoly& poly) : p(poly) {
        int n = (int)p.verts.size();
        for (auto& [a, c] : p.pool) {
            VSet t((n + 63) / 64, 0);
            for (int v = 0; v < n; ++v) {
                long dot = 0;
                for (size_t k = 0; k < a.size(); ++k) dot += a[k] * p.verts[v][k];
                if (dot == c) t[v / 64] |= (1ull << (v % 64));
            }
            tights.push_back(std::move(t));
        }
    }

    int dim(const VSet& f) {
        auto it = dim_memo.find(f);
        if (it != dim_memo.end()) return it->second;
        auto mem = members(f);
        int d;
        if (mem.size() <= 1) d = (int)mem.size() - 1;
        else {
            int cols = (int)p.verts[0].size();
            Mat<mpq_class> diffs((int)mem.size() - 1, cols, mpq_class(0));
            for (int i = 1; i < (int)mem.size(); ++i)
                for (int k = 0; k < cols; ++k)
                    diffs(i - 1, k) = mpq_class(p.verts[mem[i]][k] - p.verts[mem[0]][k]);
            d = rank(diffs);
        }
        dim_memo[f] = d;
        return d;
    }

    // facets of the face f (codim 1 in f), as vertex sets
    const std::vector<VSet>& facets(const VSet& f) {
        auto it = facet_memo.find(f);
        if (it != facet_memo.end()) return it->second;
        int d = dim(f);
        std::set<VSet> out;
        for (auto& t : tights) {
            VSet w = intersect(f, t);
            if (w == f) continue;
            if (count(w) == 0) continue;
            if (dim(w) == d - 1) out.insert(w);
        }
        return facet_memo[f] = std::vector<VSet>(out.begin(), out.end());
    }

    // pulling triangulation of the face, as lists of vertex indices
    const std::vector<std::vector<int>>& pull(const VSet& f) {
        auto it = pull_memo.find(f);
        if (it != pull_memo.end()) return it->second;
        std::vector<std::vector<int>> tris;
        auto mem = members(f);
        int d = dim(f);
        if ((int)mem.size() == d + 1) {
            tris.push_back(mem);
        } else {
            int v0 = mem.front();
            for (auto& g : facets(f)) {
                if (get(g, v0)) continue;
                for (auto s : pull(g)) {
                    s.push_back(v0);
                    tris.push_back(std::move(s));
                }
            }
        }
        return pull_memo[f] = std::move(tris);
    }

    // all faces (nonempty, including f itself), as vertex sets
    std::vector<VSet> all_faces(const VSet& f) {
        std::set<VSet> seen;
        std::vector<VSet> stack{f};
        seen.insert(f);
        while (!stack.empty()) {
            VSet cur = stack.back();
            stack.pop_back();
            for (auto& g : facets(cur))
                if (seen.insert(g).second) stack.push_back(g);
        }
        return {seen.begin(), seen.end()};
    }
};

} // namespace faces

inline mpz_class simplex_volume(const VPoly& p, const std::vector<int>& simplex) {
    int d = (int)simplex.size() - 1;
    Mat<mpq_class> m(d, d, mpq_class(0));
    for (int i = 1; i <= d; ++i)
        for (int k = 0; k < d; ++k)
            m(i - 1, k) = mpq_class(p.vol_coords[simplex[i]][k] - p.vol_coords[simplex[0]][k]);
    mpq_class dv = det_field(m);
    mpq_class a = abs(dv);
    if (a.get_den() != 1) fail(errc::bad_input, "non-integer simplex volume");
    return a.get_num();
}

// normalized lattice volume of the polytope in its affine span; vol_coords
// must be full-dimensional for the top cell
inline mpz_class normalized_volume(const VPoly& p) {
    faces::FaceWalker w(p);
    auto f = faces::full_set((int)p.verts.size());
    if (w.dim(f) != (int)p.vol_coords[0].size())
        fail(errc::bad_input, "normalized_volume needs a full-dimensional polytope");
    mpz_class total = 0;
    for (auto& s : w.pull(f)) total += simplex_volume(p, s);
    return total;
}

// --------------------------------------------------------------------------
// matroid polytopes and decompositions of the hypersimplex

struct MatroidPolytope {
    Matroid m;
    VPoly poly;
};

inline std::vector<long> indicator(Subset s, int n) {
    std::vector<long> v(n, 0);
    for (int i = 0; i < n; ++i)
        if (s & (1u << i)) v[i] = 1;
    return v;
}

inline std::vector<long> project_drop_last(const std::vector<long>& v) {
    return std::vector<long>(v.begin(), v.end() - 1);
}

// facet pool valid for every matroid polytope in Delta(r,n): the flat
// inequalities x_F <= rank(F) together with the bounds 0 <= x_i <= 1
inline MatroidPolytope polytope_of(const Matroid& m) {
    MatroidPolytope p;
    p.m = m;
    for (Subset b : m.bases) {
        auto v = indicator(b, m.n);
        p.poly.vol_coords.push_back(project_drop_last(v));
        p.poly.verts.push_back(std::move(v));
    }
    for (Subset f : m.flats()) {
        if (f == 0) continue;
        p.poly.pool.push_back({indicator(f, m.n), m.rank_of(f)});
    }
    for (int i = 0; i < m.n; ++i) {
        std::vector<long> e(m.n, 0);
        e[i] = 1;
        p.poly.pool.push_back({e, 1});
        std::vector<long> mi(m.n, 0);
        mi[i] = -1;
        p.poly.pool.push_back({mi, 0});
    }
    return p;
}

inline VPoly hypersimplex_poly(int r, int n) {
    VPoly d;
    std::vector<int> pick(r);
    std::function<void(int, int)> go = [&](int start, int depth) {
        if (depth == r) {
            Subset s = 0;
            for (int x : pick) s |= (1u << x);
            auto v = indicator(s, n);
            d.vol_coords.push_back(project_drop_last(v));
            d.verts.push_back(std::move(v));
            return;
        }
        for (int c = start; c + (r - depth) <= n; ++c) {
            pick[depth] = c;
            go(c + 1, depth + 1);
        }
    };
    go(0, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<long> e(n, 0);
        e[i] = 1;
        d.pool.push_back({e, 1});
        std::vector<long> mi(n, 0);
        mi[i] = -1;
        d.pool.push_back({mi, 0});
    }
    return d;
}

struct MatroidDecomposition {
    int r = 0, n = 0;
    std::vector<MatroidPolytope> parts;
};

// smallest face containing the vertex subset `w`, from precomputed tight sets
inline faces::VSet smallest_face_containing(const faces::FaceWalker& fw, int nverts,
                                            const faces::VSet& w) {
    faces::VSet cur = faces::full_set(nverts);
    for (auto& t : fw.tights) {
        bool covers = true;
        for (size_t blk = 0; blk < w.size(); ++blk)
            if ((w[blk] & ~t[blk]) != 0) { covers = false; break; }
        if (covers) cur = faces::intersect(cur, t);
    }
    return cur;
}

struct TilingReport {
    bool ok = true;
    std::string why;
};

inline TilingReport verify_tiling_report(const MatroidDecomposition& d) {
    TilingReport rep;
    auto bail = [&](const std::string& w) {
        rep.ok = false;
        rep.why = w;
        return rep;
    };
    if (d.parts.empty()) return bail("empty decomposition");
    int dim_full = d.n - 1;
    mpz_class total = 0;
    std::vector<std::unique_ptr<faces::FaceWalker>> walkers;
    for (auto& p : d.parts) {
        walkers.push_back(std::make_unique<faces::FaceWalker>(p.poly));
        if (walkers.back()->dim(faces::full_set((int)p.poly.verts.size())) != dim_full)
            return bail("polytope not full-dimensional");
        total += normalized_volume(p.poly);
    }
    mpz_class dv = normalized_volume(hypersimplex_poly(d.r, d.n));
    if (total != dv)
        return bail("volumes sum to " + total.get_str() + " but Delta has " + dv.get_str());
    // pairwise intersections must be common faces
    for (size_t i = 0; i < d.parts.size(); ++i)
        for (size_t j = i + 1; j < d.parts.size(); ++j) {
            const auto& P = d.parts[i].poly;
            const auto& Q = d.parts[j].poly;
            std::map<std::vector<long>, int> qidx;
            for (int t = 0; t < (int)Q.verts.size(); ++t) qidx[Q.verts[t]] = t;
            faces::VSet wp((P.verts.size() + 63) / 64, 0);
            faces::VSet wq((Q.verts.size() + 63) / 64, 0);
            int common = 0;
            for (int t = 0; t < (int)P.verts.size(); ++t) {
                auto it = qidx.find(P.verts[t]);
                if (it == qidx.end()) continue;
                ++common;
                wp[t / 64] |= (1ull << (t % 64));
                wq[it->second / 64] |= (1ull << (it->second % 64));
            }
            if (common == (int)P.verts.size() && common == (int)Q.verts.size())
                return bail("two identical polytopes");
            if (common == 0) continue;
            if (!(smallest_face_containing(*walkers[i], (int)P.verts.size(), wp) == wp))
                return bail("intersection is not a face of part " + std::to_string(i));
            if (!(smallest_face_containing(*walkers[j], (int)Q.verts.size(), wq) == wq))
                return bail("intersection is not a face of part " + std::to_string(j));
        }
    return rep;
}

inline bool verify_tiling(const MatroidDecomposition& d) { return verify_tiling_report(d).ok; }

// every face of every part spans a saturated sublattice (Smith form check);
// faces of dimension <= 1 are saturated for free (0/1 vertices), and shared
// faces are checked once
inline bool is_unimodular(const MatroidDecomposition& d) {
    std::set<std::vector<std::vector<long>>> seen;
    for (auto& part : d.parts) {
        faces::FaceWalker w(part.poly);
        for (auto& f : w.all_faces(faces::full_set((int)part.poly.verts.size()))) {
            auto mem = faces::members(f);
            if (mem.size() <= 2) continue;
            std::vector<std::vector<long>> key;
            for (int v : mem) key.push_back(part.poly.verts[v]);
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second) continue;
            ZMat m((int)mem.size() - 1, (int)part.poly.vol_coords[0].size());
            for (int i = 1; i < (int)mem.size(); ++i)
                for (int k = 0; k < m.cols; ++k)
                    m(i - 1, k) = part.poly.vol_coords[mem[i]][k] - part.poly.vol_coords[mem[0]][k];
            if (!rows_saturated(m)) return false;
        }
    }
    return true;
}

// --------------------------------------------------------------------------
// central configurations

inline void check_central_data(const std::vector<Subset>& I, int r, int n) {
    for (Subset s : I) {
        if (popcount(s) < r)
            fail(errc::bad_input, "central index set smaller than r");
        if (s >= (1u << n)) fail(errc::bad_input, "index set out of range");
    }
    for (size_t a = 0; a < I.size(); ++a)
        for (size_t b = a + 1; b < I.size(); ++b)
            if (popcount(I[a] & I[b]) > r - 2)
                fail(errc::overlap_violation, "index sets overlap in more than r-2 elements");
}

inline MatroidDecomposition central_decomposition(const std::vector<Subset>& I, int r, int n) {
    check_central_data(I, r, n);
    MatroidDecomposition d;
    d.r = r;
    d.n = n;
    // central polytope: bases are the r-subsets inside no I_alpha
    std::vector<Subset> central;
    std::vector<std::vector<Subset>> around(I.size());
    std::vector<int> pick(r);
    std::function<void(int, int)> go = [&](int start, int depth) {
        if (depth == r) {
            Subset s = 0;
            for (int x : pick) s |= (1u << x);
            bool inside = false;
            for (size_t a = 0; a < I.size(); ++a) {
                if ((s & ~I[a]) == 0) inside = true;
                if (popcount(s & I[a]) >= r - 1) around[a].push_back(s);
            }
            if (!inside) central.push_back(s);
            return;
        }
        for (int c = start; c + (r - depth) <= n; ++c) {
            pick[depth] = c;
            go(c + 1, depth + 1);
        }
    };
    go(0, 0);
    if (central.empty()) fail(errc::rank_deficient, "central matroid has no bases");
    d.parts.push_back(polytope_of(matroid_from_bases(n, r, central)));
    for (size_t a = 0; a < I.size(); ++a)
        d.parts.push_back(polytope_of(matroid_from_bases(n, r, around[a])));
    return d;
}

// all coarsenings: one per subset of the index family
inline std::vector<MatroidDecomposition> coarsenings(const std::vector<Subset>& I, int r, int n) {
    std::vector<MatroidDecomposition> out;
    for (Subset pick = 0; pick < (1u << I.size()); ++pick) {
        std::vector<Subset> sub;
        for (size_t a = 0; a < I.size(); ++a)
            if (pick & (1u << a)) sub.push_back(I[a]);
        out.push_back(central_decomposition(sub, r, n));
    }
    return out;
}

// --------------------------------------------------------------------------
// lax configurations

template <class F>
struct Configuration {
    int r = 0, n = 0;
    Mat<F> cov; // columns are covectors of the hyperplanes

    Mat<F> columns(const std::vector<int>& idx) const {
        Mat<F> m(r, (int)idx.size());
        for (size_t j = 0; j < idx.size(); ++j)
            for (int i = 0; i < r; ++i) m(i, (int)j) = cov(i, idx[j]);
        return m;
    }
};

// all points lying on more than `thresh` of the hyperplanes, with their
// incidence masks; a point is the (projective) kernel of an (r-1)-rank family
template <class F>
std::vector<std::pair<std::vector<F>, Subset>> high_multiplicity_points(
    const Configuration<F>& c, int thresh) {
    std::vector<std::pair<std::vector<F>, Subset>> out;
    // candidate points: kernels of (r-1)-subsets of covectors with rank r-1
    std::set<std::vector<std::string>> seen;
    std::vector<int> pick(c.r - 1);
    std::function<void(int, int)> go = [&](int start, int d) {
        if (d == c.r - 1) {
            Mat<F> m = c.columns(pick);
            Mat<F> mt = m.transpose();
            if (rank(mt) != c.r - 1) return;
            Mat<F> K = kernel(mt);
            if (K.cols != 1) return;
            std::vector<F> p(c.r);
            for (int i = 0; i < c.r; ++i) p[i] = K(i, 0);
            // normalise projectively for dedup
            for (int i = 0; i < c.r; ++i)
                if (!FieldTraits<F>::is_zero(p[i])) {
                    F inv = FieldTraits<F>::inv(p[i]);
                    for (auto& x : p) x *= inv;
                    break;
                }
            std::vector<std::string> key;
            for (auto& x : p) key.push_back(FieldTraits<F>::str(x));
            if (!seen.insert(key).second) return;
            Subset inc = 0;
            for (int j = 0; j < c.n; ++j) {
                F dot = FieldTraits<F>::zero(p[0]);
                for (int i = 0; i < c.r; ++i) dot += c.cov(i, j) * p[i];
                if (FieldTraits<F>::is_zero(dot)) inc |= (1u << j);
            }
            if (popcount(inc) > thresh) out.push_back({p, inc});
            return;
        }
        for (int x = start; x + (c.r - 1 - d) <= c.n; ++x) {
            pick[d] = x;
            go(x + 1, d + 1);
        }
    };
    go(0, 0);
    return out;
}

// the lax condition for a given total order (a permutation of 0..n-1)
template <class F>
bool is_lax(const Configuration<F>& c, const std::vector<int>& order) {
    auto pts = high_multiplicity_points(c, c.r); // multiplicity > r overall
    Subset placed = 0;
    for (int i : order) {
        placed |= (1u << i);
        std::vector<int> active;
        for (size_t t = 0; t < pts.size(); ++t)
            if ((pts[t].second & (1u << i)) && popcount(pts[t].second & placed) > c.r)
                active.push_back((int)t);
        if ((int)active.size() > c.r) return false;
        if (active.size() > 1) {
            Mat<F> m(c.r, (int)active.size());
            for (size_t j = 0; j < active.size(); ++j)
                for (int t = 0; t < c.r; ++t) m(t, (int)j) = pts[active[j]].first[t];
            if (rank(m) != (int)active.size()) return false;
        }
    }
    return true;
}

// exhaustive search over orders by subset dynamic programming; feasibility of
// a prefix depends only on its underlying set
template <class F>
std::optional<std::vector<int>> find_lax_order(const Configuration<F>& c) {
    if (c.n > 24) fail(errc::not_implemented, "find_lax_order limited to n <= 24");
    auto pts = high_multiplicity_points(c, c.r);
    // precompute independence of small point sets per line
    auto point_rank = [&](const std::vector<int>& idx) {
        Mat<F> m(c.r, (int)idx.size());
        for (size_t j = 0; j < idx.size(); ++j)
            for (int t = 0; t < c.r; ++t) m(t, (int)j) = pts[idx[j]].first[t];
        return rank(m);
    };
    auto step_ok = [&](Subset placed, int i) {
        Subset with = placed | (1u << i);
        std::vector<int> active;
        for (size_t t = 0; t < pts.size(); ++t)
            if ((pts[t].second & (1u << i)) && popcount(pts[t].second & with) > c.r)
                active.push_back((int)t);
        if ((int)active.size() > c.r) return false;
        if (active.size() <= 1) return true;
        return point_rank(active) == (int)active.size();
    };
    std::set<Subset> dead;
    std::vector<int> order;
    std::function<bool(Subset)> dfs = [&](Subset placed) {
        if (popcount(placed) == c.n) return true;
        if (dead.count(placed)) return false;
        for (int i = 0; i < c.n; ++i) {
            if (placed & (1u << i)) continue;
            if (!step_ok(placed, i)) continue;
            order.push_back(i);
            if (dfs(placed | (1u << i))) return true;
            order.pop_back();
        }
        dead.insert(placed);
        return false;
    };
    if (dfs(0)) return order;
    return std::nullopt;
}

// --------------------------------------------------------------------------
// cross-ratios (face maps, 3.x): ratio of four r x r minors

template <class F>
F det_of_columns(const Mat<F>& m, const std::vector<int>& cols) {
    Mat<F> s(m.rows, (int)cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < m.rows; ++i) s(i, (int)j) = m(i, cols[j]);
    return det_field(s);
}

// CR_{V,W} = (Det_{i1 i2 W} Det_{i3 i4 W}) / (Det_{i1 i3 W} Det_{i2 i4 W}),
// V = {i1<i2<i3<i4}, W disjoint from V, |W| = r-2.  The columns matrix may be
// over K (arrangements) or over k (configurations).
template <class F>
std::pair<F, F> cross_ratio_fraction(const Mat<F>& m, std::vector<int> V,
                                     const std::vector<int>& W) {
    if (V.size() != 4 || (int)W.size() != m.rows - 2)
        fail(errc::bad_input, "cross_ratio needs |V| = 4 and |W| = r-2");
    std::sort(V.begin(), V.end());
    for (int v : V)
        if (std::find(W.begin(), W.end(), v) != W.end())
            fail(errc::bad_input, "V and W must be disjoint");
    auto with = [&](int a, int b) {
        std::vector<int> cols{a, b};
        cols.insert(cols.end(), W.begin(), W.end());
        return det_of_columns(m, cols);
    };
    F num = with(V[0], V[1]) * with(V[2], V[3]);
    F den = with(V[0], V[2]) * with(V[1], V[3]);
    return {num, den};
}

inline Scalar cross_ratio(const MatK& m, const std::vector<int>& V, const std::vector<int>& W) {
    auto [num, den] = cross_ratio_fraction(m, V, W);
    if (num.is_zero() && den.is_zero())
        fail(errc::indeterminate_cr, "both minor products vanish identically");
    if (den.is_zero()) fail(errc::indeterminate_cr, "denominator minors vanish identically");
    return num / den;
}

// value of the cross-ratio at z = 0, in k union {infinity}
struct CrossRatioLimit {
    bool infinite = false;
    mpq_class value;

    bool degenerate() const { return infinite || value == 0 || value == 1; }
};

inline CrossRatioLimit cross_ratio_limit(const Scalar& cr) {
    long v = cr.val();
    if (v < 0) return CrossRatioLimit{true, 0};
    if (v > 0 || v == VAL_INF) return CrossRatioLimit{false, 0};
    return CrossRatioLimit{false, cr.at_zero()};
}

} // namespace memb

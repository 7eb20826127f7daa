#pragma once

#include "arrangement.hpp"
#include "matroid.hpp"

namespace memb {

// decomposition of Delta(r,n) carved out by the GIT-stable limit matroids,
// with the classes kept aligned to the parts
struct LimitDecomposition {
    std::vector<LatticeClass> classes;
    MatroidDecomposition decomposition;
    std::vector<Subset> k_nonbases; // r-subsets degenerate already over K
};

// matroid of the arrangement over K itself
inline Matroid k_matroid(const Arrangement& F) {
    std::vector<Subset> bases;
    std::vector<int> pick(F.r);
    std::function<void(int, int)> go = [&](int start, int d) {
        if (d == F.r) {
            if (!det(F.columns(pick)).is_zero()) {
                Subset s = 0;
                for (int x : pick) s |= (1u << x);
                bases.push_back(s);
            }
            return;
        }
        for (int c = start; c + (F.r - d) <= F.n; ++c) {
            pick[d] = c;
            go(c + 1, d + 1);
        }
    };
    go(0, 0);
    return matroid_from_bases(F.n, F.r, std::move(bases), false);
}

// Wall polytope of a limit configuration: the part of Delta carved out by the
// flats whose rank drops in the limit, i.e. by the degenerations acquired at
// this vertex of the membrane.  Dependencies already present over K are not
// walls; they belong to the ambient geometry of every limit.  For families
// with any r of the f_i independent this is exactly the matroid polytope of
// the limit configuration.
inline MatroidPolytope limit_polytope(const Matroid& cm, const Matroid& kmat) {
    std::vector<std::pair<Subset, int>> new_flats;
    for (Subset f : cm.flats()) {
        int rk = cm.rank_of(f);
        if (rk < kmat.rank_of(f)) new_flats.push_back({f, rk});
    }
    std::vector<Subset> verts;
    std::vector<int> pick(cm.r);
    std::function<void(int, int)> go = [&](int start, int d) {
        if (d == cm.r) {
            Subset s = 0;
            for (int x : pick) s |= (1u << x);
            for (auto& [f, rk] : new_flats)
                if (popcount(s & f) > rk) return;
            verts.push_back(s);
            return;
        }
        for (int c = start; c + (cm.r - d) <= cm.n; ++c) {
            pick[d] = c;
            go(c + 1, d + 1);
        }
    };
    go(0, 0);
    try {
        return polytope_of(matroid_from_bases(cm.n, cm.r, std::move(verts)));
    } catch (const error&) {
        fail(errc::tiling_failure, "limit wall polytope is not matroidal");
    }
}

inline LimitDecomposition decomposition_from_limits(const Arrangement& F, long window) {
    LimitDecomposition out;
    out.classes = git_stable_classes(F, window);
    out.decomposition.r = F.r;
    out.decomposition.n = F.n;
    Matroid kmat = k_matroid(F);
    Subset full = (1u << F.n) - 1;
    for (Subset s = 0; s <= full; ++s) {
        if (popcount(s) == F.r && !kmat.is_basis(s)) out.k_nonbases.push_back(s);
        if (s == full) break;
    }
    for (auto& lam : out.classes) {
        auto c = limit_configuration(F, lam);
        out.decomposition.parts.push_back(
            limit_polytope(matroid_of_covectors(c.matrix(), F.r), kmat));
    }
    auto rep = verify_tiling_report(out.decomposition);
    if (!rep.ok) fail(errc::tiling_failure, rep.why);
    if (!is_unimodular(out.decomposition))
        fail(errc::tiling_failure, "limit decomposition is not unimodular");
    return out;
}

inline LimitDecomposition decomposition_from_limits(const Arrangement& F) {
    return decomposition_from_limits(F, default_window(stable_lattices(F)));
}

// --------------------------------------------------------------------------
// the limit surface for r = 3

struct ComponentModel {
    LatticeClass cls;
    int blowup_points = 0; // points with >= 3 distinct limit lines through them
    bool special = false;  // the exceptional two-pencil case
    enum class Kind { BlowupOfP2, P1xP1 } kind = Kind::BlowupOfP2;
};

struct GermReport {
    enum class Kind { NormalCrossing, Chain, Cycle, Other } kind = Kind::NormalCrossing;
    std::vector<int> components;     // ids of the components through the point
    int cycle_length = 0;            // for cycles
    int chain_b_index = -1;          // the single B_i of a chain germ (0-based)
    std::vector<Subset> face_verts;  // the codim-2 face, as basis bitmasks
};

struct LimitSurface {
    std::vector<ComponentModel> components;
    std::vector<std::pair<int, int>> gluing;  // codim-1 adjacencies
    std::vector<GermReport> germs;
    std::vector<std::vector<int>> boundary;   // per index i: component ids
    LimitDecomposition limits;
};

namespace surfdetail {

inline std::vector<mpq_class> cross3q(const std::vector<mpq_class>& a,
                                      const std::vector<mpq_class>& b) {
    std::vector<mpq_class> v{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                             a[0] * b[1] - a[1] * b[0]};
    for (auto& x : v)
        if (sgn(x) != 0) {
            mpq_class inv = 1 / x;
            for (auto& y : v) y *= inv;
            break;
        }
    return v;
}

// multiplicity data of the limit lines; concurrences forced already over K
// are ambient geometry and not counted as blowup data
struct LineGeometry {
    std::vector<std::vector<mpq_class>> distinct;     // projectively distinct lines
    std::vector<int> line_of;                         // distinct-line id per covector
    std::vector<std::vector<mpq_class>> mult_points;  // new points with >= 3 lines
    std::vector<std::vector<int>> point_lines;        // distinct-line ids per such point
};

inline LineGeometry line_geometry(const LimitConfiguration& c, const Matroid& kmat) {
    LineGeometry g;
    for (int j = 0; j < c.n; ++j) {
        int found = -1;
        for (size_t t = 0; t < g.distinct.size(); ++t)
            if (g.distinct[t] == c.covectors[j]) found = (int)t;
        if (found < 0) {
            g.distinct.push_back(c.covectors[j]);
            found = (int)g.distinct.size() - 1;
        }
        g.line_of.push_back(found);
    }
    int m = (int)g.distinct.size();
    std::set<std::vector<std::string>> seen;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            auto p = cross3q(g.distinct[a], g.distinct[b]);
            std::vector<std::string> pk;
            for (auto& x : p) pk.push_back(x.get_str());
            if (!seen.insert(pk).second) continue;
            std::vector<int> through;
            Subset idx = 0;
            for (int j = 0; j < c.n; ++j) {
                mpq_class dot = 0;
                for (int i = 0; i < 3; ++i) dot += c.covectors[j][i] * p[i];
                if (dot == 0) idx |= (1u << j);
            }
            for (int t = 0; t < m; ++t) {
                mpq_class dot = 0;
                for (int i = 0; i < 3; ++i) dot += g.distinct[t][i] * p[i];
                if (dot == 0) through.push_back(t);
            }
            if ((int)through.size() < 3) continue;
            if (kmat.rank_of(idx) < kmat.r) continue; // concurrence forced over K
            g.mult_points.push_back(p);
            g.point_lines.push_back(through);
        }
    return g;
}

// exceptional case: a line whose blown-up points form a two-point
// pencil catching every other distinct line
inline bool special_configuration(const LineGeometry& g) {
    int m = (int)g.distinct.size();
    for (int l = 0; l < m; ++l) {
        // the blown-up points lying on line l
        std::vector<int> on;
        for (size_t t = 0; t < g.mult_points.size(); ++t)
            if (std::count(g.point_lines[t].begin(), g.point_lines[t].end(), l))
                on.push_back((int)t);
        if (on.size() != 2) continue;
        bool all = true;
        for (int o = 0; o < m && all; ++o) {
            if (o == l) continue;
            auto p = cross3q(g.distinct[l], g.distinct[o]);
            all = p == g.mult_points[on[0]] || p == g.mult_points[on[1]];
        }
        if (all) return true;
    }
    return false;
}

} // namespace surfdetail

inline LimitSurface limit_surface(const Arrangement& F, long window) {
    if (F.r != 3) fail(errc::not_implemented, "limit_surface is the r = 3 construction");
    LimitSurface out;
    out.limits = decomposition_from_limits(F, window);
    int nc = (int)out.limits.classes.size();

    Matroid kmat = k_matroid(F);
    for (auto& lam : out.limits.classes) {
        auto c = limit_configuration(F, lam);
        auto g = surfdetail::line_geometry(c, kmat);
        ComponentModel cm;
        cm.cls = lam;
        cm.blowup_points = (int)g.mult_points.size();
        cm.special = surfdetail::special_configuration(g);
        cm.kind = cm.special ? ComponentModel::Kind::P1xP1 : ComponentModel::Kind::BlowupOfP2;
        out.components.push_back(std::move(cm));
    }

    // common faces of the matroid polytopes, by shared vertex sets
    auto common_face_dim = [&](int a, int b, std::vector<Subset>* verts) {
        std::set<Subset> va(out.limits.decomposition.parts[a].m.bases.begin(),
                            out.limits.decomposition.parts[a].m.bases.end());
        std::vector<Subset> shared;
        for (Subset s : out.limits.decomposition.parts[b].m.bases)
            if (va.count(s)) shared.push_back(s);
        if (verts) *verts = shared;
        if (shared.empty()) return -1;
        ZMat diffs((int)shared.size() - 1, F.n);
        auto v0 = indicator(shared[0], F.n);
        for (int i = 1; i < (int)shared.size(); ++i) {
            auto v = indicator(shared[i], F.n);
            for (int k = 0; k < F.n; ++k) diffs(i - 1, k) = v[k] - v0[k];
        }
        return (int)zrank(diffs);
    };

    int dim_full = F.n - 1;
    for (int a = 0; a < nc; ++a)
        for (int b = a + 1; b < nc; ++b)
            if (common_face_dim(a, b, nullptr) == dim_full - 1) out.gluing.push_back({a, b});

    // boundary components: codim-1 faces of P_M on the facet {x_i = 1}
    out.boundary.assign(F.n, {});
    for (int a = 0; a < nc; ++a) {
        for (int i = 0; i < F.n; ++i) {
            std::vector<Subset> on;
            for (Subset s : out.limits.decomposition.parts[a].m.bases)
                if (s & (1u << i)) on.push_back(s);
            if (on.empty()) continue;
            ZMat diffs((int)on.size() - 1, F.n);
            auto v0 = indicator(on[0], F.n);
            for (int t = 1; t < (int)on.size(); ++t) {
                auto v = indicator(on[t], F.n);
                for (int k = 0; k < F.n; ++k) diffs(t - 1, k) = v[k] - v0[k];
            }
            if ((on.size() == 1 ? 0 : zrank(diffs)) == dim_full - 1)
                out.boundary[i].push_back(a);
        }
    }

    // candidate codim-2 faces: pairwise intersections of parts, together with
    // pairwise intersections of the shared codim-1 walls (a face common to a
    // cycle of parts need not appear as a pairwise intersection)
    auto vdim = [&](const std::vector<Subset>& shared) {
        if (shared.empty()) return -1;
        if (shared.size() == 1) return 0;
        ZMat diffs((int)shared.size() - 1, F.n);
        auto v0 = indicator(shared[0], F.n);
        for (int i = 1; i < (int)shared.size(); ++i) {
            auto v = indicator(shared[i], F.n);
            for (int k = 0; k < F.n; ++k) diffs(i - 1, k) = v[k] - v0[k];
        }
        return (int)zrank(diffs);
    };
    std::set<std::vector<Subset>> walls, candidates;
    for (int a = 0; a < nc; ++a)
        for (int b = a + 1; b < nc; ++b) {
            std::vector<Subset> shared;
            int d = common_face_dim(a, b, &shared);
            std::sort(shared.begin(), shared.end());
            if (d == dim_full - 1) walls.insert(shared);
            if (d == dim_full - 2) candidates.insert(shared);
        }
    for (auto i = walls.begin(); i != walls.end(); ++i)
        for (auto j = std::next(i); j != walls.end(); ++j) {
            std::vector<Subset> meet;
            std::set_intersection(i->begin(), i->end(), j->begin(), j->end(),
                                  std::back_inserter(meet));
            if (vdim(meet) == dim_full - 2) candidates.insert(meet);
        }
    std::map<std::vector<Subset>, std::vector<int>> cofaces;
    for (auto& faceverts : candidates) {
        std::vector<int> inc;
        for (int a = 0; a < nc; ++a) {
            bool all = true;
            for (Subset s : faceverts)
                all = all && out.limits.decomposition.parts[a].m.is_basis(s);
            if (all) inc.push_back(a);
        }
        cofaces[faceverts] = inc;
    }

    for (auto& [faceverts, inc] : cofaces) {
        GermReport germ;
        germ.face_verts = faceverts;
        germ.components = inc;
        if ((int)inc.size() <= 2) {
            germ.kind = GermReport::Kind::NormalCrossing;
            out.germs.push_back(std::move(germ));
            continue;
        }
        // adjacency among the incident parts along codim-1 faces containing it
        int k = (int)inc.size();
        std::vector<int> deg(k, 0);
        int edges = 0;
        for (int s = 0; s < k; ++s)
            for (int t = s + 1; t < k; ++t) {
                std::vector<Subset> shared;
                if (common_face_dim(inc[s], inc[t], &shared) != dim_full - 1) continue;
                bool contains = true;
                std::set<Subset> sh(shared.begin(), shared.end());
                for (Subset sv : faceverts) contains = contains && sh.count(sv);
                if (contains) {
                    ++deg[s];
                    ++deg[t];
                    ++edges;
                }
            }
        bool cycle = edges == k;
        bool path = edges == k - 1;
        for (int s = 0; s < k; ++s) {
            if (cycle) cycle = deg[s] == 2;
            if (path) path = deg[s] <= 2;
        }
        bool on_boundary = false;
        for (int i = 0; i < F.n && !on_boundary; ++i) {
            bool all0 = true, all1 = true;
            for (Subset s : faceverts) {
                all0 = all0 && !(s & (1u << i));
                all1 = all1 && (s & (1u << i));
            }
            on_boundary = all0 || all1;
        }
        if (cycle && !on_boundary) {
            germ.kind = GermReport::Kind::Cycle;
            germ.cycle_length = k;
        } else if (path && on_boundary && k == 3) {
            germ.kind = GermReport::Kind::Chain;
            // the single B_i through the germ: the face sits in {x_i = 1} and
            // the divisor B_i is present on both chain ends
            for (int i = 0; i < F.n; ++i) {
                bool all1 = true;
                for (Subset s : faceverts) all1 = all1 && (s & (1u << i));
                if (!all1) continue;
                bool ends_have = true;
                for (int s = 0; s < k; ++s) {
                    if (deg[s] != 1) continue;
                    ends_have =
                        ends_have && std::count(out.boundary[i].begin(),
                                                out.boundary[i].end(), inc[s]) > 0;
                }
                if (ends_have && germ.chain_b_index < 0) germ.chain_b_index = i;
            }
        } else {
            germ.kind = GermReport::Kind::Other;
        }
        out.germs.push_back(std::move(germ));
    }
    return out;
}

inline LimitSurface limit_surface(const Arrangement& F) {
    return limit_surface(F, default_window(stable_lattices(F)));
}

} // namespace memb

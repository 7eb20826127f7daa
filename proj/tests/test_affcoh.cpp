#include <doctest.h>

#include "fixtures_common.hpp"

using namespace memb;

namespace {

MatroidDecomposition two_pyramids(int j) {
    std::vector<Subset> lo, hi;
    for (Subset s = 0; s < 16u; ++s) {
        if (popcount(s) != 2) continue;
        int t = popcount(s & ((1u << 0) | (1u << j)));
        if (t <= 1) lo.push_back(s);
        if (t >= 1) hi.push_back(s);
    }
    MatroidDecomposition d;
    d.r = 2;
    d.n = 4;
    d.parts.push_back(polytope_of(matroid_from_bases(4, 2, lo)));
    d.parts.push_back(polytope_of(matroid_from_bases(4, 2, hi)));
    return d;
}

} // namespace

TEST_CASE("trivial decomposition has no interior walls") {
    std::vector<Subset> all;
    for (Subset s = 0; s < 32u; ++s)
        if (popcount(s) == 3) all.push_back(s);
    MatroidDecomposition triv;
    triv.r = 3;
    triv.n = 5;
    triv.parts.push_back(polytope_of(matroid_from_bases(5, 3, all)));
    auto h = aff_cohomology(decomposition_complex(triv));
    CHECK(h.c1 == 0);
    CHECK(h.h1 == 0);
    CHECK(h.h0 == 5); // affine functions on Delta(3,5) have rank n
}

TEST_CASE("two-pyramid splits of the octahedron have h1 = 0") {
    for (int j = 1; j < 4; ++j) {
        auto d = two_pyramids(j);
        auto h = aff_cohomology(decomposition_complex(d));
        CHECK(h.c0 == 8);
        CHECK(h.c1 == 3);       // one interior square wall, rank 3
        CHECK(h.rank_d0 == 3);  // the restriction is surjective
        CHECK(h.h1 == 0);
        CHECK(h.h0 == 5);       // global affine + one hinge
    }
}

TEST_CASE("central decompositions in the corpus have h1 = 0") {
    // the five-line pole family central decomposition
    auto d119 = central_decomposition({(1u << 1) | (1u << 2) | (1u << 3)}, 3, 5);
    auto h119 = aff_cohomology(decomposition_complex(d119));
    CHECK(h119.h1 == 0);

    // two separated triple points in Delta(3,6)
    auto d2 = central_decomposition({7u, 56u}, 3, 6);
    auto h2 = aff_cohomology(decomposition_complex(d2));
    CHECK(h2.h1 == 0);

    // Pappus central decomposition: ten polytopes in Delta(3,9)
    auto pap = fixtures::pappus_lines();
    auto dp = central_decomposition(pap.points, 3, 9);
    CHECK(dp.parts.size() == 10);
    auto hp = aff_cohomology(decomposition_complex(dp));
    CHECK(hp.h1 == 0);
}

TEST_CASE("pinwheel decomposition exercises the nonzero path") {
    auto d = fixtures::pinwheel();
    auto h = aff_cohomology(d);
    CHECK(h.c0 == 15);
    CHECK(h.c1 == 16);
    CHECK(h.c2 == 4);

    // independent oracle for h0: piecewise-affine functions determined by
    // per-cell affine forms agreeing on shared wall endpoints
    {
        int vars = 3 * (int)d.cells.size();
        std::vector<std::array<std::vector<long>, 2>> wallpts;
        for (size_t a = 0; a < d.cells.size(); ++a)
            for (size_t b = a + 1; b < d.cells.size(); ++b) {
                std::vector<std::vector<long>> common;
                for (auto& v : d.cells[a].verts)
                    for (auto& w : d.cells[b].verts)
                        if (v == w) common.push_back(v);
                if (common.size() == 2)
                    wallpts.push_back({common[0], common[1]});
            }
        Mat<mpq_class> sys(2 * (int)wallpts.size() * (int)d.cells.size(), vars, mpq_class(0));
        int row = 0;
        for (size_t a = 0; a < d.cells.size(); ++a)
            for (size_t b = a + 1; b < d.cells.size(); ++b) {
                std::vector<std::vector<long>> common;
                for (auto& v : d.cells[a].verts)
                    for (auto& w : d.cells[b].verts)
                        if (v == w) common.push_back(v);
                if (common.size() != 2) continue;
                for (auto& pt : common) {
                    sys(row, 3 * (int)a + 0) = pt[0];
                    sys(row, 3 * (int)a + 1) = pt[1];
                    sys(row, 3 * (int)a + 2) = 1;
                    sys(row, 3 * (int)b + 0) = -pt[0];
                    sys(row, 3 * (int)b + 1) = -pt[1];
                    sys(row, 3 * (int)b + 2) = mpq_class(-1);
                    ++row;
                }
            }
        sys.rows = row;
        sys.a.resize((size_t)row * vars);
        long pw_affine_dim = vars - rank(sys);
        CHECK(h.h0 == pw_affine_dim);
        CHECK(pw_affine_dim == 4); // global affine plus the one pinwheel hinge
    }

    // frozen regression value: one unit of h1 from the nonregular pinwheel
    CHECK(h.h1 == 1);
    // Euler identity (h2 = c2 - rank d1 here since there is no d2)
    long h2 = h.c2 - h.rank_d1;
    CHECK(h.h0 - h.h1 + h2 == h.c0 - h.c1 + h.c2);
}

#pragma once

#include <json.hpp>

#include "affcoh.hpp"
#include "arrangement.hpp"
#include "audit.hpp"
#include "fiber.hpp"
#include "surface.hpp"
#include "tropical.hpp"

// JSON schemas of the CLI.  All external indices are 1-based; matrices are
// row-major arrays of scalar strings, and a lattice class is the R-span of
// the columns of its matrix.

namespace memb {

using json = nlohmann::json;

inline json scalar_to_json(const Scalar& s) { return to_string(s); }

inline Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) return Scalar(mpq_class((long)j.get<long>()));
    if (!j.is_string()) fail(errc::parse_error, "scalar entries must be strings");
    return parse_scalar(j.get<std::string>());
}

inline json matrix_to_json(const MatK& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline MatK matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) fail(errc::parse_error, "matrix must be a nonempty array");
    int rows = (int)j.size(), cols = (int)j[0].size();
    MatK m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if ((int)j[i].size() != cols) fail(errc::parse_error, "ragged matrix");
        for (int c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c]);
    }
    return m;
}

inline json lattice_to_json(const LatticeClass& c) {
    return json{{"r", c.r}, {"matrix", matrix_to_json(c.basis)}};
}

inline LatticeClass lattice_from_json(const json& j) {
    MatK m = matrix_from_json(j.is_object() ? j.at("matrix") : j);
    return lattice_from_generators(m);
}

inline BaseField base_field_from_json(const json& j) {
    BaseField f;
    if (j.is_null()) return f;
    std::string kind = j.value("kind", "Q");
    if (kind == "Q") return f;
    if (kind == "Fp") {
        f.kind = BaseField::Kind::Fp;
        f.p = j.at("p").get<long>();
        if (f.p < 2) fail(errc::parse_error, "Fp modulus must be at least 2");
        return f;
    }
    fail(errc::parse_error, "base_field.kind must be Q or Fp");
}

inline json base_field_to_json(const BaseField& f) {
    if (f.kind == BaseField::Kind::Q) return json{{"kind", "Q"}};
    return json{{"kind", "Fp"}, {"p", f.p}};
}

inline Arrangement arrangement_from_json(const json& j) {
    int r = j.at("r").get<int>();
    int n = j.at("n").get<int>();
    BaseField bf = base_field_from_json(j.value("base_field", json()));
    if (bf.kind != BaseField::Kind::Q)
        fail(errc::not_implemented,
             "arrangements over K use k = Q; prime fields serve the matroid and audit operations");
    const json& vecs = j.at("vectors");
    if ((int)vecs.size() != n) fail(errc::parse_error, "expected n vectors");
    MatK m(r, n);
    for (int col = 0; col < n; ++col) {
        if ((int)vecs[col].size() != r) fail(errc::parse_error, "vector of wrong length");
        for (int row = 0; row < r; ++row) m(row, col) = scalar_from_json(vecs[col][row]);
    }
    return Arrangement::make(r, n, m, bf);
}

inline json arrangement_to_json(const Arrangement& F) {
    json vecs = json::array();
    for (int col = 0; col < F.n; ++col) {
        json v = json::array();
        for (int row = 0; row < F.r; ++row) v.push_back(scalar_to_json(F.f(row, col)));
        vecs.push_back(v);
    }
    return json{{"r", F.r},
                {"n", F.n},
                {"base_field", base_field_to_json(F.field)},
                {"vectors", vecs}};
}

inline std::vector<int> subset_to_list(Subset s, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (s & (1u << i)) out.push_back(i + 1);
    return out;
}

inline Subset subset_from_list(const json& j, int n) {
    Subset s = 0;
    for (auto& x : j) {
        int v = x.get<int>();
        if (v < 1 || v > n) fail(errc::parse_error, "index out of range");
        s |= (1u << (v - 1));
    }
    return s;
}

// configuration witness over k = Q or F_p, with its multiple-point data
struct WitnessFile {
    BaseField field;
    AuditInput<mpq_class> q;
    AuditInput<Fp> fp;
};

inline WitnessFile witness_from_json(const json& j) {
    WitnessFile w;
    w.field = base_field_from_json(j.value("base_field", json()));
    int r = j.at("r").get<int>();
    int n = j.at("n").get<int>();
    const json& cov = j.at("covectors");
    if ((int)cov.size() != n) fail(errc::parse_error, "expected n covectors");
    auto points = [&](auto& input) {
        for (auto& pt : j.value("multiple_points", json::array()))
            input.points.push_back(subset_from_list(pt, n));
    };
    if (w.field.kind == BaseField::Kind::Q) {
        w.q.r = r;
        w.q.n = n;
        w.q.cov = Mat<mpq_class>(r, n, mpq_class(0));
        for (int col = 0; col < n; ++col)
            for (int row = 0; row < r; ++row) {
                Scalar s = scalar_from_json(cov[col][row]);
                if (!s.den.is_one() || s.num.deg() > 0)
                    fail(errc::parse_error, "witness covectors live over the base field");
                w.q.cov(row, col) = s.num.coeff(0);
            }
        points(w.q);
    } else {
        w.fp.r = r;
        w.fp.n = n;
        w.fp.cov = Mat<Fp>(r, n, Fp(0, w.field.p));
        for (int col = 0; col < n; ++col)
            for (int row = 0; row < r; ++row)
                w.fp.cov(row, col) = Fp(cov[col][row].get<long>(), w.field.p);
        points(w.fp);
    }
    return w;
}

// polyhedral decomposition input for the cohomology command: either cells in
// a hypersimplex or a general ambient with explicit boundary facets
inline PolyDecomposition poly_decomposition_from_json(const json& j) {
    PolyDecomposition d;
    if (j.contains("hypersimplex")) {
        int r = j["hypersimplex"].at("r").get<int>();
        int n = j["hypersimplex"].at("n").get<int>();
        d.ambient_dim = n;
        for (int i = 0; i < n; ++i) {
            std::vector<long> e(n, 0);
            e[i] = 1;
            d.boundary.push_back({e, 1});
            std::vector<long> mi(n, 0);
            mi[i] = -1;
            d.boundary.push_back({mi, 0});
        }
        for (auto& cell : j.at("cells")) {
            std::vector<Subset> bases;
            for (auto& v : cell) {
                Subset s = 0;
                if (v.is_array() && (int)v.size() == n) { // 0/1 vector
                    for (int i = 0; i < n; ++i)
                        if (v[i].get<int>() == 1) s |= (1u << i);
                } else {
                    s = subset_from_list(v, n);
                }
                if (popcount(s) != r) fail(errc::parse_error, "cell vertex of wrong degree");
                bases.push_back(s);
            }
            d.cells.push_back(polytope_of(matroid_from_bases(n, r, bases)).poly);
        }
        return d;
    }
    d.ambient_dim = j.at("ambient_dim").get<int>();
    if (d.ambient_dim != 2)
        fail(errc::not_implemented, "general decompositions are supported in dimension 2");
    for (auto& b : j.at("boundary")) {
        std::vector<long> nrm;
        for (auto& x : b.at("normal")) nrm.push_back(x.get<long>());
        d.boundary.push_back({nrm, b.at("rhs").get<long>()});
    }
    for (auto& cell : j.at("cells")) {
        VPoly c;
        for (auto& v : cell) {
            std::vector<long> pt;
            for (auto& x : v) pt.push_back(x.get<long>());
            c.verts.push_back(pt);
        }
        c.vol_coords = c.verts;
        c.pool = polygon_pool(c.verts);
        d.cells.push_back(std::move(c));
    }
    return d;
}

} // namespace memb

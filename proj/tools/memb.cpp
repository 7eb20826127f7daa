// Command-line front end: reads arrangement / witness / decomposition JSON,
// dispatches the computations and emits deterministic JSON reports.

#include <CLI11.hpp>

#include <memb/json_io.hpp>
#include <memb/stratify.hpp>

#include <fstream>
#include <iostream>

using namespace memb;

namespace {

json load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(errc::parse_error, std::string("bad JSON: ") + e.what());
    }
    return j;
}

void emit(const json& j, const std::string& out) {
    std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out);
        if (!os) fail(errc::parse_error, "cannot write " + out);
        os << text;
    }
}

json classes_to_json(const std::vector<LatticeClass>& cs) {
    json arr = json::array();
    for (size_t i = 0; i < cs.size(); ++i) {
        json c = lattice_to_json(cs[i]);
        c["id"] = (int)i;
        arr.push_back(c);
    }
    return arr;
}

long resolve_window(long window, const Arrangement& F) {
    if (window > 0) return window;
    return default_window(stable_lattices(F));
}

json stab_report(const Arrangement& F) {
    auto st = stable_lattices(F);
    json out;
    out["stable_lattices"] = json::array();
    for (size_t i = 0; i < st.classes.size(); ++i) {
        json c = lattice_to_json(st.classes[i]);
        c["id"] = (int)i;
        c["psi"] = psi(F, st.classes[i]);
        c["stable"] = true;
        c["git_stable"] = is_git_stable(F, st.classes[i]);
        out["stable_lattices"].push_back(c);
    }
    json degen = json::array();
    for (auto& z : st.degenerate_subsets) {
        json d = json::array();
        for (int x : z) d.push_back(x + 1);
        degen.push_back(d);
    }
    out["degenerate_subsets_skipped"] = degen;
    out["count"] = (int)st.classes.size();
    return out;
}

json decomposition_to_json(const LimitDecomposition& lim) {
    json out;
    out["polytopes"] = json::array();
    for (size_t i = 0; i < lim.decomposition.parts.size(); ++i) {
        json p;
        p["class_id"] = (int)i;
        json verts = json::array();
        for (Subset b : lim.decomposition.parts[i].m.bases)
            verts.push_back(subset_to_list(b, lim.decomposition.n));
        p["vertices"] = verts;
        out["polytopes"].push_back(p);
    }
    out["tiling"] = verify_tiling(lim.decomposition);
    out["unimodular"] = is_unimodular(lim.decomposition);
    json degen = json::array();
    for (Subset s : lim.k_nonbases) degen.push_back(subset_to_list(s, lim.decomposition.n));
    out["k_degenerate_subsets"] = degen;
    return out;
}

json gitstab_report(const Arrangement& F, long window) {
    long w = resolve_window(window, F);
    auto lim = decomposition_from_limits(F, w);
    json out;
    out["window"] = w;
    out["classes"] = json::array();
    for (size_t i = 0; i < lim.classes.size(); ++i) {
        json c = lattice_to_json(lim.classes[i]);
        c["id"] = (int)i;
        c["psi"] = psi(F, lim.classes[i]);
        out["classes"].push_back(c);
    }
    out["decomposition"] = decomposition_to_json(lim);
    return out;
}

json fiber_report(const Arrangement& F, const std::vector<LatticeClass>& y) {
    auto fc = fiber_complex(F, y);
    json out;
    out["vertices"] = json::array();
    for (size_t i = 0; i < fc.vertices.size(); ++i) {
        json v = lattice_to_json(fc.vertices[i].cls);
        v["id"] = (int)i;
        json res = json::array();
        for (auto& e : fc.vertices[i].residues) {
            json rr;
            rr["dim"] = e.dim;
            rr["depth"] = e.depth;
            json rows = json::array();
            for (int a = 0; a < e.span.rows; ++a) {
                json row = json::array();
                for (int b = 0; b < e.span.cols; ++b) row.push_back(e.span(a, b).get_str());
                rows.push_back(row);
            }
            rr["span"] = rows;
            res.push_back(rr);
        }
        v["residues"] = res;
        out["vertices"].push_back(v);
    }
    out["simplices"] = fc.simplices;
    out["simplex_quotient_dims"] = fc.simplex_quot_dims;
    json btab;
    for (int i = 0; i < F.n; ++i) btab[std::to_string(i + 1)] = fc.boundary[i];
    out["boundary"] = btab;
    return out;
}

json surface_report(const Arrangement& F, long window) {
    long w = resolve_window(window, F);
    auto s = limit_surface(F, w);
    json out;
    out["window"] = w;
    out["components"] = json::array();
    for (size_t i = 0; i < s.components.size(); ++i) {
        json c = lattice_to_json(s.components[i].cls);
        c["id"] = (int)i;
        c["model"] = s.components[i].kind == ComponentModel::Kind::P1xP1 ? "P1xP1"
                                                                         : "blowup_of_P2";
        c["blowup_points"] = s.components[i].blowup_points;
        c["special"] = s.components[i].special;
        out["components"].push_back(c);
    }
    json glue = json::array();
    for (auto& [a, b] : s.gluing) glue.push_back(json::array({a, b}));
    out["gluing"] = glue;
    json germs = json::array();
    for (auto& g : s.germs) {
        json gj;
        switch (g.kind) {
            case GermReport::Kind::NormalCrossing: gj["kind"] = "normal_crossing"; break;
            case GermReport::Kind::Chain: gj["kind"] = "chain"; break;
            case GermReport::Kind::Cycle: gj["kind"] = "cycle"; break;
            case GermReport::Kind::Other: gj["kind"] = "other"; break;
        }
        gj["components"] = g.components;
        if (g.kind == GermReport::Kind::Cycle) gj["n"] = g.cycle_length;
        if (g.kind == GermReport::Kind::Chain) gj["b_index"] = g.chain_b_index + 1;
        json fv = json::array();
        for (Subset s2 : g.face_verts) fv.push_back(subset_to_list(s2, F.n));
        gj["face"] = fv;
        germs.push_back(gj);
    }
    out["germs"] = germs;
    json btab;
    for (int i = 0; i < F.n; ++i) btab[std::to_string(i + 1)] = s.boundary[i];
    out["boundary"] = btab;
    out["decomposition"] = decomposition_to_json(s.limits);
    return out;
}

json trop_report(const Arrangement& F, long window) {
    auto rep = verify_correspondence(F, window);
    json out;
    out["checked"] = rep.checked;
    out["passed"] = rep.checked - (long)rep.witnesses.size();
    out["failed"] = (long)rep.witnesses.size();
    json ws = json::array();
    for (auto& w : rep.witnesses) {
        json wj;
        wj["w"] = w.w;
        wj["trop_membership"] = w.trop;
        wj["psi_realized"] = w.psi_match;
        wj["reason"] = w.reason;
        ws.push_back(wj);
    }
    out["witnesses"] = ws;
    out["ok"] = rep.ok;
    return out;
}

json audit_report(const WitnessFile& w) {
    AuditResult res = w.field.kind == BaseField::Kind::Q ? dimension_audit(w.q)
                                                         : dimension_audit(w.fp);
    return json{{"dim_XC", res.dim_xc},
                {"lhs", res.lhs},
                {"rhs", res.rhs},
                {"violates", res.violates}};
}

json cohomology_report(const PolyDecomposition& d) {
    auto h = aff_cohomology(d);
    return json{{"h0", h.h0}, {"h1", h.h1},           {"c0", h.c0},
                {"c1", h.c1}, {"c2", h.c2},           {"rank_d0", h.rank_d0},
                {"rank_d1", h.rank_d1}};
}

template <class F>
json lax_report(const AuditInput<F>& in, const std::vector<int>& order) {
    Configuration<F> c{in.r, in.n, in.cov};
    json out;
    if (!order.empty()) {
        std::vector<int> o;
        for (int x : order) o.push_back(x - 1);
        out["order"] = order;
        out["lax"] = is_lax(c, o);
        return out;
    }
    auto found = find_lax_order(c);
    if (found) {
        json o = json::array();
        for (int x : *found) o.push_back(x + 1);
        out["order"] = o;
        out["lax"] = true;
    } else {
        out["order"] = nullptr;
        out["lax"] = false;
    }
    return out;
}

template <class F>
json central_report(const AuditInput<F>& in) {
    auto d = central_decomposition(in.points, in.r, in.n);
    json out;
    out["polytopes"] = json::array();
    for (size_t i = 0; i < d.parts.size(); ++i) {
        json p;
        p["role"] = i == 0 ? "central" : "around_point";
        json verts = json::array();
        for (Subset b : d.parts[i].m.bases) verts.push_back(subset_to_list(b, d.n));
        p["vertices"] = verts;
        out["polytopes"].push_back(p);
    }
    out["tiling"] = verify_tiling(d);
    out["unimodular"] = is_unimodular(d);
    auto h = aff_cohomology(decomposition_complex(d));
    out["h0"] = h.h0;
    out["h1"] = h.h1;
    return out;
}

json crossratio_report(const Arrangement& F, std::vector<int> V, std::vector<int> W, int prec) {
    for (auto& x : V) --x;
    for (auto& x : W) --x;
    Scalar cr = cross_ratio(F.f, V, W);
    auto lim = cross_ratio_limit(cr);
    json out;
    out["value"] = to_string(cr);
    out["limit"] = lim.infinite ? json("inf") : json(lim.value.get_str());
    out["degenerate"] = lim.degenerate();
    if (!cr.is_zero()) {
        // series view of the exact value, prec terms from the valuation up
        Scalar partial;
        for (auto& [a, c] : cr.series(prec))
            partial += Scalar(c) * Scalar::z_power(a, mpq_class(1));
        out["series"] = to_string(partial);
    }
    return out;
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact limit combinatorics of one-parameter hyperplane families"};
    app.require_subcommand(1);

    std::string json_path, out_path, y_path, field_spec = "Q", v_spec, w_spec, order_spec;
    long window = 0;
    int prec = 32;
    app.add_option("--json", json_path, "input JSON file");
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--window", window, "enumeration window (default: derived from the input)");
    app.add_option("--prec", prec, "series precision for printed expansions");
    app.add_option("--field", field_spec, "base field override: Q or Fp:<p>");

    auto* stab = app.add_subcommand("stab", "stable lattices and their Psi values");
    auto* hull = app.add_subcommand("hull", "convex hull of the listed lattice classes");
    auto* gitstab = app.add_subcommand("gitstab", "GIT-stable classes and their decomposition");
    auto* fiber = app.add_subcommand("fiber", "dual complex of the special fibre");
    fiber->add_option("--y", y_path, "classes file for Y (default: hull of Stab)");
    auto* surface = app.add_subcommand("surface", "the r=3 limit surface report");
    auto* trop = app.add_subcommand("trop", "tropical oracle");
    auto* trop_verify = trop->add_subcommand("verify", "check the correspondence on a window");
    auto* audit = app.add_subcommand("audit", "dimension audit of a configuration witness");
    auto* cohomology = app.add_subcommand("cohomology", "H0/H1 of a decomposition file");
    auto* lax = app.add_subcommand("lax", "laxness of a configuration witness");
    lax->add_option("--order", order_spec, "comma-separated total order to test (1-based)");
    auto* central = app.add_subcommand("central", "central decomposition from a witness");
    auto* crossratio = app.add_subcommand("crossratio", "cross-ratio of four members");
    crossratio->add_option("--v", v_spec, "four indices, comma separated (1-based)");
    crossratio->add_option("--w", w_spec, "r-2 indices, comma separated (1-based)");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    trop_verify->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (json_path.empty()) fail(errc::parse_error, "--json is required");
        if (window < 0) fail(errc::bad_input, "window must be >= 1");
        if (prec < 1) fail(errc::bad_input, "prec must be >= 1");
        json in = load(json_path);
        if (!in.contains("base_field") && field_spec != "Q") {
            if (field_spec.rfind("Fp:", 0) != 0)
                fail(errc::parse_error, "--field must be Q or Fp:<p>");
            in["base_field"] = json{{"kind", "Fp"}, {"p", std::stol(field_spec.substr(3))}};
        }
        json report;
        if (stab->parsed()) {
            report = stab_report(arrangement_from_json(in));
        } else if (hull->parsed()) {
            std::vector<LatticeClass> cs;
            for (auto& c : in.at("classes")) cs.push_back(lattice_from_json(c));
            report["classes"] = classes_to_json(convex_hull(cs));
        } else if (gitstab->parsed()) {
            report = gitstab_report(arrangement_from_json(in), window);
        } else if (fiber->parsed()) {
            Arrangement F = arrangement_from_json(in);
            std::vector<LatticeClass> y;
            if (y_path.empty()) {
                y = convex_hull(stable_lattices(F).classes);
            } else {
                for (auto& c : load(y_path).at("classes")) y.push_back(lattice_from_json(c));
            }
            report = fiber_report(F, y);
        } else if (surface->parsed()) {
            report = surface_report(arrangement_from_json(in), window);
        } else if (trop->parsed() && trop_verify->parsed()) {
            report = trop_report(arrangement_from_json(in), window > 0 ? window : 2);
        } else if (audit->parsed()) {
            report = audit_report(witness_from_json(in));
        } else if (cohomology->parsed()) {
            report = cohomology_report(poly_decomposition_from_json(in));
        } else if (lax->parsed()) {
            WitnessFile w = witness_from_json(in);
            auto order = order_spec.empty() ? std::vector<int>{} : parse_index_list(order_spec);
            report = w.field.kind == BaseField::Kind::Q ? lax_report(w.q, order)
                                                        : lax_report(w.fp, order);
        } else if (central->parsed()) {
            WitnessFile w = witness_from_json(in);
            report = w.field.kind == BaseField::Kind::Q ? central_report(w.q)
                                                        : central_report(w.fp);
        } else if (crossratio->parsed()) {
            if (v_spec.empty()) fail(errc::parse_error, "--v is required for crossratio");
            report = crossratio_report(arrangement_from_json(in), parse_index_list(v_spec),
                                       parse_index_list(w_spec), prec);
        } else {
            return 2;
        }
        emit(report, out_path);
        return 0;
    } catch (const error& e) {
        json err{{"error", {{"code", errc_name(e.code)}, {"message", e.what()}}}};
        emit(err, "");
        return e.code == errc::parse_error ? 2 : 1;
    } catch (const json::exception& e) {
        json err{{"error", {{"code", "ParseError"}, {"message", e.what()}}}};
        emit(err, "");
        return 2;
    }
}

#include "cusp/json_io.hpp"

#include <numeric>
#include <stdexcept>

namespace cusp {

namespace {

[[noreturn]] void bad(const std::string &where, const std::string &what) {
    throw std::invalid_argument("input error at '" + where + "': " + what);
}

} // namespace

json scalar_to_json(const CycloScalar &c) {
    json a = json::array();
    for (const auto &r : c.coeffs()) a.push_back(r.str());
    return a;
}

CycloScalar scalar_from_json(const json &j, const CycloFieldPtr &f) {
    if (!j.is_array()) bad("coefficient", "expected an array of rationals");
    std::vector<Rational> cs(f->degree());
    if (j.size() > cs.size())
        bad("coefficient", "vector longer than phi(M) = " + std::to_string(f->degree()));
    for (size_t i = 0; i < j.size(); ++i) {
        if (j[i].is_number_integer())
            cs[i] = Rational((long long)j[i].get<long long>());
        else if (j[i].is_string())
            cs[i] = Rational::parse(j[i].get<std::string>());
        else
            bad("coefficient[" + std::to_string(i) + "]", "expected string or integer");
    }
    return CycloScalar(f, cs);
}

json poly_to_json(const Polynomial &p) {
    json terms = json::array();
    for (const auto &[e, c] : p.terms()) {
        json t;
        t["e"] = e;
        t["c"] = scalar_to_json(c);
        terms.push_back(t);
    }
    json out;
    out["terms"] = terms;
    out["str"] = p.str();
    return out;
}

Polynomial poly_from_json(const json &j, const CycloFieldPtr &f, const VarSetPtr &v) {
    Polynomial p(f, v);
    if (!j.contains("terms")) bad("polynomial", "missing terms");
    for (const auto &t : j["terms"]) {
        std::vector<int> e = t.at("e").get<std::vector<int>>();
        p.add_term(e, scalar_from_json(t.at("c"), f));
    }
    return p;
}

CuspidalInput input_from_json(const json &j) {
    CuspidalInput in;
    if (!j.contains("p") || !j["p"].is_number_integer()) bad("p", "missing or not an integer");
    if (!j.contains("q") || !j["q"].is_number_integer()) bad("q", "missing or not an integer");
    in.p = j["p"].get<long long>();
    in.q = j["q"].get<long long>();
    if (j.contains("field_order")) {
        if (!j["field_order"].is_number_integer() || j["field_order"].get<long long>() < 1)
            bad("field_order", "must be a positive integer");
        in.field_order = (unsigned)j["field_order"].get<long long>();
    } else {
        long long delta = std::gcd(in.p, in.q);
        in.field_order = (unsigned)std::lcm(4ll, delta > 0 ? delta : 1);
    }
    auto f = in.field();
    if (!j.contains("branches") || !j["branches"].is_array() || j["branches"].empty())
        bad("branches", "missing or empty");
    for (size_t i = 0; i < j["branches"].size(); ++i) {
        const auto &b = j["branches"][i];
        Branch br;
        if (!b.contains("b")) bad("branches[" + std::to_string(i) + "].b", "missing root");
        br.root = scalar_from_json(b["b"], f);
        if (!b.contains("d") || !b["d"].is_number_integer() || b["d"].get<long long>() < 1)
            bad("branches[" + std::to_string(i) + "].d", "missing or not a positive integer");
        br.multiplicity = b["d"].get<long long>();
        in.branches.push_back(br);
    }
    static VarSetPtr gvars = make_vars({"Psi", "z"});
    Polynomial g(f, gvars);
    if (j.contains("G")) {
        if (!j["G"].is_array()) bad("G", "expected an array of terms");
        for (size_t i = 0; i < j["G"].size(); ++i) {
            const auto &t = j["G"][i];
            long long pe = t.value("psi_exp", -1ll);
            long long ze = t.value("z_exp", -1ll);
            if (pe < 0 || ze < 0)
                bad("G[" + std::to_string(i) + "]", "needs psi_exp >= 0 and z_exp >= 0");
            if (!t.contains("coeff")) bad("G[" + std::to_string(i) + "].coeff", "missing");
            g.add_term({(int)pe, (int)ze}, scalar_from_json(t["coeff"], f));
        }
    }
    in.perturbation = g;
    return in;
}

json input_to_json(const CuspidalInput &in) {
    json j;
    j["p"] = in.p;
    j["q"] = in.q;
    j["field_order"] = in.field_order;
    json bs = json::array();
    for (const auto &b : in.branches) {
        json e;
        e["b"] = scalar_to_json(b.root);
        e["d"] = b.multiplicity;
        bs.push_back(e);
    }
    j["branches"] = bs;
    json g = json::array();
    if (!in.perturbation.is_zero()) {
        for (const auto &[e, c] : in.perturbation.terms()) {
            json t;
            t["psi_exp"] = e[0];
            t["z_exp"] = e[1];
            t["coeff"] = scalar_to_json(c);
            g.push_back(t);
        }
    }
    j["G"] = g;
    return j;
}

namespace {

json map_to_json(const PolyMap &m) {
    json imgs = json::array();
    for (const auto &p : m.images) imgs.push_back(poly_to_json(p));
    return imgs;
}

json pinned_to_json(const std::vector<std::pair<size_t, CycloScalar>> &pins) {
    json out = json::array();
    for (const auto &[v, val] : pins) {
        json p;
        p["var"] = v;
        p["value"] = scalar_to_json(val);
        out.push_back(p);
    }
    return out;
}

} // namespace

json trace_to_json(const ResolutionTrace &t) {
    json j;
    j["schema"] = "cusp-trace-1";
    j["input"] = input_to_json(t.input);
    {
        json p;
        p["delta"] = t.params.delta;
        p["d"] = t.params.d;
        p["r"] = t.params.r;
        p["d_prime"] = t.params.d_prime;
        p["cf_digits"] = t.params.cf.digits;
        p["k"] = t.params.cf.digit_sum();
        p["first_integral_case"] = t.params.first_integral_case;
        p["branch_count"] = t.params.branch_count;
        j["params"] = p;
    }
    j["guard"] = t.guard_limit;
    j["counts"] = {{"step1", t.step1_count}, {"step2", t.step2_count}, {"step3", t.step3_count}};
    j["parity_case"] = t.parity_case;
    j["catalog_c0"] = t.catalog_c0;
    j["truncation_degree"] = t.input.perturbation.total_degree();
    j["all_simple"] = t.all_simple;

    json charts = json::array();
    for (const auto &ch : t.charts) {
        json c;
        c["id"] = ch.id;
        c["parent"] = ch.parent;
        c["step"] = ch.created_by_step;
        c["alive"] = ch.alive;
        c["vars"] = ch.separatrix.vars()->names;
        c["to_parent"] = map_to_json(ch.to_parent);
        c["to_origin"] = map_to_json(ch.to_origin);
        json ds = json::array();
        for (const auto &d : ch.divisors) {
            json e;
            e["component"] = d.component;
            e["var"] = d.var;
            e["value"] = scalar_to_json(d.value);
            ds.push_back(e);
        }
        c["divisors"] = ds;
        json sh = json::array();
        for (const auto &[comp, eq] : ch.shadow_divisors) {
            json e;
            e["component"] = comp;
            e["equation"] = poly_to_json(eq);
            sh.push_back(e);
        }
        c["shadow_divisors"] = sh;
        json om = json::array();
        for (int i = 0; i < 3; ++i) om.push_back(poly_to_json(ch.omega.a[i]));
        c["omega"] = om;
        c["separatrix"] = poly_to_json(ch.separatrix);
        c["omega_powers"] = ch.omega_powers;
        c["sep_powers"] = ch.sep_powers;
        charts.push_back(c);
    }
    j["charts"] = charts;

    json comps = json::array();
    for (const auto &ci : t.components) {
        json c;
        c["id"] = ci.id;
        switch (ci.family) {
            case ComponentInfo::Family::StepI: c["family"] = "D"; break;
            case ComponentInfo::Family::StepII: c["family"] = "Dchain"; break;
            case ComponentInfo::Family::StepIII: c["family"] = "A"; break;
            case ComponentInfo::Family::Separatrix: c["family"] = "separatrix"; break;
        }
        c["created_by_step"] = ci.created_by_step;
        c["alpha"] = ci.alpha;
        c["chain_base"] = ci.chain_base;
        c["chain_root_alpha"] = ci.chain_root_alpha;
        c["chain_pos"] = ci.chain_pos;
        c["root_tag"] = ci.root_tag;
        c["base_crossings"] = ci.base_crossings;
        c["chain_continued"] = ci.chain_continued;
        c["sep_classes"] = ci.sep_classes;
        comps.push_back(c);
    }
    j["components"] = comps;

    json steps = json::array();
    for (const auto &st : t.steps) {
        json s;
        s["index"] = st.index;
        s["stage"] = (int)st.stage;
        s["point_center"] = st.point_center;
        s["key"] = st.center_key;
        json apps = json::array();
        for (const auto &a : st.appearances) {
            json e;
            e["chart"] = a.chart;
            e["pinned"] = pinned_to_json(a.pinned);
            apps.push_back(e);
        }
        s["appearances"] = apps;
        s["charts_created"] = st.charts_created;
        s["new_component"] = st.new_component;
        s["continuation_chart"] = st.continuation_chart;
        steps.push_back(s);
    }
    j["steps"] = steps;

    {
        json s1;
        s1["chart"] = t.step1.chart;
        s1["var_k"] = t.step1.var_k;
        s1["var_j"] = t.step1.var_j;
        s1["var_z"] = t.step1.var_z;
        s1["a"] = t.step1.a;
        s1["b"] = t.step1.b;
        s1["m_raw"] = t.step1.m_raw;
        s1["n_raw"] = t.step1.n_raw;
        s1["m"] = t.step1.m;
        s1["n"] = t.step1.n;
        if (t.step1.chart >= 0) {
            s1["unit_factor"] = poly_to_json(t.step1.unit_factor);
            json eta = json::array();
            for (int i = 0; i < 3; ++i) eta.push_back(poly_to_json(t.step1.eta.a[i]));
            s1["eta"] = eta;
            s1["delta_coeff"] = poly_to_json(t.step1.delta_coeff);
        }
        j["step1"] = s1;
        json s2;
        s2["chart"] = t.step2.chart;
        s2["var_k"] = t.step2.var_k;
        s2["var_j"] = t.step2.var_j;
        s2["var_z"] = t.step2.var_z;
        s2["wx"] = t.step2.wx;
        s2["wy"] = t.step2.wy;
        s2["P"] = t.step2.p_invariant;
        s2["Q"] = t.step2.q_invariant;
        if (t.step2.chart >= 0) s2["h_power"] = poly_to_json(t.step2.h_power);
        j["step2"] = s2;
    }

    json sing = json::array();
    for (const auto &sc : t.singular) {
        json s;
        s["chart"] = sc.chart;
        switch (sc.kind) {
            case SingularComponent::Kind::Line: s["kind"] = "line"; break;
            case SingularComponent::Kind::Curve: s["kind"] = "curve"; break;
            case SingularComponent::Kind::Point: s["kind"] = "point"; break;
            case SingularComponent::Kind::Unresolved: s["kind"] = "unresolved"; break;
        }
        s["pinned"] = pinned_to_json(sc.pinned);
        if (!sc.equation.is_zero()) s["equation"] = poly_to_json(sc.equation);
        if (sc.has_alg) {
            s["alg_var"] = sc.alg_var;
            s["alg_min_poly"] = poly_to_json(sc.alg_min_poly);
        }
        s["on_components"] = sc.on_components;
        s["sep_related"] = sc.sep_related;
        s["simple"] = sc.simple;
        s["note"] = sc.eigen_note;
        sing.push_back(s);
    }
    j["singular"] = sing;
    j["separatrix_node"] = t.separatrix_node;
    return j;
}

json graph_to_json(const DivisorGraph &g) {
    json j;
    j["schema"] = "cusp-graph-1";
    json nodes = json::array();
    for (const auto &n : g.nodes) {
        json e;
        e["id"] = n.id;
        e["family"] = n.family;
        e["alpha"] = n.alpha;
        e["chain_root_alpha"] = n.chain_root_alpha;
        e["chain_pos"] = n.chain_pos;
        e["root_tag"] = n.root_tag;
        e["label"] = n.label;
        e["created_by_step"] = n.created_by_step;
        nodes.push_back(e);
    }
    j["nodes"] = nodes;
    json edges = json::array();
    for (const auto &e : g.edges) {
        json x;
        x["a"] = e.a;
        x["b"] = e.b;
        x["curve"] = e.curve;
        x["chart"] = e.chart;
        edges.push_back(x);
    }
    j["edges"] = edges;
    j["essential"] = g.essential;
    j["specials"] = g.specials;
    j["separatrix_node"] = g.separatrix_node;
    j["consistent"] = g.consistent;
    j["diagnostics"] = g.diagnostics;
    return j;
}

json presentations_to_json(const PresentationPair &p) {
    auto pres = [](const Presentation &pr) {
        json j;
        j["generators"] = pr.generators;
        j["case"] = pr.case_tag;
        j["provenance"] = pr.provenance;
        j["r"] = pr.r;
        json rels = json::array();
        for (const auto &rel : pr.relators) {
            json e;
            e["display"] = rel.display;
            e["symbolic_b"] = rel.symbolic;
            if (!rel.symbolic) e["word"] = rel.word.letters;
            rels.push_back(e);
        }
        j["relators"] = rels;
        j["rendered"] = render_presentation(pr);
        return j;
    };
    json j;
    j["schema"] = "cusp-pi1-1";
    j["raw"] = pres(p.raw);
    j["simplified"] = pres(p.simplified);
    j["alpha_word"] = p.alpha_word.letters;
    j["beta_word"] = p.beta_word.letters;
    auto ab = [](const Abelianization &a) {
        json e;
        e["free_rank"] = a.free_rank;
        json t = json::array();
        for (const auto &x : a.torsion) t.push_back(x.str());
        e["torsion"] = t;
        json d = json::array();
        for (const auto &x : a.snf_diagonal) d.push_back(x.str());
        e["snf_diagonal"] = d;
        return e;
    };
    j["raw_abelianization"] = ab(abelianization(p.raw));
    j["simplified_abelianization"] = ab(abelianization(p.simplified));
    return j;
}

std::string dump_deterministic(const json &j) {
    return j.dump(2) + "\n";
}

} // namespace cusp

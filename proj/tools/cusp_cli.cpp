#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cusp/json_io.hpp"

using namespace cusp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitEngineDefect = 2;
constexpr int kExitGuard = 3;

struct Options {
    std::string input_path;
    std::string out_path;
    std::string dot_path;
    long long guard = 0;
    long long field_order = 0;
};

CuspidalInput load_input(const Options &o) {
    std::ifstream f(o.input_path);
    if (!f) throw std::invalid_argument("cannot open input file: " + o.input_path);
    json j = json::parse(f);
    if (o.field_order > 0) j["field_order"] = o.field_order;
    return input_from_json(j);
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

int run_check(const Options &o) {
    CuspidalInput in = load_input(o);
    auto rep = admissibility_check(in);
    std::cout << "admissibility:\n";
    if (rep.admissible) {
        std::cout << "  accepted\n";
    } else {
        for (const auto &v : rep.violations)
            std::cout << "  violated: " << v.clause << " (" << v.detail << ")\n";
    }
    for (const auto &w : rep.warnings)
        std::cout << "  warning: " << w.clause << " (" << w.detail << ")\n";
    if (!rep.admissible) return kExitInvalidInput;

    DerivedParams dp = derive_params(in);
    std::cout << "derived: delta=" << dp.delta << " d=" << dp.d << " r=" << dp.r
              << " l=" << dp.branch_count << " k=" << dp.cf.digit_sum() << " cf=[";
    for (size_t i = 0; i < dp.cf.digits.size(); ++i)
        std::cout << (i ? "," : "") << dp.cf.digits[i];
    std::cout << "]\n";

    auto crit = generalized_surface_criterion(in.perturbation, dp.r);
    std::cout << "generalized-surface criterion: "
              << (crit == SurfaceCriterion::Satisfied ? "satisfied" : "inconclusive") << "\n";

    FoliationData fd = build_omega(in);
    bool integ = integrability_check(fd.omega);
    std::cout << "integrability (Omega ^ dOmega = 0): " << (integ ? "pass" : "FAIL") << "\n";

    HopfPairing hp = hopf_pairing(in);
    std::cout << "Hopf identity residual Omega(2X) - 2pqd(z^2+phi): "
              << hp.residual.str() << (hp.residual.is_zero() ? "  (pass)" : "  (FAIL)") << "\n";
    if (!integ || !hp.residual.is_zero()) return kExitEngineDefect;
    return kExitOk;
}

ResolutionTrace run_resolve_trace(const Options &o, const CuspidalInput &in) {
    ResolveOptions ro;
    ro.guard_override = o.guard;
    return resolve(in, ro);
}

int run_resolve(const Options &o, bool also_graph, bool also_pi1) {
    CuspidalInput in = load_input(o);
    auto rep = admissibility_check(in);
    if (!rep.admissible) {
        for (const auto &v : rep.violations)
            std::cerr << "rejected: " << v.clause << " (" << v.detail << ")\n";
        return kExitInvalidInput;
    }
    ResolutionTrace t = run_resolve_trace(o, in);
    ShapeReport sr = verify_shapes(t);
    json out = trace_to_json(t);
    out["shape_checks"] = sr.checks;
    out["shape_failures"] = sr.failures;
    DivisorGraph g = build_graph(t);
    if (also_graph || also_pi1) out["graph"] = graph_to_json(g);
    if (also_pi1) out["pi1"] = presentations_to_json(presentations_for(t.params.r));
    write_text(o.out_path, dump_deterministic(out));
    if (!o.dot_path.empty()) write_text(o.dot_path, to_dot(g));
    for (const auto &f : sr.failures) std::cerr << "shape check failed: " << f << "\n";
    if (!sr.ok || !g.consistent) return kExitEngineDefect;
    return kExitOk;
}

int run_graph(const Options &o) {
    CuspidalInput in = load_input(o);
    auto rep = admissibility_check(in);
    if (!rep.admissible) {
        for (const auto &v : rep.violations)
            std::cerr << "rejected: " << v.clause << " (" << v.detail << ")\n";
        return kExitInvalidInput;
    }
    ResolutionTrace t = run_resolve_trace(o, in);
    DivisorGraph g = build_graph(t);
    std::string dot = to_dot(g);
    write_text(o.dot_path.empty() ? o.out_path : o.dot_path, dot);
    if (!g.consistent) {
        for (const auto &d : g.diagnostics) std::cerr << "graph: " << d << "\n";
        return kExitEngineDefect;
    }
    return kExitOk;
}

int run_pi1(const Options &o) {
    CuspidalInput in = load_input(o);
    auto rep = admissibility_check(in);
    if (!rep.admissible) {
        for (const auto &v : rep.violations)
            std::cerr << "rejected: " << v.clause << " (" << v.detail << ")\n";
        return kExitInvalidInput;
    }
    DerivedParams dp = derive_params(in);
    PresentationPair pp = presentations_for(dp.r);
    std::cout << "r = " << dp.r << " (" << pp.simplified.case_tag << ")\n";
    std::cout << "raw:        " << render_presentation(pp.raw) << "\n";
    std::cout << "simplified: " << render_presentation(pp.simplified) << "\n";
    auto ab = abelianization(pp.simplified);
    std::cout << "abelianization: Z^" << ab.free_rank;
    for (const auto &d : ab.torsion) std::cout << " + Z/" << d.str();
    std::cout << "\n";
    if (!o.out_path.empty())
        write_text(o.out_path, dump_deterministic(presentations_to_json(pp)));
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact resolution engine for quasi-homogeneous cuspidal foliations in (C^3,0)"};
    app.require_subcommand(1);

    Options o;
    app.add_option("--input", o.input_path, "input description file (JSON)");
    app.add_option("--out", o.out_path, "output path ('-' for stdout)");
    app.add_option("--dot-out", o.dot_path, "DOT output path for the dual graph");
    app.add_option("--guard", o.guard, "blow-up guard override");
    app.add_option("--field-order", o.field_order, "cyclotomic field order override");

    auto *c_check = app.add_subcommand("check", "validate input and run the desk checks");
    auto *c_resolve = app.add_subcommand("resolve", "run the full reduction, emit the JSON trace");
    auto *c_graph = app.add_subcommand("graph", "emit the exceptional-divisor dual graph (DOT)");
    auto *c_pi1 = app.add_subcommand("pi1", "emit the fundamental-group presentations");
    auto *c_report = app.add_subcommand("report", "emit trace, graph and presentations together");
    for (auto *c : {c_check, c_resolve, c_graph, c_pi1, c_report}) c->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_check)) return run_check(o);
        if (app.got_subcommand(c_resolve)) return run_resolve(o, false, false);
        if (app.got_subcommand(c_graph)) return run_graph(o);
        if (app.got_subcommand(c_pi1)) return run_pi1(o);
        if (app.got_subcommand(c_report)) return run_resolve(o, true, true);
    } catch (const GuardExhausted &e) {
        std::cerr << "guard exhausted: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitEngineDefect;
    }
    return kExitOk;
}

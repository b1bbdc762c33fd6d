#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>

#include "cusp/json_io.hpp"

using namespace cusp;

namespace {

json minimal_input() {
    json j;
    j["p"] = 2;
    j["q"] = 3;
    j["branches"] = json::array({json{{"b", json::array({"1"})}, {"d", 2}}});
    j["G"] = json::array();
    return j;
}

#ifdef CUSP_CLI_PATH
struct CliResult {
    int status;
    std::string out;
};

CliResult run_cli(const std::string &args) {
    std::string cmd = std::string(CUSP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int rc = pclose(p);
    return {WEXITSTATUS(rc), out};
}

std::string write_temp(const json &j, const std::string &name) {
    std::string path = "/tmp/cusp_test_" + name + ".json";
    std::ofstream f(path);
    f << j.dump(2);
    return path;
}
#endif

} // namespace

TEST_CASE("input parsing accepts the minimal document") {
    auto in = input_from_json(minimal_input());
    CHECK(in.p == 2);
    CHECK(in.q == 3);
    CHECK(in.field_order == 4);   // lcm(4, gcd(2,3))
    REQUIRE(in.branches.size() == 1);
    CHECK(in.branches[0].multiplicity == 2);
    CHECK(in.perturbation.is_zero());
    CHECK(admissibility_check(in).admissible);
}

TEST_CASE("input parsing reports field locations") {
    auto bad = minimal_input();
    bad["p"] = 1;
    auto in = input_from_json(bad);   // parses, admissibility rejects
    auto rep = admissibility_check(in);
    CHECK_FALSE(rep.admissible);
    CHECK(rep.violations[0].clause == "p,q >= 2");

    auto nob = minimal_input();
    nob["branches"] = json::array();
    CHECK_THROWS_WITH_AS(input_from_json(nob),
                         doctest::Contains("branches"), std::invalid_argument);

    auto badg = minimal_input();
    badg["G"] = json::array({json{{"psi_exp", -1}, {"z_exp", 0}, {"coeff", json::array({"1"})}}});
    CHECK_THROWS_AS(input_from_json(badg), std::invalid_argument);

    // coincident a_i rejected by the admissibility clause
    auto dup = minimal_input();
    dup["p"] = 2;
    dup["q"] = 2;
    dup["branches"] = json::array({json{{"b", json::array({"1"})}, {"d", 2}},
                                   json{{"b", json::array({"-1"})}, {"d", 3}}});
    auto in2 = input_from_json(dup);
    auto rep2 = admissibility_check(in2);
    CHECK_FALSE(rep2.admissible);
    CHECK(rep2.violations[0].clause == "a_i != a_j");
}

TEST_CASE("scalar and polynomial round trips") {
    auto f = cyclo_field(12);
    std::vector<Rational> c(f->degree());
    c[0] = Rational(-3, 7);
    c[2] = Rational(5);
    CycloScalar s(f, c);
    CHECK(scalar_from_json(scalar_to_json(s), f) == s);

    auto v = origin_chart();
    Polynomial p = Polynomial::variable(f, v, 0) * s +
                   Polynomial::variable(f, v, 2).pow(3) * CycloScalar::from_int(f, -2);
    CHECK(poly_from_json(poly_to_json(p), f, v) == p);
}

TEST_CASE("trace serialization is deterministic and complete") {
    auto in = input_from_json(minimal_input());
    ResolutionTrace t1 = resolve(in);
    ResolutionTrace t2 = resolve(in);
    std::string s1 = dump_deterministic(trace_to_json(t1));
    std::string s2 = dump_deterministic(trace_to_json(t2));
    CHECK(s1 == s2);

    // blow-up steps round-trip through the JSON document
    json j = trace_to_json(t1);
    REQUIRE(j["steps"].size() == t1.steps.size());
    for (size_t i = 0; i < t1.steps.size(); ++i) {
        const auto &st = t1.steps[i];
        const auto &js = j["steps"][i];
        CHECK(js["index"].get<int>() == st.index);
        CHECK(js["stage"].get<int>() == (int)st.stage);
        CHECK(js["point_center"].get<bool>() == st.point_center);
        CHECK(js["key"].get<std::string>() == st.center_key);
        CHECK(js["new_component"].get<int>() == st.new_component);
        CHECK(js["charts_created"].get<std::vector<int>>() == st.charts_created);
        REQUIRE(js["appearances"].size() == st.appearances.size());
        for (size_t a = 0; a < st.appearances.size(); ++a) {
            CHECK(js["appearances"][a]["chart"].get<int>() == st.appearances[a].chart);
            const auto &pins = js["appearances"][a]["pinned"];
            REQUIRE(pins.size() == st.appearances[a].pinned.size());
            for (size_t k = 0; k < pins.size(); ++k) {
                CHECK(pins[k]["var"].get<size_t>() == st.appearances[a].pinned[k].first);
                CHECK(scalar_from_json(pins[k]["value"], in.field()) ==
                      st.appearances[a].pinned[k].second);
            }
        }
    }
    // chart maps round-trip
    for (size_t i = 0; i < t1.charts.size(); ++i) {
        const auto &jc = j["charts"][i];
        for (int k = 0; k < 3; ++k) {
            CHECK(poly_from_json(jc["to_origin"][k], in.field(), origin_chart()) ==
                  t1.charts[i].to_origin.images[(size_t)k]);
        }
    }
}

TEST_CASE("independent replay from the serialized trace") {
    auto in = input_from_json(minimal_input());
    ResolutionTrace t = resolve(in);
    json j = trace_to_json(t);

    // reader: rebuild the input and every chart from JSON alone, recompose
    // the maps along the parent chain and recompute the strict transforms
    CuspidalInput rin = input_from_json(j["input"]);
    FoliationData fd = build_omega(rin);
    auto f = rin.field();
    auto v = origin_chart();
    for (const auto &jc : j["charts"]) {
        int id = jc["id"].get<int>();
        if (id == 0) continue;
        // recompose to_origin from the parent chain using to_parent maps
        std::vector<Polynomial> images;
        for (int k = 0; k < 3; ++k) images.push_back(poly_from_json(jc["to_parent"][k], f, v));
        int parent = jc["parent"].get<int>();
        while (parent > 0) {
            const auto &jp = j["charts"][(size_t)parent];
            std::vector<Polynomial> pimages;
            for (int k = 0; k < 3; ++k)
                pimages.push_back(poly_from_json(jp["to_parent"][k], f, v));
            std::vector<Polynomial> comp;
            for (int k = 0; k < 3; ++k) comp.push_back(pimages[(size_t)k].compose(images));
            images = comp;
            parent = jp["parent"].get<int>();
        }
        for (int k = 0; k < 3; ++k)
            CHECK(images[(size_t)k] == poly_from_json(jc["to_origin"][k], f, v));

        PolyMap m;
        m.source = v;
        m.target = v;
        m.images = images;
        Polynomial sep = pullback(fd.separatrix, m);
        OneForm om = pullback(fd.omega, m);
        std::vector<Polynomial> eqs;
        for (const auto &jd : jc["divisors"]) {
            size_t var = jd["var"].get<size_t>();
            eqs.push_back(Polynomial::variable(f, v, var) -
                          Polynomial::constant(f, v, scalar_from_json(jd["value"], f)));
        }
        for (const auto &js : jc["shadow_divisors"])
            eqs.push_back(poly_from_json(js["equation"], f, v));
        auto try_divide = [&](const Polynomial &p,
                              const Polynomial &eq) -> std::optional<Polynomial> {
            Polynomial rem = p, q(f, v);
            const auto dl = *eq.terms().rbegin();
            while (!rem.is_zero()) {
                const auto rl = *rem.terms().rbegin();
                std::vector<int> e(3);
                for (int k = 0; k < 3; ++k) {
                    e[(size_t)k] = rl.first[(size_t)k] - dl.first[(size_t)k];
                    if (e[(size_t)k] < 0) return std::nullopt;
                }
                Polynomial tt = Polynomial::monomial(f, v, e, rl.second / dl.second);
                q = q + tt;
                rem = rem - tt * eq;
            }
            return q;
        };
        for (const auto &eq : eqs) {
            while (true) {
                auto q = try_divide(sep, eq);
                if (!q) break;
                sep = *q;
            }
            while (true) {
                std::array<Polynomial, 3> next = om.a;
                bool all = true;
                for (auto &c : next) {
                    if (c.is_zero()) continue;
                    auto q = try_divide(c, eq);
                    if (!q) { all = false; break; }
                    c = *q;
                }
                if (!all) break;
                om.a = next;
            }
        }
        // bit-exact comparison against the stored rendering
        CHECK(sep.str() == jc["separatrix"]["str"].get<std::string>());
        for (int k = 0; k < 3; ++k)
            CHECK(om.a[(size_t)k].str() == jc["omega"][k]["str"].get<std::string>());
    }
}

#ifdef CUSP_CLI_PATH
TEST_CASE("cli: check on the minimal valid file") {
    auto path = write_temp(minimal_input(), "ok");
    auto res = run_cli("check --input " + path);
    CHECK(res.status == 0);
    CHECK(res.out.find("Hopf identity residual") != std::string::npos);
    CHECK(res.out.find("0  (pass)") != std::string::npos);
}

TEST_CASE("cli: resolve on p=1 exits with the validation code") {
    auto bad = minimal_input();
    bad["p"] = 1;
    auto path = write_temp(bad, "p1");
    auto res = run_cli("resolve --input " + path + " --out /tmp/cusp_test_p1_out.json");
    CHECK(res.status == 1);
}

TEST_CASE("cli: pi1 output for d=(2) contains the r-even relator") {
    auto path = write_temp(minimal_input(), "pi1");
    auto res = run_cli("pi1 --input " + path);
    CHECK(res.status == 0);
    CHECK(res.out.find("alpha^2 = beta^2") != std::string::npos);
}

TEST_CASE("cli: deterministic resolve output and guard exit code") {
    auto path = write_temp(minimal_input(), "det");
    auto r1 = run_cli("resolve --input " + path + " --out -");
    auto r2 = run_cli("resolve --input " + path + " --out -");
    CHECK(r1.status == 0);
    CHECK(r1.out == r2.out);
    auto rg = run_cli("resolve --input " + path + " --out /dev/null --guard 2");
    CHECK(rg.status == 3);
}
#endif

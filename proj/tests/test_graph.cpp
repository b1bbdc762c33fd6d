#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cusp/graph.hpp"

using namespace cusp;

namespace {

CuspidalInput make_input(long long p, long long q,
                         std::vector<std::pair<long long, long long>> roots_mults) {
    CuspidalInput in;
    in.p = p;
    in.q = q;
    long long delta = std::gcd(p, q);
    in.field_order = (unsigned)std::lcm(4ll, delta);
    auto f = in.field();
    for (auto [root, mult] : roots_mults)
        in.branches.push_back({CycloScalar::from_int(f, root), mult});
    in.perturbation = Polynomial(f, make_vars({"Psi", "z"}));
    return in;
}

} // namespace

TEST_CASE("dual graph for (2,3),(2) matches the hand-computed resolution") {
    // Hand resolution of z^2 + (y^2 - x^3)^2 = 0: three point blow-ups
    // (digits 0,1,2), then monoidal chains of lengths 1, 1, 2 over the three
    // point-blow-up components. Names: D1, D2, D3 for the point blow-ups,
    // C for the chain over D1, B over D2, A1 -> A2 over D3 (A2 essential).
    auto in = make_input(2, 3, {{1, 2}});
    ResolutionTrace t = resolve(in);
    DivisorGraph g = build_graph(t);

    CHECK(g.consistent);
    // node count = k + |Step II| + |Step III| + 1 separatrix node
    CHECK((int)g.nodes.size() == 3 + 4 + 0 + 1);

    // identify nodes by structural keys
    std::map<std::string, int> id;
    for (const auto &n : g.nodes) {
        if (n.family == "D") id["D" + std::to_string(n.alpha)] = n.id;
        if (n.family == "Dchain")
            id["K" + std::to_string(n.chain_root_alpha) + "." + std::to_string(n.chain_pos)] = n.id;
        if (n.family == "separatrix") id["S"] = n.id;
    }
    REQUIRE(id.size() == 8);
    int D1 = id["D1"], D2 = id["D2"], D3 = id["D3"];
    int C = id["K1.1"], B = id["K2.1"], A1 = id["K3.1"], A2 = id["K3.2"], S = id["S"];

    // labels
    std::map<int, std::string> label;
    for (const auto &n : g.nodes) label[n.id] = n.label;
    CHECK(label[D1] == "CxC");
    CHECK(label[D2] == "CxC*");
    CHECK(label[D3] == "C*xC*");
    CHECK(label[C] == "Cx(C-2pts)");
    CHECK(label[B] == "Cx(C-2pts)");
    CHECK(label[A1] == "C*xC*");
    CHECK(label[A2] == "(C*xC)-curve");

    CHECK(g.essential == A2);
    std::set<int> specials(g.specials.begin(), g.specials.end());
    CHECK(specials == std::set<int>{C, B});

    // hand-computed edge set
    std::set<std::pair<int, int>> expected;
    auto e = [&](int a, int b) { expected.insert(std::minmax(a, b)); };
    e(D1, D2); e(D1, D3); e(D2, D3);
    e(D1, C); e(D2, B); e(D3, A1); e(A1, A2);
    e(C, D3); e(B, D3);
    e(A1, B); e(A2, B); e(A1, C); e(A2, C);
    e(S, C); e(S, B); e(S, A2);
    std::set<std::pair<int, int>> got;
    for (const auto &ed : g.edges) got.insert(std::minmax(ed.a, ed.b));
    CHECK(got == expected);

    // connectivity
    std::map<int, int> comp;
    for (const auto &n : g.nodes) comp[n.id] = n.id;
    std::function<int(int)> find = [&](int a) {
        return comp[a] == a ? a : comp[a] = find(comp[a]);
    };
    for (const auto &ed : g.edges) comp[find(ed.a)] = find(ed.b);
    std::set<int> roots;
    for (const auto &n : g.nodes) roots.insert(find(n.id));
    CHECK(roots.size() == 1);
}

TEST_CASE("every edge lies in the singular locus") {
    auto in = make_input(2, 3, {{1, 2}});
    ResolutionTrace t = resolve(in);
    DivisorGraph g = build_graph(t);
    for (const auto &e : g.edges) {
        bool witnessed = false;
        for (const auto &sc : t.singular) {
            if (!sc.is_singular) continue;
            std::set<int> on(sc.on_components.begin(), sc.on_components.end());
            if (sc.sep_related) on.insert(t.separatrix_node);
            if (on.count(e.a) && on.count(e.b)) witnessed = true;
        }
        CHECK(witnessed);
    }
}

TEST_CASE("step one label catalog") {
    CHECK(step_one_label(1, 1) == "CxC");
    CHECK(step_one_label(2, 1) == "CxC*");
    CHECK(step_one_label(3, 1) == "C*xC*");
    CHECK(step_one_label(2, 2) == "CxC*");
    CHECK(step_one_label(3, 2) == "CxC*");
    CHECK(step_one_label(4, 2) == "C*xC*");
}

TEST_CASE("label multiset is stable under changing the branch roots") {
    auto t1 = resolve(make_input(2, 3, {{1, 2}}));
    auto t2 = resolve(make_input(2, 3, {{2, 2}}));
    auto g1 = build_graph(t1);
    auto g2 = build_graph(t2);
    std::multiset<std::string> l1, l2;
    for (const auto &n : g1.nodes) l1.insert(n.label);
    for (const auto &n : g2.nodes) l2.insert(n.label);
    CHECK(l1 == l2);
}

TEST_CASE("special component counts by parity case") {
    // Case i: d even -> two special components
    auto te = resolve(make_input(2, 3, {{1, 2}}));
    CHECK(build_graph(te).specials.size() == 2);
    // Case ii.b: d odd, p even, q odd -> one special component
    auto to = resolve(make_input(2, 3, {{1, 3}}));
    CHECK(build_graph(to).specials.size() == 1);
}

TEST_CASE("number of step one components equals the digit sum") {
    for (auto [p, q] : std::vector<std::pair<long long, long long>>{{2, 3}, {2, 5}, {3, 4}}) {
        auto t = resolve(make_input(p, q, {{1, 2}}));
        DivisorGraph g = build_graph(t);
        long long count = 0;
        for (const auto &n : g.nodes)
            if (n.family == "D") ++count;
        CHECK(count == continued_fraction(p, q).digit_sum());
    }
}

TEST_CASE("DOT export is deterministic and complete") {
    auto in = make_input(2, 3, {{1, 2}});
    auto t = resolve(in);
    auto g = build_graph(t);
    std::string d1 = to_dot(g);
    std::string d2 = to_dot(build_graph(resolve(in)));
    CHECK(d1 == d2);
    size_t nodes = 0, pos = 0;
    while ((pos = d1.find("label=", pos)) != std::string::npos) {
        ++pos;
        ++nodes;
    }
    CHECK(nodes >= g.nodes.size() + g.edges.size());
    CHECK(d1.find("doublecircle") != std::string::npos);
}

TEST_CASE("essential component properties") {
    auto t = resolve(make_input(2, 5, {{1, 2}}));
    DivisorGraph g = build_graph(t);
    REQUIRE(g.essential >= 0);
    CHECK(g.nodes[(size_t)g.essential].label == "(C*xC)-curve");
    // unique label of that kind
    int count = 0;
    for (const auto &n : g.nodes)
        if (n.label == "(C*xC)-curve") ++count;
    CHECK(count == 1);
    // adjacent to the separatrix node
    bool adj = false;
    for (const auto &e : g.edges)
        if ((e.a == g.essential && e.b == g.separatrix_node) ||
            (e.b == g.essential && e.a == g.separatrix_node))
            adj = true;
    CHECK(adj);
    // the essential component is the last Step-II component meeting the
    // separatrix and the end of the chain over the last Step-I component
    long long k = t.params.cf.digit_sum();
    const auto &ci = t.components[(size_t)g.essential];
    CHECK(ci.chain_root_alpha == k);
    CHECK_FALSE(ci.chain_continued);
}

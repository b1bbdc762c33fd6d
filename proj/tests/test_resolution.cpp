#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "cusp/resolution.hpp"
#include "test_util.hpp"

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

bool divides_exactly(const Polynomial &num, const Polynomial &den) {
    Polynomial rem = num;
    const auto dl = *den.terms().rbegin();
    try {
        while (!rem.is_zero()) {
            const auto rl = *rem.terms().rbegin();
            std::vector<int> e(rl.first.size());
            for (size_t k = 0; k < e.size(); ++k) {
                e[k] = rl.first[k] - dl.first[k];
                if (e[k] < 0) throw std::logic_error("nd");
            }
            Polynomial tt = Polynomial::monomial(num.field(), num.vars(), e,
                                                 rl.second / dl.second);
            rem = rem - tt * den;
        }
    } catch (const std::exception &) {
        return false;
    }
    return true;
}

} // namespace

TEST_CASE("standard blow-up charts") {
    auto f = cyclo_field(4);
    auto v = origin_chart();
    Polynomial x = Polynomial::variable(f, v, 0);
    Polynomial y = Polynomial::variable(f, v, 1);
    Polynomial z = Polynomial::variable(f, v, 2);

    auto zero = CycloScalar::zero(f);
    auto pt = point_blowup_maps(f, v, {zero, zero, zero});
    REQUIRE(pt.size() == 3);
    CHECK(pt[0].images[0] == x);
    CHECK(pt[0].images[1] == x * y);
    CHECK(pt[0].images[2] == x * z);
    CHECK(pt[1].images[0] == x * y);
    CHECK(pt[1].images[1] == y);
    CHECK(pt[1].images[2] == y * z);
    CHECK(pt[2].images[0] == x * z);
    CHECK(pt[2].images[1] == y * z);
    CHECK(pt[2].images[2] == z);

    // monoidal blow-up of {y = c, z = 0}: charts (x, c+y, yz) and (x, c+yz, z)
    auto c = CycloScalar::from_int(f, 5);
    auto ln = line_blowup_maps(f, v, {{1, c}, {2, zero}});
    REQUIRE(ln.size() == 2);
    Polynomial cpoly = Polynomial::constant(f, v, 5);
    CHECK(ln[0].images[0] == x);
    CHECK(ln[0].images[1] == y + cpoly);
    CHECK(ln[0].images[2] == y * z);
    CHECK(ln[1].images[0] == x);
    CHECK(ln[1].images[1] == y * z + cpoly);
    CHECK(ln[1].images[2] == z);
}

TEST_CASE("strict transform of the separatrix under one point blow-up") {
    // z^2 + (y^2 - a x^3)^2 in the chart (x, xy, xz): power 2 in x, strict
    // z^2 + x^2 (y^2 - a x)^2
    auto f = cyclo_field(4);
    auto v = origin_chart();
    Polynomial x = Polynomial::variable(f, v, 0);
    Polynomial y = Polynomial::variable(f, v, 1);
    Polynomial z = Polynomial::variable(f, v, 2);
    auto a = CycloScalar::from_int(f, 1);
    Polynomial sep = z * z + (y.pow(2) - x.pow(3) * a).pow(2);
    auto maps = point_blowup_maps(f, v, std::vector<CycloScalar>(3, CycloScalar::zero(f)));
    Polynomial pulled = pullback(sep, maps[0]);
    auto [pw, red] = pulled.divide_by_monomial({0});
    CHECK(pw == std::vector<int>{2});
    CHECK(red == z * z + x.pow(2) * (y.pow(2) - x * a).pow(2));

    // a polynomial with no exceptional factor keeps power 0
    auto [pw2, red2] = sep.divide_by_monomial({0});
    CHECK(pw2 == std::vector<int>{0});
    CHECK(red2 == sep);
}

TEST_CASE("first blow-up multiplicity matches the hand oracle") {
    // p=2, q=3, l=1, d=2, G=0: the hand computation d(x^2 S~) =
    // x (2 S~ dx + x dS~) gives exceptional multiplicity 1 for the form
    auto in = make_input(2, 3, {{1, 2}});
    auto fd = build_omega(in);
    auto f = in.field();
    auto v = origin_chart();
    auto maps = point_blowup_maps(f, v, std::vector<CycloScalar>(3, CycloScalar::zero(f)));
    OneForm pulled = pullback(fd.omega, maps[0]);
    auto [pw, red] = strict_form(pulled, {0});
    CHECK(pw == std::vector<int>{1});

    ResolutionTrace t = resolve(in);
    CHECK(t.charts[1].omega_powers == std::vector<int>{1});
    CHECK(t.charts[1].omega.a[0] == red.a[0]);
    CHECK(t.charts[1].omega.a[1] == red.a[1]);
    CHECK(t.charts[1].omega.a[2] == red.a[2]);
}

TEST_CASE("eigen verdicts") {
    auto f = cyclo_field(4);
    auto v = origin_chart();
    auto c = [&](long long n) { return Polynomial::constant(f, v, n); };

    // eigenvalues (1, -1): trace 0 -> ratio -1, simple
    CHECK(eigen_verdict(Polynomial::zero(f, v), c(-1)).simple);
    // eigenvalues (2, 3): sigma = 25/6, disc square -> ratio 3/2, not simple
    CHECK_FALSE(eigen_verdict(c(5), c(6)).simple);
    // eigenvalues (1, 0): saddle-node counts as simple
    CHECK(eigen_verdict(c(1), Polynomial::zero(f, v)).simple);
    // nilpotent linear part is not simple
    CHECK_FALSE(eigen_verdict(Polynomial::zero(f, v), Polynomial::zero(f, v)).simple);
    // eigenvalues (1, 2): sigma = 9/2, ratio 2 -> not simple
    CHECK_FALSE(eigen_verdict(c(3), c(2)).simple);
    // sigma = 5: sigma(sigma-4) = 5 is not a rational square -> simple
    CHECK(eigen_verdict(c(5), c(5)).simple);
}

TEST_CASE("resolve (2,3),(2): counts, shape data, simplicity, replay") {
    auto in = make_input(2, 3, {{1, 2}});
    ResolutionTrace t = resolve(in);

    CHECK(t.step1_count == 3);   // continued fraction digits [0,1,2]
    CHECK(t.step2_count == 4);   // transversal exponents (2,2,4): 1+1+2 blow-ups
    CHECK(t.step3_count == 0);   // r d' = 2 leaves a simple crossing

    CHECK(t.step1.a == 4);
    CHECK(t.step1.b == 2);
    CHECK(t.step1.m_raw == 8);
    CHECK(t.step1.n_raw == 4);
    CHECK(t.step1.m == 2);
    CHECK(t.step1.n == 1);
    CHECK(t.step2.p_invariant == 4);
    CHECK(t.step2.q_invariant == 4);
    CHECK(t.step2.wx == 12);
    CHECK(t.step2.wy == 6);

    CHECK(t.all_simple);
    auto sr = verify_shapes(t);
    CHECK(sr.ok);
    CHECK_NOTHROW(replay_check(t));

    // the essential chart shows the separatrix trace t^2 + h^r as a singular
    // curve of the divisor slice
    bool found_curve = false;
    for (const auto &sc : t.singular) {
        if (sc.chart != t.step2.chart) continue;
        if (sc.kind != SingularComponent::Kind::Curve) continue;
        if (!sc.sep_related) continue;
        Polynomial expected = t.charts[(size_t)t.step2.chart].separatrix.substitute(
            t.step2.var_k, CycloScalar::zero(in.field()));
        if (sc.equation == expected) found_curve = true;
    }
    CHECK(found_curve);
}

TEST_CASE("step count law for a block of (p, q)") {
    for (long long p = 2; p <= 6; ++p) {
        for (long long q = 2; q <= 6; ++q) {
            auto in = make_input(p, q, {{1, 2}});
            ResolveOptions opt;
            opt.run_step1_only = true;
            opt.skip_final_analysis = true;
            ResolutionTrace t = resolve(in, opt);
            CHECK(t.step1_count == continued_fraction(p, q).digit_sum());
        }
    }
}

TEST_CASE("guard exhaustion is reported") {
    auto in = make_input(2, 3, {{1, 2}});
    ResolveOptions opt;
    opt.guard_override = 2;
    CHECK_THROWS_AS(resolve(in, opt), GuardExhausted);
}

TEST_CASE("inadmissible input is rejected") {
    auto in = make_input(1, 3, {{1, 2}});
    CHECK_THROWS_AS(resolve(in), std::invalid_argument);
}

TEST_CASE("resolution with a perturbation term") {
    // r = 2: every G satisfies the sufficient criterion; the shapes and the
    // final simplicity must survive the perturbation
    auto in = make_input(2, 3, {{1, 2}});
    auto f = in.field();
    Polynomial g(f, make_vars({"Psi", "z"}));
    g.add_term({0, 0}, CycloScalar::from_int(f, 1));
    in.perturbation = g;
    CHECK(generalized_surface_criterion(g, 2) == SurfaceCriterion::Satisfied);
    ResolutionTrace t = resolve(in);
    CHECK(t.step1_count == 3);
    auto sr = verify_shapes(t);
    for (const auto &s : sr.failures) MESSAGE(s);
    CHECK(sr.ok);
    CHECK(t.all_simple);
    CHECK_NOTHROW(replay_check(t));
}

TEST_CASE("separatrix invariance along the strict transform") {
    // S~ divides omega~ ^ dS~ in every chart: the separatrix stays invariant
    auto in = make_input(2, 3, {{1, 2}});
    ResolutionTrace t = resolve(in);
    int checked = 0;
    for (const auto &ch : t.charts) {
        if (!ch.alive) continue;
        if (ch.separatrix.is_unit_constant()) continue;
        TwoForm w = wedge(ch.omega, exterior_derivative(ch.separatrix));
        for (int i = 0; i < 3; ++i) {
            if (w.c[i].is_zero()) continue;
            CHECK(divides_exactly(w.c[i], ch.separatrix));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("square root helpers") {
    auto f = cyclo_field(4);
    auto v = origin_chart();
    auto four = CycloScalar::from_int(f, 4);
    auto s = scalar_sqrt(four);
    REQUIRE(s.has_value());
    CHECK((*s) * (*s) == four);
    auto m4 = CycloScalar::from_int(f, -4);
    auto s2 = scalar_sqrt(m4);
    REQUIRE(s2.has_value());
    CHECK((*s2) * (*s2) == m4);
    CHECK_FALSE(scalar_sqrt(CycloScalar::from_int(f, 2)).has_value());

    Polynomial y = Polynomial::variable(f, v, 1);
    Polynomial p = (y * y - Polynomial::constant(f, v, 2) * y + Polynomial::constant(f, v, 1));
    auto ps = poly_sqrt(p);
    REQUIRE(ps.has_value());
    CHECK((*ps) * (*ps) == p);
    CHECK_FALSE(poly_sqrt(y * y * y).has_value());
}

#include "cusp/foliation.hpp"

#include <numeric>
#include <stdexcept>

namespace cusp {

long long CuspidalInput::delta() const {
    return std::gcd(p, q);
}

CycloScalar CuspidalInput::a(size_t i) const {
    return branches.at(i).root.pow((unsigned long)delta());
}

VarSetPtr origin_chart() {
    static VarSetPtr v = make_vars({"x", "y", "z"});
    return v;
}

ValidationReport admissibility_check(const CuspidalInput &in) {
    ValidationReport rep;
    auto reject = [&](const std::string &clause, const std::string &detail) {
        rep.admissible = false;
        rep.violations.push_back({clause, detail});
    };
    if (in.p < 2 || in.q < 2)
        reject("p,q >= 2", "got p=" + std::to_string(in.p) + ", q=" + std::to_string(in.q));
    if (in.branches.empty())
        reject("branch list nonempty", "no branches given");
    if (in.field_order % 4 != 0)
        reject("field order M = 0 mod 4", "M=" + std::to_string(in.field_order));
    if (in.p >= 1 && in.q >= 1 && in.field_order % (unsigned)in.delta() != 0)
        reject("field order M = 0 mod delta", "M=" + std::to_string(in.field_order) +
                                                  ", delta=" + std::to_string(in.delta()));
    for (size_t i = 0; i < in.branches.size(); ++i) {
        if (in.branches[i].multiplicity < 1)
            reject("d_i >= 1", "branch " + std::to_string(i));
        if (in.branches[i].root.is_zero()) {
            reject("a_i != 0", "branch " + std::to_string(i));
            continue;
        }
        for (size_t j = i + 1; j < in.branches.size(); ++j) {
            if (in.branches[j].root.is_zero()) continue;
            if (in.a(i) == in.a(j))
                reject("a_i != a_j", "branches " + std::to_string(i) + "," + std::to_string(j));
        }
    }
    if (!in.perturbation.is_zero() && in.perturbation.nvars() != 2)
        reject("G in two variables", "G must live in the formal (Psi, z) chart");
    if (rep.admissible) {
        bool all_one = true;
        for (const auto &b : in.branches)
            if (b.multiplicity != 1) all_one = false;
        if (all_one)
            rep.warnings.push_back({"holomorphic first integral case",
                                    "all d_i = 1: the foliation has a holomorphic first integral"});
    }
    return rep;
}

DerivedParams derive_params(const CuspidalInput &in) {
    DerivedParams dp;
    dp.delta = std::gcd(in.p, in.q);
    dp.branch_count = in.branches.size();
    dp.d = 0;
    long long r = 0;
    for (const auto &b : in.branches) {
        dp.d += b.multiplicity;
        r = std::gcd(r, b.multiplicity);
    }
    dp.r = r == 0 ? 1 : r;
    for (const auto &b : in.branches)
        dp.d_prime.push_back(b.multiplicity / dp.r);
    dp.cf = continued_fraction(in.p, in.q);
    dp.first_integral_case = true;
    for (const auto &b : in.branches)
        if (b.multiplicity != 1) dp.first_integral_case = false;
    return dp;
}

FoliationData build_omega(const CuspidalInput &in) {
    auto rep = admissibility_check(in);
    if (!rep.admissible)
        throw std::invalid_argument("build_omega: inadmissible input (" +
                                    rep.violations.front().clause + ")");
    DerivedParams dp = derive_params(in);
    auto f = in.field();
    auto v = origin_chart();
    Polynomial x = Polynomial::variable(f, v, 0);
    Polynomial y = Polynomial::variable(f, v, 1);
    Polynomial z = Polynomial::variable(f, v, 2);

    FoliationData out;
    out.psi = Polynomial::constant(f, v, 1);
    for (size_t i = 0; i < in.branches.size(); ++i) {
        Polynomial factor = y.pow((unsigned long)in.p) - x.pow((unsigned long)in.q) * in.a(i);
        out.psi = out.psi * factor.pow((unsigned long)dp.d_prime[i]);
    }
    out.phi = out.psi.pow((unsigned long)dp.r);
    out.separatrix = z * z + out.phi;

    OneForm omega = exterior_derivative(out.separatrix);
    if (!in.perturbation.is_zero()) {
        // G(psi, z) * (r z dpsi - 2 psi dz); the parenthesis is the polynomial
        // version of z*psi*(dphi/phi - 2 dz/z) since phi = psi^r.
        Polynomial g = in.perturbation.compose({out.psi, z});
        OneForm dpsi = exterior_derivative(out.psi);
        OneForm corr = dpsi * (z * Polynomial::constant(f, v, dp.r));
        corr.a[2] = corr.a[2] - Polynomial::constant(f, v, 2) * out.psi;
        omega = omega + corr * g;
    }
    out.omega = omega;
    // a non-unit common factor would mean the data does not define a cuspidal
    // foliation with the stated separatrix (degenerate perturbations)
    Polynomial common = poly_gcd_bivar(out.omega.a[2], out.omega.a[0]);
    if (!common.is_constant()) common = poly_gcd_bivar(common, out.omega.a[1]);
    if (!common.is_constant())
        throw std::invalid_argument(
            "build_omega: the 1-form has the non-unit common factor (" + common.str() +
            "); the perturbation degenerates the foliation");
    return out;
}

SurfaceCriterion generalized_surface_criterion(const Polynomial &g, long long r) {
    auto nu = weighted_valuation(g, r);
    if (!nu) return SurfaceCriterion::Satisfied;   // G = 0
    Rational threshold(r - 2, std::gcd(2ll, r));
    return (*nu >= threshold) ? SurfaceCriterion::Satisfied : SurfaceCriterion::Inconclusive;
}

HopfPairing hopf_pairing(const CuspidalInput &in) {
    FoliationData fd = build_omega(in);
    DerivedParams dp = derive_params(in);
    auto f = in.field();
    auto v = origin_chart();
    Polynomial x = Polynomial::variable(f, v, 0);
    Polynomial y = Polynomial::variable(f, v, 1);
    Polynomial z = Polynomial::variable(f, v, 2);
    long long pqd = in.p * in.q * dp.d;
    HopfPairing hp;
    hp.doubled_field = {{x * Polynomial::constant(f, v, 2 * in.p),
                         y * Polynomial::constant(f, v, 2 * in.q),
                         z * Polynomial::constant(f, v, pqd)}};
    Polynomial paired = contract(fd.omega, hp.doubled_field);
    hp.residual = paired - fd.separatrix * Polynomial::constant(f, v, 2 * pqd);
    return hp;
}

} // namespace cusp

#ifndef CUSP_FOLIATION_HPP
#define CUSP_FOLIATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "cusp/contfrac.hpp"
#include "cusp/forms.hpp"

namespace cusp {

// One separatrix branch factor (y^p - a_i x^q)^{d_i}, with a_i = b_i^delta
// supplied through its delta-th root b_i.
struct Branch {
    CycloScalar root;      // b_i
    long long multiplicity; // d_i >= 1
};

struct CuspidalInput {
    long long p = 0, q = 0;
    unsigned field_order = 4;       // M
    std::vector<Branch> branches;
    Polynomial perturbation;        // G, polynomial in formal variables (Psi, z)

    CycloFieldPtr field() const { return cyclo_field(field_order); }
    CycloScalar a(size_t i) const;  // b_i^delta
    long long delta() const;
};

struct DerivedParams {
    long long delta = 1;            // gcd(p, q)
    long long d = 0;                // sum of d_i
    long long r = 1;                // gcd of the d_i
    std::vector<long long> d_prime; // d_i / r
    size_t branch_count = 0;
    CFDigits cf;                    // continued fraction of p/q
    bool first_integral_case = false; // all d_i == 1
};

struct ValidationIssue {
    std::string clause;
    std::string detail;
};

struct ValidationReport {
    bool admissible = true;
    std::vector<ValidationIssue> violations;
    std::vector<ValidationIssue> warnings;
};

ValidationReport admissibility_check(const CuspidalInput &in);
DerivedParams derive_params(const CuspidalInput &in);

// The standard chart at the origin, variables x, y, z.
VarSetPtr origin_chart();

struct FoliationData {
    Polynomial psi;        // product of branch factors with exponents d_i'
    Polynomial phi;        // psi^r
    Polynomial separatrix; // z^2 + phi
    OneForm omega;         // d(z^2+phi) + G(psi,z) * (r z dpsi - 2 psi dz)
};

FoliationData build_omega(const CuspidalInput &in);

enum class SurfaceCriterion { Satisfied, Inconclusive };

// Sufficient criterion only: weighted order nu_{2,r}(G) >= (r-2)/gcd(2,r).
SurfaceCriterion generalized_surface_criterion(const Polynomial &g, long long r);

struct HopfPairing {
    VectorField doubled_field;   // 2X = 2p x d/dx + 2q y d/dy + pqd z d/dz
    Polynomial residual;         // Omega(2X) - 2pqd (z^2+phi), contract is zero
};

HopfPairing hopf_pairing(const CuspidalInput &in);

} // namespace cusp

#endif

#ifndef CUSP_POLY_HPP
#define CUSP_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cusp/cyclotomic.hpp"

namespace cusp {

// Ordered list of coordinate names for one chart.
struct VarSet {
    std::vector<std::string> names;
    bool operator==(const VarSet &o) const { return names == o.names; }
};

using VarSetPtr = std::shared_ptr<const VarSet>;

VarSetPtr make_vars(std::vector<std::string> names);

// Graded lexicographic order on exponent vectors (total degree first, then
// lexicographic by the chart's variable order).
struct GrlexLess {
    bool operator()(const std::vector<int> &a, const std::vector<int> &b) const;
};

// Sparse multivariate polynomial over Q(zeta_M). No zero terms are stored.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(CycloFieldPtr field, VarSetPtr vars);

    static Polynomial zero(const CycloFieldPtr &f, const VarSetPtr &v) { return Polynomial(f, v); }
    static Polynomial constant(const CycloFieldPtr &f, const VarSetPtr &v, const CycloScalar &c);
    static Polynomial constant(const CycloFieldPtr &f, const VarSetPtr &v, long long c);
    static Polynomial variable(const CycloFieldPtr &f, const VarSetPtr &v, size_t index);
    static Polynomial monomial(const CycloFieldPtr &f, const VarSetPtr &v,
                               const std::vector<int> &exps, const CycloScalar &c);

    const CycloFieldPtr &field() const { return field_; }
    const VarSetPtr &vars() const { return vars_; }
    size_t nvars() const { return vars_->names.size(); }
    const std::map<std::vector<int>, CycloScalar, GrlexLess> &terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_unit_constant() const;   // nonzero constant
    CycloScalar constant_value() const;   // requires is_constant(); zero poly gives 0

    void add_term(const std::vector<int> &exps, const CycloScalar &c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial &o) const;
    Polynomial operator-(const Polynomial &o) const;
    Polynomial operator*(const Polynomial &o) const;
    Polynomial &operator+=(const Polynomial &o) { *this = *this + o; return *this; }
    Polynomial &operator-=(const Polynomial &o) { *this = *this - o; return *this; }
    Polynomial &operator*=(const Polynomial &o) { *this = *this * o; return *this; }
    Polynomial operator*(const CycloScalar &c) const;
    Polynomial pow(unsigned long e) const;

    bool operator==(const Polynomial &o) const;
    bool operator!=(const Polynomial &o) const { return !(*this == o); }

    Polynomial derivative(size_t var) const;

    // Substitute images[i] for variable i; images live in a common chart.
    Polynomial compose(const std::vector<Polynomial> &images) const;

    // Substitute a scalar for one variable.
    Polynomial substitute(size_t var, const CycloScalar &value) const;

    // Minimal exponent of var over all terms (0 for zero polynomial).
    int min_exponent(size_t var) const;
    int degree_in(size_t var) const;
    int total_degree() const;

    // Divide out var^k exactly (requires k <= min_exponent).
    Polynomial shift_down(size_t var, int k) const;

    // Maximal monomial division over the listed vars: returns powers and the
    // reduced polynomial. Zero input is an error.
    std::pair<std::vector<int>, Polynomial> divide_by_monomial(const std::vector<size_t> &which) const;

    CycloScalar evaluate(const std::vector<CycloScalar> &point) const;

    // Coefficient of var^k viewed as a polynomial in the remaining vars
    // (exponent of `var` set to zero in the returned terms).
    Polynomial coefficient_of(size_t var, int k) const;

    std::string str() const;

private:
    CycloFieldPtr field_;
    VarSetPtr vars_;
    std::map<std::vector<int>, CycloScalar, GrlexLess> terms_;

    void check_compatible(const Polynomial &o) const;
};

// min over nonzero terms of (2a + r b)/gcd(2,r) for a polynomial in two
// formal variables (first exponent weighted 2, second weighted r); empty for
// the zero polynomial (+infinity).
std::optional<Rational> weighted_valuation(const Polynomial &g, long long r);

// gcd of a list of polynomials in <= 2 effective variables, monic-normalized
// leading coefficient 1 w.r.t. grlex; used by the singular-locus analysis.
Polynomial poly_gcd_bivar(const Polynomial &a, const Polynomial &b);

// Resultant of a and b with respect to `var` (both viewed as univariate in
// var with polynomial coefficients).
Polynomial poly_resultant(const Polynomial &a, const Polynomial &b, size_t var);

} // namespace cusp

#endif

#ifndef CUSP_CYCLOTOMIC_HPP
#define CUSP_CYCLOTOMIC_HPP

#include <memory>
#include <string>
#include <vector>

#include "cusp/rational.hpp"

namespace cusp {

// The field Q(zeta_M). Elements are reduced residues modulo the M-th
// cyclotomic polynomial, stored on the power basis 1, z, ..., z^(phi(M)-1).
// The field object owns the reduction table for z^k, phi(M) <= k < M-ish.
class CycloField {
public:
    explicit CycloField(unsigned order);

    unsigned order() const { return order_; }
    unsigned degree() const { return degree_; }   // phi(M)

    // Coefficients of Phi_M, ascending, length degree()+1, integer.
    const std::vector<BigInt> &cyclotomic_poly() const { return phi_; }

    static unsigned euler_phi(unsigned m);

private:
    unsigned order_, degree_;
    std::vector<BigInt> phi_;
    // reduction_[j] = the reduced vector of z^(degree_+j), 0 <= j < degree_-1.
    std::vector<std::vector<Rational>> reduction_;

    friend class CycloScalar;
};

using CycloFieldPtr = std::shared_ptr<const CycloField>;

CycloFieldPtr cyclo_field(unsigned order);   // cached per order

// Element of Q(zeta_M).
class CycloScalar {
public:
    CycloScalar() = default;   // invalid until assigned; use factories
    CycloScalar(CycloFieldPtr f, std::vector<Rational> coeffs);

    static CycloScalar zero(const CycloFieldPtr &f);
    static CycloScalar one(const CycloFieldPtr &f);
    static CycloScalar from_rational(const CycloFieldPtr &f, const Rational &r);
    static CycloScalar from_int(const CycloFieldPtr &f, long long v);
    // zeta_M^k
    static CycloScalar root_of_unity(const CycloFieldPtr &f, long long k);

    const CycloFieldPtr &field() const { return field_; }
    const std::vector<Rational> &coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    // True iff the element lies in Q (all non-constant coordinates vanish).
    bool is_rational() const;
    Rational rational_value() const;   // requires is_rational()

    CycloScalar operator-() const;
    CycloScalar operator+(const CycloScalar &o) const;
    CycloScalar operator-(const CycloScalar &o) const;
    CycloScalar operator*(const CycloScalar &o) const;
    CycloScalar operator/(const CycloScalar &o) const;
    CycloScalar inverse() const;
    CycloScalar pow(unsigned long e) const;

    CycloScalar &operator+=(const CycloScalar &o) { *this = *this + o; return *this; }
    CycloScalar &operator-=(const CycloScalar &o) { *this = *this - o; return *this; }
    CycloScalar &operator*=(const CycloScalar &o) { *this = *this * o; return *this; }

    bool operator==(const CycloScalar &o) const;
    bool operator!=(const CycloScalar &o) const { return !(*this == o); }
    // Total order used only for canonical term sorting.
    bool operator<(const CycloScalar &o) const;

    std::string str() const;   // e.g. "1", "-1/2", "z", "1+z", "(2-z^3)"

private:
    CycloFieldPtr field_;
    std::vector<Rational> coeffs_;   // length = field_->degree()

    void check_same_field(const CycloScalar &o) const;
};

} // namespace cusp

#endif

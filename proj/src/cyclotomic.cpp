#include "cusp/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace cusp {

unsigned CycloField::euler_phi(unsigned m) {
    unsigned result = m;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// Quotient of integer polynomials, exact division assumed (ascending coeffs).
std::vector<BigInt> poly_div_exact(std::vector<BigInt> num, const std::vector<BigInt> &den) {
    if (num.size() < den.size()) throw std::logic_error("poly_div_exact: degree mismatch");
    std::vector<BigInt> q(num.size() - den.size() + 1, BigInt(0));
    for (size_t i = q.size(); i-- > 0;) {
        BigInt c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        if (c.is_zero()) continue;
        for (size_t j = 0; j < den.size(); ++j)
            num[i + j] = num[i + j] - c * den[j];
    }
    for (const auto &c : num)
        if (!c.is_zero()) throw std::logic_error("poly_div_exact: not exact");
    return q;
}

std::vector<BigInt> cyclotomic_poly_coeffs(unsigned m) {
    // x^m - 1 divided by the product of Phi_d over proper divisors d of m.
    std::vector<BigInt> num(m + 1, BigInt(0));
    num[0] = BigInt(-1);
    num[m] = BigInt(1);
    for (unsigned d = 1; d < m; ++d) {
        if (m % d) continue;
        num = poly_div_exact(num, cyclotomic_poly_coeffs(d));
    }
    return num;
}

} // namespace

CycloField::CycloField(unsigned order) : order_(order) {
    if (order == 0) throw std::invalid_argument("CycloField: order must be positive");
    degree_ = euler_phi(order);
    phi_ = cyclotomic_poly_coeffs(order);
    // z^degree = -(phi_[0] + phi_[1] z + ... + phi_[degree-1] z^(degree-1)),
    // then z^(degree+j) recursively. Powers up to 2*degree-2 occur in products.
    reduction_.resize(degree_ > 1 ? degree_ - 1 : 1);
    std::vector<Rational> base(degree_);
    for (unsigned i = 0; i < degree_; ++i)
        base[i] = Rational(-phi_[i], BigInt(1));
    reduction_[0] = base;
    for (size_t j = 1; j < reduction_.size(); ++j) {
        // multiply previous by z and reduce
        const auto &prev = reduction_[j - 1];
        std::vector<Rational> cur(degree_);
        for (unsigned i = 0; i + 1 < degree_; ++i) cur[i + 1] = prev[i];
        Rational top = prev[degree_ - 1];
        if (!top.is_zero())
            for (unsigned i = 0; i < degree_; ++i)
                cur[i] += top * base[i];
        reduction_[j] = cur;
    }
}

CycloFieldPtr cyclo_field(unsigned order) {
    static std::map<unsigned, CycloFieldPtr> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<CycloField>(order);
    cache[order] = f;
    return f;
}

CycloScalar::CycloScalar(CycloFieldPtr f, std::vector<Rational> coeffs)
    : field_(std::move(f)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != field_->degree())
        throw std::invalid_argument("CycloScalar: coefficient vector length != phi(M)");
}

CycloScalar CycloScalar::zero(const CycloFieldPtr &f) {
    return CycloScalar(f, std::vector<Rational>(f->degree()));
}

CycloScalar CycloScalar::one(const CycloFieldPtr &f) {
    return from_int(f, 1);
}

CycloScalar CycloScalar::from_rational(const CycloFieldPtr &f, const Rational &r) {
    std::vector<Rational> c(f->degree());
    c[0] = r;
    return CycloScalar(f, std::move(c));
}

CycloScalar CycloScalar::from_int(const CycloFieldPtr &f, long long v) {
    return from_rational(f, Rational(v));
}

CycloScalar CycloScalar::root_of_unity(const CycloFieldPtr &f, long long k) {
    long long m = (long long)f->order();
    long long e = ((k % m) + m) % m;
    // z^e reduced: for e < degree a basis vector, otherwise repeated reduction.
    CycloScalar z(f, [&] {
        std::vector<Rational> c(f->degree());
        if (f->degree() == 1) {
            // M in {1,2}: zeta is 1 or -1.
            c[0] = Rational(1);
        } else {
            c[1] = Rational(1);
        }
        return c;
    }());
    if (f->degree() == 1) {
        // zeta = -1 when M == 2
        if (f->order() == 2) z = from_int(f, -1);
        return z.pow((unsigned long)e);
    }
    return z.pow((unsigned long)e);
}

bool CycloScalar::is_zero() const {
    for (const auto &c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

bool CycloScalar::is_one() const {
    if (!coeffs_[0].is_one()) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return false;
    return true;
}

bool CycloScalar::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return false;
    return true;
}

Rational CycloScalar::rational_value() const {
    if (!is_rational()) throw std::logic_error("CycloScalar: not rational");
    return coeffs_[0];
}

void CycloScalar::check_same_field(const CycloScalar &o) const {
    if (field_->order() != o.field_->order())
        throw std::invalid_argument("CycloScalar: mixed field orders");
}

CycloScalar CycloScalar::operator-() const {
    CycloScalar r = *this;
    for (auto &c : r.coeffs_) c = -c;
    return r;
}

CycloScalar CycloScalar::operator+(const CycloScalar &o) const {
    check_same_field(o);
    CycloScalar r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

CycloScalar CycloScalar::operator-(const CycloScalar &o) const {
    check_same_field(o);
    CycloScalar r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
}

CycloScalar CycloScalar::operator*(const CycloScalar &o) const {
    check_same_field(o);
    unsigned n = field_->degree();
    std::vector<Rational> prod(2 * n - 1);
    for (unsigned i = 0; i < n; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (unsigned j = 0; j < n; ++j) {
            if (o.coeffs_[j].is_zero()) continue;
            prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    std::vector<Rational> red(n);
    for (unsigned i = 0; i < n; ++i) red[i] = prod[i];
    for (unsigned j = 0; n + j < prod.size(); ++j) {
        if (prod[n + j].is_zero()) continue;
        const auto &row = field_->reduction_[j];
        for (unsigned i = 0; i < n; ++i)
            red[i] += prod[n + j] * row[i];
    }
    return CycloScalar(field_, std::move(red));
}

CycloScalar CycloScalar::inverse() const {
    if (is_zero()) throw std::domain_error("CycloScalar: division by zero");
    // Extended Euclid in Q[x] against Phi_M (irreducible over Q).
    unsigned n = field_->degree();
    std::vector<Rational> r0(n + 1), r1;   // r0 = Phi, r1 = this
    for (unsigned i = 0; i <= n; ++i) r0[i] = Rational(field_->phi_[i], BigInt(1));
    r1 = coeffs_;
    while (!r1.empty() && r1.back().is_zero()) r1.pop_back();
    // Bezout: track s only against r1 (coefficients of this^-1).
    std::vector<Rational> s0, s1{Rational(1)};
    auto deg = [](const std::vector<Rational> &p) { return (int)p.size() - 1; };
    auto trim = [](std::vector<Rational> &p) {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
    };
    while (deg(r1) > 0) {
        // divide r0 by r1
        std::vector<Rational> q(std::max(0, deg(r0) - deg(r1)) + 1);
        std::vector<Rational> rem = r0;
        for (int i = (int)q.size() - 1; i >= 0; --i) {
            if ((int)rem.size() - 1 < deg(r1) + i) continue;
            Rational c = rem[deg(r1) + i] / r1.back();
            q[i] = c;
            if (c.is_zero()) continue;
            for (int j = 0; j <= deg(r1); ++j)
                rem[i + j] -= c * r1[j];
        }
        trim(rem);
        // s_next = s0 - q*s1
        std::vector<Rational> qs(q.size() + (s1.empty() ? 0 : s1.size()) - 1);
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i].is_zero()) continue;
            for (size_t j = 0; j < s1.size(); ++j)
                qs[i + j] += q[i] * s1[j];
        }
        std::vector<Rational> s2(std::max(s0.size(), qs.size()));
        for (size_t i = 0; i < s2.size(); ++i) {
            Rational a = i < s0.size() ? s0[i] : Rational(0);
            Rational b = i < qs.size() ? qs[i] : Rational(0);
            s2[i] = a - b;
        }
        trim(s2);
        r0 = r1; r1 = rem;
        s0 = s1; s1 = s2;
    }
    if (r1.empty()) throw std::logic_error("CycloScalar: gcd degenerate (Phi reducible?)");
    Rational unit = r1[0];   // constant gcd
    std::vector<Rational> inv(n);
    for (size_t i = 0; i < s1.size() && i < (size_t)n; ++i)
        inv[i] = s1[i] / unit;
    return CycloScalar(field_, std::move(inv));
}

CycloScalar CycloScalar::operator/(const CycloScalar &o) const {
    return *this * o.inverse();
}

CycloScalar CycloScalar::pow(unsigned long e) const {
    CycloScalar r = one(field_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool CycloScalar::operator==(const CycloScalar &o) const {
    if (field_->order() != o.field_->order()) return false;
    return coeffs_ == o.coeffs_;
}

bool CycloScalar::operator<(const CycloScalar &o) const {
    check_same_field(o);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != o.coeffs_[i]) return coeffs_[i] < o.coeffs_[i];
    }
    return false;
}

std::string CycloScalar::str() const {
    if (is_zero()) return "0";
    std::string out;
    int terms = 0;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        std::string cs = coeffs_[i].str();
        std::string term;
        if (i == 0) {
            term = cs;
        } else {
            std::string base = i == 1 ? "zeta" : "zeta^" + std::to_string(i);
            if (cs == "1") term = base;
            else if (cs == "-1") term = "-" + base;
            else term = cs + "*" + base;
        }
        if (terms && term[0] != '-') out += "+";
        out += term;
        ++terms;
    }
    if (terms > 1) return "(" + out + ")";
    return out;
}

} // namespace cusp

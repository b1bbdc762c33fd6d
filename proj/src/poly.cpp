#include "cusp/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cusp {

VarSetPtr make_vars(std::vector<std::string> names) {
    auto v = std::make_shared<VarSet>();
    v->names = std::move(names);
    return v;
}

bool GrlexLess::operator()(const std::vector<int> &a, const std::vector<int> &b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

Polynomial::Polynomial(CycloFieldPtr field, VarSetPtr vars)
    : field_(std::move(field)), vars_(std::move(vars)) {}

Polynomial Polynomial::constant(const CycloFieldPtr &f, const VarSetPtr &v, const CycloScalar &c) {
    Polynomial p(f, v);
    p.add_term(std::vector<int>(v->names.size(), 0), c);
    return p;
}

Polynomial Polynomial::constant(const CycloFieldPtr &f, const VarSetPtr &v, long long c) {
    return constant(f, v, CycloScalar::from_int(f, c));
}

Polynomial Polynomial::variable(const CycloFieldPtr &f, const VarSetPtr &v, size_t index) {
    if (index >= v->names.size()) throw std::out_of_range("Polynomial::variable");
    Polynomial p(f, v);
    std::vector<int> e(v->names.size(), 0);
    e[index] = 1;
    p.add_term(e, CycloScalar::one(f));
    return p;
}

Polynomial Polynomial::monomial(const CycloFieldPtr &f, const VarSetPtr &v,
                                const std::vector<int> &exps, const CycloScalar &c) {
    Polynomial p(f, v);
    p.add_term(exps, c);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto &e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

bool Polynomial::is_unit_constant() const { return !is_zero() && is_constant(); }

CycloScalar Polynomial::constant_value() const {
    if (!is_constant()) throw std::logic_error("Polynomial: not constant");
    if (terms_.empty()) return CycloScalar::zero(field_);
    return terms_.begin()->second;
}

void Polynomial::add_term(const std::vector<int> &exps, const CycloScalar &c) {
    if (exps.size() != nvars()) throw std::invalid_argument("Polynomial: exponent arity");
    if (c.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Polynomial::check_compatible(const Polynomial &o) const {
    if (vars_ != o.vars_ && !(*vars_ == *o.vars_))
        throw std::invalid_argument("Polynomial: chart mismatch");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(field_, vars_);
    for (const auto &[e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial &o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto &[e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial &o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto &[e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial &o) const {
    check_compatible(o);
    Polynomial r(field_, vars_);
    std::vector<int> e(nvars());
    for (const auto &[ea, ca] : terms_) {
        for (const auto &[eb, cb] : o.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const CycloScalar &c) const {
    Polynomial r(field_, vars_);
    if (c.is_zero()) return r;
    for (const auto &[e, t] : terms_) r.add_term(e, t * c);
    return r;
}

Polynomial Polynomial::pow(unsigned long e) const {
    Polynomial r = constant(field_, vars_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial &o) const {
    if (!(vars_ == o.vars_ || *vars_ == *o.vars_)) return false;
    return terms_ == o.terms_;
}

Polynomial Polynomial::derivative(size_t var) const {
    Polynomial r(field_, vars_);
    for (const auto &[e, c] : terms_) {
        if (e[var] == 0) continue;
        std::vector<int> d = e;
        d[var] -= 1;
        r.add_term(d, c * CycloScalar::from_int(field_, e[var]));
    }
    return r;
}

Polynomial Polynomial::compose(const std::vector<Polynomial> &images) const {
    if (images.size() != nvars()) throw std::invalid_argument("Polynomial::compose arity");
    if (images.empty()) throw std::invalid_argument("Polynomial::compose: no variables");
    const auto &tf = images[0].field();
    const auto &tv = images[0].vars();
    std::vector<std::vector<Polynomial>> pows(nvars());
    for (size_t i = 0; i < nvars(); ++i)
        pows[i].push_back(Polynomial::constant(tf, tv, 1));
    auto power = [&](size_t i, int e) -> const Polynomial & {
        while ((int)pows[i].size() <= e)
            pows[i].push_back(pows[i].back() * images[i]);
        return pows[i][e];
    };
    Polynomial r(tf, tv);
    for (const auto &[e, c] : terms_) {
        Polynomial t = Polynomial::constant(tf, tv, c);
        for (size_t i = 0; i < nvars(); ++i)
            if (e[i]) t = t * power(i, e[i]);
        r = r + t;
    }
    return r;
}

Polynomial Polynomial::substitute(size_t var, const CycloScalar &value) const {
    Polynomial r(field_, vars_);
    for (const auto &[e, c] : terms_) {
        std::vector<int> d = e;
        int k = d[var];
        d[var] = 0;
        r.add_term(d, c * value.pow((unsigned long)k));
    }
    return r;
}

int Polynomial::min_exponent(size_t var) const {
    int m = -1;
    for (const auto &[e, c] : terms_) {
        (void)c;
        if (m < 0 || e[var] < m) m = e[var];
        if (m == 0) break;
    }
    return m < 0 ? 0 : m;
}

int Polynomial::degree_in(size_t var) const {
    int m = 0;
    for (const auto &[e, c] : terms_) {
        (void)c;
        m = std::max(m, e[var]);
    }
    return m;
}

int Polynomial::total_degree() const {
    int m = 0;
    for (const auto &[e, c] : terms_) {
        (void)c;
        m = std::max(m, std::accumulate(e.begin(), e.end(), 0));
    }
    return m;
}

Polynomial Polynomial::shift_down(size_t var, int k) const {
    if (k == 0) return *this;
    Polynomial r(field_, vars_);
    for (const auto &[e, c] : terms_) {
        if (e[var] < k) throw std::logic_error("Polynomial::shift_down: not divisible");
        std::vector<int> d = e;
        d[var] -= k;
        r.terms_.emplace(d, c);
    }
    return r;
}

std::pair<std::vector<int>, Polynomial>
Polynomial::divide_by_monomial(const std::vector<size_t> &which) const {
    if (is_zero()) throw std::domain_error("divide_by_monomial: zero input");
    std::vector<int> powers(which.size(), 0);
    Polynomial r = *this;
    for (size_t i = 0; i < which.size(); ++i) {
        int m = r.min_exponent(which[i]);
        powers[i] = m;
        r = r.shift_down(which[i], m);
    }
    return {powers, r};
}

CycloScalar Polynomial::evaluate(const std::vector<CycloScalar> &point) const {
    if (point.size() != nvars()) throw std::invalid_argument("Polynomial::evaluate arity");
    CycloScalar acc = CycloScalar::zero(field_);
    for (const auto &[e, c] : terms_) {
        CycloScalar t = c;
        for (size_t i = 0; i < nvars(); ++i)
            if (e[i]) t *= point[i].pow((unsigned long)e[i]);
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::coefficient_of(size_t var, int k) const {
    Polynomial r(field_, vars_);
    for (const auto &[e, c] : terms_) {
        if (e[var] != k) continue;
        std::vector<int> d = e;
        d[var] = 0;
        r.terms_.emplace(d, c);
    }
    return r;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // grlex descending for readability and determinism
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[e, c] = *it;
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_->names[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = c.str();
        std::string term;
        if (mono.empty()) term = cs;
        else if (cs == "1") term = mono;
        else if (cs == "-1") term = "-" + mono;
        else term = cs + "*" + mono;
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

std::optional<Rational> weighted_valuation(const Polynomial &g, long long r) {
    if (g.nvars() != 2) throw std::invalid_argument("weighted_valuation: expects 2 variables");
    if (g.is_zero()) return std::nullopt;
    long long den = std::gcd(2ll, r);
    std::optional<Rational> best;
    for (const auto &[e, c] : g.terms()) {
        (void)c;
        Rational v(2ll * e[0] + r * e[1], den);
        if (!best || v < *best) best = v;
    }
    return best;
}

namespace {

// Exact division in K[x1..xn]; throws if not exact. Standard leading-term
// cancellation w.r.t. grlex.
Polynomial exact_divide(const Polynomial &num, const Polynomial &den) {
    if (den.is_zero()) throw std::domain_error("exact_divide: by zero");
    if (den.is_unit_constant()) return num * den.constant_value().inverse();
    Polynomial q(num.field(), num.vars());
    Polynomial rem = num;
    const auto &dlead = *den.terms().rbegin();
    while (!rem.is_zero()) {
        const auto &rlead = *rem.terms().rbegin();
        std::vector<int> e(rlead.first.size());
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] = rlead.first[i] - dlead.first[i];
            if (e[i] < 0) throw std::logic_error("exact_divide: not divisible");
        }
        CycloScalar c = rlead.second / dlead.second;
        Polynomial t = Polynomial::monomial(num.field(), num.vars(), e, c);
        q = q + t;
        rem = rem - t * den;
    }
    return q;
}

std::vector<Polynomial> univar_coeffs(const Polynomial &p, size_t var) {
    int d = p.degree_in(var);
    std::vector<Polynomial> cs;
    cs.reserve(d + 1);
    for (int k = 0; k <= d; ++k) cs.push_back(p.coefficient_of(var, k));
    while (cs.size() > 1 && cs.back().is_zero()) cs.pop_back();
    return cs;
}

Polynomial gcd_rec(const Polynomial &a, const Polynomial &b);

Polynomial make_monic_ish(const Polynomial &p) {
    if (p.is_zero()) return p;
    const auto &lead = p.terms().rbegin()->second;
    return p * lead.inverse();
}

// pseudo-remainder of a by b w.r.t. var
Polynomial pseudo_rem(Polynomial a, const Polynomial &b, size_t var) {
    int db = b.degree_in(var);
    Polynomial lb = b.coefficient_of(var, db);
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int da = a.degree_in(var);
        Polynomial la = a.coefficient_of(var, da);
        Polynomial xs = Polynomial::variable(a.field(), a.vars(), var).pow((unsigned long)(da - db));
        a = a * lb - la * xs * b;
        if (!a.is_zero() && a.degree_in(var) >= da)
            throw std::logic_error("pseudo_rem: degree did not drop");
    }
    return a;
}

Polynomial poly_content(const Polynomial &p, size_t var) {
    auto cs = univar_coeffs(p, var);
    Polynomial g = Polynomial::zero(p.field(), p.vars());
    for (const auto &c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_rec(g, c);
        if (g.is_unit_constant()) break;
    }
    return make_monic_ish(g);
}

Polynomial gcd_rec(const Polynomial &a, const Polynomial &b) {
    if (a.is_zero()) return make_monic_ish(b);
    if (b.is_zero()) return make_monic_ish(a);
    if (a.is_constant() || b.is_constant())
        return Polynomial::constant(a.field(), a.vars(), 1);
    size_t var = a.nvars();
    for (size_t i = 0; i < a.nvars(); ++i) {
        if (a.degree_in(i) > 0 && b.degree_in(i) > 0) { var = i; break; }
    }
    if (var == a.nvars())   // no shared variable: common divisors are constants
        return Polynomial::constant(a.field(), a.vars(), 1);
    Polynomial ca = poly_content(a, var), cb = poly_content(b, var);
    Polynomial pa = exact_divide(a, ca);
    Polynomial pb = exact_divide(b, cb);
    while (!pb.is_zero()) {
        if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
        if (pb.degree_in(var) == 0) {
            pa = Polynomial::constant(a.field(), a.vars(), 1);
            break;
        }
        Polynomial r = pseudo_rem(pa, pb, var);
        pa = pb;
        if (r.is_zero()) break;
        pb = exact_divide(r, poly_content(r, var));
    }
    Polynomial cg = gcd_rec(ca, cb);
    return make_monic_ish(pa * cg);
}

} // namespace

Polynomial poly_gcd_bivar(const Polynomial &a, const Polynomial &b) {
    return gcd_rec(a, b);
}

Polynomial poly_resultant(const Polynomial &a, const Polynomial &b, size_t var) {
    const auto &f = a.field();
    const auto &v = a.vars();
    if (a.is_zero() || b.is_zero()) return Polynomial::zero(f, v);
    auto A = univar_coeffs(a, var);
    auto B = univar_coeffs(b, var);
    int m = (int)A.size() - 1, n = (int)B.size() - 1;
    if (m == 0 && n == 0) return Polynomial::constant(f, v, 1);
    int N = m + n;
    if (N == 0) return Polynomial::constant(f, v, 1);
    // Sylvester determinant by fraction-free (Bareiss) elimination; the
    // divisions are exact over the polynomial ring.
    std::vector<std::vector<Polynomial>> M(N, std::vector<Polynomial>(N, Polynomial::zero(f, v)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            M[i][i + j] = A[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            M[n + i][i + j] = B[n - j];
    Polynomial denom = Polynomial::constant(f, v, 1);
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < N; ++i)
                if (!M[i][k].is_zero()) { piv = i; break; }
            if (piv < 0) return Polynomial::zero(f, v);
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                Polynomial t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                M[i][j] = t.is_zero() ? t : exact_divide(t, denom);
            }
            M[i][k] = Polynomial::zero(f, v);
        }
        denom = M[k][k];
    }
    Polynomial det = M[N - 1][N - 1];
    if (sign < 0) det = -det;
    return det;
}

} // namespace cusp

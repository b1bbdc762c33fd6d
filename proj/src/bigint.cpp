#include "cusp/bigint.hpp"

#include <cassert>
#include <stdexcept>

namespace cusp {

BigInt::BigInt(long long v) : sign_(1) {
    if (v < 0) { sign_ = -1; }
    unsigned long long u = v < 0 ? -(unsigned long long)v : (unsigned long long)v;
    while (u) {
        limbs_.push_back((uint32_t)(u & 0xffffffffu));
        u >>= 32;
    }
    if (limbs_.empty()) sign_ = 1;
}

BigInt::BigInt(const std::string &s) : sign_(1) {
    size_t i = 0;
    int sg = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sg = -1;
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
    BigInt acc;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        acc = acc * BigInt(10) + BigInt(s[i] - '0');
    }
    *this = acc;
    if (sg < 0 && !is_zero()) sign_ = -1;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 1;
}

int BigInt::cmp_mag(const BigInt &a, const BigInt &b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    std::vector<uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r.push_back((uint32_t)(s & 0xffffffffu));
        carry = s >> 32;
    }
    if (carry) r.push_back((uint32_t)carry);
    return r;
}

// requires |a| >= |b|
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    std::vector<uint32_t> r;
    r.reserve(a.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = (int64_t)a[i] - borrow - (i < b.size() ? (int64_t)b[i] : 0);
        if (s < 0) { s += ((int64_t)1 << 32); borrow = 1; } else borrow = 0;
        r.push_back((uint32_t)s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = (uint64_t)a[i] * b[j] + r[i + j] + carry;
            r[i + j] = (uint32_t)(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = (uint32_t)(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Schoolbook long division on magnitudes: a = q*b + r, 0 <= r < b.
void BigInt::divmod_mag(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b,
                        std::vector<uint32_t> &q, std::vector<uint32_t> &r) {
    assert(!b.empty());
    if (b.size() == 1) {
        uint64_t d = b[0], rem = 0;
        q.assign(a.size(), 0);
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = (uint32_t)(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back((uint32_t)rem);
        return;
    }
    if (a.size() <= 2 && b.size() <= 2) {
        auto pack = [](const std::vector<uint32_t> &v) {
            uint64_t u = 0;
            for (size_t i = v.size(); i-- > 0;) u = (u << 32) | v[i];
            return u;
        };
        uint64_t ua = pack(a), ub = pack(b);
        uint64_t uq = ua / ub, ur = ua % ub;
        q.clear(); r.clear();
        while (uq) { q.push_back((uint32_t)uq); uq >>= 32; }
        while (ur) { r.push_back((uint32_t)ur); ur >>= 32; }
        return;
    }
    q.assign(a.size(), 0);
    r.clear();
    for (size_t i = a.size(); i-- > 0;) {
        // r = r*2^32 + a[i]
        r.insert(r.begin(), a[i]);
        while (!r.empty() && r.back() == 0) r.pop_back();
        // binary search digit d in [0, 2^32) with d*b <= r
        uint64_t lo = 0, hi = 0xffffffffu, d = 0;
        BigInt rb; rb.limbs_ = r;
        BigInt bb; bb.limbs_ = b;
        while (lo <= hi) {
            uint64_t mid = lo + (hi - lo) / 2;
            BigInt t; t.limbs_ = mul_mag(b, {(uint32_t)mid});
            if (cmp_mag(t, rb) <= 0) { d = mid; lo = mid + 1; }
            else { if (mid == 0) break; hi = mid - 1; }
        }
        q[i] = (uint32_t)d;
        BigInt t; t.limbs_ = mul_mag(b, {(uint32_t)d});
        r = sub_mag(r, t.limbs_);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::operator+(const BigInt &o) const {
    BigInt r;
    if (sign_ == o.sign_) {
        r.limbs_ = add_mag(limbs_, o.limbs_);
        r.sign_ = sign_;
    } else {
        int c = cmp_mag(*this, o);
        if (c == 0) return BigInt();
        if (c > 0) { r.limbs_ = sub_mag(limbs_, o.limbs_); r.sign_ = sign_; }
        else { r.limbs_ = sub_mag(o.limbs_, limbs_); r.sign_ = o.sign_; }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt &o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt &o) const {
    BigInt r;
    r.limbs_ = mul_mag(limbs_, o.limbs_);
    r.sign_ = (sign_ == o.sign_) ? 1 : -1;
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt &a, const BigInt &b, BigInt &q, BigInt &r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    divmod_mag(a.limbs_, b.limbs_, q.limbs_, r.limbs_);
    q.sign_ = (a.sign_ == b.sign_) ? 1 : -1;
    r.sign_ = a.sign_;
    q.trim();
    r.trim();
}

BigInt BigInt::operator/(const BigInt &o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt &o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return r;
}

bool BigInt::operator<(const BigInt &o) const {
    if (sign() != o.sign()) return sign() < o.sign();
    int c = cmp_mag(*this, o);
    return sign() >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = 1; b.sign_ = 1;
    a.trim(); b.trim();
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

BigInt BigInt::lcm(const BigInt &a, const BigInt &b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt g = gcd(a, b);
    return (a / g * b).abs();
}

BigInt BigInt::pow(const BigInt &base, unsigned long e) {
    BigInt r(1), b = base;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.sign_ = 1;
    if (r.limbs_.empty()) r.sign_ = 1;
    return r;
}

bool BigInt::perfect_square(BigInt &root) const {
    if (is_negative()) return false;
    if (is_zero()) { root = BigInt(); return true; }
    // Newton iteration on floor sqrt.
    BigInt x = *this, y = (x + BigInt(1)) / BigInt(2);
    while (y < x) {
        x = y;
        y = (x + *this / x) / BigInt(2);
    }
    if (x * x == *this) { root = x; return true; }
    return false;
}

bool BigInt::fits_ll() const {
    if (limbs_.size() > 2) return false;
    unsigned long long u = 0;
    for (size_t i = limbs_.size(); i-- > 0;) u = (u << 32) | limbs_[i];
    if (sign_ > 0) return u <= 0x7fffffffffffffffull;
    return u <= 0x8000000000000000ull;
}

long long BigInt::to_ll() const {
    assert(fits_ll());
    unsigned long long u = 0;
    for (size_t i = limbs_.size(); i-- > 0;) u = (u << 32) | limbs_[i];
    return sign_ > 0 ? (long long)u : -(long long)u;
}

std::string BigInt::str() const {
    if (is_zero()) return "0";
    std::string out;
    BigInt t = abs(), ten(10);
    while (!t.is_zero()) {
        BigInt q, r;
        divmod(t, ten, q, r);
        out.push_back(char('0' + (r.is_zero() ? 0 : r.limbs_[0])));
        t = q;
    }
    if (sign_ < 0) out.push_back('-');
    std::string rev(out.rbegin(), out.rend());
    return rev;
}

} // namespace cusp

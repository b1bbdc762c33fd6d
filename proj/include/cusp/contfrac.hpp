#ifndef CUSP_CONTFRAC_HPP
#define CUSP_CONTFRAC_HPP

#include <stdexcept>
#include <vector>

#include "cusp/rational.hpp"

namespace cusp {

// Canonical continued fraction digits of p/q: the last digit is >= 2 unless
// the expansion is a single digit. digit_sum() equals the number of
// subtractive Euclid steps on (p, q), i.e. the point blow-up count.
struct CFDigits {
    std::vector<long long> digits;

    long long digit_sum() const {
        long long k = 0;
        for (long long c : digits) k += c;
        return k;
    }

    Rational evaluate() const {
        if (digits.empty()) throw std::logic_error("CFDigits: empty");
        Rational v(digits.back());
        for (size_t i = digits.size() - 1; i-- > 0;)
            v = Rational(digits[i]) + Rational(1) / v;
        return v;
    }
};

inline CFDigits continued_fraction(long long p, long long q) {
    if (p < 1 || q < 1) throw std::invalid_argument("continued_fraction: arguments must be >= 1");
    CFDigits cf;
    long long a = p, b = q;
    while (b) {
        cf.digits.push_back(a / b);
        long long r = a % b;
        a = b;
        b = r;
    }
    // canonicalize: [..., c, 1] -> [..., c+1]
    if (cf.digits.size() > 1 && cf.digits.back() == 1) {
        cf.digits.pop_back();
        cf.digits.back() += 1;
    }
    return cf;
}

} // namespace cusp

#endif

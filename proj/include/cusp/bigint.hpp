#ifndef CUSP_BIGINT_HPP
#define CUSP_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cusp {

// Arbitrary-precision signed integer, sign + little-endian base 2^32 limbs.
// Zero is canonical: empty limb vector, sign = +1.
class BigInt {
public:
    BigInt() : sign_(1) {}
    BigInt(long long v);
    explicit BigInt(const std::string &decimal);

    bool is_zero() const { return limbs_.empty(); }
    bool is_one() const { return sign_ > 0 && limbs_.size() == 1 && limbs_[0] == 1; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return limbs_.empty() ? 0 : sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt &o) const;
    BigInt operator-(const BigInt &o) const;
    BigInt operator*(const BigInt &o) const;
    // Truncated division (rounds toward zero), as in C++ integer division.
    BigInt operator/(const BigInt &o) const;
    BigInt operator%(const BigInt &o) const;

    BigInt &operator+=(const BigInt &o) { *this = *this + o; return *this; }
    BigInt &operator-=(const BigInt &o) { *this = *this - o; return *this; }
    BigInt &operator*=(const BigInt &o) { *this = *this * o; return *this; }

    bool operator==(const BigInt &o) const { return sign_ == o.sign_ && limbs_ == o.limbs_; }
    bool operator!=(const BigInt &o) const { return !(*this == o); }
    bool operator<(const BigInt &o) const;
    bool operator>(const BigInt &o) const { return o < *this; }
    bool operator<=(const BigInt &o) const { return !(o < *this); }
    bool operator>=(const BigInt &o) const { return !(*this < o); }

    static void divmod(const BigInt &a, const BigInt &b, BigInt &q, BigInt &r);
    static BigInt gcd(BigInt a, BigInt b);   // non-negative
    static BigInt lcm(const BigInt &a, const BigInt &b);
    static BigInt pow(const BigInt &base, unsigned long e);

    BigInt abs() const;
    // Exact integer square root test: returns true and sets root if *this is a
    // perfect square (requires *this >= 0).
    bool perfect_square(BigInt &root) const;

    long long to_ll() const;   // asserts it fits
    bool fits_ll() const;
    std::string str() const;

private:
    int sign_;
    std::vector<uint32_t> limbs_;

    void trim();
    static int cmp_mag(const BigInt &a, const BigInt &b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b);
    static void divmod_mag(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b,
                           std::vector<uint32_t> &q, std::vector<uint32_t> &r);
};

inline BigInt operator*(long long a, const BigInt &b) { return BigInt(a) * b; }

} // namespace cusp

#endif

#ifndef COHOMOLAB_RATIONAL_HPP
#define COHOMOLAB_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace cohomolab {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over GMP so that it plays well with
/// Eigen (no expression templates leak out of the arithmetic operators).
class Rational
{
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT: implicit by design of a scalar type
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }
    explicit Rational(mpq_class&& q) : value_(std::move(q)) { value_.canonicalize(); }

    /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
    /// input or zero denominator.
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& gmp() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    /// Exact floor / ceiling; throw std::overflow_error outside the long range.
    long floor() const;
    long ceil() const;

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-value_)); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        Rational r;
        mpq_add(r.value_.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        Rational r;
        mpq_sub(r.value_.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        Rational r;
        mpq_mul(r.value_.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
        return r;
    }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q);

private:
    mpq_class value_;
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

/// True iff q is a non-negative integer.
inline bool is_natural(const Rational& q) { return q.is_integer() && q.sign() >= 0; }

/// (-1)^k for an integer exponent (any sign).
inline int sign_power(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace cohomolab

template <>
struct std::hash<cohomolab::Rational>
{
    std::size_t operator()(const cohomolab::Rational& q) const noexcept
    {
        return std::hash<std::string>{}(q.str());
    }
};

namespace Eigen {

template <>
struct NumTraits<cohomolab::Rational> : GenericNumTraits<cohomolab::Rational>
{
    using Real = cohomolab::Rational;
    using NonInteger = cohomolab::Rational;
    using Literal = cohomolab::Rational;
    using Nested = cohomolab::Rational;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 32
    };

    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // COHOMOLAB_RATIONAL_HPP

#ifndef COHOMOLAB_POLYNOMIAL_HPP
#define COHOMOLAB_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "cohomolab/rational.hpp"

namespace cohomolab {

/// Univariate polynomial in x with coefficients in ascending order. The
/// coefficient vector never ends in a zero, so the zero polynomial is empty.
template <typename Scalar>
class BasicPolynomial
{
public:
    BasicPolynomial() = default;
    explicit BasicPolynomial(std::vector<Scalar> coefficients) : c_(std::move(coefficients)) { trim(); }

    static BasicPolynomial constant(const Scalar& c) { return monomial(c, 0); }

    static BasicPolynomial monomial(const Scalar& c, int degree)
    {
        if (c == Scalar(0))
            return {};
        std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar(0));
        v.back() = c;
        return BasicPolynomial(std::move(v));
    }

    static BasicPolynomial x() { return monomial(Scalar(1), 1); }

    bool is_zero() const { return c_.empty(); }
    std::optional<int> degree() const
    {
        if (c_.empty())
            return std::nullopt;
        return static_cast<int>(c_.size()) - 1;
    }

    const std::vector<Scalar>& coefficients() const { return c_; }

    Scalar coefficient(int k) const
    {
        if (k < 0 || static_cast<std::size_t>(k) >= c_.size())
            return Scalar(0);
        return c_[static_cast<std::size_t>(k)];
    }

    BasicPolynomial derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<Scalar> v(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            v[k - 1] = c_[k] * Scalar(static_cast<long>(k));
        return BasicPolynomial(std::move(v));
    }

    BasicPolynomial derivative(int order) const
    {
        BasicPolynomial p = *this;
        for (int i = 0; i < order && !p.is_zero(); ++i)
            p = p.derivative();
        return p;
    }

    Scalar evaluate(const Scalar& at) const
    {
        Scalar acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * at + *it;
        return acc;
    }

    BasicPolynomial operator-() const
    {
        BasicPolynomial p = *this;
        for (auto& c : p.c_)
            c = -c;
        return p;
    }

    BasicPolynomial& operator+=(const BasicPolynomial& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), Scalar(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k)
            c_[k] += o.c_[k];
        trim();
        return *this;
    }

    BasicPolynomial& operator-=(const BasicPolynomial& o) { return *this += -o; }

    BasicPolynomial& operator*=(const Scalar& s)
    {
        if (s == Scalar(0)) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_)
            c *= s;
        return *this;
    }

    friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
    friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
    friend BasicPolynomial operator*(BasicPolynomial a, const Scalar& s) { return a *= s; }
    friend BasicPolynomial operator*(const Scalar& s, BasicPolynomial a) { return a *= s; }

    friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] += a.c_[i] * b.c_[j];
        return BasicPolynomial(std::move(v));
    }

    friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) { return a.c_ == b.c_; }

    friend std::ostream& operator<<(std::ostream& os, const BasicPolynomial& p)
    {
        if (p.is_zero())
            return os << "0";
        bool first = true;
        for (std::size_t k = 0; k < p.c_.size(); ++k) {
            if (p.c_[k] == Scalar(0))
                continue;
            if (!first)
                os << " + ";
            os << p.c_[k];
            if (k > 0)
                os << "*x^" << k;
            first = false;
        }
        return os;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == Scalar(0))
            c_.pop_back();
    }

    std::vector<Scalar> c_;
};

using Polynomial = BasicPolynomial<Rational>;

}  // namespace cohomolab

#endif  // COHOMOLAB_POLYNOMIAL_HPP

#ifndef COHOMOLAB_SUPERFUNC_HPP
#define COHOMOLAB_SUPERFUNC_HPP

#include <optional>
#include <ostream>

#include "cohomolab/polynomial.hpp"

namespace cohomolab {

/// F(x, theta) = f0(x) + theta * f1(x), polynomial components.
class SuperFunction
{
public:
    SuperFunction() = default;
    SuperFunction(Polynomial even, Polynomial odd) : even_(std::move(even)), odd_(std::move(odd)) {}

    static SuperFunction even(Polynomial f) { return {std::move(f), {}}; }
    static SuperFunction odd(Polynomial g) { return {{}, std::move(g)}; }
    static SuperFunction constant(const Rational& c) { return even(Polynomial::constant(c)); }
    static SuperFunction x() { return even(Polynomial::x()); }
    static SuperFunction theta() { return odd(Polynomial::constant(1)); }

    const Polynomial& even_part() const { return even_; }
    const Polynomial& odd_part() const { return odd_; }

    bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }

    /// 0 or 1 for homogeneous values (zero counts as even), nullopt if mixed.
    std::optional<int> parity() const
    {
        if (odd_.is_zero())
            return 0;
        if (even_.is_zero())
            return 1;
        return std::nullopt;
    }

    /// d/dx, componentwise.
    SuperFunction dx() const { return {even_.derivative(), odd_.derivative()}; }
    /// d/dtheta: f0 + theta f1 -> f1.
    SuperFunction dtheta() const { return even(odd_); }

    SuperFunction operator-() const { return {-even_, -odd_}; }
    SuperFunction& operator+=(const SuperFunction& o)
    {
        even_ += o.even_;
        odd_ += o.odd_;
        return *this;
    }
    SuperFunction& operator-=(const SuperFunction& o) { return *this += -o; }

    friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
    friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
    friend SuperFunction operator*(const Rational& s, const SuperFunction& a) { return {a.even_ * s, a.odd_ * s}; }

    /// (a0 + theta a1)(b0 + theta b1) = a0 b0 + theta (a1 b0 + a0 b1).
    friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b)
    {
        return {a.even_ * b.even_, a.odd_ * b.even_ + a.even_ * b.odd_};
    }

    friend bool operator==(const SuperFunction& a, const SuperFunction& b)
    {
        return a.even_ == b.even_ && a.odd_ == b.odd_;
    }

    friend std::ostream& operator<<(std::ostream& os, const SuperFunction& f)
    {
        return os << "(" << f.even_ << ") + theta*(" << f.odd_ << ")";
    }

private:
    Polynomial even_;
    Polynomial odd_;
};

/// D = d/dtheta + theta d/dx.
SuperFunction d_operator(const SuperFunction& f);
/// Dbar = d/dtheta - theta d/dx.
SuperFunction dbar_operator(const SuperFunction& f);

/// {F, G} = F G' - F' G + 1/2 D(F) Dbar(G).
SuperFunction contact_bracket(const SuperFunction& f, const SuperFunction& g);

/// The contact vector field X_F = F d/dx + 1/2 D(F) Dbar.
struct ContactField
{
    SuperFunction hamiltonian;

    std::optional<int> parity() const { return hamiltonian.parity(); }

    static ContactField x1() { return {SuperFunction::constant(1)}; }
    static ContactField xx() { return {SuperFunction::x()}; }
    static ContactField xtheta() { return {SuperFunction::theta()}; }
};

/// Vector-field action X_F(G).
SuperFunction apply_field(const ContactField& field, const SuperFunction& g);

/// Lie derivative on mu-densities: X_F(G) + mu F' G.
SuperFunction super_lie_derivative(const ContactField& field, const Rational& mu, const SuperFunction& g);

/// Classical Lie derivative on mu-densities of the line: h g' + mu h' g.
Polynomial lie_derivative(const Polynomial& h, const Rational& mu, const Polynomial& g);

}  // namespace cohomolab

#endif  // COHOMOLAB_SUPERFUNC_HPP

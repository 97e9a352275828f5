#include "cohomolab/superfunc.hpp"

namespace cohomolab {

SuperFunction d_operator(const SuperFunction& f)
{
    return {f.odd_part(), f.even_part().derivative()};
}

SuperFunction dbar_operator(const SuperFunction& f)
{
    return {f.odd_part(), -f.even_part().derivative()};
}

SuperFunction contact_bracket(const SuperFunction& f, const SuperFunction& g)
{
    return f * g.dx() - f.dx() * g + Rational(1, 2) * (d_operator(f) * dbar_operator(g));
}

SuperFunction apply_field(const ContactField& field, const SuperFunction& g)
{
    const auto& f = field.hamiltonian;
    return f * g.dx() + Rational(1, 2) * (d_operator(f) * dbar_operator(g));
}

SuperFunction super_lie_derivative(const ContactField& field, const Rational& mu, const SuperFunction& g)
{
    return apply_field(field, g) + mu * (field.hamiltonian.dx() * g);
}

Polynomial lie_derivative(const Polynomial& h, const Rational& mu, const Polynomial& g)
{
    return h * g.derivative() + mu * (h.derivative() * g);
}

}  // namespace cohomolab

#include "cohomolab/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace cohomolab {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

mpz_class parse_integer(std::string_view s)
{
    if (!is_integer_literal(s))
        throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
    if (s[0] == '+')
        s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

long to_long(const mpz_class& z)
{
    if (!z.fits_slong_p())
        throw std::overflow_error("rational out of machine range");
    return z.get_si();
}

}  // namespace

Rational::Rational(long num, long den)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);

    const auto slash = text.find('/');
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = 1;
    if (slash != std::string_view::npos) {
        const auto den_text = text.substr(slash + 1);
        if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        den = parse_integer(den_text);
        if (den == 0)
            throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
}

long Rational::floor() const
{
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return to_long(r);
}

long Rational::ceil() const
{
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return to_long(r);
}

std::string Rational::str() const
{
    if (is_integer())
        return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw std::domain_error("division by zero rational");
    value_ /= o.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace cohomolab

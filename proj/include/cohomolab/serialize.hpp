#ifndef COHOMOLAB_SERIALIZE_HPP
#define COHOMOLAB_SERIALIZE_HPP

#include <stdexcept>

#include "json.hpp"

#include "cohomolab/cohomo.hpp"

namespace cohomolab {

using Json = nlohmann::ordered_json;

/// Malformed JSON input.
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// {"n", "lambda", "mu", "parity", "terms": [{"eps", "theta", "alpha", "coeff"}]}
/// with rationals as "p/q" strings and coefficients in ascending powers of x.
/// Classical operators omit "eps" and "theta".
Json to_json(const SuperNaryOperator& a);
Json to_json(const NaryOperator& a);
/// Reads either form; a term without "eps" is a classical sector.
SuperNaryOperator operator_from_json(const Json& j);

/// {"algebra", "parity", "values": {generator name: operator}}. Classical
/// values are written without eps/theta when every sector is classical.
Json to_json(const AlgebraPresentation& alg, const Cochain1& c);
Cochain1 cochain_from_json(const AlgebraPresentation& alg, const Json& j);

Json to_json(const Weights& w);
Weights weights_from_json(const Json& j);

}  // namespace cohomolab

#endif  // COHOMOLAB_SERIALIZE_HPP

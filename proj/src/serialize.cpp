#include "cohomolab/serialize.hpp"

namespace cohomolab {

namespace {

Rational rational_from(const Json& j)
{
    if (!j.is_string())
        throw ParseError("rational must be a string \"p/q\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::vector<int> int_list(const Json& j, const char* what)
{
    if (!j.is_array())
        throw ParseError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw ParseError(std::string(what) + " entries must be integers");
        out.push_back(x.get<int>());
    }
    return out;
}

Json coeff_json(const Polynomial& p)
{
    Json out = Json::array();
    for (int k = 0; k <= p.degree().value_or(-1); ++k)
        out.push_back(p.coefficient(k).str());
    return out;
}

bool classical(const SuperNaryOperator& a)
{
    for (const auto& [k, p] : a.terms())
        if (k.theta != 0 || k.eps.doubled_total() != 0)
            return false;
    return true;
}

Json operator_json(const SuperNaryOperator& a, bool with_sectors)
{
    Json j = to_json(a.weights());
    j["parity"] = a.parity();
    Json terms = Json::array();
    for (const auto& [k, p] : a.terms()) {
        Json t;
        if (with_sectors) {
            t["eps"] = k.eps.flags();
            t["theta"] = k.theta;
        }
        t["alpha"] = k.alpha.entries();
        t["coeff"] = coeff_json(p);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

}  // namespace

Json to_json(const Weights& w)
{
    Json lambda = Json::array();
    for (const auto& l : w.lambda)
        lambda.push_back(l.str());
    return {{"n", w.n()}, {"lambda", std::move(lambda)}, {"mu", w.mu.str()}};
}

Weights weights_from_json(const Json& j)
{
    Weights w;
    const auto& lambda = field(j, "lambda");
    if (!lambda.is_array())
        throw ParseError("lambda must be an array");
    for (const auto& l : lambda)
        w.lambda.push_back(rational_from(l));
    w.mu = rational_from(field(j, "mu"));
    if (j.contains("n") && (!j.at("n").is_number_integer() || j.at("n").get<int>() != w.n()))
        throw ParseError("n does not match the length of lambda");
    return w;
}

Json to_json(const SuperNaryOperator& a) { return operator_json(a, true); }

Json to_json(const NaryOperator& a) { return operator_json(to_super(a), false); }

SuperNaryOperator operator_from_json(const Json& j)
{
    const Weights w = weights_from_json(j);
    const auto& parity = field(j, "parity");
    if (!parity.is_number_integer() || (parity.get<int>() != 0 && parity.get<int>() != 1))
        throw ParseError("parity must be 0 or 1");
    SuperNaryOperator a(w, parity.get<int>());
    const auto& terms = field(j, "terms");
    if (!terms.is_array())
        throw ParseError("terms must be an array");
    try {
        for (const auto& t : terms) {
            const auto alpha = int_list(field(t, "alpha"), "alpha");
            auto eps = t.contains("eps") ? int_list(t.at("eps"), "eps") : std::vector<int>(alpha.size(), 0);
            int theta = 0;
            if (t.contains("theta")) {
                if (!t.at("theta").is_number_integer())
                    throw ParseError("theta must be 0 or 1");
                theta = t.at("theta").get<int>();
            }
            std::vector<Rational> coeff;
            const auto& cj = field(t, "coeff");
            if (!cj.is_array())
                throw ParseError("coeff must be an array");
            for (const auto& c : cj)
                coeff.push_back(rational_from(c));
            if (theta != 0 && theta != 1)
                throw ParseError("theta must be 0 or 1");
            a.add_term({EpsilonMask(std::move(eps)), theta, MultiIndex(alpha)}, Polynomial(std::move(coeff)));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    } catch (const std::out_of_range& e) {
        throw ParseError(e.what());
    }
    return a;
}

Json to_json(const AlgebraPresentation& alg, const Cochain1& c)
{
    Json values = Json::object();
    bool all_classical = true;
    for (const auto& v : c.values)
        all_classical = all_classical && classical(v);
    for (int i = 0; i < alg.size(); ++i)
        values[alg.generator_name(i)] = operator_json(c.values[static_cast<std::size_t>(i)], !all_classical);
    return {{"algebra", alg.name()}, {"parity", c.parity}, {"values", std::move(values)}};
}

Cochain1 cochain_from_json(const AlgebraPresentation& alg, const Json& j)
{
    if (field(j, "algebra") != alg.name())
        throw ParseError("cochain is for algebra " + field(j, "algebra").dump());
    const auto& parity = field(j, "parity");
    if (!parity.is_number_integer())
        throw ParseError("parity must be 0 or 1");
    Cochain1 c;
    c.parity = parity.get<int>();
    const auto& values = field(j, "values");
    for (int i = 0; i < alg.size(); ++i) {
        auto v = operator_from_json(field(values, alg.generator_name(i).c_str()));
        if (v.parity() != (c.parity + alg.parity(i)) % 2)
            throw ParseError("value on " + alg.generator_name(i) + " has the wrong parity");
        c.values.push_back(std::move(v));
    }
    return c;
}

}  // namespace cohomolab

#ifndef COHOMOLAB_VERIFY_HPP
#define COHOMOLAB_VERIFY_HPP

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "cohomolab/densmod.hpp"

namespace cohomolab {

/// (g . A)(F) computed from scratch with Lie derivatives only:
/// L^mu_g(A(F)) - (-1)^{|A||g|} sum_i (-1)^{|g| sum_{j<i}|F_j|} A(..., L^{lambda_i}_g F_i, ...).
/// Inputs must be homogeneous.
SuperFunction reference_action(Generator g, const SuperNaryOperator& a, const std::vector<SuperFunction>& inputs);

/// Random homogeneous operator with a few terms within the given caps.
SuperNaryOperator random_operator(std::mt19937& rng, const Weights& w, int parity, int max_order, int max_degree,
                                  ModuleKind kind);

/// Random homogeneous inputs; slot parities drawn at random for super kind.
std::vector<SuperFunction> random_inputs(std::mt19937& rng, int n, int max_degree, ModuleKind kind);

/// Outcome of one verification suite.
struct SuiteResult
{
    std::string name;
    int checks = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
    void expect(bool condition, const std::string& what)
    {
        ++checks;
        if (!condition)
            failures.push_back(what);
    }
};

/// Suite names: brackets, combinatorics, aff1, aff11, relative, invariants.
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name);

}  // namespace cohomolab

#endif  // COHOMOLAB_VERIFY_HPP

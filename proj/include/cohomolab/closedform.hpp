#ifndef COHOMOLAB_CLOSEDFORM_HPP
#define COHOMOLAB_CLOSEDFORM_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohomolab/cohomo.hpp"

namespace cohomolab {

/// C(m, j) with C(m, j) = 0 for j < 0 or j > m.
long binomial(long m, long j);

/// Predicted H^1 for a presentation tag ("aff1" or "aff11").
struct Prediction
{
    std::string algebra;
    int n = 0;
    Rational delta;
    long dim = 0;
    /// Parity of the nonzero classes; empty when dim is 0.
    std::optional<int> parity;
};

/// C(n + k - 1, k) when delta = k is a natural number, else 0.
long predicted_dim_aff1(int n, const Rational& delta);
/// Binomial sums over masks of class E (delta in N) or O (delta in N + 1/2).
long predicted_dim_aff11(int n, const Rational& delta);
Prediction predict(const std::string& algebra, int n, const Rational& delta);

/// X_1 -> 0, X_x -> F^(a). Requires |a| = delta.
Cochain1 basis_cocycle_aff1(const Weights& w, const MultiIndex& a);

/// X_1 -> 0, X_x -> Omega_e^a + (-1)^{2|e|} theta sum_i xi^i_e Omega_{e^i}^{a^i_e},
/// on the presentation aff(1). The sign makes the value X_theta-invariant for
/// odd e under the Koszul convention of act_super. Requires |a| = delta_e with e of class E when
/// delta is natural and of class O when delta is a half-integer.
Cochain1 basis_cocycle_aff11_restricted(const Weights& w, const EpsilonMask& e, const MultiIndex& a);

/// Label (eps, alpha) of a basis cocycle; eps is all zeros for aff(1).
struct BasisLabel
{
    EpsilonMask eps;
    MultiIndex alpha;
};

std::vector<MultiIndex> aff1_family(int n, const Rational& delta);
/// Labels sorted by mask then alpha.
std::vector<BasisLabel> aff11_family(int n, const Rational& delta);

class NoExtension : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Completes an aff(1)-cocycle with a value on X_theta so that the full
/// aff(1|1) cocycle equations hold at the window of mod. The unknown ranges
/// over C^1 monomials in the weight blocks of c; free variables are set to 0.
/// Throws NotACocycle if c is not an aff(1)-cocycle and NoExtension naming
/// the first inconsistent constraint otherwise.
Cochain1 extend_to_theta(const Cochain1& c, const ModuleRealization& mod);

/// Coefficient recurrences equivalent to X_theta . y = 0, written out per
/// sector. Returns a description of every violated relation.
std::vector<std::string> theta_relation_violations(const SuperNaryOperator& y);

/// Substitutes the h = 0 recurrence into the h = 1 recurrence on formal
/// constant coefficients with |alpha| <= max_order; true iff it reduces to
/// an identity. even_case selects odd y (delta in N) or even y.
bool alph_relation_trivial(int n, int max_order, bool even_case);

}  // namespace cohomolab

#endif  // COHOMOLAB_CLOSEDFORM_HPP

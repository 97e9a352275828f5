#ifndef COHOMOLAB_DENSMOD_HPP
#define COHOMOLAB_DENSMOD_HPP

#include <compare>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "cohomolab/multiidx.hpp"
#include "cohomolab/polynomial.hpp"
#include "cohomolab/qlinalg.hpp"
#include "cohomolab/superfunc.hpp"

namespace cohomolab {

struct Weights
{
    std::vector<Rational> lambda;
    Rational mu;

    int n() const { return static_cast<int>(lambda.size()); }
    /// mu - sum lambda_i.
    Rational delta() const;
    /// delta - |eps|.
    Rational delta_eps(const EpsilonMask& e) const { return delta() - e.total(); }
};

/// Generators of aff(1|1); aff(1) uses the first two.
enum class Generator { X1 = 0, Xx = 1, Xtheta = 2 };

inline int generator_parity(Generator g) { return g == Generator::Xtheta ? 1 : 0; }
ContactField generator_field(Generator g);
const char* generator_name(Generator g);

struct TruncationSpec
{
    int max_order = 0;
    int max_degree = 0;
};

enum class ModuleKind { classical, super };

class InvalidTruncation : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A classical truncation with caps (K, M) produces a spurious H^1 class at
/// |alpha| = delta + M + 1: killing it needs a coefficient of degree M + 1.
/// Valid iff no such level lies within the order cap.
bool classical_truncation_valid(const Weights& w, const TruncationSpec& t);

/// (eps, theta-flag, alpha); classical sectors have eps = 0 and theta = 0.
struct SectorKey
{
    EpsilonMask eps;
    int theta = 0;
    MultiIndex alpha;

    int parity() const { return (eps.parity() + theta) % 2; }
    friend bool operator==(const SectorKey&, const SectorKey&) = default;
    friend std::strong_ordering operator<=>(const SectorKey&, const SectorKey&) = default;
};

/// x^degree theta^h H_eps^(alpha).
struct OperatorMonomial
{
    SectorKey sector;
    int degree = 0;

    int parity() const { return sector.parity(); }
    friend bool operator==(const OperatorMonomial&, const OperatorMonomial&) = default;
    friend std::strong_ordering operator<=>(const OperatorMonomial&, const OperatorMonomial&) = default;
};

/// Eigenvalue of X_x on a monomial: degree + delta_eps + h/2 - |alpha|.
Rational monomial_weight(const OperatorMonomial& m, const Weights& w);

using MonomialCombination = std::vector<std::pair<OperatorMonomial, Rational>>;

/// g . m for a single basis monomial. Classical monomials are acted on by
/// X_1 and X_x only.
MonomialCombination act_monomial(Generator g, const OperatorMonomial& m, const Weights& w);

/// A(F_1, ..., F_n) = sum_alpha a_alpha(x) F^(alpha).
class NaryOperator
{
public:
    NaryOperator() = default;
    explicit NaryOperator(Weights w) : weights_(std::move(w)) {}

    const Weights& weights() const { return weights_; }
    int n() const { return weights_.n(); }
    const std::map<MultiIndex, Polynomial>& terms() const { return terms_; }
    void add_term(const MultiIndex& alpha, const Polynomial& coeff);
    /// max |alpha| over stored terms, -1 for the zero operator.
    int order() const;
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const NaryOperator& a, const NaryOperator& b)
    {
        return a.weights_.lambda == b.weights_.lambda && a.weights_.mu == b.weights_.mu && a.terms_ == b.terms_;
    }

private:
    Weights weights_;
    std::map<MultiIndex, Polynomial> terms_;
};

/// Homogeneous operator on F_i = f_i + theta g_i with sectors
/// a(x) theta^h H_eps^(alpha), H_eps^(alpha) = prod h_i^(alpha_i), h_i = f_i or g_i.
class SuperNaryOperator
{
public:
    SuperNaryOperator() = default;
    SuperNaryOperator(Weights w, int parity) : weights_(std::move(w)), parity_(parity) {}

    const Weights& weights() const { return weights_; }
    int n() const { return weights_.n(); }
    int parity() const { return parity_; }
    const std::map<SectorKey, Polynomial>& terms() const { return terms_; }
    /// Throws std::invalid_argument when the sector parity disagrees.
    void add_term(const SectorKey& key, const Polynomial& coeff);
    void add_monomial(const OperatorMonomial& m, const Rational& c);
    int order() const;
    bool is_zero() const { return terms_.empty(); }
    /// Sparse coordinates in monomials.
    MonomialCombination monomials() const;

    friend bool operator==(const SuperNaryOperator& a, const SuperNaryOperator& b)
    {
        return a.weights_.lambda == b.weights_.lambda && a.weights_.mu == b.weights_.mu &&
               a.parity_ == b.parity_ && a.terms_ == b.terms_;
    }

private:
    Weights weights_;
    int parity_ = 0;
    std::map<SectorKey, Polynomial> terms_;
};

SuperNaryOperator to_super(const NaryOperator& a);
/// Throws std::invalid_argument if some sector is not classical.
NaryOperator to_classical(const SuperNaryOperator& a);

Polynomial eval_operator(const NaryOperator& a, const std::vector<Polynomial>& inputs);
SuperFunction eval_operator(const SuperNaryOperator& a, const std::vector<SuperFunction>& inputs);

NaryOperator act_classical(Generator g, const NaryOperator& a);
SuperNaryOperator act_super(Generator g, const SuperNaryOperator& a);

/// Monomials with |alpha| <= max_order and degree <= max_degree, in basis order.
std::vector<OperatorMonomial> monomial_basis(int n, int max_order, int max_degree, ModuleKind kind);

struct ModuleRealization
{
    Weights weights;
    TruncationSpec truncation;
    ModuleKind kind = ModuleKind::classical;
    std::vector<OperatorMonomial> domain;
    /// Equal to domain for classical modules; one order level higher for super.
    std::vector<OperatorMonomial> codomain;
    /// actions[g] : domain -> codomain, one per generator.
    std::vector<Eigen::SparseMatrix<Rational>> actions;

    int n() const { return weights.n(); }
    int generator_count() const { return kind == ModuleKind::super ? 3 : 2; }
    const Eigen::SparseMatrix<Rational>& action(Generator g) const { return actions[static_cast<std::size_t>(g)]; }
    Index domain_index(const OperatorMonomial& m) const;
    Index codomain_index(const OperatorMonomial& m) const;
    int parity(Index i) const { return domain[static_cast<std::size_t>(i)].parity(); }
    Rational weight(Index i) const { return monomial_weight(domain[static_cast<std::size_t>(i)], weights); }
};

enum class TruncationPolicy { enforce, allow_invalid };

/// Throws InvalidTruncation for negative caps, or for a classical truncation
/// that fails classical_truncation_valid under the enforce policy.
ModuleRealization realize_module(const Weights& w, const TruncationSpec& t, ModuleKind kind,
                                 TruncationPolicy policy = TruncationPolicy::enforce);

}  // namespace cohomolab

#endif  // COHOMOLAB_DENSMOD_HPP

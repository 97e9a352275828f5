#ifndef COHOMOLAB_COHOMO_HPP
#define COHOMOLAB_COHOMO_HPP

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cohomolab/densmod.hpp"

namespace cohomolab {

/// Finite-dimensional Lie superalgebra given by structure constants.
/// Generator i acts on modules through Generator(i), so presentations list
/// a prefix of X_1, X_x, X_theta.
class AlgebraPresentation
{
public:
    using Bracket = std::vector<Rational>;  // coefficients over generators

    /// Checks super antisymmetry, parity of brackets, the super Jacobi
    /// identity, and that ad(grading generator) is diagonal.
    AlgebraPresentation(std::string name, std::vector<std::string> names, std::vector<int> parities,
                        std::vector<std::vector<Bracket>> structure, int grading);

    static AlgebraPresentation aff1();
    static AlgebraPresentation aff11();

    const std::string& name() const { return name_; }
    int size() const { return static_cast<int>(names_.size()); }
    const std::string& generator_name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    int parity(int i) const { return parities_[static_cast<std::size_t>(i)]; }
    Generator generator(int i) const { return static_cast<Generator>(i); }
    const Bracket& bracket(int i, int j) const { return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    int grading() const { return grading_; }
    /// -(eigenvalue of ad(grading) on generator i): the shift a cochain value
    /// at generator i contributes to the cochain weight.
    Rational dual_weight(int i) const;
    /// Basis of the super exterior square: (i, j) with i < j, then (i, i) for odd i.
    std::vector<std::pair<int, int>> square_basis() const;

private:
    std::string name_;
    std::vector<std::string> names_;
    std::vector<int> parities_;
    std::vector<std::vector<Bracket>> c_;
    int grading_;
};

struct Cochain1
{
    int parity = 0;
    std::vector<SuperNaryOperator> values;  // values[i] has parity parity + |g_i|

    bool is_zero() const;
    friend bool operator==(const Cochain1&, const Cochain1&) = default;
};

struct Cochain2
{
    int parity = 0;
    std::vector<std::pair<std::pair<int, int>, SuperNaryOperator>> values;

    bool is_zero() const;
};

/// Zero cochain of the given parity.
Cochain1 zero_cochain(const AlgebraPresentation& alg, const Weights& w, int parity);

/// g -> (-1)^{|g||v|} g . v
Cochain1 coboundary0(const AlgebraPresentation& alg, const SuperNaryOperator& v);

/// (g_i, g_j) -> (-1)^{|g_i||c|} g_i.c(g_j) - (-1)^{|g_j|(|g_i|+|c|)} g_j.c(g_i) - c([g_i, g_j])
Cochain2 coboundary1(const AlgebraPresentation& alg, const Cochain1& c);

/// (a . c)(x) = a . c(x) - (-1)^{|a||c|} c([a, x])
Cochain1 derived_action(const AlgebraPresentation& alg, int a, const Cochain1& c);

class WindowTooSmall : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class NotACocycle : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

enum class ParitySelector { even, odd, both };

struct Caps
{
    int order = 0;
    int degree = 0;
    friend bool operator==(const Caps&, const Caps&) = default;
};

/// Truncation levels of the three cochain spaces.
struct WindowLevels
{
    Caps c0;
    Caps c1;
    Caps c2;
};

struct CohomologyReport
{
    Index dim_Z1 = 0;
    Index dim_B1 = 0;
    Index dim_H1 = 0;
    std::array<Index, 2> h1_by_parity{0, 0};
    /// Nonzero H^1 contributions keyed by cochain weight.
    std::map<Rational, Index> h1_by_weight;
    std::vector<Cochain1> representatives;
    WindowLevels window;
};

struct H1Options
{
    ParitySelector parity = ParitySelector::both;
    bool representatives = false;
    /// Only meaningful for classical modules; lets the regression run on an
    /// invalid truncation.
    TruncationPolicy policy = TruncationPolicy::enforce;
};

/// Smallest admissible window for the super complex: ceil(delta) + 2.
int minimal_window(const Weights& w);

/// Windows used for a module: classical complexes live at the module caps;
/// super complexes take C^1 at (B, M), C^2 at (B + 1, M) and coboundary
/// sources at (B + 1, M + 1), keeping only the part of the image inside C^1.
WindowLevels window_levels(const ModuleRealization& mod);

/// H^1 of alg with coefficients in the realized module. Classical modules
/// pair with aff(1), super modules with aff(1|1); the window B is the
/// module's max_order.
CohomologyReport h1(const AlgebraPresentation& alg, const ModuleRealization& mod, const H1Options& opt = {});

/// Some b with coboundary0(b) == c, searched with sources at the window
/// level (enlarged to cover c itself); nullopt when none exists there.
/// Throws NotACocycle when coboundary1(c) != 0.
std::optional<SuperNaryOperator> is_coboundary(const AlgebraPresentation& alg, const Cochain1& c,
                                               const ModuleRealization& mod);

/// Rank of the given cochains modulo the coboundaries that lie in the
/// window, i.e. the dimension of their span in the computed H^1. Throws
/// std::invalid_argument if a cochain leaves the C^1 window.
Index rank_modulo_coboundaries(const AlgebraPresentation& alg, const ModuleRealization& mod,
                               const std::vector<Cochain1>& family);

/// H^1(alg, sub; V) computed as cocycles vanishing on sub modulo coboundaries
/// of sub-invariant elements. sub must be the presentation prefix aff(1).
CohomologyReport relative_h1(const AlgebraPresentation& alg, const AlgebraPresentation& sub,
                             const ModuleRealization& mod, ParitySelector parity = ParitySelector::both);

/// Joint kernel of X_1 and X_x on a classical realization.
std::vector<NaryOperator> invariant_operators(const ModuleRealization& mod);

}  // namespace cohomolab

#endif  // COHOMOLAB_COHOMO_HPP

#ifndef COHOMOLAB_MULTIIDX_HPP
#define COHOMOLAB_MULTIIDX_HPP

#include <compare>
#include <optional>
#include <ostream>
#include <vector>

#include "cohomolab/rational.hpp"

namespace cohomolab {

// Positions are 1-based throughout this header, as in the index notation
// alpha^i, eps^i, xi^i. Out-of-range positions throw std::out_of_range.

/// alpha = (alpha_1, ..., alpha_n) in N^n.
class MultiIndex
{
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)); }

    int size() const { return static_cast<int>(e_.size()); }
    int total() const;
    /// 1-based access.
    int at(int i) const;
    const std::vector<int>& entries() const { return e_; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    /// Graded lexicographic: total first, then ascending lex.
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);
    friend std::ostream& operator<<(std::ostream& os, const MultiIndex& a);

private:
    std::vector<int> e_;
};

/// eps in {0, 1/2}^n, stored doubled as 0/1 flags.
class EpsilonMask
{
public:
    EpsilonMask() = default;
    explicit EpsilonMask(std::vector<int> flags);
    static EpsilonMask zero(int n) { return EpsilonMask(std::vector<int>(static_cast<std::size_t>(n), 0)); }

    int size() const { return static_cast<int>(f_.size()); }
    /// 1-based access to the doubled flag.
    int flag(int i) const;
    const std::vector<int>& flags() const { return f_; }
    /// 2|eps|.
    int doubled_total() const;
    Rational total() const { return Rational(doubled_total(), 2); }
    /// Class E iff |eps| is an integer.
    bool in_class_e() const { return doubled_total() % 2 == 0; }
    /// Parity 2|eps| mod 2 of the sector Omega_eps.
    int parity() const { return doubled_total() % 2; }

    friend bool operator==(const EpsilonMask&, const EpsilonMask&) = default;
    /// Doubled total first, then lex on the flags.
    friend std::strong_ordering operator<=>(const EpsilonMask& a, const EpsilonMask& b);
    friend std::ostream& operator<<(std::ostream& os, const EpsilonMask& e);

private:
    std::vector<int> f_;
};

enum class MaskClass { E, O };

MultiIndex alpha_up(const MultiIndex& a, int i);
std::optional<MultiIndex> alpha_down(const MultiIndex& a, int i);

/// alpha^i_eps: alpha^i when eps_i = 1/2, alpha when eps_i = 0.
MultiIndex alpha_theta_up(const MultiIndex& a, const EpsilonMask& e, int i);
/// Inverse companion: alpha^{i-bar} when eps_i = 0, alpha when eps_i = 1/2, so
/// that alpha_theta_up(alpha_theta_down(a, e, i), eps_flip(e, i), i) == a.
std::optional<MultiIndex> alpha_theta_down(const MultiIndex& a, const EpsilonMask& e, int i);

EpsilonMask eps_flip(const EpsilonMask& e, int i);

/// xi^i_eps = (-1)^{2 sum_{j<i} eps_j}.
int xi_sign(const EpsilonMask& e, int i);

/// (-1)^{sum_{j<i} p_j} for slot parities p.
int tensor_koszul_sign(const std::vector<int>& parities, int i);

/// All alpha in N^n with |alpha| = total, ascending lex.
std::vector<MultiIndex> enumerate_alphas(int n, int total);
/// All alpha with |alpha| <= max_total in graded-lex order.
std::vector<MultiIndex> enumerate_alphas_upto(int n, int max_total);
/// Masks of one class in lex order of the flags.
std::vector<EpsilonMask> enumerate_masks(int n, MaskClass cls);
/// All 2^n masks sorted by (doubled total, lex).
std::vector<EpsilonMask> enumerate_all_masks(int n);

}  // namespace cohomolab

#endif  // COHOMOLAB_MULTIIDX_HPP

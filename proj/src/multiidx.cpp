#include "cohomolab/multiidx.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cohomolab {

namespace {

void check_position(int i, int n)
{
    if (i < 1 || i > n)
        throw std::out_of_range("position " + std::to_string(i) + " outside 1.." + std::to_string(n));
}

void print_list(std::ostream& os, const std::vector<int>& v)
{
    os << "(";
    for (std::size_t k = 0; k < v.size(); ++k)
        os << (k ? "," : "") << v[k];
    os << ")";
}

void alphas_rec(int n, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out)
{
    const auto pos = cur.size();
    if (static_cast<int>(pos) == n - 1) {
        cur.push_back(remaining);
        out.emplace_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        cur.push_back(v);
        alphas_rec(n, remaining - v, cur, out);
        cur.pop_back();
    }
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries))
{
    for (int v : e_)
        if (v < 0)
            throw std::invalid_argument("multi-index entries must be non-negative");
}

int MultiIndex::total() const { return std::accumulate(e_.begin(), e_.end(), 0); }

int MultiIndex::at(int i) const
{
    check_position(i, size());
    return e_[static_cast<std::size_t>(i - 1)];
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b)
{
    if (auto c = a.total() <=> b.total(); c != 0)
        return c;
    return a.e_ <=> b.e_;
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& a)
{
    print_list(os, a.e_);
    return os;
}

EpsilonMask::EpsilonMask(std::vector<int> flags) : f_(std::move(flags))
{
    for (int v : f_)
        if (v != 0 && v != 1)
            throw std::invalid_argument("epsilon flags must be 0 or 1");
}

int EpsilonMask::flag(int i) const
{
    check_position(i, size());
    return f_[static_cast<std::size_t>(i - 1)];
}

int EpsilonMask::doubled_total() const { return std::accumulate(f_.begin(), f_.end(), 0); }

std::strong_ordering operator<=>(const EpsilonMask& a, const EpsilonMask& b)
{
    if (auto c = a.doubled_total() <=> b.doubled_total(); c != 0)
        return c;
    return a.f_ <=> b.f_;
}

std::ostream& operator<<(std::ostream& os, const EpsilonMask& e)
{
    os << "(";
    for (std::size_t k = 0; k < e.f_.size(); ++k)
        os << (k ? "," : "") << (e.f_[k] ? "1/2" : "0");
    return os << ")";
}

MultiIndex alpha_up(const MultiIndex& a, int i)
{
    check_position(i, a.size());
    auto v = a.entries();
    ++v[static_cast<std::size_t>(i - 1)];
    return MultiIndex(std::move(v));
}

std::optional<MultiIndex> alpha_down(const MultiIndex& a, int i)
{
    check_position(i, a.size());
    auto v = a.entries();
    if (v[static_cast<std::size_t>(i - 1)] == 0)
        return std::nullopt;
    --v[static_cast<std::size_t>(i - 1)];
    return MultiIndex(std::move(v));
}

MultiIndex alpha_theta_up(const MultiIndex& a, const EpsilonMask& e, int i)
{
    check_position(i, a.size());
    return e.flag(i) ? alpha_up(a, i) : a;
}

std::optional<MultiIndex> alpha_theta_down(const MultiIndex& a, const EpsilonMask& e, int i)
{
    check_position(i, a.size());
    if (e.flag(i))
        return a;
    return alpha_down(a, i);
}

EpsilonMask eps_flip(const EpsilonMask& e, int i)
{
    check_position(i, e.size());
    auto v = e.flags();
    v[static_cast<std::size_t>(i - 1)] ^= 1;
    return EpsilonMask(std::move(v));
}

int xi_sign(const EpsilonMask& e, int i)
{
    check_position(i, e.size());
    int s = 0;
    for (int j = 1; j < i; ++j)
        s += e.flag(j);
    return sign_power(s);
}

int tensor_koszul_sign(const std::vector<int>& parities, int i)
{
    check_position(i, static_cast<int>(parities.size()));
    int s = 0;
    for (int j = 0; j < i - 1; ++j)
        s += parities[static_cast<std::size_t>(j)];
    return sign_power(s);
}

std::vector<MultiIndex> enumerate_alphas(int n, int total)
{
    if (n < 1)
        throw std::invalid_argument("enumerate_alphas: n must be at least 1");
    std::vector<MultiIndex> out;
    if (total < 0)
        return out;
    std::vector<int> cur;
    alphas_rec(n, total, cur, out);
    return out;
}

std::vector<MultiIndex> enumerate_alphas_upto(int n, int max_total)
{
    std::vector<MultiIndex> out;
    for (int t = 0; t <= max_total; ++t) {
        auto level = enumerate_alphas(n, t);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<EpsilonMask> enumerate_masks(int n, MaskClass cls)
{
    if (n < 1)
        throw std::invalid_argument("enumerate_masks: n must be at least 1");
    std::vector<EpsilonMask> out;
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
        std::vector<int> f(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            f[static_cast<std::size_t>(k)] = (bits >> (n - 1 - k)) & 1u;
        EpsilonMask m(std::move(f));
        if (m.in_class_e() == (cls == MaskClass::E))
            out.push_back(std::move(m));
    }
    return out;
}

std::vector<EpsilonMask> enumerate_all_masks(int n)
{
    auto out = enumerate_masks(n, MaskClass::E);
    auto odd = enumerate_masks(n, MaskClass::O);
    out.insert(out.end(), odd.begin(), odd.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cohomolab

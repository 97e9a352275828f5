#ifndef COHOMOLAB_QLINALG_HPP
#define COHOMOLAB_QLINALG_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cohomolab/rational.hpp"

namespace cohomolab {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

namespace detail {

template <typename Scalar>
bool is_zero(const Scalar& s)
{
    return s == Scalar(0);
}

inline bool is_zero(const Rational& q) { return q.is_zero(); }

// Scales a row so that every entry is integral; a no-op for scalar types
// without a notion of denominator.
template <typename RowType>
void clear_denominators(RowType&& row)
{
    using Scalar = typename std::decay_t<RowType>::Scalar;
    if constexpr (std::is_same_v<Scalar, Rational>) {
        mpz_class l = 1;
        for (Index j = 0; j < row.size(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row(j).gmp().get_den_mpz_t());
        if (l != 1) {
            const Rational scale{mpq_class(l)};
            for (Index j = 0; j < row.size(); ++j)
                row(j) *= scale;
        }
    }
}

}  // namespace detail

/// Reduced row echelon form together with the pivot columns.
template <typename Scalar>
struct RowEchelon
{
    Matrix<Scalar> reduced;           // rank x cols, pivots normalized to 1
    std::vector<Index> pivot_columns;  // strictly increasing

    Index rank() const { return static_cast<Index>(pivot_columns.size()); }
};

/// Fraction-free (Bareiss) forward elimination followed by exact back
/// substitution. Pivot rule: columns left to right, first row (top down)
/// with a nonzero entry in the current column.
template <typename Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& input)
{
    using Scalar = typename Derived::Scalar;
    Matrix<Scalar> m = input;
    const Index rows = m.rows();
    const Index cols = m.cols();
    for (Index i = 0; i < rows; ++i) {
        auto row = m.row(i);
        detail::clear_denominators(row);
    }

    RowEchelon<Scalar> out;
    Scalar previous(1);
    Index r = 0;
    for (Index j = 0; j < cols && r < rows; ++j) {
        Index p = r;
        while (p < rows && detail::is_zero(m(p, j)))
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            m.row(p).swap(m.row(r));
        const Scalar pivot = m(r, j);
        for (Index i = r + 1; i < rows; ++i) {
            const Scalar factor = m(i, j);
            for (Index k = j + 1; k < cols; ++k) {
                Scalar v = pivot * m(i, k);
                if (!detail::is_zero(factor))
                    v -= factor * m(r, k);
                m(i, k) = v / previous;
            }
            m(i, j) = Scalar(0);
        }
        previous = pivot;
        out.pivot_columns.push_back(j);
        ++r;
    }

    out.reduced = m.topRows(r);
    for (Index i = r - 1; i >= 0; --i) {
        const Index pc = out.pivot_columns[static_cast<std::size_t>(i)];
        const Scalar inv = Scalar(1) / out.reduced(i, pc);
        for (Index k = 0; k < cols; ++k)
            if (!detail::is_zero(out.reduced(i, k)))
                out.reduced(i, k) *= inv;
        for (Index a = 0; a < i; ++a) {
            const Scalar f = out.reduced(a, pc);
            if (detail::is_zero(f))
                continue;
            for (Index k = pc; k < cols; ++k)
                if (!detail::is_zero(out.reduced(i, k)))
                    out.reduced(a, k) -= f * out.reduced(i, k);
        }
    }
    return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m)
{
    return row_echelon(m).rank();
}

/// Basis of the right null space. One vector per non-pivot column f, with a
/// 1 in position f, so the basis is determined by the pivot rule.
template <typename Derived>
std::vector<Vector<typename Derived::Scalar>> kernel_basis(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    const auto ech = row_echelon(m);
    std::vector<Vector<Scalar>> basis;
    std::size_t next_pivot = 0;
    for (Index f = 0; f < m.cols(); ++f) {
        if (next_pivot < ech.pivot_columns.size() && ech.pivot_columns[next_pivot] == f) {
            ++next_pivot;
            continue;
        }
        Vector<Scalar> v = Vector<Scalar>::Constant(m.cols(), Scalar(0));
        v(f) = Scalar(1);
        for (Index i = 0; i < ech.rank(); ++i)
            v(ech.pivot_columns[static_cast<std::size_t>(i)]) = -ech.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with m x = b, or nullopt when the system is inconsistent. Free
/// variables are set to zero.
template <typename Derived, typename OtherDerived>
std::optional<Vector<typename Derived::Scalar>> solve(const Eigen::MatrixBase<Derived>& m,
                                                      const Eigen::MatrixBase<OtherDerived>& b)
{
    using Scalar = typename Derived::Scalar;
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: right-hand side length does not match row count");
    Matrix<Scalar> augmented(m.rows(), m.cols() + 1);
    augmented.leftCols(m.cols()) = m;
    augmented.col(m.cols()) = b;
    const auto ech = row_echelon(augmented);
    if (ech.rank() > 0 && ech.pivot_columns.back() == m.cols())
        return std::nullopt;
    Vector<Scalar> x = Vector<Scalar>::Constant(m.cols(), Scalar(0));
    for (Index i = 0; i < ech.rank(); ++i)
        x(ech.pivot_columns[static_cast<std::size_t>(i)]) = ech.reduced(i, m.cols());
    return x;
}

/// Stacks equal-length vectors as the columns of a matrix.
template <typename Scalar>
Matrix<Scalar> columns_matrix(const std::vector<Vector<Scalar>>& vectors, Index length)
{
    Matrix<Scalar> m = Matrix<Scalar>::Constant(length, static_cast<Index>(vectors.size()), Scalar(0));
    for (std::size_t c = 0; c < vectors.size(); ++c) {
        if (vectors[c].size() != length)
            throw std::invalid_argument("columns_matrix: vector length mismatch");
        m.col(static_cast<Index>(c)) = vectors[c];
    }
    return m;
}

/// dim span(ambient) - dim span(sub). Throws std::invalid_argument when some
/// vector of sub lies outside span(ambient).
template <typename Scalar>
Index quotient_dimension(const std::vector<Vector<Scalar>>& sub, const std::vector<Vector<Scalar>>& ambient)
{
    Index length = 0;
    if (!ambient.empty())
        length = ambient.front().size();
    else if (!sub.empty())
        length = sub.front().size();
    const Index amb_rank = rank(columns_matrix(ambient, length));
    const Index sub_rank = rank(columns_matrix(sub, length));
    std::vector<Vector<Scalar>> both = ambient;
    both.insert(both.end(), sub.begin(), sub.end());
    if (rank(columns_matrix(both, length)) != amb_rank)
        throw std::invalid_argument("quotient_dimension: subspace is not contained in the ambient span");
    return amb_rank - sub_rank;
}

// ---------------------------------------------------------------------------
// Sparse exact elimination. The complexes built by the cohomology engine have
// thousands of columns with a handful of nonzeros each; dense elimination is
// hopeless there.

template <typename Scalar>
using SparseVector = std::vector<std::pair<Index, Scalar>>;  // sorted by index, no zeros

/// y + a * x, both sorted. Takes y by value so callers can move it in.
template <typename Scalar>
SparseVector<Scalar> sparse_axpy(SparseVector<Scalar> y, const Scalar& a, const SparseVector<Scalar>& x)
{
    SparseVector<Scalar> out;
    out.reserve(y.size() + x.size());
    auto iy = y.begin();
    auto ix = x.begin();
    while (iy != y.end() || ix != x.end()) {
        if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
            out.push_back(std::move(*iy++));
        } else if (iy == y.end() || ix->first < iy->first) {
            out.emplace_back(ix->first, a * ix->second);
            ++ix;
        } else {
            iy->second += a * ix->second;
            if (!detail::is_zero(iy->second))
                out.push_back(std::move(*iy));
            ++iy;
            ++ix;
        }
    }
    return out;
}

/// Builds a sorted sparse vector from unsorted (index, value) pairs, summing
/// duplicates and dropping zeros.
template <typename Scalar>
SparseVector<Scalar> make_sparse(std::vector<std::pair<Index, Scalar>> entries)
{
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector<Scalar> out;
    for (auto& [i, v] : entries) {
        if (!out.empty() && out.back().first == i)
            out.back().second += v;
        else
            out.emplace_back(i, std::move(v));
        if (detail::is_zero(out.back().second))
            out.pop_back();
    }
    return out;
}

/// Incremental column echelon over an exact field. Columns are inserted one
/// at a time; each stored column is normalized so its leading entry (lowest
/// row index) is 1 and no two stored columns share a leading index. With
/// relation tracking enabled, every dependent column yields a kernel vector
/// expressed in the ordinals of the inserted columns; the relations of all
/// dependent columns form a basis of the kernel, identical to the one
/// kernel_basis produces for the same columns.
template <typename Scalar>
class SparseColumnEchelon
{
public:
    explicit SparseColumnEchelon(bool track_relations = false) : track_(track_relations) {}

    struct SolveResult
    {
        std::optional<SparseVector<Scalar>> solution;  // in column ordinals
        std::optional<Index> inconsistent_row;          // set when no solution exists
    };

    /// Returns true when the column is independent of those inserted before.
    bool insert(SparseVector<Scalar> column)
    {
        const Index ordinal = inserted_++;
        SparseVector<Scalar> combo;
        if (track_)
            combo.emplace_back(ordinal, Scalar(1));
        eliminate_leading(column, combo);
        if (column.empty()) {
            if (track_)
                relations_.push_back(std::move(combo));
            return false;
        }
        const Scalar inv = Scalar(1) / column.front().second;
        for (auto& e : column)
            e.second *= inv;
        for (auto& e : combo)
            e.second *= inv;
        pivot_of_.emplace(column.front().first, stored_.size());
        stored_.push_back({std::move(column), std::move(combo)});
        independent_.push_back(ordinal);
        return true;
    }

    Index rank() const { return static_cast<Index>(stored_.size()); }
    Index inserted() const { return inserted_; }
    const std::vector<SparseVector<Scalar>>& relations() const { return relations_; }
    const std::vector<Index>& independent_ordinals() const { return independent_; }

    /// Normal form of v modulo the span: every index carrying a pivot is
    /// cleared. Deterministic given the insertion order.
    SparseVector<Scalar> reduce(SparseVector<Scalar> v) const
    {
        std::size_t pos = 0;
        while (pos < v.size()) {
            const Index idx = v[pos].first;
            const auto it = pivot_of_.find(idx);
            if (it == pivot_of_.end()) {
                ++pos;
                continue;
            }
            const Scalar f = -v[pos].second;
            v = sparse_axpy(std::move(v), f, stored_[it->second].vector);
            pos = static_cast<std::size_t>(
                std::lower_bound(v.begin(), v.end(), idx,
                                 [](const auto& e, Index key) { return e.first < key; }) -
                v.begin());
        }
        return v;
    }

    bool contains(const SparseVector<Scalar>& v) const { return reduce(v).empty(); }

    /// Expresses b as a combination of inserted columns. Requires relation
    /// tracking. The solution is supported on independent columns only.
    SolveResult solve(SparseVector<Scalar> b) const
    {
        if (!track_)
            throw std::logic_error("SparseColumnEchelon::solve requires relation tracking");
        SparseVector<Scalar> combo;
        while (!b.empty()) {
            const auto it = pivot_of_.find(b.front().first);
            if (it == pivot_of_.end())
                return {std::nullopt, b.front().first};
            const Scalar f = b.front().second;
            const auto& row = stored_[it->second];
            b = sparse_axpy(std::move(b), Scalar(-f), row.vector);
            combo = sparse_axpy(std::move(combo), f, row.combo);
        }
        return {std::move(combo), std::nullopt};
    }

private:
    struct StoredColumn
    {
        SparseVector<Scalar> vector;
        SparseVector<Scalar> combo;
    };

    void eliminate_leading(SparseVector<Scalar>& v, SparseVector<Scalar>& combo) const
    {
        while (!v.empty()) {
            const auto it = pivot_of_.find(v.front().first);
            if (it == pivot_of_.end())
                return;
            const Scalar f = -v.front().second;
            const auto& row = stored_[it->second];
            v = sparse_axpy(std::move(v), f, row.vector);
            if (track_)
                combo = sparse_axpy(std::move(combo), f, row.combo);
        }
    }

    bool track_;
    Index inserted_ = 0;
    std::vector<StoredColumn> stored_;
    std::unordered_map<Index, std::size_t> pivot_of_;
    std::vector<SparseVector<Scalar>> relations_;
    std::vector<Index> independent_;
};

/// Rank of a list of sparse columns.
template <typename Scalar>
Index sparse_rank(const std::vector<SparseVector<Scalar>>& columns)
{
    SparseColumnEchelon<Scalar> ech;
    for (const auto& c : columns)
        ech.insert(c);
    return ech.rank();
}

}  // namespace cohomolab

#endif  // COHOMOLAB_QLINALG_HPP

#include "cohomolab/cohomo.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cohomolab {

namespace {

void add_scaled(SuperNaryOperator& dst, const SuperNaryOperator& src, const Rational& s)
{
    if (s.is_zero())
        return;
    for (const auto& [m, c] : src.monomials())
        dst.add_monomial(m, s * c);
}

const Weights& cochain_weights(const Cochain1& c)
{
    if (c.values.empty())
        throw std::invalid_argument("cochain without values");
    return c.values.front().weights();
}

// Coordinate of a cochain space: value slot (generator or pair index) and monomial.
struct Coord
{
    int slot;
    OperatorMonomial m;
    friend bool operator==(const Coord&, const Coord&) = default;
    friend std::strong_ordering operator<=>(const Coord&, const Coord&) = default;
};

class Indexer
{
public:
    Index get(const Coord& c)
    {
        const auto [it, inserted] = map_.try_emplace(c, static_cast<Index>(map_.size()));
        return it->second;
    }
    Index size() const { return static_cast<Index>(map_.size()); }

private:
    std::map<Coord, Index> map_;
};


struct Engine
{
    const AlgebraPresentation& alg;
    const Weights& w;
    ModuleKind kind;
    WindowLevels levels;

    SparseVector<Rational> d0_column(const OperatorMonomial& v, int q, Indexer& rows) const
    {
        std::vector<std::pair<Index, Rational>> entries;
        for (int i = 0; i < alg.size(); ++i) {
            const Rational s(sign_power(q * alg.parity(i)));
            for (auto& [t, c] : act_monomial(alg.generator(i), v, w))
                entries.emplace_back(rows.get({i, t}), s * c);
        }
        return make_sparse(std::move(entries));
    }

    SparseVector<Rational> d1_column(const Coord& coord, int q, const std::vector<std::pair<int, int>>& pairs,
                                     Indexer& rows) const
    {
        std::vector<std::pair<Index, Rational>> entries;
        const int g = coord.slot;
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const auto [i, j] = pairs[pi];
            const int slot = static_cast<int>(pi);
            if (j == g) {
                const Rational s(sign_power(alg.parity(i) * q));
                for (auto& [t, c] : act_monomial(alg.generator(i), coord.m, w))
                    entries.emplace_back(rows.get({slot, t}), s * c);
            }
            if (i == g) {
                const Rational s(-sign_power(alg.parity(j) * (alg.parity(i) + q)));
                for (auto& [t, c] : act_monomial(alg.generator(j), coord.m, w))
                    entries.emplace_back(rows.get({slot, t}), s * c);
            }
            const auto& br = alg.bracket(i, j)[static_cast<std::size_t>(g)];
            if (!br.is_zero())
                entries.emplace_back(rows.get({slot, coord.m}), -br);
        }
        return make_sparse(std::move(entries));
    }
};

struct Block
{
    std::vector<OperatorMonomial> sources;
    std::vector<Coord> cochains;
};

struct BlockResult
{
    Index z = 0;
    Index b = 0;
    std::vector<SparseVector<Rational>> representatives;  // in cochain ordinals
};

std::map<Rational, Block> build_blocks(const Engine& e, int q, const std::function<bool(int)>& slot_allowed)
{
    std::map<Rational, Block> blocks;
    for (auto& m : monomial_basis(e.w.n(), e.levels.c0.order, e.levels.c0.degree, e.kind))
        if (m.parity() == q)
            blocks[monomial_weight(m, e.w)].sources.push_back(m);
    const auto c1 = monomial_basis(e.w.n(), e.levels.c1.order, e.levels.c1.degree, e.kind);
    for (int i = 0; i < e.alg.size(); ++i) {
        if (!slot_allowed(i))
            continue;
        const int p = (q + e.alg.parity(i)) % 2;
        for (const auto& m : c1)
            if (m.parity() == p)
                blocks[monomial_weight(m, e.w) + e.alg.dual_weight(i)].cochains.push_back({i, m});
    }
    return blocks;
}

// Combinations of d0 columns whose outside part vanishes.
std::vector<SparseVector<Rational>> coboundaries_from(const SparseColumnEchelon<Rational>& outside,
                                                      const std::vector<SparseVector<Rational>>& columns)
{
    std::vector<SparseVector<Rational>> out;
    for (const auto& rel : outside.relations()) {
        SparseVector<Rational> u;
        for (const auto& [k, c] : rel)
            u = sparse_axpy(std::move(u), c, columns[static_cast<std::size_t>(k)]);
        out.push_back(std::move(u));
    }
    return out;
}

// Spanning set of the window coboundaries of a block, in cochain ordinals.
std::vector<SparseVector<Rational>> window_coboundaries(const Engine& e, int q, const Block& block)
{
    const auto n1 = static_cast<Index>(block.cochains.size());
    Indexer rows;
    for (const auto& c : block.cochains)
        rows.get(c);
    SparseColumnEchelon<Rational> outside(true);
    std::vector<SparseVector<Rational>> columns;
    for (const auto& v : block.sources) {
        auto col = e.d0_column(v, q, rows);
        SparseVector<Rational> out;
        for (const auto& entry : col)
            if (entry.first >= n1)
                out.push_back(entry);
        outside.insert(std::move(out));
        columns.push_back(std::move(col));
    }
    return coboundaries_from(outside, columns);
}

// Cocycles among the block's cochain coordinates, modulo those coboundaries of
// block sources whose image lies entirely in the cochain coordinates.
BlockResult solve_block(const Engine& e, int q, const Block& block, bool want_reps)
{
    BlockResult r;
    const auto n1 = static_cast<Index>(block.cochains.size());
    if (n1 == 0)
        return r;

    const auto pairs = e.alg.square_basis();
    Indexer d1_rows;
    SparseColumnEchelon<Rational> d1(want_reps);
    for (const auto& c : block.cochains)
        d1.insert(e.d1_column(c, q, pairs, d1_rows));
    r.z = n1 - d1.rank();

    Indexer d0_rows;
    for (const auto& c : block.cochains)
        d0_rows.get(c);
    SparseColumnEchelon<Rational> full;
    SparseColumnEchelon<Rational> outside(want_reps);
    std::vector<SparseVector<Rational>> columns;
    for (const auto& v : block.sources) {
        auto col = e.d0_column(v, q, d0_rows);
        SparseVector<Rational> out;
        for (const auto& entry : col)
            if (entry.first >= n1)
                out.push_back(entry);
        full.insert(col);
        outside.insert(std::move(out));
        if (want_reps)
            columns.push_back(std::move(col));
    }
    r.b = full.rank() - outside.rank();
    if (r.b > r.z)
        throw std::logic_error("coboundary space exceeds cocycle space");

    if (want_reps && r.z > r.b) {
        SparseColumnEchelon<Rational> bspace;
        for (auto& u : coboundaries_from(outside, columns))
            bspace.insert(std::move(u));
        SparseColumnEchelon<Rational> span = bspace;
        for (const auto& z : d1.relations()) {
            if (!span.insert(z))
                continue;
            r.representatives.push_back(bspace.reduce(z));
        }
    }
    return r;
}

Cochain1 cochain_from_coords(const AlgebraPresentation& alg, const Weights& w, int q,
                             const std::vector<Coord>& coords, const SparseVector<Rational>& v)
{
    Cochain1 c = zero_cochain(alg, w, q);
    for (const auto& [k, x] : v) {
        const auto& coord = coords[static_cast<std::size_t>(k)];
        c.values[static_cast<std::size_t>(coord.slot)].add_monomial(coord.m, x);
    }
    return c;
}

std::vector<int> selected_parities(ParitySelector p)
{
    switch (p) {
    case ParitySelector::even:
        return {0};
    case ParitySelector::odd:
        return {1};
    case ParitySelector::both:
        break;
    }
    return {0, 1};
}

void check_pairing(const AlgebraPresentation& alg, const ModuleRealization& mod)
{
    const int expected = mod.kind == ModuleKind::super ? 3 : 2;
    if (alg.size() != expected)
        throw std::invalid_argument("algebra " + alg.name() + " does not match the module kind");
}

void check_window(const ModuleRealization& mod)
{
    if (mod.kind != ModuleKind::super)
        return;
    const int need = minimal_window(mod.weights);
    if (mod.truncation.max_order < need)
        throw WindowTooSmall("window level " + std::to_string(mod.truncation.max_order) +
                             " below ceil(delta) + 2 = " + std::to_string(need));
}

}  // namespace

AlgebraPresentation::AlgebraPresentation(std::string name, std::vector<std::string> names, std::vector<int> parities,
                                         std::vector<std::vector<Bracket>> structure, int grading)
    : name_(std::move(name)), names_(std::move(names)), parities_(std::move(parities)), c_(std::move(structure)),
      grading_(grading)
{
    const int n = size();
    if (static_cast<int>(parities_.size()) != n || static_cast<int>(c_.size()) != n || n > 3)
        throw std::invalid_argument("malformed presentation");
    for (const auto& row : c_) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("malformed structure constants");
        for (const auto& b : row)
            if (static_cast<int>(b.size()) != n)
                throw std::invalid_argument("malformed structure constants");
    }
    if (grading_ < 0 || grading_ >= n || parities_[static_cast<std::size_t>(grading_)] != 0)
        throw std::invalid_argument("grading generator must be an even generator");

    auto sgn = [&](int i, int j) { return Rational(sign_power(parity(i) * parity(j))); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const auto& cij = bracket(i, j)[static_cast<std::size_t>(k)];
                if (cij != -sgn(i, j) * bracket(j, i)[static_cast<std::size_t>(k)])
                    throw std::invalid_argument("structure constants are not super antisymmetric");
                if (!cij.is_zero() && parity(k) != (parity(i) + parity(j)) % 2)
                    throw std::invalid_argument("bracket does not respect parity");
            }

    // [x, y] as a vector, for x, y given in coordinates
    auto br = [&](const Bracket& x, const Bracket& y) {
        Bracket out(static_cast<std::size_t>(n), Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Rational s = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
                if (s.is_zero())
                    continue;
                for (int k = 0; k < n; ++k)
                    out[static_cast<std::size_t>(k)] += s * bracket(i, j)[static_cast<std::size_t>(k)];
            }
        return out;
    };
    auto unit = [&](int i) {
        Bracket e(static_cast<std::size_t>(n), Rational(0));
        e[static_cast<std::size_t>(i)] = Rational(1);
        return e;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const auto a = br(unit(i), bracket(j, k));
                const auto b = br(unit(j), bracket(k, i));
                const auto c = br(unit(k), bracket(i, j));
                for (int l = 0; l < n; ++l) {
                    const auto idx = static_cast<std::size_t>(l);
                    if (!(sgn(i, k) * a[idx] + sgn(j, i) * b[idx] + sgn(k, j) * c[idx]).is_zero())
                        throw std::invalid_argument("structure constants violate the super Jacobi identity");
                }
            }

    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (k != i && !bracket(grading_, i)[static_cast<std::size_t>(k)].is_zero())
                throw std::invalid_argument("grading generator must act diagonally");
}

AlgebraPresentation AlgebraPresentation::aff1()
{
    const Rational z(0);
    // [X_1, X_x] = X_1
    return AlgebraPresentation("aff1", {"X_1", "X_x"}, {0, 0},
                               {{{z, z}, {Rational(1), z}}, {{Rational(-1), z}, {z, z}}}, 1);
}

AlgebraPresentation AlgebraPresentation::aff11()
{
    const Rational z(0);
    const Rational h(1, 2);
    // [X_1, X_x] = X_1, [X_x, X_theta] = -1/2 X_theta, [X_theta, X_theta] = 1/2 X_1
    return AlgebraPresentation("aff11", {"X_1", "X_x", "X_theta"}, {0, 0, 1},
                               {{{z, z, z}, {Rational(1), z, z}, {z, z, z}},
                                {{Rational(-1), z, z}, {z, z, z}, {z, z, -h}},
                                {{z, z, z}, {z, z, h}, {h, z, z}}},
                               1);
}

Rational AlgebraPresentation::dual_weight(int i) const
{
    return -bracket(grading_, i)[static_cast<std::size_t>(i)];
}

std::vector<std::pair<int, int>> AlgebraPresentation::square_basis() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            out.emplace_back(i, j);
    for (int i = 0; i < size(); ++i)
        if (parity(i) == 1)
            out.emplace_back(i, i);
    return out;
}

bool Cochain1::is_zero() const
{
    return std::all_of(values.begin(), values.end(), [](const auto& v) { return v.is_zero(); });
}

bool Cochain2::is_zero() const
{
    return std::all_of(values.begin(), values.end(), [](const auto& v) { return v.second.is_zero(); });
}

Cochain1 zero_cochain(const AlgebraPresentation& alg, const Weights& w, int parity)
{
    Cochain1 c;
    c.parity = parity;
    for (int i = 0; i < alg.size(); ++i)
        c.values.emplace_back(w, (parity + alg.parity(i)) % 2);
    return c;
}

Cochain1 coboundary0(const AlgebraPresentation& alg, const SuperNaryOperator& v)
{
    Cochain1 c = zero_cochain(alg, v.weights(), v.parity());
    for (int i = 0; i < alg.size(); ++i)
        add_scaled(c.values[static_cast<std::size_t>(i)], act_super(alg.generator(i), v),
                   Rational(sign_power(alg.parity(i) * v.parity())));
    return c;
}

Cochain2 coboundary1(const AlgebraPresentation& alg, const Cochain1& c)
{
    const auto& w = cochain_weights(c);
    const int q = c.parity;
    Cochain2 out;
    out.parity = q;
    for (const auto& [i, j] : alg.square_basis()) {
        SuperNaryOperator v(w, (q + alg.parity(i) + alg.parity(j)) % 2);
        add_scaled(v, act_super(alg.generator(i), c.values[static_cast<std::size_t>(j)]),
                   Rational(sign_power(alg.parity(i) * q)));
        add_scaled(v, act_super(alg.generator(j), c.values[static_cast<std::size_t>(i)]),
                   Rational(-sign_power(alg.parity(j) * (alg.parity(i) + q))));
        const auto& br = alg.bracket(i, j);
        for (int k = 0; k < alg.size(); ++k)
            add_scaled(v, c.values[static_cast<std::size_t>(k)], -br[static_cast<std::size_t>(k)]);
        out.values.push_back({{i, j}, std::move(v)});
    }
    return out;
}

Cochain1 derived_action(const AlgebraPresentation& alg, int a, const Cochain1& c)
{
    const auto& w = cochain_weights(c);
    Cochain1 out = zero_cochain(alg, w, (c.parity + alg.parity(a)) % 2);
    const Rational s(-sign_power(alg.parity(a) * c.parity));
    for (int x = 0; x < alg.size(); ++x) {
        auto& v = out.values[static_cast<std::size_t>(x)];
        add_scaled(v, act_super(alg.generator(a), c.values[static_cast<std::size_t>(x)]), Rational(1));
        const auto& br = alg.bracket(a, x);
        for (int k = 0; k < alg.size(); ++k)
            add_scaled(v, c.values[static_cast<std::size_t>(k)], s * br[static_cast<std::size_t>(k)]);
    }
    return out;
}

int minimal_window(const Weights& w) { return static_cast<int>(w.delta().ceil()) + 2; }

WindowLevels window_levels(const ModuleRealization& mod)
{
    const Caps caps{mod.truncation.max_order, mod.truncation.max_degree};
    if (mod.kind == ModuleKind::classical)
        return {caps, caps, caps};
    return {{caps.order + 1, caps.degree + 1}, caps, {caps.order + 1, caps.degree}};
}

CohomologyReport h1(const AlgebraPresentation& alg, const ModuleRealization& mod, const H1Options& opt)
{
    check_pairing(alg, mod);
    if (mod.kind == ModuleKind::classical && opt.policy == TruncationPolicy::enforce &&
        !classical_truncation_valid(mod.weights, mod.truncation))
        throw InvalidTruncation("invalid truncation for delta = " + mod.weights.delta().str());
    check_window(mod);

    CohomologyReport rep;
    rep.window = window_levels(mod);
    const Engine e{alg, mod.weights, mod.kind, rep.window};
    for (int q : selected_parities(opt.parity)) {
        const auto blocks = build_blocks(e, q, [](int) { return true; });
        for (const auto& [weight, block] : blocks) {
            const auto r = solve_block(e, q, block, opt.representatives);
            rep.dim_Z1 += r.z;
            rep.dim_B1 += r.b;
            const Index h = r.z - r.b;
            rep.h1_by_parity[static_cast<std::size_t>(q)] += h;
            if (h > 0)
                rep.h1_by_weight[weight] += h;
            for (const auto& v : r.representatives)
                rep.representatives.push_back(cochain_from_coords(alg, mod.weights, q, block.cochains, v));
        }
    }
    rep.dim_H1 = rep.dim_Z1 - rep.dim_B1;
    return rep;
}

std::optional<SuperNaryOperator> is_coboundary(const AlgebraPresentation& alg, const Cochain1& c,
                                               const ModuleRealization& mod)
{
    check_pairing(alg, mod);
    if (!coboundary1(alg, c).is_zero())
        throw NotACocycle("is_coboundary: input is not a cocycle");
    const int q = c.parity;
    SuperNaryOperator witness(mod.weights, q);
    if (c.is_zero())
        return witness;

    WindowLevels levels = window_levels(mod);
    for (const auto& v : c.values)
        for (const auto& [m, x] : v.monomials()) {
            levels.c0.order = std::max(levels.c0.order, m.sector.alpha.total());
            levels.c0.degree = std::max(levels.c0.degree, m.degree + 1);
        }
    const Engine e{alg, mod.weights, mod.kind, levels};

    std::map<Rational, std::vector<std::pair<Coord, Rational>>> targets;
    for (int i = 0; i < alg.size(); ++i)
        for (const auto& [m, x] : c.values[static_cast<std::size_t>(i)].monomials())
            targets[monomial_weight(m, mod.weights) + alg.dual_weight(i)].push_back({{i, m}, x});

    std::map<Rational, std::vector<OperatorMonomial>> sources;
    for (auto& m : monomial_basis(mod.n(), levels.c0.order, levels.c0.degree, mod.kind))
        if (m.parity() == q)
            sources[monomial_weight(m, mod.weights)].push_back(m);

    for (const auto& [weight, target] : targets) {
        Indexer rows;
        std::vector<std::pair<Index, Rational>> b;
        for (const auto& [coord, x] : target)
            b.emplace_back(rows.get(coord), x);
        SparseColumnEchelon<Rational> ech(true);
        const auto it = sources.find(weight);
        if (it == sources.end())
            return std::nullopt;
        for (const auto& v : it->second)
            ech.insert(e.d0_column(v, q, rows));
        const auto sol = ech.solve(make_sparse(std::move(b)));
        if (!sol.solution)
            return std::nullopt;
        for (const auto& [k, x] : *sol.solution)
            witness.add_monomial(it->second[static_cast<std::size_t>(k)], x);
    }
    return witness;
}

Index rank_modulo_coboundaries(const AlgebraPresentation& alg, const ModuleRealization& mod,
                               const std::vector<Cochain1>& family)
{
    check_pairing(alg, mod);
    const Engine e{alg, mod.weights, mod.kind, window_levels(mod)};

    Index total = 0;
    for (int q = 0; q <= 1; ++q) {
        std::vector<const Cochain1*> members;
        for (const auto& c : family)
            if (c.parity == q)
                members.push_back(&c);
        if (members.empty())
            continue;

        // global ordinals over the touched blocks; coboundaries first
        std::set<Rational> touched;
        for (const auto* c : members)
            for (int i = 0; i < alg.size(); ++i)
                for (const auto& [m, x] : c->values[static_cast<std::size_t>(i)].monomials())
                    touched.insert(monomial_weight(m, mod.weights) + alg.dual_weight(i));
        const auto blocks = build_blocks(e, q, [](int) { return true; });
        std::map<Coord, Index> ordinal;
        SparseColumnEchelon<Rational> span;
        for (const auto& weight : touched) {
            const auto it = blocks.find(weight);
            if (it == blocks.end())
                throw std::invalid_argument("rank_modulo_coboundaries: cochain leaves the window");
            const Index offset = static_cast<Index>(ordinal.size());
            for (std::size_t k = 0; k < it->second.cochains.size(); ++k)
                ordinal.emplace(it->second.cochains[k], offset + static_cast<Index>(k));
            for (auto u : window_coboundaries(e, q, it->second)) {
                for (auto& entry : u)
                    entry.first += offset;
                span.insert(std::move(u));
            }
        }
        for (const auto* c : members) {
            std::vector<std::pair<Index, Rational>> entries;
            for (int i = 0; i < alg.size(); ++i)
                for (const auto& [m, x] : c->values[static_cast<std::size_t>(i)].monomials()) {
                    const auto it = ordinal.find({i, m});
                    if (it == ordinal.end())
                        throw std::invalid_argument("rank_modulo_coboundaries: cochain leaves the window");
                    entries.emplace_back(it->second, x);
                }
            if (span.insert(make_sparse(std::move(entries))))
                ++total;
        }
    }
    return total;
}

CohomologyReport relative_h1(const AlgebraPresentation& alg, const AlgebraPresentation& sub,
                             const ModuleRealization& mod, ParitySelector parity)
{
    check_pairing(alg, mod);
    if (sub.size() >= alg.size())
        throw std::invalid_argument("relative_h1: subalgebra must be a proper prefix");
    for (int i = 0; i < sub.size(); ++i) {
        if (sub.generator_name(i) != alg.generator_name(i) || sub.parity(i) != alg.parity(i))
            throw std::invalid_argument("relative_h1: subalgebra generators must be a prefix of the algebra");
        for (int j = 0; j < sub.size(); ++j)
            for (int k = 0; k < sub.size(); ++k)
                if (sub.bracket(i, j)[static_cast<std::size_t>(k)] != alg.bracket(i, j)[static_cast<std::size_t>(k)])
                    throw std::invalid_argument("relative_h1: subalgebra brackets disagree");
    }
    check_window(mod);

    CohomologyReport rep;
    rep.window = window_levels(mod);
    const Engine e{alg, mod.weights, mod.kind, rep.window};
    const int first = sub.size();
    for (int q : selected_parities(parity)) {
        const auto blocks = build_blocks(e, q, [first](int i) { return i >= first; });
        for (const auto& [weight, block] : blocks) {
            const auto r = solve_block(e, q, block, false);
            rep.dim_Z1 += r.z;
            rep.dim_B1 += r.b;
            rep.h1_by_parity[static_cast<std::size_t>(q)] += r.z - r.b;
            if (r.z > r.b)
                rep.h1_by_weight[weight] += r.z - r.b;
        }
    }
    rep.dim_H1 = rep.dim_Z1 - rep.dim_B1;
    return rep;
}

std::vector<NaryOperator> invariant_operators(const ModuleRealization& mod)
{
    if (mod.kind != ModuleKind::classical)
        throw std::invalid_argument("invariant_operators needs a classical realization");
    const RationalMatrix x1 = RationalMatrix(mod.action(Generator::X1));
    const RationalMatrix xx = RationalMatrix(mod.action(Generator::Xx));
    RationalMatrix stacked(x1.rows() + xx.rows(), x1.cols());
    stacked.topRows(x1.rows()) = x1;
    stacked.bottomRows(xx.rows()) = xx;

    std::vector<NaryOperator> out;
    for (const auto& v : kernel_basis(stacked)) {
        NaryOperator a(mod.weights);
        for (Index j = 0; j < v.size(); ++j)
            if (!v(j).is_zero()) {
                const auto& m = mod.domain[static_cast<std::size_t>(j)];
                a.add_term(m.sector.alpha, Polynomial::monomial(v(j), m.degree));
            }
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace cohomolab

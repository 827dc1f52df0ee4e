#pragma once

#include <vector>

#include "support/tame_generators.hpp"
#include "tamecx/zigzag.hpp"

namespace tamecx::testing {

inline Profile random_profile(Rng& rng, std::size_t max_k = 4) {
    std::vector<Direction> d;
    for (std::size_t a = uniform(rng, 1, max_k); a > 0; --a) d.push_back(uniform(rng, 0, 1) ? Direction::l : Direction::r);
    return Profile(std::move(d));
}

inline DiscreteZigzag random_zigzag(Field f, const Profile& c, Rng& rng, std::size_t max_total = 5,
                                    std::size_t max_len = 3) {
    std::vector<ChainComplex> s;
    std::vector<ChainMap> m;
    for (std::size_t a = 0; a <= c.k(); ++a) s.push_back(random_complex(f, rng, max_total, max_len));
    for (std::size_t a = 1; a <= c.k(); ++a)
        m.push_back(c.at(a) == Direction::r ? random_chain_map(s[a - 1], s[a], rng)
                                            : random_chain_map(s[a], s[a - 1], rng));
    return {c, std::move(s), std::move(m)};
}

/// Uniformly random natural transformation between zigzags of one profile.
inline ZigzagMorphism random_zigzag_morphism(const DiscreteZigzag& x, const DiscreteZigzag& y, Rng& rng) {
    const Field f = x.field();
    const Profile& c = x.profile();
    std::size_t len = 0;
    for (std::size_t a = 0; a <= c.k(); ++a) len = std::max({len, x.space(a).length(), y.space(a).length()});
    BlockSystem sys(f);
    std::vector<std::vector<std::size_t>> u(c.k() + 1);
    for (std::size_t a = 0; a <= c.k(); ++a)
        for (std::size_t n = 0; n < len; ++n) u[a].push_back(sys.add_unknown(y.space(a).dim(n), x.space(a).dim(n)));
    for (std::size_t a = 0; a <= c.k(); ++a) {
        const auto& cx = x.space(a);
        const auto& cy = y.space(a);
        for (std::size_t n = 0; n + 1 < len; ++n) {
            auto e = sys.add_equation(cy.dim(n), cx.dim(n + 1));
            sys.add_term(e, u[a][n], FieldMatrix::identity(f, cy.dim(n)), cx.d(n));
            sys.add_term(e, u[a][n + 1], -cy.d(n), FieldMatrix::identity(f, cx.dim(n + 1)));
        }
    }
    for (std::size_t a = 1; a <= c.k(); ++a) {
        // from/to are the positions the zigzag map runs between
        const bool right = c.at(a) == Direction::r;
        const std::size_t from = right ? a - 1 : a, to = right ? a : a - 1;
        for (std::size_t n = 0; n < len; ++n) {
            auto e = sys.add_equation(y.space(to).dim(n), x.space(from).dim(n));
            sys.add_term(e, u[to][n], FieldMatrix::identity(f, y.space(to).dim(n)), x.map(a)[n]);
            sys.add_term(e, u[from][n], -y.map(a)[n], FieldMatrix::identity(f, x.space(from).dim(n)));
        }
    }
    FieldMatrix k = sys.solutions();
    FieldMatrix vec = k * FieldMatrix::random(f, k.cols(), 1, rng);
    std::vector<ChainMap> comps;
    for (std::size_t a = 0; a <= c.k(); ++a) {
        std::vector<FieldMatrix> m;
        for (std::size_t n = 0; n < len; ++n) m.push_back(sys.unpack(u[a][n], vec));
        comps.emplace_back(x.space(a), y.space(a), std::move(m));
    }
    return {x, y, std::move(comps)};
}

/// Uniformly random natural transformation between the straightenings, not necessarily strict.
inline StraightenedMap random_straightened_map(const DiscreteZigzag& x, const DiscreteZigzag& y, Rng& rng) {
    Grid grid;
    for (std::size_t a = 0; a <= x.k(); ++a) grid.push_back(Param(static_cast<std::int64_t>(a)));
    auto g = random_tame_map(incarnate(x, grid), incarnate(y, grid), rng);
    return {straighten(x), straighten(y), g.components()};
}

} // namespace tamecx::testing

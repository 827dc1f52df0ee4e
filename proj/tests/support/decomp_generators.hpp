#pragma once

// Random Betti diagrams and isomorphic re-presentations of their realizations.

#include <vector>

#include "support/tame_generators.hpp"
#include "tamecx/decomp.hpp"

namespace tamecx::testing {

/// Up to max_points interval spheres with endpoints in {0, 1/2, 1, ..., 3} and degrees ≤ max_degree.
inline BettiDiagrams random_diagrams(Rng& rng, std::size_t max_points = 10, std::size_t max_degree = 3) {
    std::vector<IntervalSphere> spheres;
    const std::size_t count = uniform(rng, 0, max_points);
    for (std::size_t k = 0; k < count; ++k) {
        const auto s = static_cast<std::int64_t>(uniform(rng, 0, 6));
        const std::size_t kind = uniform(rng, 0, 3);
        Param e = kind == 0 ? Param::infinity()
                            : kind == 1 ? Param(s, 2) : Param(s + static_cast<std::int64_t>(uniform(rng, 1, 4)), 2);
        spheres.emplace_back(uniform(rng, 0, max_degree), Param(s, 2), e);
    }
    auto b = diagrams_of(spheres);
    trim(b);
    return b;
}

/// Realizes b as a direct sum in the order of spheres_of(b), then re-expresses it through a
/// random isomorphism: at each grid point, identity plus random chain maps from later summands
/// into earlier ones (unitriangular, hence invertible), followed by a random change of basis.
inline TameComplex scrambled_realization(const BettiDiagrams& b, Field f, Rng& rng) {
    const auto spheres = spheres_of(b);
    TameComplex x = rebuild_from_betti(b, f);
    if (spheres.empty()) return x;
    std::vector<TameComplex> parts;
    for (const auto& i : spheres) parts.push_back(refine(realize(i, f), x.grid()));
    const std::size_t len = x.length();
    std::vector<std::vector<FieldMatrix>> basis(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
        const ChainComplex& val = x.value(a);
        std::vector<std::vector<std::size_t>> offset(parts.size(), std::vector<std::size_t>(len, 0));
        for (std::size_t n = 0; n < len; ++n) {
            std::size_t at = 0;
            for (std::size_t j = 0; j < parts.size(); ++j) {
                offset[j][n] = at;
                at += parts[j].value(a).dim(n);
            }
        }
        std::vector<FieldMatrix> auto_a;
        for (std::size_t n = 0; n < val.length(); ++n) auto_a.push_back(FieldMatrix::identity(f, val.dim(n)));
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j) {
                ChainMap h = random_chain_map(parts[j].value(a), parts[i].value(a), rng);
                for (std::size_t n = 0; n < val.length(); ++n) {
                    const FieldMatrix block = h[n];
                    for (std::size_t r = 0; r < block.rows(); ++r)
                        for (std::size_t c = 0; c < block.cols(); ++c)
                            auto_a[n].set(offset[i][n] + r, offset[j][n] + c, block(r, c));
                }
            }
        require(ChainMap(val, val, auto_a).is_iso(), "unitriangular map is an automorphism");
        for (std::size_t n = 0; n < val.length(); ++n)
            basis[a].push_back(random_invertible(f, val.dim(n), rng) * auto_a[n]);
    }
    return transport(x, basis);
}

} // namespace tamecx::testing

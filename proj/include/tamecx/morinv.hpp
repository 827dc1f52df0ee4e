#pragma once

// Betti diagrams of morphisms, and of commutative ladders viewed as the cofiber of their differential.

#include <string>
#include <string_view>
#include <vector>

#include "tamecx/decomp.hpp"

namespace tamecx {

enum class MorphismMethod { minfact, cover_cofiber, cofiber_covers, min };

inline std::string_view method_name(MorphismMethod m) {
    switch (m) {
    case MorphismMethod::minfact: return "minfact";
    case MorphismMethod::cover_cofiber: return "cover-cofiber";
    case MorphismMethod::cofiber_covers: return "cofiber-covers";
    case MorphismMethod::min: return "min";
    }
    return "";
}

inline MorphismMethod parse_method(std::string_view s) {
    for (auto m : {MorphismMethod::minfact, MorphismMethod::cover_cofiber, MorphismMethod::cofiber_covers,
                   MorphismMethod::min})
        if (s == method_name(m)) return m;
    throw PreconditionError("unknown method '" + std::string(s) + "'");
}

struct MorphismBetti {
    MorphismMethod method;
    BettiDiagrams diagrams;
};

/// Decomposition of A/α(X) for the minimal factorisation X -α-> A -> Y.
inline MorphismBetti morphism_betti_minfact(const TameMap& g, Perturbation perturb = {}) {
    auto mf = minimal_factorisation(g, perturb);
    return {MorphismMethod::minfact, decompose_cofibrant(quotient(mf.alpha).object)};
}

inline MorphismBetti morphism_betti_cover_cofiber(const TameMap& g) {
    return {MorphismMethod::cover_cofiber, betti(tame_cofiber(g).cofiber)};
}

inline MorphismBetti morphism_betti_min(const TameMap& g) {
    return {MorphismMethod::min, without_diagonal(betti(tame_cofiber(g).cofiber))};
}

struct CofiberCovers {
    MinimalCover source_cover;
    MinimalCover target_cover;
    TameMap lift;        // g′: cov X -> cov Y with c_Y g′ = g c_X
    TameCofiber cofiber; // of g′
    TameMap comparison;  // C(c_X, c_Y): Cg′ -> Cg
};

inline CofiberCovers cofiber_covers(const TameMap& g, Perturbation perturb = {}) {
    auto cx = minimal_cover(g.source(), perturb);
    auto cy = minimal_cover(g.target(), perturb);
    const TameComplex none = zero_like(cx.cover);
    auto lift = lift_against_acyclic_fibration(TameMap::zero(none, cx.cover), cy.map,
                                               TameMap::zero(none, cy.cover), g * cx.map, perturb);
    auto cf = tame_cofiber(lift);
    const TameMap gr = refine(g, lift.grid());
    const TameMap cxr = refine(cx.map, lift.grid()), cyr = refine(cy.map, lift.grid());
    auto target = tame_cofiber(gr);
    std::vector<ChainMap> comps;
    for (std::size_t a = 0; a < lift.size(); ++a) comps.push_back(cofiber_map(lift[a], gr[a], cxr[a], cyr[a]));
    TameMap comparison(cf.cofiber, target.cofiber, std::move(comps));
    return {cx, cy, lift, cf, comparison};
}

inline MorphismBetti morphism_betti_cofiber_covers(const TameMap& g, Perturbation perturb = {}) {
    return {MorphismMethod::cofiber_covers, decompose_cofibrant(cofiber_covers(g, perturb).cofiber.cofiber)};
}

inline MorphismBetti morphism_betti(const TameMap& g, MorphismMethod m) {
    switch (m) {
    case MorphismMethod::minfact: return morphism_betti_minfact(g);
    case MorphismMethod::cover_cofiber: return morphism_betti_cover_cofiber(g);
    case MorphismMethod::cofiber_covers: return morphism_betti_cofiber_covers(g);
    case MorphismMethod::min: return morphism_betti_min(g);
    }
    throw PreconditionError("unknown method");
}

/// The differential Z₁ -> Z₀ of a complex concentrated in degrees 0 and 1, as a map of tame
/// vector spaces.
inline TameMap ladder_differential(const TameComplex& z) {
    require(z.length() <= 2, "a commutative ladder has no chains above degree 1");
    const Field f = z.field();
    std::vector<ChainComplex> top, bottom;
    std::vector<ChainMap> top_steps, bottom_steps, comps;
    for (std::size_t a = 0; a < z.size(); ++a) {
        const ChainComplex& v = z.value(a);
        top.push_back(ChainComplex::graded(f, {v.dim(1)}));
        bottom.push_back(ChainComplex::graded(f, {v.dim(0)}));
        comps.emplace_back(top[a], bottom[a], std::vector<FieldMatrix>{v.d(0)});
        if (a == 0) continue;
        top_steps.emplace_back(top[a - 1], top[a], std::vector<FieldMatrix>{z.step(a)[1]});
        bottom_steps.emplace_back(bottom[a - 1], bottom[a], std::vector<FieldMatrix>{z.step(a)[0]});
    }
    TameComplex z1(f, z.grid(), std::move(top), std::move(top_steps));
    TameComplex z0(f, z.grid(), std::move(bottom), std::move(bottom_steps));
    return {z1, z0, std::move(comps)};
}

/// All four morphism invariants of the ladder's differential.
inline std::vector<MorphismBetti> ladder_betti(const TameComplex& z) {
    const TameMap d = ladder_differential(z);
    return {morphism_betti_minfact(d), morphism_betti_cover_cofiber(d), morphism_betti_cofiber_covers(d),
            morphism_betti_min(d)};
}

} // namespace tamecx

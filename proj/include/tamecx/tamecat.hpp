#pragma once

// Tame [0, ∞)-parametrised chain complexes. An object is stored on a finite grid
// 0 = τ_0 < ... < τ_k with one complex per grid point and one transition per step;
// its value at t is the value at the largest grid point ≤ t.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tamecx/chaincx.hpp"
#include "tamecx/param.hpp"

namespace tamecx {

using Grid = std::vector<Param>;

inline void check_grid(const Grid& grid) {
    require(!grid.empty(), "empty grid");
    for (const auto& t : grid) require(t.is_finite(), "grid points must be finite");
    for (std::size_t a = 1; a < grid.size(); ++a)
        require(grid[a - 1] < grid[a], "grid is not strictly increasing at position " + std::to_string(a));
}

inline Grid merge_grids(const Grid& a, const Grid& b) {
    Grid out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_refinement(const Grid& fine, const Grid& coarse) {
    return std::includes(fine.begin(), fine.end(), coarse.begin(), coarse.end());
}

class TameComplex {
public:
    TameComplex() : TameComplex(Field()) {}

    /// The zero object on the grid {0}.
    explicit TameComplex(Field field) : field_(field), grid_{Param(0)}, values_{ChainComplex(field)} {}

    /// steps[a-1] maps values[a-1] to values[a].
    TameComplex(Field field, Grid grid, std::vector<ChainComplex> values, std::vector<ChainMap> steps)
        : field_(field), grid_(std::move(grid)), values_(std::move(values)), steps_(std::move(steps)) {
        check_grid(grid_);
        require(grid_.front() == Param(0), "grids start at 0");
        require(values_.size() == grid_.size(), "one value per grid point");
        require(steps_.size() + 1 == grid_.size(), "one transition per grid step");
        for (const auto& v : values_) require(v.field() == field_, "value over the wrong field");
        for (std::size_t a = 1; a < grid_.size(); ++a)
            require(steps_[a - 1].source() == values_[a - 1] && steps_[a - 1].target() == values_[a],
                    "transition " + std::to_string(a) + " has the wrong endpoints");
    }

    static TameComplex constant(const ChainComplex& x) { return {x.field(), {Param(0)}, {x}, {}}; }

    Field field() const noexcept { return field_; }
    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return grid_.size(); }
    const ChainComplex& value(std::size_t a) const { return values_.at(a); }
    const std::vector<ChainComplex>& values() const noexcept { return values_; }

    /// Transition from grid point a-1 to grid point a (a >= 1).
    const ChainMap& step(std::size_t a) const {
        require(a >= 1 && a < grid_.size(), "no step " + std::to_string(a));
        return steps_[a - 1];
    }
    const std::vector<ChainMap>& steps() const noexcept { return steps_; }

    /// Largest a with grid[a] ≤ t.
    std::size_t index_at(const Param& t) const {
        auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
        return static_cast<std::size_t>(it - grid_.begin()) - 1;
    }

    /// Index of an exact grid point, or throws.
    std::size_t index_of(const Param& t) const {
        auto it = std::lower_bound(grid_.begin(), grid_.end(), t);
        require(it != grid_.end() && *it == t, "parameter " + t.to_string() + " is not a grid point");
        return static_cast<std::size_t>(it - grid_.begin());
    }

    bool has_grid_point(const Param& t) const { return std::binary_search(grid_.begin(), grid_.end(), t); }

    const ChainComplex& evaluate(const Param& t) const {
        require(t.is_finite(), "evaluation at infinity");
        return values_[index_at(t)];
    }

    /// Composite transition between grid indices a ≤ b.
    ChainMap transition_between(std::size_t a, std::size_t b) const {
        require(a <= b && b < grid_.size(), "transition indices out of order");
        ChainMap m = ChainMap::identity(values_[a]);
        for (std::size_t c = a + 1; c <= b; ++c) m = steps_[c - 1] * m;
        return m;
    }

    ChainMap transition(const Param& s, const Param& t) const {
        require(s <= t, "transition from " + s.to_string() + " to " + t.to_string() + " runs backwards");
        require(t.is_finite(), "transition to infinity");
        return transition_between(index_at(s), index_at(t));
    }

    bool is_zero() const {
        for (const auto& v : values_)
            if (!v.is_zero()) return false;
        return true;
    }

    /// One past the highest chain degree that appears at any grid point.
    std::size_t length() const {
        std::size_t len = 0;
        for (const auto& v : values_) len = std::max(len, v.length());
        return len;
    }

    friend bool operator==(const TameComplex& x, const TameComplex& y) {
        return x.field_ == y.field_ && x.grid_ == y.grid_ && x.values_ == y.values_ && x.steps_ == y.steps_;
    }

private:
    Field field_;
    Grid grid_;
    std::vector<ChainComplex> values_;
    std::vector<ChainMap> steps_;
};

/// Kan extension of a finite sequence along an increasing grid. A grid not starting at 0
/// gets a leading zero complex at 0.
inline TameComplex kan_extension(const std::vector<ChainComplex>& values, const std::vector<ChainMap>& maps,
                                 const Grid& grid) {
    require(!values.empty(), "Kan extension of an empty sequence");
    require(values.size() == grid.size(), "one value per grid point");
    require(maps.size() + 1 == values.size(), "one map per consecutive pair");
    check_grid(grid);
    const Field f = values.front().field();
    if (grid.front() == Param(0)) return {f, grid, values, maps};
    Grid g{Param(0)};
    g.insert(g.end(), grid.begin(), grid.end());
    std::vector<ChainComplex> v{ChainComplex(f)};
    v.insert(v.end(), values.begin(), values.end());
    std::vector<ChainMap> m{ChainMap::zero(ChainComplex(f), values.front())};
    m.insert(m.end(), maps.begin(), maps.end());
    return {f, std::move(g), std::move(v), std::move(m)};
}

inline TameComplex refine(const TameComplex& x, const Grid& grid) {
    check_grid(grid);
    require(is_refinement(grid, x.grid()), "grid is not a refinement");
    if (grid == x.grid()) return x;
    std::vector<ChainComplex> values;
    std::vector<ChainMap> steps;
    for (std::size_t b = 0; b < grid.size(); ++b) {
        values.push_back(x.evaluate(grid[b]));
        if (b == 0) continue;
        if (x.has_grid_point(grid[b]))
            steps.push_back(x.step(x.index_of(grid[b])));
        else
            steps.push_back(ChainMap::identity(values.back()));
    }
    return {x.field(), grid, std::move(values), std::move(steps)};
}

// ---------------------------------------------------------------------------
// Morphisms

class TameMap {
public:
    TameMap() = default;

    /// Source and target must share a grid; components[a] is the map at grid point a.
    TameMap(TameComplex source, TameComplex target, std::vector<ChainMap> components)
        : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
        require(source_.grid() == target_.grid(), "tame map between objects on different grids");
        require(comps_.size() == source_.size(), "one component per grid point");
        for (std::size_t a = 0; a < comps_.size(); ++a)
            require(comps_[a].source() == source_.value(a) && comps_[a].target() == target_.value(a),
                    "component " + std::to_string(a) + " has the wrong endpoints");
        for (std::size_t a = 1; a < comps_.size(); ++a)
            if (!(comps_[a] * source_.step(a) == target_.step(a) * comps_[a - 1]))
                throw PreconditionError("ladder square at grid point " + source_.grid()[a].to_string() +
                                        " does not commute");
    }

    static TameMap identity(const TameComplex& x) {
        std::vector<ChainMap> c;
        for (const auto& v : x.values()) c.push_back(ChainMap::identity(v));
        return {x, x, std::move(c)};
    }

    /// Refines both sides to a common grid.
    static TameMap zero(const TameComplex& x, const TameComplex& y);

    const TameComplex& source() const noexcept { return source_; }
    const TameComplex& target() const noexcept { return target_; }
    const Grid& grid() const noexcept { return source_.grid(); }
    Field field() const noexcept { return source_.field(); }
    std::size_t size() const noexcept { return comps_.size(); }
    const ChainMap& operator[](std::size_t a) const { return comps_.at(a); }
    const std::vector<ChainMap>& components() const noexcept { return comps_; }

    const ChainMap& at(const Param& t) const { return comps_[source_.index_at(t)]; }

    bool is_mono() const {
        for (const auto& c : comps_)
            if (!c.is_mono()) return false;
        return true;
    }

    bool is_iso() const {
        for (const auto& c : comps_)
            if (!c.is_iso()) return false;
        return true;
    }

    friend bool operator==(const TameMap& f, const TameMap& g) {
        return f.source_ == g.source_ && f.target_ == g.target_ && f.comps_ == g.comps_;
    }

private:
    TameComplex source_;
    TameComplex target_;
    std::vector<ChainMap> comps_;
};

inline TameMap refine(const TameMap& g, const Grid& grid) {
    if (grid == g.grid()) return g;
    TameComplex s = refine(g.source(), grid), t = refine(g.target(), grid);
    std::vector<ChainMap> c;
    for (const auto& p : grid) c.push_back(g.at(p));
    return {std::move(s), std::move(t), std::move(c)};
}

inline std::pair<TameComplex, TameComplex> common_grid(const TameComplex& x, const TameComplex& y) {
    Grid g = merge_grids(x.grid(), y.grid());
    return {refine(x, g), refine(y, g)};
}

inline TameMap TameMap::zero(const TameComplex& x, const TameComplex& y) {
    auto [xs, ys] = common_grid(x, y);
    std::vector<ChainMap> c;
    for (std::size_t a = 0; a < xs.size(); ++a) c.push_back(ChainMap::zero(xs.value(a), ys.value(a)));
    return {std::move(xs), std::move(ys), std::move(c)};
}

/// g ∘ f, refining to a common grid when needed.
inline TameMap operator*(const TameMap& g, const TameMap& f) {
    Grid grid = merge_grids(f.grid(), g.grid());
    TameMap fr = refine(f, grid), gr = refine(g, grid);
    require(fr.target() == gr.source(), "composing tame maps with mismatched middle object");
    std::vector<ChainMap> c;
    for (std::size_t a = 0; a < grid.size(); ++a) c.push_back(gr[a] * fr[a]);
    return {fr.source(), gr.target(), std::move(c)};
}

inline TameMap operator+(const TameMap& f, const TameMap& g) {
    Grid grid = merge_grids(f.grid(), g.grid());
    TameMap fr = refine(f, grid), gr = refine(g, grid);
    std::vector<ChainMap> c;
    for (std::size_t a = 0; a < grid.size(); ++a) c.push_back(fr[a] + gr[a]);
    return {fr.source(), fr.target(), std::move(c)};
}

inline TameMap operator-(const TameMap& f) {
    std::vector<ChainMap> c;
    for (const auto& m : f.components()) c.push_back(-m);
    return {f.source(), f.target(), std::move(c)};
}

// ---------------------------------------------------------------------------
// Gridpoint-wise constructions

inline TameComplex direct_sum(const TameComplex& x, const TameComplex& y) {
    auto [xs, ys] = common_grid(x, y);
    std::vector<ChainComplex> v;
    std::vector<ChainMap> s;
    for (std::size_t a = 0; a < xs.size(); ++a) {
        v.push_back(direct_sum(xs.value(a), ys.value(a)));
        if (a > 0) s.push_back(direct_sum(xs.step(a), ys.step(a)));
    }
    return {x.field(), xs.grid(), std::move(v), std::move(s)};
}

inline TameMap direct_sum(const TameMap& f, const TameMap& g) {
    Grid grid = merge_grids(f.grid(), g.grid());
    TameMap fr = refine(f, grid), gr = refine(g, grid);
    std::vector<ChainMap> c;
    for (std::size_t a = 0; a < grid.size(); ++a) c.push_back(direct_sum(fr[a], gr[a]));
    return {direct_sum(fr.source(), gr.source()), direct_sum(fr.target(), gr.target()), std::move(c)};
}

/// [f; g]: X -> Y (+) Z.
inline TameMap stack_maps(const TameMap& f, const TameMap& g) {
    Grid grid = merge_grids(f.grid(), g.grid());
    TameMap fr = refine(f, grid), gr = refine(g, grid);
    std::vector<ChainMap> c;
    for (std::size_t a = 0; a < grid.size(); ++a) c.push_back(stack_maps(fr[a], gr[a]));
    return {fr.source(), direct_sum(fr.target(), gr.target()), std::move(c)};
}

/// [f g]: X (+) Y -> Z.
inline TameMap join_maps(const TameMap& f, const TameMap& g) {
    Grid grid = merge_grids(f.grid(), g.grid());
    TameMap fr = refine(f, grid), gr = refine(g, grid);
    std::vector<ChainMap> c;
    for (std::size_t a = 0; a < grid.size(); ++a) c.push_back(join_maps(fr[a], gr[a]));
    return {direct_sum(fr.source(), gr.source()), fr.target(), std::move(c)};
}

struct TameSubobject {
    TameComplex object;
    TameMap inclusion;
};

inline TameSubobject kernel(const TameMap& g) {
    std::vector<SubcomplexData> ks;
    for (const auto& c : g.components()) ks.push_back(kernel(c));
    std::vector<ChainComplex> v;
    std::vector<ChainMap> s;
    for (std::size_t a = 0; a < ks.size(); ++a) {
        v.push_back(ks[a].complex);
        if (a == 0) continue;
        // The transition of the source restricts to kernels.
        ChainMap moved = g.source().step(a) * ks[a - 1].inclusion;
        std::vector<FieldMatrix> c;
        for (std::size_t n = 0; n < ks[a - 1].complex.length(); ++n)
            c.push_back(solve_or_throw(ks[a].inclusion[n], moved[n], "kernels are preserved by transitions"));
        s.emplace_back(ks[a - 1].complex, ks[a].complex, std::move(c));
    }
    TameComplex w(g.field(), g.grid(), std::move(v), std::move(s));
    std::vector<ChainMap> inc;
    for (auto& k : ks) inc.push_back(k.inclusion);
    return {w, TameMap(w, g.source(), std::move(inc))};
}

struct TameQuotient {
    TameComplex object;
    TameMap projection;
};

/// Y / g(X) for any g, computed gridpoint-wise.
inline TameQuotient image_quotient(const TameMap& g) {
    std::vector<QuotientData> qs;
    for (const auto& c : g.components()) qs.push_back(image_quotient(c));
    std::vector<ChainComplex> v;
    std::vector<ChainMap> s;
    for (std::size_t a = 0; a < qs.size(); ++a) {
        v.push_back(qs[a].complex);
        if (a == 0) continue;
        ChainMap moved = qs[a].projection * g.target().step(a);
        std::vector<FieldMatrix> c;
        for (std::size_t n = 0; n < qs[a - 1].complex.length(); ++n) c.push_back(moved[n] * qs[a - 1].section[n]);
        s.emplace_back(qs[a - 1].complex, qs[a].complex, std::move(c));
    }
    TameComplex q(g.field(), g.grid(), std::move(v), std::move(s));
    std::vector<ChainMap> proj;
    for (auto& d : qs) proj.push_back(d.projection);
    return {q, TameMap(g.target(), q, std::move(proj))};
}

inline TameQuotient quotient(const TameMap& g) {
    require(g.is_mono(), "quotient requires a degreewise monomorphism");
    return image_quotient(g);
}

struct TameCofiber {
    TameComplex cofiber;
    TameMap inclusion;  // Y -> Cg
    TameMap projection; // Cg -> SX
};

inline TameComplex tame_suspend(const TameComplex& x, std::size_t times = 1) {
    std::vector<ChainComplex> v;
    std::vector<ChainMap> s;
    for (std::size_t a = 0; a < x.size(); ++a) {
        v.push_back(suspend(x.value(a), times));
        if (a > 0) s.push_back(suspend(x.step(a), times));
    }
    return {x.field(), x.grid(), std::move(v), std::move(s)};
}

inline TameMap tame_suspend(const TameMap& g, std::size_t times = 1) {
    std::vector<ChainMap> c;
    for (const auto& m : g.components()) c.push_back(suspend(m, times));
    return {tame_suspend(g.source(), times), tame_suspend(g.target(), times), std::move(c)};
}

inline TameCofiber tame_cofiber(const TameMap& g) {
    std::vector<CofiberData> cs;
    for (const auto& c : g.components()) cs.push_back(cofiber(c));
    std::vector<ChainComplex> v;
    std::vector<ChainMap> s;
    for (std::size_t a = 0; a < cs.size(); ++a) {
        v.push_back(cs[a].cofiber);
        if (a == 0) continue;
        HomotopySquare sq{g[a - 1], g[a], g.source().step(a), g.target().step(a), {}};
        s.push_back(cofiber_map(sq, cs[a - 1], cs[a]));
    }
    TameComplex cg(g.field(), g.grid(), std::move(v), std::move(s));
    std::vector<ChainMap> ic, pc;
    for (auto& c : cs) {
        ic.push_back(c.inclusion);
        pc.push_back(c.projection);
    }
    TameMap i(g.target(), cg, std::move(ic));
    TameMap p(cg, tame_suspend(g.source()), std::move(pc));
    return {std::move(cg), std::move(i), std::move(p)};
}

// ---------------------------------------------------------------------------
// The pushout factorisation g = ĝ ∘ ḡ

struct TameFactorisation {
    TameMap gbar; // X -> Q
    TameComplex q;
    TameMap ghat; // Q -> Y
};

inline TameFactorisation factorise(const TameMap& g) {
    const TameComplex& x = g.source();
    const TameComplex& y = g.target();
    std::vector<ChainComplex> qv{x.value(0)};
    std::vector<ChainMap> qs, bar{ChainMap::identity(x.value(0))}, hat{g[0]};
    for (std::size_t a = 1; a < g.size(); ++a) {
        // Q^a = colim(Y^{a-1} <- X^{a-1} -> X^a)
        auto po = pushout(g[a - 1], x.step(a));
        qv.push_back(po.complex);
        bar.push_back(po.from_w1);
        hat.push_back(po.induced(y.step(a), g[a]));
        qs.push_back(po.from_w0 * hat[a - 1]);
    }
    TameComplex q(g.field(), g.grid(), std::move(qv), std::move(qs));
    return {TameMap(x, q, std::move(bar)), q, TameMap(q, y, std::move(hat))};
}

// ---------------------------------------------------------------------------
// Model structure predicates

inline bool is_weak_equivalence(const TameMap& g) {
    for (const auto& c : g.components())
        if (!is_weak_equivalence(c)) return false;
    return true;
}

inline bool is_fibration(const TameMap& g) {
    for (const auto& c : g.components())
        if (!is_fibration(c)) return false;
    return true;
}

/// Monomorphism at every grid point, and every ladder square a pullback of graded vector spaces.
inline bool is_cofibration(const TameMap& g) {
    if (!g.is_mono()) return false;
    const TameComplex& x = g.source();
    const TameComplex& y = g.target();
    for (std::size_t a = 1; a < g.size(); ++a) {
        const std::size_t len = std::max(y.value(a - 1).length(), y.value(a).length());
        for (std::size_t n = 0; n < len; ++n) {
            // P = lim(X^a -> Y^a <- Y^{a-1}); the square is a pullback iff X^{a-1} -> P is onto.
            auto pb = pullback(g[a][n], y.step(a)[n]);
            FieldMatrix legs = vstack(pb.into_w1, pb.into_w0);
            FieldMatrix corner = vstack(x.step(a)[n], g[a - 1][n]);
            FieldMatrix to_p = solve_or_throw(legs, corner, "commuting square factors through the pullback");
            if (rank(to_p) != pb.dim) return false;
        }
    }
    return true;
}

/// Cofibration test through the factorisation: ĝ is a monomorphism at every grid point.
inline bool is_cofibration_via_factorisation(const TameMap& g) {
    auto fz = factorise(g);
    return fz.ghat.is_mono();
}

inline bool is_cofibrant(const TameComplex& x) {
    for (const auto& s : x.steps())
        if (!s.is_mono()) return false;
    return true;
}

inline bool is_acyclic(const TameComplex& x) {
    for (const auto& v : x.values())
        if (!is_acyclic(v)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Lifts and minimal factorisations

/// Given a cofibration α: A -> B, an acyclic fibration β: E -> D, and u: A -> E, v: B -> D with
/// β u = v α, returns φ: B -> E with φ α = u and β φ = v. Grid points are handled in ascending
/// order, each one through the pushout Q^a of the factorisation of α.
inline TameMap lift_against_acyclic_fibration(const TameMap& alpha, const TameMap& beta, const TameMap& u,
                                              const TameMap& v, Perturbation perturb = {}) {
    Grid grid = merge_grids(merge_grids(alpha.grid(), beta.grid()), merge_grids(u.grid(), v.grid()));
    TameMap al = refine(alpha, grid), be = refine(beta, grid), ur = refine(u, grid), vr = refine(v, grid);
    const TameComplex& b = al.target();
    const TameComplex& e = be.source();
    auto fz = factorise(al);
    std::vector<ChainMap> phi;
    phi.push_back(lift_against_acyclic_fibration(al[0], be[0], ur[0], vr[0], perturb));
    for (std::size_t a = 1; a < grid.size(); ++a) {
        // Q^a = colim(B^{a-1} <- A^{a-1} -> A^a); the map Q^a -> E^a is induced by φ^{a-1} and u^a.
        auto po = pushout(al[a - 1], al.source().step(a));
        ChainMap from_q = po.induced(e.step(a) * phi[a - 1], ur[a]);
        phi.push_back(lift_against_acyclic_fibration(fz.ghat[a], be[a], from_q, vr[a], perturb));
    }
    return {b, e, std::move(phi)};
}

struct TameMinimalFactorisation {
    TameMap alpha; // cofibration A -> M
    TameComplex middle;
    TameMap beta; // acyclic fibration M -> X
};

/// Inductive construction: a minimal factorisation of g^0 at τ_0, then at every later grid point
/// a minimal factorisation of the map out of the pushout Q^a = colim(A^a <- A^{a-1} -> M^{a-1}).
inline TameMinimalFactorisation minimal_factorisation(const TameMap& g, Perturbation perturb = {}) {
    const TameComplex& a_obj = g.source();
    const TameComplex& x = g.target();
    auto mf0 = minimal_factorisation(g[0], perturb);
    std::vector<ChainComplex> mv{mf0.middle};
    std::vector<ChainMap> ms, al{mf0.alpha}, be{mf0.beta};
    for (std::size_t a = 1; a < g.size(); ++a) {
        auto po = pushout(a_obj.step(a), al[a - 1]);
        ChainMap beta_prime = po.induced(g[a], x.step(a) * be[a - 1]);
        auto mf = minimal_factorisation(beta_prime, perturb);
        mv.push_back(mf.middle);
        al.push_back(mf.alpha * po.from_w0);
        be.push_back(mf.beta);
        ms.push_back(mf.alpha * po.from_w1);
    }
    TameComplex m(g.field(), g.grid(), std::move(mv), std::move(ms));
    return {TameMap(a_obj, m, std::move(al)), m, TameMap(m, x, std::move(be))};
}

struct MinimalCover {
    TameComplex cover;
    TameMap map; // cover -> X
};

inline TameComplex zero_like(const TameComplex& x) {
    std::vector<ChainComplex> v(x.size(), ChainComplex(x.field()));
    std::vector<ChainMap> s;
    for (std::size_t a = 1; a < x.size(); ++a) s.push_back(ChainMap::identity(ChainComplex(x.field())));
    return {x.field(), x.grid(), std::move(v), std::move(s)};
}

inline MinimalCover minimal_cover(const TameComplex& x, Perturbation perturb = {}) {
    auto mf = minimal_factorisation(TameMap::zero(zero_like(x), x), perturb);
    return {mf.middle, mf.beta};
}

/// Dimensions and transition ranks at every grid point; equal for isomorphic objects on one grid.
struct Fingerprint {
    std::vector<std::vector<std::size_t>> dims;
    std::vector<std::vector<std::size_t>> step_ranks;
    std::vector<std::vector<std::size_t>> betti;
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline Fingerprint fingerprint(const TameComplex& x) {
    Fingerprint fp;
    const std::size_t len = x.length();
    for (std::size_t a = 0; a < x.size(); ++a) {
        std::vector<std::size_t> d, r, h;
        auto hom = homology(x.value(a));
        for (std::size_t n = 0; n < len; ++n) {
            d.push_back(x.value(a).dim(n));
            h.push_back(hom.dim(n));
            r.push_back(a == 0 ? 0 : rank(x.step(a)[n]));
        }
        fp.dims.push_back(std::move(d));
        fp.step_ranks.push_back(std::move(r));
        fp.betti.push_back(std::move(h));
    }
    return fp;
}

} // namespace tamecx

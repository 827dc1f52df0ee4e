#pragma once

// Interval spheres, the decomposition of cofibrant objects, Betti diagrams and minimality.

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <tuple>
#include <utility>
#include <vector>

#include "tamecx/tamecat.hpp"

namespace tamecx {

/// Iⁿ[s,e]: a degree-n sphere born at s and capped by a disk at e (e may be infinite).
struct IntervalSphere {
    std::size_t n = 0;
    Param s;
    Param e = Param::infinity();

    IntervalSphere() = default;
    IntervalSphere(std::size_t degree, Param birth, Param death) : n(degree), s(birth), e(death) {
        require(s.is_finite(), "interval spheres are born at a finite parameter");
        require(s <= e, "interval sphere with birth " + s.to_string() + " after death " + e.to_string());
    }

    bool is_diagonal() const { return s == e; }
    bool is_infinite() const { return e.is_infinite(); }

    friend auto operator<=>(const IntervalSphere& a, const IntervalSphere& b) {
        return std::tie(a.n, a.s, a.e) <=> std::tie(b.n, b.s, b.e);
    }
    friend bool operator==(const IntervalSphere&, const IntervalSphere&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const IntervalSphere& i) {
    return os << "I" << i.n << "[" << i.s << "," << i.e << (i.is_infinite() ? ")" : "]");
}

/// Finite multiset of (birth, death) pairs for one degree.
class BettiDiagram {
public:
    struct Point {
        Param birth;
        Param death;
        std::size_t multiplicity;
        friend bool operator==(const Point&, const Point&) = default;
    };

    void add(const Param& s, const Param& e, std::size_t mult = 1) {
        require(s.is_finite() && s <= e, "Betti point off the domain");
        if (mult == 0) return;
        counts_[{s, e}] += mult;
    }

    std::size_t multiplicity(const Param& s, const Param& e) const {
        auto it = counts_.find({s, e});
        return it == counts_.end() ? 0 : it->second;
    }

    std::vector<Point> points() const {
        std::vector<Point> out;
        for (const auto& [k, m] : counts_) out.push_back({k.first, k.second, m});
        return out;
    }

    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& [k, m] : counts_) t += m;
        return t;
    }

    bool empty() const { return counts_.empty(); }

    bool has_diagonal() const {
        for (const auto& [k, m] : counts_)
            if (k.first == k.second) return true;
        return false;
    }

    BettiDiagram without_diagonal() const {
        BettiDiagram b;
        for (const auto& [k, m] : counts_)
            if (k.first != k.second) b.counts_.emplace(k, m);
        return b;
    }

    friend bool operator==(const BettiDiagram&, const BettiDiagram&) = default;

private:
    std::map<std::pair<Param, Param>, std::size_t> counts_;
};

inline std::ostream& operator<<(std::ostream& os, const BettiDiagram& b) {
    os << "{";
    bool first = true;
    for (const auto& p : b.points()) {
        os << (first ? "" : " ") << "(" << p.birth << "," << p.death << ")x" << p.multiplicity;
        first = false;
    }
    return os << "}";
}

/// One diagram per degree, with no trailing empty diagrams.
using BettiDiagrams = std::vector<BettiDiagram>;

inline void trim(BettiDiagrams& b) {
    while (!b.empty() && b.back().empty()) b.pop_back();
}

inline BettiDiagrams diagrams_of(const std::vector<IntervalSphere>& spheres) {
    BettiDiagrams b;
    for (const auto& i : spheres) {
        if (b.size() <= i.n) b.resize(i.n + 1);
        b[i.n].add(i.s, i.e);
    }
    return b;
}

inline std::vector<IntervalSphere> spheres_of(const BettiDiagrams& b) {
    std::vector<IntervalSphere> out;
    for (std::size_t n = 0; n < b.size(); ++n)
        for (const auto& p : b[n].points())
            for (std::size_t k = 0; k < p.multiplicity; ++k) out.emplace_back(n, p.birth, p.death);
    return out;
}

inline BettiDiagrams without_diagonal(const BettiDiagrams& b) {
    BettiDiagrams out;
    for (const auto& d : b) out.push_back(d.without_diagonal());
    trim(out);
    return out;
}

inline bool has_diagonal(const BettiDiagrams& b) {
    return std::any_of(b.begin(), b.end(), [](const BettiDiagram& d) { return d.has_diagonal(); });
}

// ---------------------------------------------------------------------------
// Interval spheres as objects

inline TameComplex realize(const IntervalSphere& i, Field f) {
    const ChainComplex sphere = ChainComplex::sphere(f, i.n);
    const ChainComplex disk = ChainComplex::disk(f, i.n + 1);
    if (i.is_infinite()) return kan_extension({sphere}, {}, {i.s});
    if (i.is_diagonal()) return kan_extension({disk}, {}, {i.s});
    std::vector<FieldMatrix> incl(i.n + 1);
    incl[i.n] = FieldMatrix::identity(f, 1);
    return kan_extension({sphere, disk}, {ChainMap(sphere, disk, std::move(incl))}, {i.s, i.e});
}

inline TameComplex rebuild_from_betti(const BettiDiagrams& b, Field f) {
    TameComplex x(f);
    for (const auto& i : spheres_of(b)) x = direct_sum(x, realize(i, f));
    return x;
}

/// Grid of x refined to contain the endpoints of i.
inline TameComplex refine_for(const TameComplex& x, const IntervalSphere& i) {
    Grid extra{i.s};
    if (i.e.is_finite()) extra.push_back(i.e);
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    return refine(x, merge_grids(x.grid(), extra));
}

/// Morphisms Iⁿ[s,e] -> X. For e infinite they are the cycles x in X_n^s. For e finite they
/// are the pairs (x, y) with x in Z_n X^s, y in X_{n+1}^e and X^{s≤e}(x) = δy; columns of
/// `basis` stack x over y.
struct SphereHoms {
    IntervalSphere sphere;
    TameComplex target; // refined so that s and e are grid points
    FieldMatrix basis;

    std::size_t dim() const { return basis.cols(); }
    std::size_t x_dim() const { return target.evaluate(sphere.s).dim(sphere.n); }
};

inline SphereHoms hom_from_sphere(const IntervalSphere& i, const TameComplex& x) {
    TameComplex xr = refine_for(x, i);
    const ChainComplex& at_s = xr.evaluate(i.s);
    FieldMatrix cycles = kernel_basis(at_s.d_into_below(i.n));
    if (i.is_infinite()) return {i, xr, cycles};
    const ChainComplex& at_e = xr.evaluate(i.e);
    FieldMatrix moved = xr.transition(i.s, i.e)[i.n] * cycles;
    auto pb = pullback(moved, at_e.d(i.n));
    FieldMatrix basis = vstack(cycles * pb.into_w1, pb.into_w0);
    return {i, xr, basis};
}

/// The morphism I(x) or I(x, y) out of the realization; y is ignored when e is infinite.
inline TameMap sphere_morphism(const IntervalSphere& i, const TameComplex& x, const FieldMatrix& xv,
                               const FieldMatrix& yv = {}) {
    const Field f = x.field();
    TameComplex src = realize(i, f);
    Grid grid = merge_grids(src.grid(), x.grid());
    src = refine(src, grid);
    TameComplex tgt = refine(x, grid);
    std::vector<ChainMap> comps;
    for (std::size_t a = 0; a < grid.size(); ++a) {
        const Param& t = grid[a];
        const ChainComplex& sv = src.value(a);
        const ChainComplex& tv = tgt.value(a);
        std::vector<FieldMatrix> c;
        for (std::size_t n = 0; n < sv.length(); ++n) c.push_back(FieldMatrix::zero(f, tv.dim(n), sv.dim(n)));
        if (t >= i.s) c[i.n] = tgt.transition(i.s, t)[i.n] * xv;
        if (i.e.is_finite() && t >= i.e) c[i.n + 1] = tgt.transition(i.e, t)[i.n + 1] * yv;
        comps.emplace_back(sv, tv, std::move(c));
    }
    return {src, tgt, std::move(comps)};
}

/// Image-avoidance test for a morphism out of an interval sphere into a cofibrant object:
/// x must not come from before s, and y must not come from before e.
inline bool is_cofibration_from_sphere(const IntervalSphere& i, const TameComplex& x, const FieldMatrix& xv,
                                       const FieldMatrix& yv = {}) {
    require(is_cofibrant(x), "target of an interval-sphere morphism must be cofibrant");
    const TameComplex xr = refine_for(x, i);
    auto comes_from_before = [&](const Param& t, std::size_t n, const FieldMatrix& v) {
        const std::size_t a = xr.index_of(t);
        if (a == 0) return v.is_zero();
        return spans(xr.step(a)[n], v);
    };
    if (comes_from_before(i.s, i.n, xv)) return false;
    if (i.e.is_finite() && comes_from_before(i.e, i.n + 1, yv)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Decomposition

/// Splits a cofibrant object into interval spheres. Every value is embedded into the last one,
/// so the object becomes a filtration F_0 ⊆ ... ⊆ F_k of a single complex V; each split removes
/// one Iⁿ[s,e] by intersecting with the kernel of a retraction onto it.
inline std::vector<IntervalSphere> interval_spheres(const TameComplex& x) {
    require(is_cofibrant(x), "decomposition requires a cofibrant object");
    const Field f = x.field();
    const std::size_t k = x.size() - 1;
    const ChainComplex& v = x.value(k);
    const std::size_t len = v.length();
    // filt[a][n]: basis of F_{a,n} inside V_n
    std::vector<std::vector<FieldMatrix>> filt(k + 1);
    for (std::size_t a = 0; a <= k; ++a) {
        ChainMap into_top = x.transition_between(a, k);
        for (std::size_t n = 0; n < len; ++n) filt[a].push_back(into_top[n]);
    }

    std::vector<IntervalSphere> out;
    for (;;) {
        std::optional<std::size_t> deg;
        for (std::size_t n = 0; n + 1 < len && !deg; ++n)
            if (!(v.d(n) * filt[k][n + 1]).is_zero()) deg = n;
        if (!deg) break;
        const std::size_t n = *deg;

        std::size_t e = 0;
        while ((v.d(n) * filt[e][n + 1]).is_zero()) ++e;
        const FieldMatrix bounds = image_basis(v.d(n) * filt[e][n + 1]);
        std::size_t s = 0;
        FieldMatrix common;
        for (;; ++s) {
            common = intersection_basis(filt[s][n], bounds);
            if (common.cols() > 0) break;
        }
        const FieldMatrix x_vec = common.column(0);

        // ψ_n kills F_{s-1,n} and sends x to 1; ψ_{n+1} = ψ_n δ.
        const FieldMatrix before = s == 0 ? FieldMatrix(f, v.dim(n), 0) : filt[s - 1][n];
        FieldMatrix target(f, before.cols() + 1, 1);
        target.set(before.cols(), 0, 1);
        const FieldMatrix psi_n =
            solve_or_throw(hstack(before, x_vec).transpose(), target, "retraction onto an interval sphere")
                .transpose();
        const FieldMatrix psi_n1 = psi_n * v.d(n);
        for (std::size_t a = 0; a <= k; ++a) {
            filt[a][n] = filt[a][n] * kernel_basis(psi_n * filt[a][n]);
            filt[a][n + 1] = filt[a][n + 1] * kernel_basis(psi_n1 * filt[a][n + 1]);
        }
        out.emplace_back(n, x.grid()[s], x.grid()[e]);
    }
    // Trivial differentials remain: spheres born where the filtration grows.
    for (std::size_t n = 0; n < len; ++n)
        for (std::size_t a = 0; a <= k; ++a) {
            const std::size_t prev = a == 0 ? 0 : filt[a - 1][n].cols();
            for (std::size_t c = prev; c < filt[a][n].cols(); ++c)
                out.emplace_back(n, x.grid()[a], Param::infinity());
        }
    std::sort(out.begin(), out.end());
    return out;
}

inline BettiDiagrams decompose_cofibrant(const TameComplex& x) {
    auto b = diagrams_of(interval_spheres(x));
    trim(b);
    return b;
}

inline BettiDiagrams betti(const TameComplex& x) { return decompose_cofibrant(minimal_cover(x).cover); }

inline BettiDiagrams min_betti(const TameComplex& x) { return without_diagonal(betti(x)); }

inline TameComplex minimal_representative_tame(const TameComplex& x) {
    return rebuild_from_betti(min_betti(x), x.field());
}

inline bool is_minimal(const TameComplex& x) { return is_cofibrant(x) && !has_diagonal(decompose_cofibrant(x)); }

/// A cover c: C -> X fails minimality exactly when some Iⁿ[s,s] is a direct summand of C lying
/// in ker c. Such a summand is a chain y in ker c^s_{n+1} whose boundary does not come from
/// before s; the test runs over grid points s and degrees n.
inline bool is_minimal_cover(const TameMap& c) {
    const TameComplex& src = c.source();
    if (!is_cofibrant(src) || !is_fibration(c) || !is_weak_equivalence(c)) return false;
    for (std::size_t a = 0; a < c.size(); ++a) {
        const ChainComplex& at = src.value(a);
        for (std::size_t n = 0; n + 1 < at.length(); ++n) {
            const FieldMatrix bounds = at.d(n) * kernel_basis(c[a][n + 1]);
            if (a == 0 ? !bounds.is_zero() : !spans(src.step(a)[n], bounds)) return false;
        }
    }
    return true;
}

inline bool is_minimal_cover(const MinimalCover& mc) { return is_minimal_cover(mc.map); }

} // namespace tamecx

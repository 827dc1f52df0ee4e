#pragma once

// Compact non-negatively graded chain complexes over F_p and the constructions
// built from them: homology, suspension, cofibers, cones, path complexes, the
// standard decomposition and minimal factorisations.
//
// Convention: d(n) is the differential from degree n+1 to degree n, stored as a
// dim(n) x dim(n+1) matrix. Degrees past the stored range are zero.

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tamecx/exactlin.hpp"

namespace tamecx {

class ChainComplex {
public:
    ChainComplex() = default;
    explicit ChainComplex(Field field) : field_(field) {}

    /// dims[n] is the dimension in degree n; diffs[n] maps degree n+1 to degree n.
    /// Missing differentials are zero. Throws if shapes or d∘d = 0 fail.
    ChainComplex(Field field, std::vector<std::size_t> dims, std::vector<FieldMatrix> diffs)
        : field_(field), dims_(std::move(dims)), diffs_(std::move(diffs)) {
        normalise();
    }

    static ChainComplex zero(Field field) { return ChainComplex(field); }

    /// Trivial differentials.
    static ChainComplex graded(Field field, std::vector<std::size_t> dims) { return {field, std::move(dims), {}}; }

    /// K concentrated in degree n.
    static ChainComplex sphere(Field field, std::size_t n) {
        std::vector<std::size_t> dims(n + 1, 0);
        dims[n] = 1;
        return graded(field, std::move(dims));
    }

    /// The disk with top cell in degree `top` (top >= 1): K in degrees top-1 and top, δ = 1.
    static ChainComplex disk(Field field, std::size_t top) {
        require(top >= 1, "disk needs top degree at least 1");
        std::vector<std::size_t> dims(top + 1, 0);
        dims[top - 1] = dims[top] = 1;
        std::vector<FieldMatrix> diffs;
        for (std::size_t n = 0; n < top; ++n) diffs.push_back(FieldMatrix::zero(field, dims[n], dims[n + 1]));
        diffs[top - 1] = FieldMatrix::identity(field, 1);
        return {field, std::move(dims), std::move(diffs)};
    }

    Field field() const noexcept { return field_; }

    /// One past the highest degree with nonzero dimension.
    std::size_t length() const noexcept { return dims_.size(); }

    std::size_t dim(std::size_t n) const noexcept { return n < dims_.size() ? dims_[n] : 0; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }

    std::size_t total_dim() const noexcept {
        std::size_t t = 0;
        for (auto d : dims_) t += d;
        return t;
    }

    bool is_zero() const noexcept { return dims_.empty(); }

    FieldMatrix d(std::size_t n) const {
        if (n < diffs_.size()) return diffs_[n];
        return FieldMatrix::zero(field_, dim(n), dim(n + 1));
    }

    /// The differential from degree n to degree n-1; for n = 0 the empty map X_0 -> 0.
    FieldMatrix d_into_below(std::size_t n) const {
        return n == 0 ? FieldMatrix::zero(field_, 0, dim(0)) : d(n - 1);
    }

    bool has_trivial_differentials() const {
        for (const auto& m : diffs_)
            if (!m.is_zero()) return false;
        return true;
    }

    friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
        if (!(a.field_ == b.field_) || a.dims_ != b.dims_) return false;
        for (std::size_t n = 0; n + 1 < a.length(); ++n)
            if (!(a.d(n) == b.d(n))) return false;
        return true;
    }

private:
    void normalise() {
        while (!dims_.empty() && dims_.back() == 0) dims_.pop_back();
        for (std::size_t n = dims_.size(); n < diffs_.size(); ++n)
            if (!diffs_[n].empty() && !diffs_[n].is_zero())
                throw PreconditionError("nonzero differential " + std::to_string(n) + " beyond the top degree");
        if (diffs_.size() > dims_.size()) diffs_.resize(dims_.size());
        for (std::size_t n = diffs_.size(); n + 1 < dims_.size(); ++n)
            diffs_.push_back(FieldMatrix::zero(field_, dims_[n], dims_[n + 1]));
        if (!dims_.empty()) diffs_.resize(dims_.size() - 1);
        for (std::size_t n = 0; n < diffs_.size(); ++n) {
            const auto& m = diffs_[n];
            if (m.rows() != dims_[n] || m.cols() != dims_[n + 1])
                throw PreconditionError("differential " + std::to_string(n) + " has shape " + m.shape() +
                                        ", expected " + std::to_string(dims_[n]) + "x" + std::to_string(dims_[n + 1]));
            if (!(m.field() == field_)) throw PreconditionError("differential over the wrong field");
        }
        for (std::size_t n = 0; n + 1 < diffs_.size(); ++n)
            if (!(diffs_[n] * diffs_[n + 1]).is_zero())
                throw PreconditionError("d(" + std::to_string(n) + ") * d(" + std::to_string(n + 1) + ") != 0");
    }

    Field field_{};
    std::vector<std::size_t> dims_;
    std::vector<FieldMatrix> diffs_;
};

class ChainMap {
public:
    ChainMap() = default;

    /// components[n]: target.dim(n) x source.dim(n). Missing components are zero.
    ChainMap(ChainComplex source, ChainComplex target, std::vector<FieldMatrix> components)
        : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
        normalise();
    }

    static ChainMap zero(const ChainComplex& x, const ChainComplex& y) { return {x, y, {}}; }

    static ChainMap identity(const ChainComplex& x) {
        std::vector<FieldMatrix> c;
        for (std::size_t n = 0; n < x.length(); ++n) c.push_back(FieldMatrix::identity(x.field(), x.dim(n)));
        return {x, x, std::move(c)};
    }

    const ChainComplex& source() const noexcept { return source_; }
    const ChainComplex& target() const noexcept { return target_; }
    Field field() const noexcept { return source_.field(); }
    std::size_t length() const noexcept { return comps_.size(); }

    FieldMatrix operator[](std::size_t n) const {
        if (n < comps_.size()) return comps_[n];
        return FieldMatrix::zero(field(), target_.dim(n), source_.dim(n));
    }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool is_mono() const {
        for (std::size_t n = 0; n < source_.length(); ++n)
            if (!is_injective((*this)[n])) return false;
        return true;
    }

    /// Degreewise surjective in every degree >= from.
    bool is_epi(std::size_t from = 0) const {
        for (std::size_t n = from; n < target_.length(); ++n)
            if (!is_surjective((*this)[n])) return false;
        return true;
    }

    bool is_iso() const { return source_.dims() == target_.dims() && is_mono(); }

    friend ChainMap operator*(const ChainMap& g, const ChainMap& f) {
        require(f.target_ == g.source_, "composing chain maps with mismatched middle complex");
        std::vector<FieldMatrix> c;
        const std::size_t len = std::min(f.source_.length(), g.target_.length());
        for (std::size_t n = 0; n < len; ++n) c.push_back(g[n] * f[n]);
        return {f.source_, g.target_, std::move(c)};
    }

    friend ChainMap operator+(const ChainMap& a, const ChainMap& b) {
        a.check_parallel(b);
        std::vector<FieldMatrix> c;
        for (std::size_t n = 0; n < a.max_len(); ++n) c.push_back(a[n] + b[n]);
        return {a.source_, a.target_, std::move(c)};
    }

    friend ChainMap operator-(const ChainMap& a, const ChainMap& b) {
        a.check_parallel(b);
        std::vector<FieldMatrix> c;
        for (std::size_t n = 0; n < a.max_len(); ++n) c.push_back(a[n] - b[n]);
        return {a.source_, a.target_, std::move(c)};
    }

    ChainMap operator-() const {
        std::vector<FieldMatrix> c;
        for (const auto& m : comps_) c.push_back(-m);
        return {source_, target_, std::move(c)};
    }

    friend bool operator==(const ChainMap& a, const ChainMap& b) {
        if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
        for (std::size_t n = 0; n < a.max_len(); ++n)
            if (!(a[n] == b[n])) return false;
        return true;
    }

private:
    std::size_t max_len() const noexcept { return std::min(source_.length(), target_.length()); }

    void check_parallel(const ChainMap& b) const {
        require(source_ == b.source_ && target_ == b.target_, "chain maps are not parallel");
    }

    void normalise() {
        require(source_.field() == target_.field(), "chain map between complexes over different fields");
        const std::size_t len = max_len();
        for (std::size_t n = len; n < comps_.size(); ++n)
            require(comps_[n].empty() || comps_[n].is_zero(), "nonzero chain map component beyond range");
        comps_.resize(len, FieldMatrix());
        for (std::size_t n = 0; n < len; ++n) {
            auto& m = comps_[n];
            if (m.rows() == 0 && m.cols() == 0) m = FieldMatrix::zero(field(), target_.dim(n), source_.dim(n));
            if (m.rows() != target_.dim(n) || m.cols() != source_.dim(n))
                throw PreconditionError("chain map component " + std::to_string(n) + " has shape " + m.shape() +
                                        ", expected " + std::to_string(target_.dim(n)) + "x" +
                                        std::to_string(source_.dim(n)));
        }
        for (std::size_t n = 0; n + 1 < std::max(source_.length(), target_.length()); ++n)
            if (!((*this)[n] * source_.d(n) == target_.d(n) * (*this)[n + 1]))
                throw PreconditionError("chain map does not commute with the differential in degree " +
                                        std::to_string(n + 1));
    }

    ChainComplex source_;
    ChainComplex target_;
    std::vector<FieldMatrix> comps_;
};

/// Inverse of a chain isomorphism.
inline ChainMap inverse(const ChainMap& g) {
    require(g.is_iso(), "inverse of a chain map that is not an isomorphism");
    std::vector<FieldMatrix> c;
    for (std::size_t n = 0; n < g.source().length(); ++n) c.push_back(inverse(g[n]));
    return {g.target(), g.source(), std::move(c)};
}

// ---------------------------------------------------------------------------
// Homology

struct HomologyData {
    std::vector<FieldMatrix> cycles;     // basis of Z_n as columns in X_n
    std::vector<FieldMatrix> boundaries; // basis of B_n as columns in X_n
    std::vector<std::size_t> betti;      // dim H_n
    std::vector<FieldMatrix> projection; // Z_n (cycle coordinates) -> H_n
    std::vector<FieldMatrix> section;    // H_n -> Z_n (cycle coordinates)

    std::size_t dim(std::size_t n) const { return n < betti.size() ? betti[n] : 0; }

    /// Section composed with the inclusion Z_n -> X_n.
    FieldMatrix representatives(std::size_t n) const { return cycles[n] * section[n]; }
};

inline FieldMatrix cycle_basis(const ChainComplex& x, std::size_t n) {
    return n == 0 ? FieldMatrix::identity(x.field(), x.dim(0)) : kernel_basis(x.d(n - 1));
}

inline HomologyData homology(const ChainComplex& x) {
    HomologyData h;
    for (std::size_t n = 0; n < x.length(); ++n) {
        FieldMatrix z = cycle_basis(x, n);
        FieldMatrix b = image_basis(x.d(n));
        FieldMatrix b_in_z = solve_or_throw(z, b, "boundaries are cycles");
        auto cs = complement_section(b_in_z, z.cols());
        h.betti.push_back(cs.section.cols());
        h.cycles.push_back(std::move(z));
        h.boundaries.push_back(std::move(b));
        h.projection.push_back(std::move(cs.quotient_proj));
        h.section.push_back(std::move(cs.section));
    }
    return h;
}

/// H_n(g) in the bases fixed by homology().
inline std::vector<FieldMatrix> homology_map(const ChainMap& g, const HomologyData& hx, const HomologyData& hy) {
    std::vector<FieldMatrix> out;
    const Field f = g.field();
    for (std::size_t n = 0; n < std::max(hx.betti.size(), hy.betti.size()); ++n) {
        if (hx.dim(n) == 0 || hy.dim(n) == 0) {
            out.push_back(FieldMatrix::zero(f, hy.dim(n), hx.dim(n)));
            continue;
        }
        FieldMatrix image = g[n] * hx.representatives(n);
        FieldMatrix coords = solve_or_throw(hy.cycles[n], image, "chain maps send cycles to cycles");
        out.push_back(hy.projection[n] * coords);
    }
    return out;
}

inline std::vector<FieldMatrix> homology_map(const ChainMap& g) {
    return homology_map(g, homology(g.source()), homology(g.target()));
}

inline bool is_weak_equivalence(const ChainMap& g) {
    for (const auto& m : homology_map(g))
        if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    return true;
}

/// In chain complexes a fibration is a map that is surjective in degrees >= 1.
inline bool is_fibration(const ChainMap& g) { return g.is_epi(1); }

/// Cofibrations are the degreewise monomorphisms.
inline bool is_cofibration(const ChainMap& g) { return g.is_mono(); }

inline bool is_acyclic(const ChainComplex& x) {
    for (auto b : homology(x).betti)
        if (b != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Direct sums

inline ChainComplex direct_sum(const ChainComplex& x, const ChainComplex& y) {
    require(x.field() == y.field(), "direct sum over different fields");
    const std::size_t len = std::max(x.length(), y.length());
    std::vector<std::size_t> dims;
    std::vector<FieldMatrix> diffs;
    for (std::size_t n = 0; n < len; ++n) dims.push_back(x.dim(n) + y.dim(n));
    for (std::size_t n = 0; n + 1 < len; ++n) diffs.push_back(block_diag(x.d(n), y.d(n)));
    return {x.field(), std::move(dims), std::move(diffs)};
}

inline ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
    ChainComplex s = direct_sum(f.source(), g.source());
    ChainComplex t = direct_sum(f.target(), g.target());
    std::vector<FieldMatrix> c;
    for (std::size_t n = 0; n < std::min(s.length(), t.length()); ++n) c.push_back(block_diag(f[n], g[n]));
    return {std::move(s), std::move(t), std::move(c)};
}

/// [f; g]: X -> Y (+) Z.
inline ChainMap stack_maps(const ChainMap& f, const ChainMap& g) {
    require(f.source() == g.source(), "stacked maps need a common source");
    ChainComplex t = direct_sum(f.target(), g.target());
    std::vector<FieldMatrix> c;
    for (std::size_t n = 0; n < std::min(f.source().length(), t.length()); ++n) c.push_back(vstack(f[n], g[n]));
    return {f.source(), std::move(t), std::move(c)};
}

/// [f g]: X (+) Y -> Z.
inline ChainMap join_maps(const ChainMap& f, const ChainMap& g) {
    require(f.target() == g.target(), "joined maps need a common target");
    ChainComplex s = direct_sum(f.source(), g.source());
    std::vector<FieldMatrix> c;
    for (std::size_t n = 0; n < std::min(s.length(), f.target().length()); ++n) c.push_back(hstack(f[n], g[n]));
    return {std::move(s), f.target(), std::move(c)};
}

inline ChainMap sum_inclusion_first(const ChainComplex& x, const ChainComplex& y) {
    return stack_maps(ChainMap::identity(x), ChainMap::zero(x, y));
}
inline ChainMap sum_inclusion_second(const ChainComplex& x, const ChainComplex& y) {
    return stack_maps(ChainMap::zero(y, x), ChainMap::identity(y));
}
inline ChainMap sum_projection_first(const ChainComplex& x, const ChainComplex& y) {
    return join_maps(ChainMap::identity(x), ChainMap::zero(y, x));
}
inline ChainMap sum_projection_second(const ChainComplex& x, const ChainComplex& y) {
    return join_maps(ChainMap::zero(x, y), ChainMap::identity(y));
}

// ---------------------------------------------------------------------------
// Kernels, images, quotients, pushouts

struct SubcomplexData {
    ChainComplex complex;
    ChainMap inclusion;
};

inline SubcomplexData kernel(const ChainMap& g) {
    const ChainComplex& x = g.source();
    std::vector<FieldMatrix> basis;
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n < x.length(); ++n) {
        basis.push_back(kernel_basis(g[n]));
        dims.push_back(basis.back().cols());
    }
    std::vector<FieldMatrix> diffs;
    for (std::size_t n = 0; n + 1 < x.length(); ++n)
        diffs.push_back(solve_or_throw(basis[n], x.d(n) * basis[n + 1], "kernel is a subcomplex"));
    ChainComplex w(x.field(), std::move(dims), std::move(diffs));
    return {w, ChainMap(w, x, std::move(basis))};
}

struct QuotientData {
    ChainComplex complex;
    ChainMap projection;              // Y -> Y/f(X)
    std::vector<FieldMatrix> section; // linear sections (Y/f(X))_n -> Y_n, not chain maps
};

/// Y / f(X) for any chain map f: X -> Y.
inline QuotientData image_quotient(const ChainMap& f) {
    const ChainComplex& y = f.target();
    std::vector<FieldMatrix> proj, sec;
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n < y.length(); ++n) {
        auto cs = complement_section(image_basis(f[n]), y.dim(n));
        dims.push_back(cs.section.cols());
        proj.push_back(std::move(cs.quotient_proj));
        sec.push_back(std::move(cs.section));
    }
    std::vector<FieldMatrix> diffs;
    for (std::size_t n = 0; n + 1 < y.length(); ++n) diffs.push_back(proj[n] * y.d(n) * sec[n + 1]);
    ChainComplex q(y.field(), std::move(dims), std::move(diffs));
    return {q, ChainMap(y, q, std::move(proj)), std::move(sec)};
}

/// Quotient by a degreewise monomorphism.
inline QuotientData quotient(const ChainMap& f) {
    require(f.is_mono(), "quotient requires a degreewise monomorphism");
    return image_quotient(f);
}

struct ChainPushout {
    ChainComplex complex;
    ChainMap from_w0;
    ChainMap from_w1;
    ChainMap from_sum;                // W0 (+) W1 -> Q
    std::vector<FieldMatrix> section; // linear sections Q_n -> (W0 (+) W1)_n

    /// The map Q -> T induced by a: W0 -> T and b: W1 -> T with a f = b g.
    ChainMap induced(const ChainMap& a, const ChainMap& b) const {
        ChainMap joined = join_maps(a, b);
        std::vector<FieldMatrix> c;
        for (std::size_t n = 0; n < complex.length(); ++n) c.push_back(joined[n] * section[n]);
        ChainMap m(complex, a.target(), std::move(c));
        require(m * from_sum == joined, "induced map out of a pushout needs a compatible cocone");
        return m;
    }
};

/// colim(W0 <-f- V -g-> W1).
inline ChainPushout pushout(const ChainMap& f, const ChainMap& g) {
    require(f.source() == g.source(), "pushout of maps with different sources");
    ChainComplex sum = direct_sum(f.target(), g.target());
    ChainMap diff = stack_maps(f, -g);
    auto q = image_quotient(diff);
    ChainMap from_w0 = q.projection * sum_inclusion_first(f.target(), g.target());
    ChainMap from_w1 = q.projection * sum_inclusion_second(f.target(), g.target());
    return {q.complex, std::move(from_w0), std::move(from_w1), q.projection, std::move(q.section)};
}

// ---------------------------------------------------------------------------
// Suspension and desuspension

inline ChainComplex suspend(const ChainComplex& x) {
    if (x.is_zero()) return x;
    std::vector<std::size_t> dims{0};
    for (auto d : x.dims()) dims.push_back(d);
    std::vector<FieldMatrix> diffs{FieldMatrix::zero(x.field(), 0, x.dim(0))};
    for (std::size_t n = 0; n + 1 < x.length(); ++n) diffs.push_back(-x.d(n));
    return {x.field(), std::move(dims), std::move(diffs)};
}

inline ChainMap suspend(const ChainMap& g) {
    std::vector<FieldMatrix> c{FieldMatrix::zero(g.field(), 0, 0)};
    for (std::size_t n = 0; n < g.length(); ++n) c.push_back(g[n]);
    return {suspend(g.source()), suspend(g.target()), std::move(c)};
}

inline ChainComplex suspend(const ChainComplex& x, std::size_t times) {
    ChainComplex y = x;
    for (std::size_t k = 0; k < times; ++k) y = suspend(y);
    return y;
}

inline ChainMap suspend(const ChainMap& g, std::size_t times) {
    ChainMap h = g;
    for (std::size_t k = 0; k < times; ++k) h = suspend(h);
    return h;
}

/// (S⁻¹X)_0 = Z_1 X in the basis cycle_basis(x, 1); (S⁻¹X)_n = X_{n+1} above.
inline ChainComplex desuspend(const ChainComplex& x) {
    if (x.length() <= 1) return ChainComplex(x.field());
    const FieldMatrix z1 = cycle_basis(x, 1);
    std::vector<std::size_t> dims{z1.cols()};
    for (std::size_t n = 2; n < x.length(); ++n) dims.push_back(x.dim(n));
    std::vector<FieldMatrix> diffs;
    if (x.length() > 2) diffs.push_back(solve_or_throw(z1, -x.d(1), "boundaries are cycles"));
    for (std::size_t n = 2; n + 1 < x.length(); ++n) diffs.push_back(-x.d(n));
    return {x.field(), std::move(dims), std::move(diffs)};
}

inline ChainMap desuspend(const ChainMap& g) {
    ChainComplex s = desuspend(g.source()), t = desuspend(g.target());
    std::vector<FieldMatrix> c;
    if (!s.is_zero() && !t.is_zero()) {
        const FieldMatrix zs = cycle_basis(g.source(), 1), zt = cycle_basis(g.target(), 1);
        c.push_back(solve_or_throw(zt, g[1] * zs, "chain maps preserve cycles"));
        for (std::size_t n = 1; n < std::min(s.length(), t.length()); ++n) c.push_back(g[n + 1]);
    }
    return {std::move(s), std::move(t), std::move(c)};
}

inline ChainComplex desuspend(const ChainComplex& x, std::size_t times) {
    ChainComplex y = x;
    for (std::size_t k = 0; k < times; ++k) y = desuspend(y);
    return y;
}

inline ChainMap desuspend(const ChainMap& g, std::size_t times) {
    ChainMap h = g;
    for (std::size_t k = 0; k < times; ++k) h = desuspend(h);
    return h;
}

// ---------------------------------------------------------------------------
// Cofibers

struct CofiberData {
    ChainComplex cofiber;
    ChainMap inclusion;  // i: Y -> Cf
    ChainMap projection; // p: Cf -> SX
};

/// (Cf)_n = Y_n (+) X_{n-1}, differential [[δ_Y, f], [0, -δ_X]].
inline CofiberData cofiber(const ChainMap& f) {
    const ChainComplex& x = f.source();
    const ChainComplex& y = f.target();
    const Field fld = f.field();
    const std::size_t len = std::max(y.length(), x.length() + 1);
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n < len; ++n) dims.push_back(y.dim(n) + (n == 0 ? 0 : x.dim(n - 1)));
    std::vector<FieldMatrix> diffs;
    for (std::size_t n = 0; n + 1 < len; ++n) {
        // (Cf)_{n+1} = Y_{n+1} (+) X_n  ->  (Cf)_n = Y_n (+) X_{n-1}
        FieldMatrix lower_right = x.d_into_below(n);
        diffs.push_back(block2x2(y.d(n), f[n], FieldMatrix::zero(fld, lower_right.rows(), y.dim(n + 1)),
                                 -lower_right));
    }
    ChainComplex cf(fld, std::move(dims), std::move(diffs));
    ChainComplex sx = suspend(x);
    std::vector<FieldMatrix> ic, pc;
    for (std::size_t n = 0; n < cf.length(); ++n) {
        const std::size_t xd = n == 0 ? 0 : x.dim(n - 1);
        ic.push_back(vstack(FieldMatrix::identity(fld, y.dim(n)), FieldMatrix::zero(fld, xd, y.dim(n))));
        pc.push_back(hstack(FieldMatrix::zero(fld, xd, y.dim(n)), FieldMatrix::identity(fld, xd)));
    }
    ChainMap i(y, cf, std::move(ic));
    ChainMap p(cf, std::move(sx), std::move(pc));
    return {std::move(cf), std::move(i), std::move(p)};
}

/// A square βf ≃ gα witnessed by a homotopy h_n: X_n -> Z_{n+1}; missing entries are zero.
struct HomotopySquare {
    ChainMap f;     // X -> Y
    ChainMap g;     // W -> Z
    ChainMap alpha; // X -> W
    ChainMap beta;  // Y -> Z
    std::vector<FieldMatrix> h;

    FieldMatrix homotopy(std::size_t n) const {
        if (n < h.size() && !(h[n].rows() == 0 && h[n].cols() == 0)) return h[n];
        return FieldMatrix::zero(f.field(), g.target().dim(n + 1), f.source().dim(n));
    }

    /// βf − gα = δ_Z h + h δ_X in every degree.
    bool holds() const {
        const ChainComplex& x = f.source();
        const ChainComplex& z = g.target();
        const std::size_t len = std::max(x.length(), z.length());
        for (std::size_t n = 0; n < len; ++n) {
            FieldMatrix lhs = beta[n] * f[n] - g[n] * alpha[n];
            FieldMatrix rhs = z.d(n) * homotopy(n);
            if (n > 0) rhs += homotopy(n - 1) * x.d(n - 1);
            if (!(lhs == rhs)) return false;
        }
        return true;
    }
};

/// γ: Cf -> Cg with γ_n = [[β_n, h_{n-1}], [0, α_{n-1}]].
inline ChainMap cofiber_map(const HomotopySquare& sq, const CofiberData& cf, const CofiberData& cg) {
    require(sq.alpha.source() == sq.f.source() && sq.beta.source() == sq.f.target() &&
                sq.alpha.target() == sq.g.source() && sq.beta.target() == sq.g.target(),
            "homotopy square has mismatched corners");
    if (!sq.holds()) throw PreconditionError("homotopy identity βf − gα = δh + hδ fails");
    std::vector<FieldMatrix> c;
    for (std::size_t n = 0; n < std::min(cf.cofiber.length(), cg.cofiber.length()); ++n) {
        if (n == 0) {
            c.push_back(sq.beta[0]);
            continue;
        }
        c.push_back(block2x2(sq.beta[n], sq.homotopy(n - 1),
                             FieldMatrix::zero(sq.f.field(), sq.alpha.target().dim(n - 1), sq.beta.source().dim(n)),
                             sq.alpha[n - 1]));
    }
    return {cf.cofiber, cg.cofiber, std::move(c)};
}

inline ChainMap cofiber_map(const HomotopySquare& sq) { return cofiber_map(sq, cofiber(sq.f), cofiber(sq.g)); }

/// C(α, β) for a strictly commuting square.
inline ChainMap cofiber_map(const ChainMap& f, const ChainMap& g, const ChainMap& alpha, const ChainMap& beta) {
    return cofiber_map(HomotopySquare{f, g, alpha, beta, {}});
}

/// Cf -> Y/f(X), given by [q, 0]. A weak equivalence when f is a monomorphism.
inline ChainMap comparison_morphism(const ChainMap& f) {
    auto cf = cofiber(f);
    auto q = image_quotient(f);
    std::vector<FieldMatrix> c;
    for (std::size_t n = 0; n < std::min(cf.cofiber.length(), q.complex.length()); ++n) {
        const std::size_t xd = n == 0 ? 0 : f.source().dim(n - 1);
        c.push_back(hstack(q.projection[n], FieldMatrix::zero(f.field(), q.complex.dim(n), xd)));
    }
    return {cf.cofiber, q.complex, std::move(c)};
}

// ---------------------------------------------------------------------------
// Cone, path complex and the natural factorisations

inline CofiberData cone(const ChainComplex& x) { return cofiber(ChainMap::identity(x)); }

struct PathData {
    ChainComplex path;
    ChainMap projection; // p: PX -> X
};

/// PX_0 = X_1 and PX_n = X_{n+1} (+) X_n, with p = δ in degree 0 and [0 1] above.
inline PathData path(const ChainComplex& x) {
    const Field f = x.field();
    if (x.length() == 0) return {x, ChainMap::identity(x)};
    const std::size_t len = x.length();
    std::vector<std::size_t> dims{x.dim(1)};
    for (std::size_t n = 1; n < len; ++n) dims.push_back(x.dim(n + 1) + x.dim(n));
    std::vector<FieldMatrix> diffs;
    if (len > 1) diffs.push_back(hstack(-x.d(1), FieldMatrix::identity(f, x.dim(1))));
    for (std::size_t n = 1; n + 1 < len; ++n)
        diffs.push_back(block2x2(-x.d(n + 1), FieldMatrix::identity(f, x.dim(n + 1)),
                                 FieldMatrix::zero(f, x.dim(n), x.dim(n + 2)), x.d(n)));
    ChainComplex px(f, std::move(dims), std::move(diffs));
    std::vector<FieldMatrix> pc{x.d(0)};
    for (std::size_t n = 1; n < len; ++n)
        pc.push_back(hstack(FieldMatrix::zero(f, x.dim(n), x.dim(n + 1)), FieldMatrix::identity(f, x.dim(n))));
    ChainMap p(px, x, std::move(pc));
    return {std::move(px), std::move(p)};
}

struct ChainFactorisation {
    ChainComplex middle;
    ChainMap alpha; // X -> M
    ChainMap beta;  // M -> Y
};

/// X -> CX (+) Y -> Y with α = [i; g] and β = [0 1]. Natural, not minimal.
inline ChainFactorisation cone_factorisation(const ChainMap& g) {
    auto c = cone(g.source());
    ChainMap alpha = stack_maps(c.inclusion, g);
    ChainMap beta = sum_projection_second(c.cofiber, g.target());
    return {alpha.target(), std::move(alpha), std::move(beta)};
}

/// X -> X (+) PY -> Y with α = [1; 0] and β = [g p]. Natural, not minimal.
inline ChainFactorisation path_factorisation(const ChainMap& g) {
    auto p = path(g.target());
    ChainMap alpha = sum_inclusion_first(g.source(), p.path);
    ChainMap beta = join_maps(g, p.projection);
    return {alpha.target(), std::move(alpha), std::move(beta)};
}

// ---------------------------------------------------------------------------
// Standard decomposition and minimal representative

struct StandardDecomposition {
    ChainComplex boundary_cone; // CBX
    ChainComplex homology;      // HX with trivial differentials
    ChainMap phi;               // CBX -> X
    ChainMap s;                 // HX -> X
    ChainMap iso;               // [φ | s]: CBX (+) HX -> X
};

inline StandardDecomposition standard_decomposition(const ChainComplex& x) {
    const Field f = x.field();
    HomologyData h = homology(x);
    std::vector<std::size_t> bdims, hdims;
    for (std::size_t n = 0; n < x.length(); ++n) {
        bdims.push_back(h.boundaries[n].cols());
        hdims.push_back(h.betti[n]);
    }
    ChainComplex bx = ChainComplex::graded(f, bdims);
    ChainComplex cbx = cone(bx).cofiber;
    ChainComplex hx = ChainComplex::graded(f, hdims);

    // On B_n the map is the inclusion; on the shifted copy of B_{n-1} it picks y with δy = b.
    std::vector<FieldMatrix> phi_c;
    for (std::size_t n = 0; n < cbx.length(); ++n) {
        FieldMatrix on_b = n < x.length() ? h.boundaries[n] : FieldMatrix::zero(f, x.dim(n), 0);
        FieldMatrix on_shift = n == 0 ? FieldMatrix::zero(f, x.dim(0), 0)
                                      : solve_or_throw(x.d(n - 1), h.boundaries[n - 1], "boundaries have preimages");
        phi_c.push_back(hstack(on_b, on_shift));
    }
    ChainMap phi(cbx, x, std::move(phi_c));
    std::vector<FieldMatrix> s_c;
    for (std::size_t n = 0; n < hx.length(); ++n) s_c.push_back(h.representatives(n));
    ChainMap s(hx, x, std::move(s_c));
    ChainMap iso = join_maps(phi, s);
    return {std::move(cbx), std::move(hx), std::move(phi), std::move(s), std::move(iso)};
}

struct MinimalRepresentative {
    ChainComplex complex; // trivial differentials
    ChainMap weak_equivalence;
};

inline MinimalRepresentative minimal_representative(const ChainComplex& x) {
    auto sd = standard_decomposition(x);
    return {sd.homology, sd.s};
}

// ---------------------------------------------------------------------------
// Lifting and minimal factorisations

/// Optional randomisation of lifts: adds random kernel vectors to every solved column.
struct Perturbation {
    std::mt19937_64* rng = nullptr;

    FieldMatrix apply(const FieldMatrix& system, FieldMatrix solution) const {
        if (rng == nullptr || solution.cols() == 0) return solution;
        FieldMatrix k = kernel_basis(system);
        if (k.cols() == 0) return solution;
        return solution + k * FieldMatrix::random(system.field(), k.cols(), solution.cols(), *rng);
    }
};

/// Given a degreewise mono j: A -> B, an acyclic fibration q: E -> D and u: A -> E,
/// v: B -> D with q u = v j, returns φ: B -> E with φ j = u and q φ = v.
/// Degrees are handled in ascending order; each step solves a linear system on a complement of j.
inline ChainMap lift_against_acyclic_fibration(const ChainMap& j, const ChainMap& q, const ChainMap& u,
                                               const ChainMap& v, Perturbation perturb = {}) {
    const ChainComplex& b = j.target();
    const ChainComplex& e = q.source();
    require(j.source() == u.source() && j.target() == v.source() && u.target() == e && v.target() == q.target(),
            "lifting square has mismatched corners");
    require(q * u == v * j, "lifting square does not commute");
    std::vector<FieldMatrix> phi;
    for (std::size_t n = 0; n < b.length(); ++n) {
        FieldMatrix jn = j[n];
        require(is_injective(jn), "lift source map is not degreewise mono");
        auto cs = complement_section(jn, b.dim(n));
        const FieldMatrix& sec = cs.section;
        FieldMatrix system = q[n];
        FieldMatrix rhs = v[n] * sec;
        if (n > 0) {
            system = vstack(e.d(n - 1), system);
            rhs = vstack(phi[n - 1] * b.d(n - 1) * sec, rhs);
        }
        FieldMatrix sol = perturb.apply(system, solve_or_throw(system, rhs, "lift against an acyclic fibration"));
        FieldMatrix on_basis = hstack(u[n], sol);
        phi.push_back(on_basis * inverse(hstack(jn, sec)));
    }
    return {b, e, std::move(phi)};
}

/// Minimal factorisation X -> (CBW (+) CHW) (+) Y -> Y with W = ker g, α = [φ; g], β = [0 1].
inline ChainFactorisation minimal_factorisation(const ChainMap& g, Perturbation perturb = {}) {
    const Field f = g.field();
    auto w = kernel(g);
    auto sd = standard_decomposition(w.complex);
    auto chw = cone(sd.homology);
    ChainComplex a = direct_sum(sd.boundary_cone, chw.cofiber);
    ChainMap into_a = direct_sum(ChainMap::identity(sd.boundary_cone), chw.inclusion) * inverse(sd.iso);
    ChainComplex zero(f);
    ChainMap phi = lift_against_acyclic_fibration(w.inclusion, ChainMap::zero(a, zero), into_a,
                                                  ChainMap::zero(g.source(), zero), perturb);
    ChainMap alpha = stack_maps(phi, g);
    ChainMap beta = sum_projection_second(a, g.target());
    return {alpha.target(), std::move(alpha), std::move(beta)};
}

} // namespace tamecx

#pragma once

// Discrete zigzags, their straightening into functors on the standard poset [k], and incarnations
// as tame objects.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tamecx/decomp.hpp"

namespace tamecx {

enum class Direction { r, l };

class Profile {
public:
    Profile() = default;
    explicit Profile(std::vector<Direction> dirs) : dirs_(std::move(dirs)) {
        require(!dirs_.empty(), "a profile needs at least one direction");
    }

    /// Letters r and l, e.g. "rlr".
    static Profile parse(std::string_view s) {
        std::vector<Direction> d;
        for (char c : s) {
            if (c == 'r') d.push_back(Direction::r);
            else if (c == 'l') d.push_back(Direction::l);
            else throw PreconditionError(std::string("profile letter '") + c + "' is neither r nor l");
        }
        return Profile(std::move(d));
    }

    std::string to_string() const {
        std::string s;
        for (auto d : dirs_) s += d == Direction::r ? 'r' : 'l';
        return s;
    }

    std::size_t k() const noexcept { return dirs_.size(); }

    /// c_a for a in 1..k.
    Direction at(std::size_t a) const {
        require(a >= 1 && a <= dirs_.size(), "profile index out of range");
        return dirs_[a - 1];
    }

    /// w_a = number of b ≤ a with c_b = l.
    std::vector<std::size_t> weights() const {
        std::vector<std::size_t> w{0};
        for (auto d : dirs_) w.push_back(w.back() + (d == Direction::l ? 1 : 0));
        return w;
    }

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    std::vector<Direction> dirs_;
};

class DiscreteZigzag {
public:
    DiscreteZigzag() = default;

    /// maps[a-1] is X^{a-1} -> X^a when c_a = r, and X^a -> X^{a-1} when c_a = l.
    DiscreteZigzag(Profile profile, std::vector<ChainComplex> spaces, std::vector<ChainMap> maps)
        : profile_(std::move(profile)), spaces_(std::move(spaces)), maps_(std::move(maps)) {
        const std::size_t k = profile_.k();
        require(k >= 1, "zigzags have at least one map");
        require(spaces_.size() == k + 1, "a zigzag over k directions has k+1 spaces");
        require(maps_.size() == k, "a zigzag over k directions has k maps");
        for (std::size_t a = 1; a <= k; ++a) {
            const bool right = profile_.at(a) == Direction::r;
            const ChainComplex& from = right ? spaces_[a - 1] : spaces_[a];
            const ChainComplex& to = right ? spaces_[a] : spaces_[a - 1];
            require(maps_[a - 1].source() == from && maps_[a - 1].target() == to,
                    "map " + std::to_string(a) + " does not match the profile direction");
        }
    }

    const Profile& profile() const noexcept { return profile_; }
    std::size_t k() const noexcept { return profile_.k(); }
    Field field() const { return spaces_.front().field(); }
    const ChainComplex& space(std::size_t a) const { return spaces_.at(a); }
    const std::vector<ChainComplex>& spaces() const noexcept { return spaces_; }
    /// The map between a-1 and a, in whichever direction the profile says.
    const ChainMap& map(std::size_t a) const { return maps_.at(a - 1); }
    const std::vector<ChainMap>& maps() const noexcept { return maps_; }

    friend bool operator==(const DiscreteZigzag&, const DiscreteZigzag&) = default;

private:
    Profile profile_;
    std::vector<ChainComplex> spaces_;
    std::vector<ChainMap> maps_;
};

inline DiscreteZigzag direct_sum(const DiscreteZigzag& x, const DiscreteZigzag& y) {
    require(x.profile() == y.profile(), "direct sum of zigzags with different profiles");
    std::vector<ChainComplex> s;
    std::vector<ChainMap> m;
    for (std::size_t a = 0; a <= x.k(); ++a) s.push_back(direct_sum(x.space(a), y.space(a)));
    for (std::size_t a = 1; a <= x.k(); ++a) m.push_back(direct_sum(x.map(a), y.map(a)));
    return {x.profile(), std::move(s), std::move(m)};
}

/// A functor on the standard poset [k]: maps[a-1] goes from spaces[a-1] to spaces[a].
struct StraightenedZigzag {
    std::vector<ChainComplex> spaces;
    std::vector<ChainMap> maps;
    std::vector<std::size_t> weights;
};

namespace detail {

/// S^{-w} of a map between w-fold suspensions, landing on the given unsuspended endpoints.
inline ChainMap shift_down(const ChainMap& g, std::size_t w, const ChainComplex& x, const ChainComplex& y) {
    std::vector<FieldMatrix> c;
    for (std::size_t n = 0; n < std::max(x.length(), y.length()); ++n) c.push_back(g[n + w]);
    return {x, y, std::move(c)};
}

/// Whether X̄^a is a suspended cofiber, i.e. a < k and c_{a+1} = l.
inline bool is_cofiber_slot(const Profile& c, std::size_t a) { return a < c.k() && c.at(a + 1) == Direction::l; }

} // namespace detail

inline StraightenedZigzag straighten(const DiscreteZigzag& z) {
    const Profile& c = z.profile();
    const std::size_t k = c.k();
    const auto w = c.weights();
    // cofibers of X^{a+1 -> a} where c_{a+1} = l
    std::vector<std::optional<CofiberData>> cof(k + 1);
    for (std::size_t a = 0; a < k; ++a)
        if (detail::is_cofiber_slot(c, a)) cof[a] = cofiber(z.map(a + 1));

    StraightenedZigzag out;
    out.weights = w;
    for (std::size_t a = 0; a <= k; ++a)
        out.spaces.push_back(suspend(cof[a] ? cof[a]->cofiber : z.space(a), w[a]));
    for (std::size_t a = 1; a <= k; ++a) {
        // S^{w_{a-1}} of the map into the unsuspended middle, then S^{w_a} i when X̄^a is a cofiber.
        ChainMap m = c.at(a) == Direction::r ? suspend(z.map(a), w[a]) : suspend(cof[a - 1]->projection, w[a - 1]);
        if (cof[a]) m = suspend(cof[a]->inclusion, w[a]) * m;
        out.maps.push_back(std::move(m));
    }
    return out;
}

/// A natural transformation between zigzags of one profile; components[a]: X^a -> Y^a.
class ZigzagMorphism {
public:
    ZigzagMorphism(DiscreteZigzag source, DiscreteZigzag target, std::vector<ChainMap> components)
        : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
        require(source_.profile() == target_.profile(), "zigzag morphism between different profiles");
        require(comps_.size() == source_.k() + 1, "one component per zigzag position");
        for (std::size_t a = 0; a <= source_.k(); ++a)
            require(comps_[a].source() == source_.space(a) && comps_[a].target() == target_.space(a),
                    "component " + std::to_string(a) + " has the wrong endpoints");
        for (std::size_t a = 1; a <= source_.k(); ++a) {
            const bool right = source_.profile().at(a) == Direction::r;
            const ChainMap& fx = source_.map(a);
            const ChainMap& fy = target_.map(a);
            const bool ok = right ? comps_[a] * fx == fy * comps_[a - 1] : comps_[a - 1] * fx == fy * comps_[a];
            if (!ok) throw PreconditionError("zigzag square " + std::to_string(a) + " does not commute");
        }
    }

    static ZigzagMorphism identity(const DiscreteZigzag& x) {
        std::vector<ChainMap> c;
        for (const auto& s : x.spaces()) c.push_back(ChainMap::identity(s));
        return {x, x, std::move(c)};
    }

    const DiscreteZigzag& source() const noexcept { return source_; }
    const DiscreteZigzag& target() const noexcept { return target_; }
    const ChainMap& operator[](std::size_t a) const { return comps_.at(a); }
    const std::vector<ChainMap>& components() const noexcept { return comps_; }

    friend bool operator==(const ZigzagMorphism&, const ZigzagMorphism&) = default;

private:
    DiscreteZigzag source_, target_;
    std::vector<ChainMap> comps_;
};

inline ZigzagMorphism operator*(const ZigzagMorphism& g, const ZigzagMorphism& f) {
    require(f.target() == g.source(), "composing zigzag morphisms with mismatched middle");
    std::vector<ChainMap> c;
    for (std::size_t a = 0; a < f.components().size(); ++a) c.push_back(g[a] * f[a]);
    return {f.source(), g.target(), std::move(c)};
}

/// Natural transformation between straightened zigzags.
struct StraightenedMap {
    StraightenedZigzag source;
    StraightenedZigzag target;
    std::vector<ChainMap> components;

    bool is_natural() const {
        for (std::size_t a = 1; a < components.size(); ++a)
            if (!(components[a] * source.maps[a - 1] == target.maps[a - 1] * components[a - 1])) return false;
        return true;
    }

    friend bool operator==(const StraightenedMap& f, const StraightenedMap& g) {
        return f.components == g.components;
    }
};

inline StraightenedMap straighten_map(const ZigzagMorphism& f) {
    const DiscreteZigzag& x = f.source();
    const DiscreteZigzag& y = f.target();
    const Profile& c = x.profile();
    const auto w = c.weights();
    StraightenedMap out{straighten(x), straighten(y), {}};
    for (std::size_t a = 0; a <= c.k(); ++a) {
        if (detail::is_cofiber_slot(c, a))
            out.components.push_back(suspend(cofiber_map(x.map(a + 1), y.map(a + 1), f[a + 1], f[a]), w[a]));
        else
            out.components.push_back(suspend(f[a], w[a]));
    }
    return out;
}

/// The pair (ĝ, h): components ĝ^a: X^a -> Y^a, and for every a with c_a = l a homotopy square
/// for X^a -> X^{a-1} against Y^a -> Y^{a-1}.
struct Unstraightened {
    std::vector<ChainMap> components;
    std::vector<std::optional<HomotopySquare>> squares; // index a in 1..k, slot 0 unused
};

inline Unstraightened unstraighten_map(const StraightenedMap& g, const DiscreteZigzag& x, const DiscreteZigzag& y) {
    require(x.profile() == y.profile(), "unstraightening between different profiles");
    const Profile& c = x.profile();
    const std::size_t k = c.k();
    const auto w = c.weights();
    require(g.components.size() == k + 1, "one component per position");
    require(g.is_natural(), "unstraightening requires a natural transformation");
    Unstraightened out;
    out.components.resize(k + 1);
    out.squares.resize(k + 1);
    for (std::size_t a = k + 1; a-- > 0;) {
        if (!detail::is_cofiber_slot(c, a)) {
            out.components[a] = detail::shift_down(g.components[a], w[a], x.space(a), y.space(a));
            continue;
        }
        const ChainMap down = detail::shift_down(g.components[a], w[a], cofiber(x.map(a + 1)).cofiber,
                                                 cofiber(y.map(a + 1)).cofiber);
        // On Cf = X^a (+) S X^{a+1} the map is [[ĝ^a, h], [0, S ĝ^{a+1}]].
        const ChainComplex& xa = x.space(a);
        const ChainComplex& ya = y.space(a);
        const ChainComplex& xb = x.space(a + 1);
        std::vector<FieldMatrix> top_left, h;
        for (std::size_t n = 0; n < down.source().length(); ++n) {
            const FieldMatrix m = down[n];
            top_left.push_back(m.block(0, 0, ya.dim(n), xa.dim(n)));
            if (n >= 1) h.push_back(m.block(0, xa.dim(n), ya.dim(n), xb.dim(n - 1)));
            require(m.block(ya.dim(n), 0, m.rows() - ya.dim(n), xa.dim(n)).is_zero(),
                    "straightened component does not preserve the cofiber inclusion");
        }
        out.components[a] = ChainMap(xa, ya, std::move(top_left));
        out.squares[a + 1] = HomotopySquare{x.map(a + 1), y.map(a + 1), out.components[a + 1], out.components[a],
                                            std::move(h)};
    }
    return out;
}

/// The inverse direction of the bijection: rebuilds the natural transformation from (ĝ, h).
inline StraightenedMap restraighten(const Unstraightened& u, const DiscreteZigzag& x, const DiscreteZigzag& y) {
    const Profile& c = x.profile();
    const auto w = c.weights();
    require(u.components.size() == c.k() + 1 && u.squares.size() == c.k() + 1, "one component per position");
    StraightenedMap out{straighten(x), straighten(y), {}};
    for (std::size_t a = 0; a <= c.k(); ++a) {
        if (detail::is_cofiber_slot(c, a)) {
            require(u.squares[a + 1].has_value(), "missing homotopy square");
            out.components.push_back(suspend(cofiber_map(*u.squares[a + 1]), w[a]));
        } else {
            out.components.push_back(suspend(u.components[a], w[a]));
        }
    }
    require(out.is_natural(), "components and homotopies do not assemble to a natural transformation");
    return out;
}

/// Kan extension of the straightened zigzag along the grid.
inline TameComplex incarnate(const DiscreteZigzag& z, const Grid& grid) {
    require(grid.size() == z.k() + 1, "an incarnation needs one grid point per zigzag position");
    auto s = straighten(z);
    return kan_extension(s.spaces, s.maps, grid);
}

inline BettiDiagrams zigzag_betti(const DiscreteZigzag& z, const Grid& grid) { return betti(incarnate(z, grid)); }

} // namespace tamecx

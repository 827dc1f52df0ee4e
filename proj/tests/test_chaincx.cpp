#include <catch2/catch_amalgamated.hpp>

#include "support/generators.hpp"
#include "tamecx/chaincx.hpp"

using namespace tamecx;
using namespace tamecx::testing;

namespace {

const Field F2(2);
const Field F3(3);

/// i: S^n -> D^{n+1}
ChainMap sphere_into_disk(Field f, std::size_t n) {
    ChainComplex s = ChainComplex::sphere(f, n), d = ChainComplex::disk(f, n + 1);
    std::vector<FieldMatrix> c(n + 1, FieldMatrix());
    c[n] = FieldMatrix::identity(f, 1);
    return {s, d, c};
}

std::vector<std::size_t> betti(const ChainComplex& x) { return homology(x).betti; }

bool all_zero(const std::vector<std::size_t>& v) {
    for (auto b : v)
        if (b) return false;
    return true;
}

/// Factors h: W -> M through a subcomplex inclusion j: K -> M.
ChainMap solve_each(const ChainMap& j, const ChainMap& h) {
    std::vector<FieldMatrix> c;
    for (std::size_t n = 0; n < h.source().length(); ++n) c.push_back(solve_or_throw(j[n], h[n], "factor"));
    return {h.source(), j.source(), c};
}

} // namespace

TEST_CASE("homology of spheres, disks and zero") {
    for (std::size_t n = 0; n < 4; ++n) {
        auto h = betti(ChainComplex::sphere(F2, n));
        REQUIRE(h.size() == n + 1);
        CHECK(h[n] == 1);
        for (std::size_t k = 0; k < n; ++k) CHECK(h[k] == 0);
        CHECK(all_zero(betti(ChainComplex::disk(F3, n + 1))));
    }
    CHECK(betti(ChainComplex(F2)).empty());
}

TEST_CASE("malformed complexes are rejected") {
    auto one = FieldMatrix::identity(F2, 1);
    CHECK_THROWS_AS(ChainComplex(F2, {1, 1, 1}, {one, one}), PreconditionError);
    CHECK_THROWS_AS(ChainComplex(F2, {1, 2}, {one}), PreconditionError);
}

TEST_CASE("suspension and desuspension") {
    CHECK(suspend(ChainComplex::sphere(F2, 2)) == ChainComplex::sphere(F2, 3));
    CHECK(suspend(ChainComplex(F2)).is_zero());
    for (std::size_t n = 1; n < 4; ++n) {
        auto dd = desuspend(ChainComplex::disk(F3, n + 1));
        CHECK(dd.dims() == ChainComplex::disk(F3, n).dims());
        CHECK(rank(dd.d(n - 1)) == 1);
    }
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_complex(F3, rng);
        CHECK(desuspend(suspend(x)) == x);
        auto sx = betti(suspend(x));
        auto hx = betti(x);
        if (!x.is_zero()) CHECK(sx[0] == 0);
        for (std::size_t n = 1; n < sx.size(); ++n) CHECK(sx[n] == hx[n - 1]);
        auto dx = betti(desuspend(x));
        for (std::size_t n = 0; n < dx.size(); ++n) CHECK(dx[n] == hx[n + 1]);
        if (x.dim(0) == 0) CHECK(suspend(desuspend(x)).dims() == x.dims());
    }
}

TEST_CASE("cones and path complexes are acyclic") {
    CHECK(cone(ChainComplex::sphere(F2, 1)).cofiber == ChainComplex::disk(F2, 2));
    CHECK(cone(ChainComplex(F2)).cofiber.is_zero());

    auto p0 = path(ChainComplex::sphere(F2, 0));
    CHECK(p0.path.is_zero());
    auto p1 = path(ChainComplex::sphere(F3, 1));
    CHECK(p1.path.dims() == std::vector<std::size_t>{1, 1});
    CHECK(is_acyclic(p1.path));

    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_complex(F3, rng);
        CHECK(is_acyclic(cone(x).cofiber));
        auto p = path(x);
        CHECK(is_acyclic(p.path));
        CHECK(is_fibration(p.projection));
        CHECK(p.path.dims() == desuspend(cone(x).cofiber).dims());
    }
}

TEST_CASE("cofibers") {
    auto x = ChainComplex::sphere(F2, 1), y = ChainComplex::disk(F2, 1);
    auto c0 = cofiber(ChainMap::zero(x, y));
    CHECK(c0.cofiber == direct_sum(y, suspend(x)));

    auto cid = cofiber(ChainMap::identity(x));
    CHECK(cid.cofiber == cone(x).cofiber);

    for (std::size_t n = 0; n < 3; ++n) {
        auto c = cofiber(sphere_into_disk(F3, n));
        auto h = betti(c.cofiber);
        for (std::size_t k = 0; k < h.size(); ++k) CHECK(h[k] == (k == n + 1 ? 1u : 0u));
    }

    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_complex(F2, rng), b = random_complex(F2, rng);
        auto f = random_chain_map(a, b, rng);
        auto c = cofiber(f);
        for (std::size_t n = 0; n < c.cofiber.length(); ++n) {
            CHECK(c.cofiber.dim(n) == b.dim(n) + (n ? a.dim(n - 1) : 0));
            CHECK((c.projection[n] * c.inclusion[n]).is_zero());
            CHECK(rank(c.inclusion[n]) + rank(c.projection[n]) == c.cofiber.dim(n));
        }
        CHECK(c.inclusion.is_mono());
        CHECK(c.projection.is_epi());
    }
}

TEST_CASE("maps between cofibers") {
    Rng rng(31);
    auto x = random_complex(F3, rng, 6), y = random_complex(F3, rng, 6);
    auto f = random_chain_map(x, y, rng);
    auto cf = cofiber(f);
    CHECK(cofiber_map(f, f, ChainMap::identity(x), ChainMap::identity(y)) == ChainMap::identity(cf.cofiber));

    // Strict squares give block upper triangular maps with zero off-diagonal block.
    auto beta = ChainMap::identity(y);
    auto gamma = cofiber_map(f, f, ChainMap::identity(x), beta);
    for (std::size_t n = 1; n < cf.cofiber.length(); ++n)
        CHECK(gamma[n].block(0, y.dim(n), y.dim(n), x.dim(n - 1)).is_zero());

    // g = f - (δh + hδ) is homotopic to f, so (1, 1, h) is a homotopy square from f to g.
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_complex(F3, rng, 6), b = random_complex(F3, rng, 6);
        auto ff = random_chain_map(a, b, rng);
        std::vector<FieldMatrix> h;
        for (std::size_t n = 0; n < a.length(); ++n) h.push_back(FieldMatrix::random(F3, b.dim(n + 1), a.dim(n), rng));
        std::vector<FieldMatrix> gc;
        for (std::size_t n = 0; n < std::max(a.length(), b.length()); ++n) {
            auto hn = n < h.size() ? h[n] : FieldMatrix::zero(F3, b.dim(n + 1), a.dim(n));
            FieldMatrix null = b.d(n) * hn;
            if (n > 0 && n - 1 < h.size()) null += h[n - 1] * a.d(n - 1);
            gc.push_back(ff[n] - null);
        }
        ChainMap g(a, b, gc);
        HomotopySquare sq{ff, g, ChainMap::identity(a), ChainMap::identity(b), h};
        REQUIRE(sq.holds());
        auto gamma2 = cofiber_map(sq);
        CHECK(gamma2.is_iso());
        bool nonzero_h = false;
        for (auto& m : h) nonzero_h = nonzero_h || !m.is_zero();
        if (nonzero_h && !(g == ff)) {
            HomotopySquare wrong{ff, g, ChainMap::identity(a), ChainMap::identity(b), {}};
            CHECK_THROWS_AS(cofiber_map(wrong), PreconditionError);
        }
    }
}

TEST_CASE("homotopy squares with trivial differentials commute") {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        auto gx = ChainComplex::graded(F2, {uniform(rng, 0, 2), uniform(rng, 0, 2)});
        auto gy = ChainComplex::graded(F2, {uniform(rng, 0, 2), uniform(rng, 0, 2)});
        auto gw = ChainComplex::graded(F2, {uniform(rng, 0, 2), uniform(rng, 0, 2)});
        auto gz = ChainComplex::graded(F2, {uniform(rng, 0, 2), uniform(rng, 0, 2)});
        auto f = random_chain_map(gx, gy, rng), g = random_chain_map(gw, gz, rng);
        auto alpha = random_chain_map(gx, gw, rng), beta = random_chain_map(gy, gz, rng);
        std::vector<FieldMatrix> h;
        for (std::size_t n = 0; n < 2; ++n) h.push_back(FieldMatrix::random(F2, gz.dim(n + 1), gx.dim(n), rng));
        HomotopySquare sq{f, g, alpha, beta, h};
        HomotopySquare strict{f, g, alpha, beta, {}};
        CHECK(sq.holds() == strict.holds());
    }
}

TEST_CASE("comparison morphism") {
    auto y = ChainComplex::disk(F2, 2);
    auto from_zero = comparison_morphism(ChainMap::zero(ChainComplex(F2), y));
    CHECK(from_zero == ChainMap::identity(y));

    auto inc = comparison_morphism(sphere_into_disk(F3, 1));
    CHECK(inc.target() == ChainComplex::sphere(F3, 2));
    CHECK(is_weak_equivalence(inc));

    auto x = ChainComplex::sphere(F2, 0);
    auto idc = comparison_morphism(ChainMap::identity(x));
    CHECK(idc.target().is_zero());
    CHECK(is_acyclic(idc.source()));

    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_complex(F2, rng, 5), b = random_complex(F2, rng, 8);
        auto f = random_chain_map(a, b, rng);
        if (!f.is_mono()) continue;
        CHECK(is_weak_equivalence(comparison_morphism(f)));
    }
}

TEST_CASE("standard decomposition") {
    auto triv = ChainComplex::graded(F2, {2, 1});
    auto sd = standard_decomposition(triv);
    CHECK(sd.boundary_cone.is_zero());
    CHECK(sd.s == ChainMap::identity(triv));

    auto d = ChainComplex::disk(F3, 2);
    auto sdd = standard_decomposition(d);
    CHECK(sdd.homology.is_zero());
    CHECK(sdd.boundary_cone == d);

    auto mixed = direct_sum(ChainComplex::sphere(F2, 1), ChainComplex::disk(F2, 2));
    auto sdm = standard_decomposition(mixed);
    CHECK(sdm.homology == ChainComplex::sphere(F2, 1));

    Rng rng(44);
    for (int trial = 0; trial < 60; ++trial) {
        auto x = random_complex(trial % 2 ? F2 : F3, rng, 12);
        auto s = standard_decomposition(x);
        CHECK(s.iso.is_iso());
        CHECK(is_weak_equivalence(s.s));
        auto rep = minimal_representative(x);
        CHECK(rep.complex.has_trivial_differentials());
        CHECK(is_weak_equivalence(rep.weak_equivalence));
    }
}

TEST_CASE("minimal factorisation in chain complexes") {
    auto y = ChainComplex::disk(F2, 2);
    auto inc = sphere_into_disk(F2, 1);
    auto mono = minimal_factorisation(inc);
    CHECK(mono.middle == y);
    CHECK(mono.alpha == inc);
    CHECK(mono.beta == ChainMap::identity(y));

    for (std::size_t n = 0; n < 3; ++n) {
        auto s = ChainComplex::sphere(F3, n);
        auto mf = minimal_factorisation(ChainMap::zero(s, ChainComplex(F3)));
        CHECK(mf.middle == ChainComplex::disk(F3, n + 1));
    }

    Rng seed_rng(1);
    auto x = random_complex(F3, seed_rng, 6);
    auto idf = minimal_factorisation(ChainMap::identity(x));
    CHECK(idf.middle == x);
    CHECK(idf.alpha == ChainMap::identity(x));

    Rng rng(77);
    for (int trial = 0; trial < 80; ++trial) {
        Field f = trial % 2 ? F2 : F3;
        auto a = random_complex(f, rng, 8), b = random_complex(f, rng, 8);
        auto g = random_chain_map(a, b, rng);
        auto mf = minimal_factorisation(g);
        CHECK(mf.beta * mf.alpha == g);
        CHECK(mf.alpha.is_mono());
        CHECK(is_fibration(mf.beta));
        CHECK(is_weak_equivalence(mf.beta));
        // ker β is the acyclic part; modulo the image of ker g it has trivial differentials.
        auto w = kernel(g);
        auto kb = kernel(mf.beta);
        auto into_kb = solve_each(kb.inclusion, mf.alpha * w.inclusion);
        CHECK(quotient(into_kb).complex.has_trivial_differentials());
        CHECK(is_acyclic(kb.complex));

        Rng prng(trial);
        auto perturbed = minimal_factorisation(g, Perturbation{&prng});
        CHECK(perturbed.middle.dims() == mf.middle.dims());
        CHECK(perturbed.beta * perturbed.alpha == g);
    }
}

TEST_CASE("natural factorisations") {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_complex(F2, rng, 6), b = random_complex(F2, rng, 6);
        auto g = random_chain_map(a, b, rng);
        auto c = cone_factorisation(g);
        CHECK(c.beta * c.alpha == g);
        CHECK(c.alpha.is_mono());
        CHECK(is_weak_equivalence(c.beta));
        CHECK(is_fibration(c.beta));
        auto p = path_factorisation(g);
        CHECK(p.beta * p.alpha == g);
        CHECK(is_weak_equivalence(p.alpha));
        CHECK(is_fibration(p.beta));
    }
}

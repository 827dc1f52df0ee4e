#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tamecx/exactlin.hpp"

using namespace tamecx;

namespace {

const Field F2(2);
const Field F3(3);

FieldMatrix M(Field f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    return FieldMatrix::from_rows(f, rows);
}

} // namespace

TEST_CASE("field arithmetic and modulus checks") {
    CHECK_THROWS_AS(Field(4), PreconditionError);
    CHECK_THROWS_AS(Field(1), PreconditionError);
    Field f(7);
    CHECK(f.mul(3, f.inv(3)) == 1);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.neg(0) == 0);
    CHECK(f.reduce(-1) == 6);
    CHECK_THROWS_AS(f.inv(0), Error);
    Field big(2147483629u);
    CHECK(big.mul(big.inv(123456789u), 123456789u) == 1);
}

TEST_CASE("rref of small matrices") {
    auto id = rref(FieldMatrix::identity(F2, 2));
    CHECK(id.reduced.is_identity());
    CHECK(id.pivots == std::vector<std::size_t>{0, 1});
    CHECK(id.transform.is_identity());

    auto ones = rref(M(F2, {{1, 1}, {1, 1}}));
    CHECK(ones.reduced == M(F2, {{1, 1}, {0, 0}}));
    CHECK(ones.pivots == std::vector<std::size_t>{0});

    auto empty = rref(FieldMatrix(F2, 0, 0));
    CHECK(empty.pivots.empty());
    CHECK(empty.reduced.rows() == 0);
    CHECK(empty.transform.rows() == 0);
}

TEST_CASE("rank, kernel and image") {
    auto z = FieldMatrix::zero(F2, 3, 3);
    CHECK(rank(z) == 0);
    CHECK(kernel_basis(z).cols() == 3);
    CHECK(rank(kernel_basis(z)) == 3);

    auto e = M(F2, {{1, 0}, {0, 0}});
    CHECK(rank(e) == 1);
    CHECK(kernel_basis(e) == M(F2, {{0}, {1}}));

    auto inv = M(F3, {{1, 2}, {1, 1}});
    CHECK(rank(inv) == 2);
    CHECK(kernel_basis(inv).cols() == 0);

    auto m = M(F3, {{1, 2, 0}, {2, 1, 0}, {0, 0, 1}});
    CHECK(image_basis(m) == m.select_columns({0, 2}));
}

TEST_CASE("solve") {
    std::mt19937_64 rng(7);
    auto b = FieldMatrix::random(F3, 3, 2, rng);
    CHECK(*solve(FieldMatrix::identity(F3, 3), b) == b);

    auto x = solve(M(F2, {{1, 1}}), M(F2, {{1}}));
    REQUIRE(x);
    CHECK(*x == M(F2, {{1}, {0}}));

    CHECK_FALSE(solve(FieldMatrix::zero(F2, 2, 2), M(F2, {{1}, {0}})).has_value());
    CHECK_THROWS_AS(solve(FieldMatrix::zero(F2, 2, 2), FieldMatrix::zero(F2, 3, 1)), PreconditionError);
}

TEST_CASE("complement sections") {
    auto none = complement_section(FieldMatrix::zero(F2, 2, 0), 2);
    CHECK(none.section.is_identity());

    auto first = complement_section(M(F2, {{1}, {0}}), 2);
    CHECK(first.section == M(F2, {{0}, {1}}));
    CHECK((first.quotient_proj * first.section).is_identity());
    CHECK((first.quotient_proj * M(F2, {{1}, {0}})).is_zero());

    auto all = complement_section(FieldMatrix::identity(F3, 3), 3);
    CHECK(all.section.rows() == 3);
    CHECK(all.section.cols() == 0);

    CHECK_THROWS_AS(complement_section(M(F2, {{1, 1}, {0, 0}}), 2), PreconditionError);
}

TEST_CASE("pullbacks and pushouts") {
    SECTION("injective leg") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            auto g = FieldMatrix::random(F3, 4, 2, rng);
            if (!is_injective(g)) continue;
            auto f = FieldMatrix::random(F3, 4, 3, rng);
            auto pb = pullback(f, g);
            // dim P = dim W1 - rank(f modulo im g)
            const std::size_t rank_mod = rank(hstack(f, g)) - rank(g);
            CHECK(pb.dim == 3 - rank_mod);
            CHECK(f * pb.into_w1 == g * pb.into_w0);
        }
    }
    SECTION("zero codomain and identities") {
        auto pb = pullback(FieldMatrix::zero(F2, 0, 2), FieldMatrix::zero(F2, 0, 3));
        CHECK(pb.dim == 5);
        auto diag = pullback(FieldMatrix::identity(F2, 3), FieldMatrix::identity(F2, 3));
        CHECK(diag.dim == 3);
        CHECK(diag.into_w1 == diag.into_w0);
    }
    SECTION("pushout examples") {
        auto free = pushout(FieldMatrix::zero(F2, 2, 0), FieldMatrix::zero(F2, 3, 0));
        CHECK(free.dim == 5);
        auto glued = pushout(FieldMatrix::identity(F3, 2), FieldMatrix::identity(F3, 2));
        CHECK(glued.dim == 2);
        auto incl = pushout(M(F2, {{1}, {0}}), M(F2, {{1}}));
        CHECK(incl.dim == 2);
        CHECK(incl.from_w0 * M(F2, {{1}, {0}}) == incl.from_w1 * M(F2, {{1}}));
    }
}

TEST_CASE("random properties of elimination") {
    std::mt19937_64 rng(2024);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        Field f(p);
        for (int trial = 0; trial < 100; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(0, 6);
            auto m = FieldMatrix::random(f, dim(rng), dim(rng), rng);
            auto r = rref(m);
            CHECK(r.transform * m == r.reduced);
            CHECK(rank(r.transform) == m.rows());
            CHECK(rank(m) == rank(m.transpose()));
            CHECK(rank(m) + kernel_basis(m).cols() == m.cols());
            CHECK((m * kernel_basis(m)).is_zero());
            CHECK(rank(image_basis(m)) == rank(m));
            auto b = m * FieldMatrix::random(f, m.cols(), 2, rng);
            auto x = solve(m, b);
            REQUIRE(x);
            CHECK(m * *x == b);
        }
    }
}

TEST_CASE("pullback surjectivity matches pushout injectivity") {
    std::mt19937_64 rng(99);
    int surjective = 0, not_surjective = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(0, 4);
        const std::size_t v = dim(rng), w0 = dim(rng), w1 = dim(rng), u = dim(rng);
        auto a0 = FieldMatrix::random(F2, w0, v, rng);
        auto a1 = FieldMatrix::random(F2, w1, v, rng);
        auto po = pushout(a0, a1);
        auto b = FieldMatrix::random(F2, u, po.dim, rng) * po.quotient_proj;
        auto b0 = b.block(0, 0, u, w0);
        auto b1 = b.block(0, w0, u, w1);
        REQUIRE(b0 * a0 == b1 * a1);

        auto pb = pullback(b1, b0);
        auto alpha = solve_or_throw(vstack(pb.into_w1, pb.into_w0), vstack(a1, a0), "square factors through P");
        auto beta = b * po.section;
        const bool alpha_onto = rank(alpha) == pb.dim;
        const bool beta_into = rank(beta) == po.dim;
        CHECK(alpha_onto == beta_into);
        (alpha_onto ? surjective : not_surjective)++;
    }
    CHECK(surjective > 0);
    CHECK(not_surjective > 0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <iterator>

#include "sgc/keymodel.hpp"
#include "sgc/matfp.hpp"

using namespace sgc;

namespace {

MatrixFp seeded_random(PrimeField f, std::size_t r, std::size_t c, std::uint64_t seed) {
    Rng rng(seed);
    return MatrixFp::random(f, r, c, rng);
}

// Exhaustive row-space membership for tiny fields: enumerate every linear
// combination of the rows of B and collect the vectors.
std::vector<std::vector<std::uint64_t>> enumerate_row_space(const MatrixFp& b) {
    const PrimeField& f = b.field();
    std::vector<std::vector<std::uint64_t>> vectors;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < b.rows(); ++i) combos *= f.p();
    for (std::uint64_t idx = 0; idx < combos; ++idx) {
        std::uint64_t rem = idx;
        std::vector<std::uint64_t> v(b.cols(), 0);
        for (std::size_t i = 0; i < b.rows(); ++i) {
            std::uint64_t coeff = rem % f.p();
            rem /= f.p();
            for (std::size_t j = 0; j < b.cols(); ++j)
                v[j] = f.add(v[j], f.mul(coeff, b.at(i, j)));
        }
        vectors.push_back(std::move(v));
    }
    std::sort(vectors.begin(), vectors.end());
    vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
    return vectors;
}

} // namespace

TEST_CASE("rref basics") {
    PrimeField f(7);
    MatrixFp id = MatrixFp::identity(f, 3);
    RrefResult r = rref(id);
    CHECK(r.rref == id);
    CHECK(r.rank == 3);

    MatrixFp zero(f, 3, 3);
    CHECK(rank(zero) == 0);
}

TEST_CASE("rref idempotence and transform identity on seeded matrices") {
    PrimeField f(7);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        MatrixFp a = seeded_random(f, 4 + seed % 3, 5, seed);
        RrefResult r = rref(a);
        CHECK(r.transform * a == r.rref);
        RrefResult again = rref(r.rref);
        CHECK(again.rref == r.rref);
        CHECK(again.rank == r.rank);
    }
}

TEST_CASE("rank properties on seeded matrices") {
    PrimeField f(11);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        MatrixFp a = seeded_random(f, 3 + seed % 4, 4 + seed % 3, seed * 7 + 1);
        CHECK(rank(a) == rank(a.transposed()));
    }
}

TEST_CASE("right null space") {
    PrimeField f(5);
    CHECK(right_null_space(MatrixFp::identity(f, 4)).cols() == 0);

    MatrixFp a = MatrixFp::from_rows(f, {{1, 1}});
    MatrixFp ns = right_null_space(a);
    REQUIRE(ns.cols() == 1);
    CHECK((a * ns).is_zero());
    // spans {(1; 4)}
    std::uint64_t x = ns.at(0, 0), y = ns.at(1, 0);
    CHECK(f.mul(4, x) == y);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        MatrixFp m = seeded_random(f, 3, 5, seed + 1000);
        MatrixFp n = right_null_space(m);
        CHECK((m * n).is_zero());
        CHECK(n.cols() == m.cols() - rank(m));  // rank-nullity
    }
}

TEST_CASE("left null space") {
    PrimeField f(5);
    CHECK(left_null_space(MatrixFp::identity(f, 3)).rows() == 0);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        MatrixFp m = seeded_random(f, 5, 3, seed + 2000);
        MatrixFp n = left_null_space(m);
        CHECK((n * m).is_zero());
        CHECK(n.rows() == m.rows() - rank(m));
    }
}

TEST_CASE("left null space of the stacked 7x6 precoder-key pair has one row") {
    PrimeField f(kDefaultPrime);
    Rng rng(11);
    GenericShape shape;
    shape.p = kDefaultPrime;
    shape.d = 3;
    shape.m = 6;
    shape.N = 2;
    shape.E = 2;
    Instance inst = sample_generic_instance(shape, rng);
    MatrixFp v = stack_v(slice_rows(inst.keys[0], 1, 2), slice_rows(inst.keys[1], 1, 2));
    for (std::size_t e = 2; e < 4; ++e)
        CHECK(left_null_space(stack_v(v, inst.keys[e])).rows() == 1);
}

TEST_CASE("row space intersection") {
    PrimeField f(7);
    MatrixFp a = MatrixFp::from_rows(f, {{1, 0, 0}, {0, 1, 0}});
    MatrixFp b = MatrixFp::from_rows(f, {{1, 0, 0}, {0, 0, 1}});
    MatrixFp c = row_space_intersection(a, b);
    REQUIRE(c.rows() == 1);
    CHECK(c.at(0, 0) == 1);
    CHECK(c.at(0, 1) == 0);
    CHECK(c.at(0, 2) == 0);

    // generic 2x3 pairs overlap in one dimension
    PrimeField big(kDefaultPrime);
    Rng rng(5);
    MatrixFp g1 = MatrixFp::random(big, 2, 3, rng);
    MatrixFp g2 = MatrixFp::random(big, 2, 3, rng);
    CHECK(row_space_intersection(g1, g2).rows() == 1);

    CHECK_THROWS_AS(row_space_intersection(a, MatrixFp(f, 1, 2)), Error);
}

TEST_CASE("intersection dimension formula on seeded pairs") {
    PrimeField f(7);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        MatrixFp a = seeded_random(f, 2 + seed % 3, 5, seed * 3 + 1);
        MatrixFp b = seeded_random(f, 2 + (seed + 1) % 3, 5, seed * 3 + 2);
        MatrixFp c = row_space_intersection(a, b);
        CHECK(c.rows() == rank(a) + rank(b) - rank(stack_v(a, b)));
        // the intersection sits inside both row spaces
        CHECK(rank(stack_v(a, c)) == rank(a));
        CHECK(rank(stack_v(b, c)) == rank(b));
    }
}

TEST_CASE("intersection matches exhaustive enumeration at p = 3") {
    PrimeField f(3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        MatrixFp a = seeded_random(f, 2, 4, seed + 500);
        MatrixFp b = seeded_random(f, 2, 4, seed + 600);
        auto va = enumerate_row_space(a);
        auto vb = enumerate_row_space(b);
        std::vector<std::vector<std::uint64_t>> both;
        std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(both));
        auto vc = enumerate_row_space(row_space_intersection(a, b));
        CHECK(vc == both);
    }
}

TEST_CASE("invert") {
    PrimeField f(kDefaultPrime);
    CHECK(invert(MatrixFp::identity(f, 4)) == MatrixFp::identity(f, 4));
    Rng rng(123);
    int succeeded = 0;
    for (int i = 0; i < 100; ++i) {
        MatrixFp a = MatrixFp::random(f, 6, 6, rng);
        if (rank(a) < 6) continue;
        ++succeeded;
        CHECK(a * invert(a) == MatrixFp::identity(f, 6));
    }
    CHECK(succeeded >= 99);

    MatrixFp singular(f, 2, 2);
    CHECK_THROWS_AS(invert(singular), Error);
}

TEST_CASE("slices and stacks") {
    PrimeField f(5);
    MatrixFp id = MatrixFp::identity(f, 4);
    MatrixFp top = slice_rows(id, 1, 2);
    CHECK(top.rows() == 2);
    CHECK(top.at(0, 0) == 1);
    CHECK(top.at(1, 1) == 1);
    CHECK(top.at(1, 2) == 0);
    CHECK_THROWS_AS(slice_rows(id, 1, 5), Error);

    MatrixFp a = MatrixFp::from_rows(f, {{1, 2}});
    MatrixFp b = MatrixFp::from_rows(f, {{3, 4}});
    MatrixFp v = stack_v(a, b);
    CHECK(v.rows() == 2);
    CHECK(v.at(1, 0) == 3);
    MatrixFp h = stack_h(a, b);
    CHECK(h.cols() == 4);
    CHECK(h.at(0, 2) == 3);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        MatrixFp x = seeded_random(f, 2, 3, seed);
        MatrixFp y = seeded_random(f, 3, 2, seed + 42);
        CHECK(rank(block_diag(x, y)) == rank(x) + rank(y));
    }
}

TEST_CASE("rank subadditivity on stacks") {
    PrimeField f(7);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        MatrixFp a = seeded_random(f, 3, 4, seed);
        MatrixFp b = seeded_random(f, 2, 4, seed + 7);
        std::size_t s = rank(stack_v(a, b));
        CHECK(s <= rank(a) + rank(b));
        CHECK(s >= std::max(rank(a), rank(b)));
    }
}

TEST_CASE("solve_left expresses rows over a basis") {
    PrimeField f(11);
    Rng rng(9);
    MatrixFp basis = MatrixFp::random(f, 3, 5, rng);
    MatrixFp coeff = MatrixFp::random(f, 2, 3, rng);
    MatrixFp target = coeff * basis;
    MatrixFp solved = solve_left(basis, target);
    CHECK(solved * basis == target);

    MatrixFp outside = MatrixFp::identity(f, 5);
    if (rank(stack_v(basis, outside)) > rank(basis))
        CHECK_THROWS_AS(solve_left(basis, outside), Error);
}

TEST_CASE("determinism: identical runs produce identical matrices") {
    PrimeField f(kDefaultPrime);
    MatrixFp a = seeded_random(f, 5, 7, 77);
    MatrixFp b = seeded_random(f, 5, 7, 77);
    CHECK(a == b);
    CHECK(rref(a).rref == rref(b).rref);
    CHECK(right_null_space(a) == right_null_space(b));
}

TEST_CASE("row space of rref equals row space of the input") {
    PrimeField f(5);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        MatrixFp a = seeded_random(f, 4, 5, seed + 90);
        RrefResult r = rref(a);
        CHECK(rank(stack_v(a, r.rref)) == rank(a));
    }
}

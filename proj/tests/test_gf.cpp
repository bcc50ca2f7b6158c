#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sgc/gf.hpp"

using namespace sgc;

TEST_CASE("primality check") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(kDefaultPrime));
    CHECK(is_prime_u64(1000000007ULL));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));         // Carmichael
    CHECK_FALSE(is_prime_u64(2147483649ULL));
    CHECK_THROWS_AS(PrimeField(6), Error);
}

TEST_CASE("inverse matches exhaustive search over F_5") {
    PrimeField f(5);
    // brute-force oracle: the unique b with a*b = 1
    for (std::uint64_t a = 1; a < 5; ++a) {
        std::uint64_t expected = 0;
        for (std::uint64_t b = 1; b < 5; ++b)
            if (a * b % 5 == 1) expected = b;
        CHECK(f.inv(a) == expected);
    }
    CHECK(f.inv(2) == 3);
    CHECK(f.inv(4) == 4);
    CHECK(PrimeField(7).inv(1) == 1);
    CHECK_THROWS_AS(f.inv(0), Error);
}

TEST_CASE("power and Fermat") {
    PrimeField f7(7);
    CHECK(f7.pow(3, 0) == 1);
    CHECK(f7.pow(0, 0) == 1);
    CHECK(PrimeField(5).pow(2, 3) == 3);
    PrimeField f101(101);
    for (std::uint64_t a = 1; a < 101; ++a) CHECK(f101.pow(a, 100) == 1);
}

TEST_CASE("field axioms exhaustively for small p") {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        PrimeField f(p);
        for (std::uint64_t a = 0; a < p; ++a) {
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (std::uint64_t b = 0; b < p; ++b)
                for (std::uint64_t c = 0; c < p; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
        }
    }
}

TEST_CASE("sampling is deterministic and covers the field") {
    PrimeField f5(5);
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(f5.sample(a) == f5.sample(b));

    // every residue shows up quickly
    Rng r(7);
    bool seen[5] = {};
    for (int i = 0; i < 100; ++i) seen[f5.sample(r)] = true;
    for (bool s : seen) CHECK(s);

    // p = 2 frequencies stay near a half
    PrimeField f2(2);
    Rng r2(3);
    int ones = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ones += static_cast<int>(f2.sample(r2));
    CHECK(ones >= static_cast<int>(0.47 * draws));
    CHECK(ones <= static_cast<int>(0.53 * draws));

    CHECK(f5.sample_nonzero(r) != 0);
}

TEST_CASE("signed reduction") {
    PrimeField f(7);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.from_int(-7) == 0);
    CHECK(f.from_int(15) == 1);
}

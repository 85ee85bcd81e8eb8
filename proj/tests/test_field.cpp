#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "syzygy/field.hpp"

using namespace syzygy;

TEST_CASE("make_field accepts primes and rejects the rest") {
    CHECK(make_field(7).modulus() == 7);
    CHECK(make_field(2).modulus() == 2);
    CHECK(make_field(2147483647).modulus() == 2147483647); // 2^31 - 1
    CHECK(make_field(2147483629).modulus() == 2147483629);
    CHECK_THROWS_AS(make_field(6), CompositeModulus);
    CHECK_THROWS_AS(make_field(1), CompositeModulus);
    CHECK_THROWS_AS(make_field(0), CompositeModulus);
    CHECK_THROWS_AS(make_field(2147483646), CompositeModulus);
    CHECK_THROWS_AS(make_field(std::uint64_t(1) << 62), ModulusTooLarge);
    // 2^61 - 1 is a Mersenne prime and below the 2^62 bound
    CHECK(make_field((std::uint64_t(1) << 61) - 1).modulus() == 2305843009213693951ull);
}

TEST_CASE("spec arithmetic examples in F_7") {
    FieldCtx f(7);
    CHECK(f.inv(2) == 4);
    CHECK(f.add(5, 3) == 1);
    CHECK_THROWS_AS(f.inv(0), DivisionByZero);
}

TEST_CASE("field axioms hold on random elements") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 32003ull, 2147483647ull, 2147483629ull,
                            2305843009213693951ull}) {
        FieldCtx f(p);
        std::mt19937_64 rng(p);
        for (int it = 0; it < 200; ++it) {
            FieldElem a = rng() % p, b = rng() % p, c = rng() % p;
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.add(a, f.neg(a)) == 0);
            CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
            // canonical representatives
            CHECK(f.mul(a, b) < p);
            CHECK(f.add(a, b) < p);
            if (a != 0) {
                CHECK(f.mul(a, f.inv(a)) == 1);
                CHECK(f.inv(a) < p);
            }
            CHECK(f.pow(a, 5) == f.mul(f.mul(f.mul(f.mul(a, a), a), a), a));
        }
    }
}

TEST_CASE("reduce_signed canonicalizes negatives") {
    FieldCtx f(7);
    CHECK(f.reduce_signed(-1) == 6);
    CHECK(f.reduce_signed(-14) == 0);
    CHECK(f.reduce_signed(15) == 1);
}

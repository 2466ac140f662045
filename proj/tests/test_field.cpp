#include <doctest.h>

#include "oracles.hpp"
#include "orthoreal/field.hpp"

using namespace ortho;

namespace {
struct Rng {
    uint64_t s = 0x1234abcd;
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 11;
    }
    uint64_t below(uint64_t n) { return next() % n; }
};
} // namespace

TEST_CASE("field axioms hold on random samples") {
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 3}}) {
        Field F(p, k);
        Rng rng;
        for (int t = 0; t < 300; ++t) {
            uint64_t a = rng.below(F.q()), b = rng.below(F.q()), c = rng.below(F.q());
            CHECK(F.add(a, F.add(b, c)) == F.add(F.add(a, b), c));
            CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == F.one());
            CHECK(F.pow(a, F.q()) == a); // a^q = a
        }
    }
}

TEST_CASE("square classes for q = 9 match enumeration") {
    Field F(3, 2);
    auto squares = oracle::square_set(F);
    for (uint64_t a = 1; a < F.q(); ++a) {
        SquareClass expect = squares.count(a) ? SquareClass::Trivial : SquareClass::NonSquare;
        CHECK(F.square_class(a) == expect);
    }
}

TEST_CASE("square class basics") {
    Field F7(7);
    CHECK(F7.square_class(1) == SquareClass::Trivial);
    // -4 = 3 mod 7 is not a square when q = 3 mod 4
    CHECK(F7.square_class(F7.of_int(-4)) == SquareClass::NonSquare);
    Field F2(2);
    CHECK(F2.square_class(1) == SquareClass::Trivial);
    CHECK_THROWS_AS((void)square_class(FqElement(F7, 0)), Error);
    // multiplicativity, both parities of q
    for (uint64_t a = 1; a < 7; ++a)
        for (uint64_t b = 1; b < 7; ++b)
            CHECK(F7.square_class(F7.mul(a, b)) == F7.square_class(a) * F7.square_class(b));
}

TEST_CASE("q even has a single square class") {
    Field F4(2, 2);
    for (uint64_t a = 1; a < 4; ++a) CHECK(F4.square_class(a) == SquareClass::Trivial);
}

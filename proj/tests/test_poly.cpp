#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "orthoreal/poly.hpp"

using namespace ortho;

namespace {
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 11;
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

FqPoly random_monic(const Field& F, int deg, Rng& rng, bool nonzero_const) {
    std::vector<uint64_t> c(deg + 1);
    for (int i = 0; i < deg; ++i) c[i] = rng.below(F.q());
    if (nonzero_const) c[0] = 1 + rng.below(F.q() - 1);
    c[deg] = F.one();
    return FqPoly(F, std::move(c));
}

std::vector<FqPoly> irreducibles_up_to(const Field& F, int maxdeg) {
    std::vector<FqPoly> out;
    for (int d = 1; d <= maxdeg; ++d) {
        uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= F.q();
        for (uint64_t n = 0; n < total; ++n) {
            std::vector<uint64_t> c(d + 1, 0);
            uint64_t t = n;
            for (int i = 0; i < d; ++i) {
                c[i] = t % F.q();
                t /= F.q();
            }
            c[d] = F.one();
            FqPoly f(F, std::move(c));
            if (is_irreducible(f)) out.push_back(f);
        }
    }
    return out;
}
} // namespace

TEST_CASE("reciprocal: fixed examples") {
    Field F5(5);
    // t - 2 over F_5 -> t - 3
    CHECK(reciprocal(FqPoly::linear(F5, 2)) == FqPoly::linear(F5, 3));
    Field F3(3);
    FqPoly f(F3, {1, 0, 1}); // t^2 + 1
    CHECK(reciprocal(f) == f);
    CHECK_THROWS_AS(reciprocal(FqPoly::x(F3)), Error);
}

TEST_CASE("reciprocal: involution, multiplicativity, root inversion") {
    for (uint64_t q : {3ULL, 5ULL}) {
        Field F(q == 9 ? 3 : q, q == 9 ? 2 : 1);
        Rng rng(q * 7919);
        for (int t = 0; t < 40; ++t) {
            int d = 1 + static_cast<int>(rng.below(5));
            FqPoly f = random_monic(F, d, rng, true);
            FqPoly g = random_monic(F, 1 + static_cast<int>(rng.below(4)), rng, true);
            CHECK(reciprocal(reciprocal(f)) == f);
            CHECK(reciprocal(f * g).monic() == (reciprocal(f) * reciprocal(g)).monic());
        }
    }
}

TEST_CASE("reciprocal: root multiset inverted over the splitting field") {
    // deg <= 6 over F_9: splitting field F_3^12; scan roots there
    Field F9(3, 2);
    Rng rng(424242);
    size_t seen = 0;
    for (int trial = 0; trial < 4; ++trial) {
        int d = 2 + static_cast<int>(rng.below(5));
        FqPoly f = random_monic(F9, d, rng, true);
        if (trial == 0) {
            // force a fully split case: product of linear factors over F_9
            f = FqPoly::constant(F9, F9.one());
            for (int i = 0; i < 4; ++i) f = f * FqPoly::linear(F9, 1 + rng.below(8));
            d = 4;
        }
        Field big(3, static_cast<uint32_t>(2 * d));
        uint64_t beta = oracle::embedding_generator(F9, big);
        FqPoly fb = oracle::embed_poly(f, F9, big, beta);
        FqPoly rb = oracle::embed_poly(reciprocal(f), F9, big, beta);
        // inversion preserves membership in F_{q^d}, so the enumerable roots
        // must correspond exactly even when f has factors splitting elsewhere
        auto roots_f = oracle::root_multiset(fb);
        auto roots_r = oracle::root_multiset(rb);
        std::multiset<uint64_t> expected;
        for (uint64_t a : roots_f) expected.insert(big.inv(a));
        CHECK(roots_r == expected);
        seen += roots_f.size();
    }
    CHECK(seen >= 4);
}

TEST_CASE("twist: fixed examples and involution") {
    Field F3(3);
    CHECK(twist(FqPoly::linear(F3, 1)) == FqPoly::linear(F3, F3.of_int(-1))); // t-1 -> t+1
    CHECK(twist(FqPoly::linear(F3, F3.of_int(-1))) == FqPoly::linear(F3, 1)); // t+1 -> t-1
    CHECK_THROWS_AS(twist(FqPoly(F3, {F3.of_int(-1), 0, 1})), Error);         // t^2-1 reducible
}

TEST_CASE("twist commutes with reciprocal on irreducibles") {
    for (uint64_t q : {3ULL, 5ULL, 7ULL}) {
        Field F(q);
        auto irr = irreducibles_up_to(F, 3);
        for (const auto& f : irr) {
            if (f.coeff(0) == 0) continue;
            CHECK(twist(reciprocal(f)) == reciprocal(twist(f)));
            CHECK(twist(twist(f)) == f);
        }
    }
}

TEST_CASE("twist: roots are -1/alpha over the splitting field, deg <= 4 over F_3") {
    Field F3(3);
    auto irr = irreducibles_up_to(F3, 4);
    int checked = 0;
    for (const auto& f : irr) {
        int d = f.degree();
        if (d < 2) continue;
        Field big(3, static_cast<uint32_t>(d));
        FqPoly fb = oracle::embed_poly(f, F3, big, 0); // coefficients are prime-field, beta unused
        FqPoly tb = oracle::embed_poly(twist(f), F3, big, 0);
        auto roots_f = oracle::root_multiset(fb);
        auto roots_t = oracle::root_multiset(tb);
        std::multiset<uint64_t> expected;
        for (uint64_t a : roots_f) expected.insert(big.neg(big.inv(a)));
        CHECK(roots_t == expected);
        CHECK(twist(twist(f)) == f);
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("factorize: fixed examples") {
    Field F3(3);
    FqPoly t2m1(F3, {F3.of_int(-1), 0, 1});
    auto fs = factorize(t2m1);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].first == FqPoly::linear(F3, F3.of_int(-1))); // t+1 sorts first
    CHECK(fs[1].first == FqPoly::linear(F3, 1));             // t+2 = t-1
    FqPoly t2p1(F3, {1, 0, 1});
    auto fs2 = factorize(t2p1);
    REQUIRE(fs2.size() == 1);
    CHECK(fs2[0].first == t2p1);
    CHECK(fs2[0].second == 1);
}

TEST_CASE("factorize: construct-then-factor round trip, deg <= 8, q <= 9") {
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
        Field F(p, k);
        auto irr = irreducibles_up_to(F, 3);
        Rng rng(p * 1000 + k);
        for (int trial = 0; trial < 25; ++trial) {
            std::map<FqPoly, int> mult;
            FqPoly prod = FqPoly::constant(F, F.one());
            int degsum = 0;
            while (degsum < 8) {
                const FqPoly& f = irr[rng.below(irr.size())];
                if (degsum + f.degree() > 8) break;
                mult[f] += 1;
                prod = prod * f;
                degsum += f.degree();
                if (rng.below(3) == 0) break;
            }
            if (prod.degree() < 1) continue;
            auto fs = factorize(prod);
            std::map<FqPoly, int> got(fs.begin(), fs.end());
            CHECK(got == mult);
            FqPoly rebuilt = FqPoly::constant(F, F.one());
            for (const auto& [f, e] : fs) rebuilt = rebuilt * f.pow(static_cast<uint64_t>(e));
            CHECK(rebuilt == prod);
        }
    }
}

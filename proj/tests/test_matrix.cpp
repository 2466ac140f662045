#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "orthoreal/matrix.hpp"

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

FqMatrix random_matrix(const Field& F, uint32_t n, Rng& rng) {
    FqMatrix m(F, n, n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) m.at(i, j) = rng.below(F.q());
    return m;
}

FqMatrix random_invertible(const Field& F, uint32_t n, Rng& rng) {
    while (true) {
        FqMatrix m = random_matrix(F, n, rng);
        if (m.det() != 0) return m;
    }
}

using Divs = std::multiset<std::pair<std::string, int>>;
Divs div_multiset(const FqMatrix& g) {
    Divs d;
    for (const auto& [f, e] : elementary_divisors(g)) d.insert({f.str(), e});
    return d;
}
} // namespace

TEST_CASE("matrix ring basics: det multiplicative, rank-nullity") {
    Field F3(3);
    Rng rng(99);
    for (int t = 0; t < 50; ++t) {
        FqMatrix a = random_matrix(F3, 4, rng), b = random_matrix(F3, 4, rng);
        CHECK((a * b).det() == F3.mul(a.det(), b.det()));
        CHECK(a.rank() + a.kernel().size() == 4);
        if (a.det() != 0) CHECK((a * a.inverse()).is_identity());
    }
}

TEST_CASE("elementary divisors: the built-in construction matrices over F_3") {
    Field F3(3);
    // u: unitriangular with two Jordan blocks of size 2
    FqMatrix u = FqMatrix::from_int(F3, 4, 4, {1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1});
    Divs expect_u{{"t+2", 2}, {"t+2", 2}};
    CHECK(div_multiset(u) == expect_u);

    // identity: n copies of (t-1)^1
    FqMatrix id = FqMatrix::identity(F3, 5);
    Divs expect_id{{"t+2", 1}, {"t+2", 1}, {"t+2", 1}, {"t+2", 1}, {"t+2", 1}};
    CHECK(div_multiset(id) == expect_id);

    // h0 = diag(u1, -u): divisors (t-1)^3 x2, (t+1)^2 x2
    FqMatrix u1 = FqMatrix::from_int(
        F3, 6, 6, {1, -1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, -1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1});
    FqMatrix h0 = FqMatrix::direct_sum(u1, u.neg());
    Divs expect_h0{{"t+2", 3}, {"t+2", 3}, {"t+1", 2}, {"t+1", 2}};
    CHECK(div_multiset(h0) == expect_h0);
}

TEST_CASE("elementary divisors: conjugation invariance and degree sum") {
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{3, 1}, {2, 1}, {2, 2}}) {
        Field F(p, k);
        Rng rng(p * 31 + k);
        for (int t = 0; t < 70; ++t) {
            uint32_t n = 2 + static_cast<uint32_t>(rng.below(4));
            FqMatrix g = random_matrix(F, n, rng);
            FqMatrix x = random_invertible(F, n, rng);
            FqMatrix conj = x * g * x.inverse();
            CHECK(div_multiset(g) == div_multiset(conj));
            uint32_t degsum = 0;
            for (const auto& [f, e] : elementary_divisors(g)) degsum += static_cast<uint32_t>(f.degree() * e);
            CHECK(degsum == n);
        }
    }
}

TEST_CASE("characteristic polynomial agrees with companion construction") {
    Field F5(5);
    FqPoly f(F5, {2, 3, 0, 1, 1}); // t^4 + t^3 + 3t + 2
    FqMatrix c = FqMatrix::companion(f);
    CHECK(characteristic_polynomial(c) == f.monic());
    CHECK(minimal_polynomial(c) == f.monic());
}

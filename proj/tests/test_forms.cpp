#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "orthoreal/quadspace.hpp"

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

// count Q-singular vectors (including 0) by full enumeration
uint64_t singular_count(const QuadSpace& S) {
    const Field& F = S.field();
    uint64_t total = 1;
    for (uint32_t i = 0; i < S.dim(); ++i) total *= F.q();
    uint64_t cnt = 0;
    for (uint64_t code = 0; code < total; ++code) {
        Vec v(S.dim(), 0);
        uint64_t t = code;
        for (uint32_t i = 0; i < S.dim(); ++i) {
            v[i] = t % F.q();
            t /= F.q();
        }
        if (S.qv(v) == 0) ++cnt;
    }
    return cnt;
}
} // namespace

TEST_CASE("discriminant: construction-space examples") {
    for (uint64_t q : {3ULL, 7ULL}) {
        Field F(q);
        QuadSpace j4 = QuadSpace::from_gram(F, FqMatrix::antidiag(F, 4));
        CHECK(j4.discriminant() == SquareClass::Trivial); // det J_4 = +1
        CHECK(j4.form_type() == FormType::Split);

        // diag(J_4, I_2): the non-split 6-dim construction space for q = 3 mod 4
        FqMatrix g6 = FqMatrix::direct_sum(FqMatrix::antidiag(F, 4), FqMatrix::identity(F, 2));
        QuadSpace s6 = QuadSpace::from_gram(F, g6);
        CHECK(s6.form_type() == FormType::NonSplit);

        // [[0,-2],[-2,0]]: nonsquare discriminant, split plane
        FqMatrix p(F, 2, 2);
        p.at(0, 1) = F.of_int(-2);
        p.at(1, 0) = F.of_int(-2);
        QuadSpace plane = QuadSpace::from_gram(F, p);
        CHECK(plane.discriminant() == SquareClass::NonSquare);
        CHECK(plane.form_type() == FormType::Split);

        // I_2 is a non-split (minus type) plane when q = 3 mod 4
        QuadSpace i2 = QuadSpace::from_gram(F, FqMatrix::identity(F, 2));
        CHECK(i2.form_type() == FormType::NonSplit);
    }
    Field F2(2);
    QuadSpace s = QuadSpace::split(F2, 4);
    CHECK_THROWS_AS(s.discriminant(), Error);
}

TEST_CASE("form_type: J split Grams, diag(J3,J3) non-split at q = 3 mod 4") {
    for (uint64_t q : {3ULL, 5ULL, 7ULL}) {
        Field F(q);
        for (uint32_t n : {2u, 4u, 6u})
            CHECK(QuadSpace::from_gram(F, FqMatrix::antidiag(F, n)).form_type() == FormType::Split);
    }
    for (uint64_t q : {3ULL, 7ULL}) {
        Field F(q);
        FqMatrix g = FqMatrix::direct_sum(FqMatrix::antidiag(F, 3), FqMatrix::antidiag(F, 3));
        CHECK(QuadSpace::from_gram(F, g).form_type() == FormType::NonSplit);
    }
    // at q = 1 mod 4 the same Gram has the split reference discriminant
    Field F5(5);
    FqMatrix g = FqMatrix::direct_sum(FqMatrix::antidiag(F5, 3), FqMatrix::antidiag(F5, 3));
    CHECK(QuadSpace::from_gram(F5, g).form_type() == FormType::Split);
}

TEST_CASE("form_type is congruence invariant") {
    for (uint64_t q : {3ULL, 5ULL}) {
        Field F(q);
        Rng rng(q);
        for (uint32_t n : {2u, 3u, 4u}) {
            for (FormType t : {FormType::Split, FormType::NonSplit}) {
                QuadSpace S = QuadSpace::of_type(F, n, t);
                for (int trial = 0; trial < 20; ++trial) {
                    FqMatrix p(F, n, n);
                    do {
                        for (uint32_t i = 0; i < n; ++i)
                            for (uint32_t j = 0; j < n; ++j) p.at(i, j) = rng.below(F.q());
                    } while (p.det() == 0);
                    QuadSpace S2 = QuadSpace::from_gram(F, p.transpose() * S.bilinear_gram() * p);
                    CHECK(S2.form_type() == t);
                }
            }
        }
    }
}

TEST_CASE("restrict: the -1-eigenspace of s0, identity restriction, dependent basis") {
    Field F3(3);
    QuadSpace j4 = QuadSpace::from_gram(F3, FqMatrix::antidiag(F3, 4));
    std::vector<Vec> basis{{1, 0, F3.of_int(-1), 0}, {0, 1, 0, F3.of_int(-1)}};
    QuadSpace r = j4.restrict_to(basis);
    FqMatrix expect(F3, 2, 2);
    expect.at(0, 1) = F3.of_int(-2);
    expect.at(1, 0) = F3.of_int(-2);
    CHECK(r.bilinear_gram() == expect);

    std::vector<Vec> full{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    CHECK(j4.restrict_to(full).bilinear_gram() == j4.bilinear_gram());

    std::vector<Vec> dep{{1, 0, 0, 0}, {2, 0, 0, 0}};
    CHECK_THROWS_AS(j4.restrict_to(dep), Error);
}

TEST_CASE("direct_sum: discriminant multiplies; 6-dim construction space; Witt oracle") {
    for (uint64_t q : {3ULL, 5ULL, 7ULL}) {
        Field F(q);
        Rng rng(q * 17);
        for (int trial = 0; trial < 30; ++trial) {
            uint32_t n1 = 1 + static_cast<uint32_t>(rng.below(3));
            uint32_t n2 = 1 + static_cast<uint32_t>(rng.below(3));
            FqMatrix g1(F, n1, n1), g2(F, n2, n2);
            do {
                for (uint32_t i = 0; i < n1; ++i)
                    for (uint32_t j = i; j < n1; ++j) g1.at(j, i) = g1.at(i, j) = rng.below(F.q());
            } while (g1.det() == 0);
            do {
                for (uint32_t i = 0; i < n2; ++i)
                    for (uint32_t j = i; j < n2; ++j) g2.at(j, i) = g2.at(i, j) = rng.below(F.q());
            } while (g2.det() == 0);
            QuadSpace a = QuadSpace::from_gram(F, g1), b = QuadSpace::from_gram(F, g2);
            QuadSpace s = QuadSpace::direct_sum(a, b);
            CHECK(s.discriminant() == a.discriminant() * b.discriminant());
        }
    }
    Field F3(3);
    QuadSpace j4 = QuadSpace::from_gram(F3, FqMatrix::antidiag(F3, 4));
    QuadSpace i2 = QuadSpace::from_gram(F3, FqMatrix::identity(F3, 2));
    QuadSpace s6 = QuadSpace::direct_sum(j4, i2);
    CHECK(s6.form_type() == FormType::NonSplit);
    CHECK(s6.dim() == 6);
    CHECK(QuadSpace::direct_sum(j4, QuadSpace::from_gram(F3, FqMatrix(F3, 0, 0))).bilinear_gram() ==
          j4.bilinear_gram());

    // J3+J3 at q=3: non-split, cross-checked by the singular-count oracle:
    // counts (with zero) are q^(n-1) + eps (q^(n/2) - q^(n/2-1))
    QuadSpace d6 =
        QuadSpace::from_gram(F3, FqMatrix::direct_sum(FqMatrix::antidiag(F3, 3), FqMatrix::antidiag(F3, 3)));
    CHECK(d6.form_type() == FormType::NonSplit);
    CHECK(singular_count(d6) == 243 - (27 - 9));
    CHECK(d6.witt_index() == 2);
}

TEST_CASE("exhaustive: nondegenerate diagonal Grams split into exactly two classes") {
    for (uint64_t q : {3ULL, 5ULL}) {
        Field F(q);
        for (uint32_t n = 1; n <= 4; ++n) {
            std::map<int, std::set<int>> disc_by_type;
            uint64_t total = 1;
            for (uint32_t i = 0; i < n; ++i) total *= (F.q() - 1);
            for (uint64_t code = 0; code < total; ++code) {
                FqMatrix g(F, n, n);
                uint64_t t = code;
                for (uint32_t i = 0; i < n; ++i) {
                    g.at(i, i) = 1 + t % (F.q() - 1);
                    t /= (F.q() - 1);
                }
                QuadSpace s = QuadSpace::from_gram(F, g);
                disc_by_type[static_cast<int>(s.form_type())].insert(static_cast<int>(s.discriminant()));
            }
            CHECK(disc_by_type.size() == 2);
            if (n % 2 == 0) {
                // even dimension: discriminant separates the two classes
                CHECK(disc_by_type[0].size() == 1);
                CHECK(disc_by_type[1].size() == 1);
                CHECK(*disc_by_type[0].begin() != *disc_by_type[1].begin());
            }
        }
    }
}

TEST_CASE("char 2: split vs nonsplit by Witt index and singular-count oracle") {
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{2, 1}, {2, 2}}) {
        Field F(p, k);
        for (uint32_t n : {2u, 4u, 6u}) {
            QuadSpace sp = QuadSpace::split(F, n);
            QuadSpace ns = QuadSpace::nonsplit(F, n);
            CHECK(sp.form_type() == FormType::Split);
            CHECK(ns.form_type() == FormType::NonSplit);
            CHECK(sp.witt_index() == n / 2);
            CHECK(ns.witt_index() == n / 2 - 1);
            uint64_t q = F.q(), qn1 = 1, qh = 1, qh1 = 1;
            for (uint32_t i = 0; i + 1 < n; ++i) qn1 *= q;
            for (uint32_t i = 0; i < n / 2; ++i) qh *= q;
            for (uint32_t i = 0; i + 1 < n / 2; ++i) qh1 *= q;
            CHECK(singular_count(sp) == qn1 + (qh - qh1));
            CHECK(singular_count(ns) == qn1 - (qh - qh1));
        }
    }
}

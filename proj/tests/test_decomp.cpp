#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "orthoreal/decomp.hpp"

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

FqMatrix random_isometry(const QuadSpace& S, const std::vector<FqMatrix>& gens, Rng& rng) {
    FqMatrix g = FqMatrix::identity(S.field(), S.dim());
    size_t len = rng.below(3 * S.dim() + 1);
    for (size_t i = 0; i < len; ++i) g = g * gens[rng.below(gens.size())];
    return g;
}

using DivKey = std::multiset<std::pair<std::string, int>>;
DivKey divs_of(const std::vector<std::pair<FqPoly, int>>& v) {
    DivKey d;
    for (const auto& [f, e] : v) d.insert({f.str(), e});
    return d;
}

// exhaustive indecomposability check for small blocks: no proper nonzero
// invariant subspace with nondegenerate restricted form exists
bool orthogonally_indecomposable(const QuadSpace& S, const FqMatrix& act) {
    const Field& F = S.field();
    uint32_t n = act.rows();
    if (n <= 1) return true;
    uint64_t total = 1;
    for (uint32_t i = 0; i < n; ++i) total *= F.q();
    std::set<std::string> seen;
    for (uint64_t c = 1; c < total; ++c) {
        Vec v(n, 0);
        uint64_t t = c;
        for (uint32_t i = 0; i < n; ++i) {
            v[i] = t % F.q();
            t /= F.q();
        }
        auto [basis, mu] = spin(act, v);
        if (basis.rows() == n) continue;
        FqMatrix rb = basis.row_basis();
        if (!seen.insert(rb.canonical_bytes()).second) continue;
        FqMatrix gram(F, rb.rows(), rb.rows());
        for (uint32_t i = 0; i < rb.rows(); ++i)
            for (uint32_t j = 0; j < rb.rows(); ++j) gram.at(i, j) = S.b(rb.row(i), rb.row(j));
        if (gram.det() != 0) return false; // proper nondegenerate invariant subspace splits off
    }
    return true;
}
} // namespace

TEST_CASE("decompose: identity splits into 1-dim 2- blocks (odd q)") {
    Field F3(3);
    QuadSpace S = QuadSpace::split(F3, 4);
    auto d = decompose(S, FqMatrix::identity(F3, 4));
    CHECK(d.blocks.size() == 4);
    for (const auto& b : d.blocks) {
        CHECK(b.type == BlockType::T2minus);
        CHECK(b.basis.size() == 1);
        CHECK(divs_of(b.divisors) == DivKey{{"t+2", 1}});
    }
}

TEST_CASE("decompose: h = diag(u, -I_2) over F_3") {
    Field F3(3);
    QuadSpace S = QuadSpace::from_gram(F3, FqMatrix::direct_sum(FqMatrix::antidiag(F3, 4), FqMatrix::identity(F3, 2)));
    FqMatrix u = FqMatrix::from_int(F3, 4, 4, {1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1});
    FqMatrix h = FqMatrix::direct_sum(u, FqMatrix::identity(F3, 2).neg());
    auto d = decompose(S, h);
    // expected blocks: one T1minus of dim 4 (pair of (t-1)^2), two T2plus dim 1
    std::multiset<std::pair<int, int>> shape;
    for (const auto& b : d.blocks) shape.insert({static_cast<int>(b.type), static_cast<int>(b.basis.size())});
    std::multiset<std::pair<int, int>> expect{{static_cast<int>(BlockType::T1minus), 4},
                                              {static_cast<int>(BlockType::T2plus), 1},
                                              {static_cast<int>(BlockType::T2plus), 1}};
    CHECK(shape == expect);
    for (const auto& b : d.blocks) {
        auto m = classify_block_membership(b);
        if (b.type == BlockType::T1minus) CHECK(m.in_omega);
        if (b.type == BlockType::T2plus) {
            CHECK(m.det == F3.of_int(-1));
            CHECK(m.theta == b.restricted.discriminant());
        }
    }
}

TEST_CASE("decompose: h0 = diag(u1, -u) over F_3") {
    Field F3(3);
    FqMatrix gram = FqMatrix::direct_sum(FqMatrix::direct_sum(FqMatrix::antidiag(F3, 3), FqMatrix::antidiag(F3, 3)),
                                         FqMatrix::antidiag(F3, 4));
    QuadSpace S = QuadSpace::from_gram(F3, gram);
    FqMatrix u1 = FqMatrix::from_int(F3, 6, 6,
                                     {1, -1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0,
                                      0, 0, 0, 1, -1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1});
    FqMatrix u = FqMatrix::from_int(F3, 4, 4, {1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1});
    FqMatrix h0 = FqMatrix::direct_sum(u1, u.neg());
    auto d = decompose(S, h0);
    // expected: two T2minus of dim 3 ((t-1)^3 each), one T1plus of dim 4
    std::multiset<std::pair<int, int>> shape;
    for (const auto& b : d.blocks) shape.insert({static_cast<int>(b.type), static_cast<int>(b.basis.size())});
    std::multiset<std::pair<int, int>> expect{{static_cast<int>(BlockType::T2minus), 3},
                                              {static_cast<int>(BlockType::T2minus), 3},
                                              {static_cast<int>(BlockType::T1plus), 4}};
    CHECK(shape == expect);
    DivKey alldivs;
    for (const auto& b : d.blocks)
        for (const auto& [f, e] : b.divisors) alldivs.insert({f.str(), e});
    CHECK(alldivs == DivKey{{"t+2", 3}, {"t+2", 3}, {"t+1", 2}, {"t+1", 2}});
}

TEST_CASE("decompose: property suite over n <= 6, q in {2,3,4,5}") {
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        Field F(p, k);
        for (uint32_t n : {2u, 4u, 6u}) {
            for (FormType t : {FormType::Split, FormType::NonSplit}) {
                QuadSpace S = QuadSpace::of_type(F, n, t);
                auto gens = reflection_generators(S);
                Rng rng(p * 1000 + k * 100 + n * 10 + static_cast<int>(t));
                int trials = F.q() <= 3 ? 40 : 25;
                for (int trial = 0; trial < trials; ++trial) {
                    FqMatrix g = random_isometry(S, gens, rng);
                    auto d = decompose(S, g); // verifies invariance and divisors internally
                    uint32_t dims = 0;
                    for (const auto& b : d.blocks) dims += static_cast<uint32_t>(b.basis.size());
                    CHECK(dims == n);
                    DivKey all;
                    for (const auto& b : d.blocks)
                        for (const auto& [f, e] : b.divisors) all.insert({f.str(), e});
                    CHECK(all == divs_of(elementary_divisors(g)));
                    for (size_t i = 0; i < d.blocks.size(); ++i)
                        for (size_t j = i + 1; j < d.blocks.size(); ++j)
                            for (const auto& x : d.blocks[i].basis)
                                for (const auto& y : d.blocks[j].basis) CHECK(S.b(x, y) == 0);
                }
            }
        }
    }
}

TEST_CASE("decompose: blocks of dim <= 4 at q=3 are orthogonally indecomposable") {
    Field F3(3);
    QuadSpace S = QuadSpace::split(F3, 6);
    auto gens = reflection_generators(S);
    Rng rng(31337);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        FqMatrix g = random_isometry(S, gens, rng);
        auto d = decompose(S, g);
        for (const auto& b : d.blocks) {
            if (b.basis.size() > 4 || b.basis.size() < 2) continue;
            CHECK(orthogonally_indecomposable(b.restricted, b.action));
            ++checked;
        }
    }
    CHECK(checked > 5);
}

TEST_CASE("strongly_real_sufficient: odd-q T conditions") {
    Field F3(3);
    // 2* block of dim 2: rotation with charpoly t^2+1 on the I_2 plane
    QuadSpace P = QuadSpace::from_gram(F3, FqMatrix::identity(F3, 2));
    FqMatrix rot = FqMatrix::from_int(F3, 2, 2, {0, -1, 1, 0});
    auto d = decompose(P, rot);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].type == BlockType::T2star);
    auto s = strongly_real_sufficient(d);
    CHECK(s.dim2mod4_selfdual_block);

    // 2- block with trivial discriminant: identity on a split 3-space
    QuadSpace S2 = QuadSpace::split(F3, 3);
    auto d2 = decompose(S2, FqMatrix::identity(F3, 3));
    auto s2 = strongly_real_sufficient(d2);
    CHECK(s2.trivial_disc_2pm_block);
}

TEST_CASE("strongly_real_sufficient: char-2 conditions") {
    Field F2(2);
    // unipotent cyclic (t-1)^2 block: a rank-1 involution on dim 4
    QuadSpace S = QuadSpace::split(F2, 4);
    auto gens = reflection_generators(S);
    auto d = decompose(S, gens[0]);
    auto s = strongly_real_sufficient(d);
    CHECK(s.unipotent_special_block);

    // element of order 9 in Omega-(6,2): sole divisor t^6+t^3+1,
    // deg 6 = 2 mod 4, count 1 odd, no unipotent block -> both conditions false
    QuadSpace S6 = QuadSpace::nonsplit(F2, 6);
    FqPoly phi9(F2, {1, 0, 0, 1, 0, 0, 1});
    CHECK(is_irreducible(phi9)); // t^6+t^3+1 irreducible over F_2
    auto O = enumerate_group(S6, Group::Omega, 30000);
    FqMatrix found(F2, 0, 0);
    for (const auto& m : O.elems) {
        auto divs = elementary_divisors(m);
        if (divs.size() == 1 && divs[0].first == phi9 && divs[0].second == 1) {
            found = m;
            break;
        }
    }
    REQUIRE(found.rows() == 6);
    auto d9 = decompose(S6, found);
    auto s9 = strongly_real_sufficient(d9);
    CHECK(!s9.even_count_deg2mod4);
    CHECK(!s9.unipotent_special_block);
}

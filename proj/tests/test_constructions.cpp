#include <doctest.h>

#include <fstream>

#include "oracles.hpp"
#include "orthoreal/constructions.hpp"
#include "orthoreal/io.hpp"

using namespace ortho;

TEST_CASE("build_u: assertions pass at q = 3 and q = 7; q = 5 rejected") {
    for (uint64_t q : {3ULL, 7ULL}) {
        auto c = build_u(q);
        CHECK(c.facts.at("member_omega_plus_4") == "ok");
        CHECK(c.facts.at("no_inverter_squares_to_minus_I") == "ok");
    }
    CHECK_THROWS_AS(build_u(5), Error);
}

TEST_CASE("build_s0: SO membership, inverts u, eigenspace form") {
    auto c = build_s0(3);
    CHECK(c.facts.at("in_so_not_omega") == "ok");
    CHECK(c.facts.at("inverts_u") == "ok");
}

TEST_CASE("build_h / build_u1 / build_h0 at q = 3") {
    auto h = build_h(3);
    CHECK(h.facts.at("weakly_real_mod_z") == "ok");
    auto u1 = build_u1(3);
    CHECK(u1.facts.count("inverting_involutions_in_omega"));
    CHECK(u1.facts.at("involution_families").find("2-dim nonsplit") != std::string::npos);
    auto h0 = build_h0(3);
    CHECK(h0.facts.at("weakly_real_mod_z") == "ok");
}

TEST_CASE("build_eta at q = 3: divisors, membership, centralizer containment") {
    auto c = build_eta(3);
    CHECK(c.facts.at("member_omega_plus_8") == "ok");
    CHECK(c.facts.at("retries") == "0");
    CHECK(c.facts.at("centralizer_in_omega").substr(0, 2) == "ok");
}

TEST_CASE("build_weakly_real_family: m = 1, 2 reduce to h, h0; m = 3 is 14-dim") {
    auto g1 = build_weakly_real_family(1, 3);
    CHECK(g1.name == "h");
    auto g2 = build_weakly_real_family(2, 3);
    CHECK(g2.name == "h0");
    auto g3 = build_weakly_real_family(3, 3);
    CHECK(g3.name == "g1");
    CHECK(g3.space.dim() == 14);
    CHECK(g3.facts.at("eigenvalue_disjoint") == "ok");
    CHECK(g3.facts.count("weakly_real_mod_z"));
}

TEST_CASE("negative control: the (t^2+1)^2 element of Omega+(4,3) is not real there") {
    Field F3(3);
    QuadSpace S = QuadSpace::split(F3, 4);
    auto om = enumerate_group(S, Group::Omega, 1000);
    FqPoly t2p1(F3, {1, 0, 1});
    FqMatrix found(F3, 0, 0);
    for (const auto& g : om.elems) {
        auto divs = elementary_divisors(g);
        if (divs.size() == 1 && divs[0].first == t2p1 && divs[0].second == 2) {
            found = g;
            break;
        }
    }
    REQUIRE(found.rows() == 4);
    auto v = decide_reality(S, found, Group::Omega, false);
    CHECK(!v.real);
}

namespace {
std::string fixture(const std::string& name) {
    for (const char* prefix : {"fixtures/", "tests/fixtures/", "../tests/fixtures/", "build/tests/fixtures/"}) {
        std::ifstream f(prefix + name);
        if (f) return read_file(prefix + name);
    }
    FAIL("fixture not found: ", name);
    return {};
}
} // namespace

TEST_CASE("construction matrices are byte-identical to the checked-in fixtures") {
    struct Row {
        const char* name;
        uint64_t q;
        const char* file;
    };
    for (const Row& r : {Row{"u", 3, "u_q3.mat"}, Row{"u", 7, "u_q7.mat"}, Row{"u1", 3, "u1_q3.mat"},
                         Row{"h", 3, "h_q3.mat"}, Row{"h0", 3, "h0_q3.mat"}}) {
        auto c = build_by_name(r.name, r.q, 1, kDefaultRealityCap);
        std::string expect = fixture(r.file);
        CHECK(serialize_matrix(c.matrix) == expect);
    }
}

TEST_CASE("matrix and space files round trip, including an extension field") {
    Field F9(3, 2);
    FqMatrix m(F9, 2, 3);
    for (uint32_t i = 0; i < 2; ++i)
        for (uint32_t j = 0; j < 3; ++j) m.at(i, j) = (i * 3 + j + 1) % 9;
    const Field* fp = nullptr;
    FqMatrix back = parse_matrix(serialize_matrix(m), fp);
    CHECK(back.data() == m.data());
    CHECK(fp->q() == 9);

    Field F2(2);
    QuadSpace s2 = QuadSpace::nonsplit(F2, 4);
    QuadSpace rt = parse_space(serialize_space(s2));
    CHECK(rt.quadratic_gram().data() == s2.quadratic_gram().data());
    CHECK(rt.form_type() == FormType::NonSplit);
}

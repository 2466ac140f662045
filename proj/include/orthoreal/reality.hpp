#pragma once

#include <functional>
#include <optional>

#include "orthoreal/decomp.hpp"
#include "orthoreal/ogroup.hpp"

namespace ortho {

/// Solution space of X g = sign * g^-1 X as a plain linear problem on n x n
/// matrices (no isometry or invertibility constraint).
struct TwistedCentralizer {
    std::vector<FqMatrix> basis;
    uint32_t dim() const { return static_cast<uint32_t>(basis.size()); }
};
TwistedCentralizer twisted_centralizer(const QuadSpace& S, const FqMatrix& g, int sign);

/// Enumerate every isometry X of S with X a = b X, in a deterministic order,
/// by choosing images of module generators of (V, a) stage by stage with
/// Gram-compatibility pruning.  The visitor returns false to stop early.
/// Throws SearchTooLarge when more than node_budget candidates are touched.
void scan_intertwiners(const QuadSpace& S, const FqMatrix& a, const FqMatrix& b,
                       const std::function<bool(const FqMatrix&)>& visit, uint64_t node_budget,
                       uint64_t* nodes_used = nullptr);

struct RealityVerdict {
    bool real = false;
    bool strongly_real = false;
    bool real_mod_z = false;
    bool strongly_real_mod_z = false;
    std::optional<FqMatrix> real_cert, strong_cert, real_mod_z_cert, strong_mod_z_cert;
    uint64_t search_cost = 0;
    bool capped = false; // a search branch hit the cap; negative verdicts may be partial
};

constexpr uint64_t kDefaultRealityCap = 200'000'000;

/// Decide realness / strong realness of g in the subgroup G of O(S), by
/// exhausting the isometric twisted-centralizer solutions componentwise.
/// projective additionally considers the target -g^-1 and certificates with
/// x^2 = -I (q odd).
RealityVerdict decide_reality(const QuadSpace& S, const FqMatrix& g, Group G, bool projective,
                              uint64_t cap = kDefaultRealityCap, int threads = 1);

/// Structural criterion: g in SO(4m+2, q odd) is real iff it has an
/// elementary divisor (t +- 1)^e with e odd.
bool structural_real_so(const QuadSpace& S, const FqMatrix& g);

struct TheoremCheck {
    std::string label;
    bool applicable = false;
    bool passed = true;
    std::string detail;
};

struct ClassInfo {
    FqMatrix rep;
    uint64_t size = 0;
    uint64_t order = 0;
    bool real = false, strongly_real = false, weakly_real = false;
    bool capped = false;
};

struct ClassReport {
    uint32_t n = 0;
    uint64_t q = 0;
    FormType type = FormType::Split;
    Group group = Group::O;
    uint64_t group_order = 0;
    bool sampled = false;
    uint64_t sample_size = 0;
    std::vector<ClassInfo> classes; // sampled mode: one entry per sampled element
    std::vector<TheoremCheck> checks;
};

/// Full census: enumerate, partition into conjugacy classes, decide reality
/// per class, and evaluate the classification-theorem checks that apply.
ClassReport census(const QuadSpace& S, Group G, uint64_t cap = 200000, uint64_t reality_cap = kDefaultRealityCap);

/// Sampled census over `count` pseudorandom elements of G (no class data).
ClassReport sampled_census(const QuadSpace& S, Group G, uint64_t count, uint64_t seed,
                           uint64_t reality_cap = kDefaultRealityCap);

/// Pseudorandom element of G as a word in reflections (rejection sampled).
FqMatrix random_group_element(const QuadSpace& S, Group G, uint64_t& seed);

uint64_t element_order(const FqMatrix& g);

} // namespace ortho

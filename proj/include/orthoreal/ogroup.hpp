#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "orthoreal/quadspace.hpp"

namespace ortho {

enum class Group : uint8_t { O, SO, K, T, Omega, POmega };
const char* to_string(Group g);
Group group_from_string(const std::string& s);

/// Reflection r_v (odd q) or the rank-1 orthogonal involution x -> x + (B(x,v)/Q(v)) v (char 2).
FqMatrix reflection(const QuadSpace& S, const Vec& v);

/// One reflection per projective anisotropic line, deterministic order.
std::vector<FqMatrix> reflection_generators(const QuadSpace& S);

/// Spinor norm via greedy Cartan-Dieudonne factorization, with the
/// convention theta(r_v) = square class of Q(v).  Odd q only.
SquareClass spinor_norm(const QuadSpace& S, const FqMatrix& g);

/// Reflection vectors of a factorization g = r_{v1} ... r_{vm}; m <= 2n.
std::vector<Vec> reflection_factorization(const QuadSpace& S, const FqMatrix& g);

bool member(const QuadSpace& S, const FqMatrix& g, Group G);

/// Closed-form |G| for the orthogonal lattice over the space's type.
uint64_t group_order(const QuadSpace& S, Group G);

/// Deterministically enumerated group with a byte-key index.
struct EnumeratedGroup {
    const QuadSpace* space = nullptr;
    std::vector<FqMatrix> elems; // BFS order, elems[0] = identity
    std::unordered_map<std::string, uint32_t> index;

    uint32_t find(const FqMatrix& m) const {
        auto it = index.find(m.canonical_bytes());
        return it == index.end() ? UINT32_MAX : it->second;
    }
    bool contains(const FqMatrix& m) const { return find(m) != UINT32_MAX; }
    size_t size() const { return elems.size(); }
};

/// BFS closure from reflection generators (plus a brute-force fallback for
/// the one char-2 case reflections do not generate), filtered by membership.
EnumeratedGroup enumerate_group(const QuadSpace& S, Group G, uint64_t cap);

/// BFS closure of an explicit generator list inside isometries of S.
EnumeratedGroup closure(const QuadSpace& S, const std::vector<FqMatrix>& gens, uint64_t cap);

/// Greedy small generating set (first elements in BFS order whose closure is
/// the whole set).
std::vector<FqMatrix> small_generating_set(const EnumeratedGroup& g);

} // namespace ortho

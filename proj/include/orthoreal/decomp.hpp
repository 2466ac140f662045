#pragma once

#include "orthoreal/modspace.hpp"
#include "orthoreal/ogroup.hpp"
#include "orthoreal/quadspace.hpp"

namespace ortho {

enum class BlockType : uint8_t { T1minus, T1plus, T2minus, T2plus, T2star, T3, C2cyclic, C2bicyclic };
const char* to_string(BlockType t);

/// One orthogonally indecomposable g-invariant block of the decomposition.
struct Block {
    std::vector<Vec> basis;   // ambient row vectors spanning the block
    QuadSpace restricted;     // form in block coordinates
    FqMatrix action;          // g in block coordinates
    BlockType type;
    std::vector<std::pair<FqPoly, int>> divisors; // one entry per summand
    // bicyclic / type-3 blocks: the two totally isotropic cyclic summands,
    // as index ranges into basis (first summand = [0, half))
    bool paired = false;
};

struct Decomposition {
    std::vector<Block> blocks;
    FqMatrix g; // provenance
};

/// The orthogonal decomposition of V with respect to an isometry g.
/// Deterministic; verifies all block invariants before returning.
Decomposition decompose(const QuadSpace& S, const FqMatrix& g);

/// Lattice data of a block's restricted action (odd q), with the block facts
/// checked: type 1 and 2^- blocks land in Omega; 2^+ blocks have det -1 and
/// theta = discriminant of the block space.
struct BlockMembership {
    uint64_t det;
    SquareClass theta;
    bool in_so, in_k, in_t, in_omega;
};
BlockMembership classify_block_membership(const Block& b);

/// Sufficient conditions for strong reality from block shape.
struct SrSufficiency {
    // odd q, ambient T: either condition makes g strongly real there
    bool dim2mod4_selfdual_block = false; // 2* or 3 block with dim = 2 mod 4
    bool trivial_disc_2pm_block = false;  // 2+- block with trivial discriminant
    // char 2, ambient Omega(4m+2): theorem conditions
    bool even_count_deg2mod4 = false; // (i)
    bool unipotent_special_block = false; // (ii)
    bool verdict() const {
        return dim2mod4_selfdual_block || trivial_disc_2pm_block || even_count_deg2mod4 || unipotent_special_block;
    }
};
SrSufficiency strongly_real_sufficient(const Decomposition& d);

} // namespace ortho

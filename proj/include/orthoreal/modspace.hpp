#pragma once

#include "orthoreal/matrix.hpp"

namespace ortho {

/// A g-invariant subspace given by basis rows (in ambient coordinates) plus
/// the action of g in those coordinates.
struct ModSpace {
    FqMatrix basis; // d x n, rows span the subspace
    FqMatrix act;   // d x d, action of g in basis coordinates

    uint32_t dim() const { return basis.rows(); }

    /// Full ambient space for a square matrix g.
    static ModSpace ambient(const FqMatrix& g);

    /// Subspace spanned by coefficient rows (relative to this->basis), with
    /// the induced action.  Rows must be invariant under act as a set.
    ModSpace sub_from_coeff(const FqMatrix& coeff_rows) const;

    /// Ambient-coordinate vector from coefficients relative to basis.
    Vec to_ambient(const Vec& coeff) const;
};

/// One cyclic summand F_q[t] v of a module decomposition.
struct CyclicPiece {
    Vec gen_coeff;   // generator in the ModSpace coordinates it was computed in
    FqPoly order;    // monic annihilator of the generator
    FqMatrix basis;  // rows: coefficients of v, av, a^2 v, ... (same coordinates)
};

/// Spin of a vector: basis rows of span{v, av, ...} (coordinates of the given
/// action), plus the monic order polynomial.
std::pair<FqMatrix, FqPoly> spin(const FqMatrix& act, const Vec& v);

/// Monic order polynomial of v under act.
FqPoly order_of(const FqMatrix& act, const Vec& v);

/// Module-direct cyclic decomposition: pieces with order polynomials forming
/// a dividing chain (invariant factors, largest first).  Works over any F_q.
std::vector<CyclicPiece> cyclic_decomposition(const FqMatrix& act);

/// Primary component ker f(act)^e as coefficient rows.
FqMatrix primary_component(const FqMatrix& act, const FqPoly& f, int e);

/// Solve for an act-equivariant projection P (rows_c x dim) with P B^T = id on
/// the cyclic subspace spanned by cyc rows; returns kernel rows = an invariant
/// complement.
FqMatrix invariant_complement(const FqMatrix& act, const FqMatrix& cyc_rows);

} // namespace ortho

#pragma once

#include "orthoreal/matrix.hpp"

namespace ortho {

enum class FormType : uint8_t { Split, NonSplit };
inline const char* to_string(FormType t) { return t == FormType::Split ? "split" : "nonsplit"; }

/// Quadratic space over F_q.
///
/// Odd q: a symmetric Gram matrix B with Q(v) = v^T B v.  Even q: an
/// upper-triangular quadratic matrix A with Q(v) = v^T A v and the associated
/// alternating bilinear form B = A + A^T (n even, non-defective only).
class QuadSpace {
  public:
    QuadSpace() = default; // empty placeholder; populate via the factories
    /// Odd-characteristic space from a symmetric Gram matrix.
    static QuadSpace from_gram(const Field& f, FqMatrix gram);
    /// Char-2 space from quadratic coefficients (stored upper-triangular).
    static QuadSpace from_quadratic(const Field& f, FqMatrix quad);
    /// Canonical split space of dimension n (Gram J_n for q odd).
    static QuadSpace split(const Field& f, uint32_t n);
    /// Canonical non-split representative of dimension n.
    static QuadSpace nonsplit(const Field& f, uint32_t n);
    static QuadSpace of_type(const Field& f, uint32_t n, FormType t) {
        return t == FormType::Split ? split(f, n) : nonsplit(f, n);
    }

    const Field& field() const { return *field_; }
    uint32_t dim() const { return n_; }
    bool char_two() const { return field_->char_two(); }
    const FqMatrix& bilinear_gram() const { return bil_; }
    const FqMatrix& quadratic_gram() const { return quad_; } // char 2 only

    uint64_t b(const Vec& u, const Vec& v) const;
    uint64_t qv(const Vec& v) const;
    bool nondegenerate() const { return bil_.det() != 0; }

    SquareClass discriminant() const; // odd q only
    FormType form_type() const;
    uint32_t witt_index() const;

    /// Restriction to the span of the given (independent) basis vectors,
    /// expressed in those coordinates.
    QuadSpace restrict_to(const std::vector<Vec>& basis) const;
    static QuadSpace direct_sum(const QuadSpace& a, const QuadSpace& b);

    bool is_isometry(const FqMatrix& g) const;

    bool same_space(const QuadSpace& o) const { return field_ == o.field_ && bil_ == o.bil_ && quad_ == o.quad_; }

  private:
    const Field* field_ = nullptr;
    uint32_t n_ = 0;
    FqMatrix bil_;  // symmetric (odd q) or alternating (char 2)
    FqMatrix quad_; // char 2: upper-triangular; odd q: empty
};

/// Isometry certified against its space.
struct Isometry {
    const QuadSpace* space = nullptr;
    FqMatrix m;

    Isometry() = default;
    Isometry(const QuadSpace& s, FqMatrix g);
};

} // namespace ortho

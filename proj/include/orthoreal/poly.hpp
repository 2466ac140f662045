#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orthoreal/field.hpp"

namespace ortho {

/// Univariate polynomial over a fixed F_q, little-endian coefficients,
/// normalized so the leading coefficient is nonzero (empty = zero polynomial).
class FqPoly {
  public:
    FqPoly() = default;
    explicit FqPoly(const Field& f) : field_(&f) {}
    FqPoly(const Field& f, std::vector<uint64_t> coeffs) : field_(&f), c_(std::move(coeffs)) { trim(); }

    static FqPoly zero(const Field& f) { return FqPoly(f); }
    static FqPoly constant(const Field& f, uint64_t a) { return FqPoly(f, {a}); }
    static FqPoly x(const Field& f) { return FqPoly(f, {0, 1}); }
    /// t - a
    static FqPoly linear(const Field& f, uint64_t a) { return FqPoly(f, {f.neg(a), 1}); }

    const Field& field() const { return *field_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<uint64_t>& coeffs() const { return c_; }
    uint64_t leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == field_->one(); }

    FqPoly operator+(const FqPoly& o) const;
    FqPoly operator-(const FqPoly& o) const;
    FqPoly operator*(const FqPoly& o) const;
    FqPoly operator*(uint64_t s) const;
    bool operator==(const FqPoly& o) const { return c_ == o.c_; }
    bool operator!=(const FqPoly& o) const { return c_ != o.c_; }
    bool operator<(const FqPoly& o) const; // (degree, lex coeffs) total order

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<FqPoly, FqPoly> divmod(const FqPoly& d) const;
    FqPoly operator/(const FqPoly& d) const { return divmod(d).first; }
    FqPoly operator%(const FqPoly& d) const { return divmod(d).second; }

    FqPoly monic() const;
    FqPoly derivative() const;
    uint64_t eval(uint64_t a) const;
    FqPoly pow(uint64_t e) const;

    std::string str() const; // human-readable, variable t

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

  private:
    const Field* field_ = nullptr;
    std::vector<uint64_t> c_;
};

FqPoly gcd(FqPoly a, FqPoly b);              // monic gcd
FqPoly powmod(FqPoly a, uint64_t e, const FqPoly& m);

/// Monic reciprocal f*(t) = f(0)^-1 t^deg f(1/t); requires f monic, f(0) != 0.
FqPoly reciprocal(const FqPoly& f);

/// Monic polynomial whose roots are -alpha^-1 over the roots alpha of f;
/// requires q odd and f monic irreducible.
FqPoly twist(const FqPoly& f);

bool is_irreducible(const FqPoly& f);

/// Monic irreducible factors with multiplicities, sorted by (degree, coeffs).
/// Product of factor^mult reconstructs monic(f).
std::vector<std::pair<FqPoly, int>> factorize(const FqPoly& f);

} // namespace ortho

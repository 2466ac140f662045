#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthoreal/error.hpp"

namespace ortho {

/// Square-class group F_q^x / (F_q^x)^2.  One class for q even, two for q odd.
enum class SquareClass : uint8_t { Trivial = 0, NonSquare = 1 };

inline SquareClass operator*(SquareClass a, SquareClass b) {
    return static_cast<SquareClass>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}
inline const char* to_string(SquareClass c) { return c == SquareClass::Trivial ? "trivial" : "nonsquare"; }

/// Finite field F_q, q = p^k with q fitting a machine word.
///
/// Elements are canonical codes in [0,q): the base-p digits of the code are
/// the coefficients (little-endian) of the canonical polynomial representative
/// modulo a fixed irreducible modulus of degree k.  The modulus is chosen
/// deterministically per (p,k) so identical fields always agree; it is exposed
/// for report metadata.  k = 1 uses direct modular arithmetic; small extension
/// fields precompute full operation tables.
class Field {
  public:
    explicit Field(uint64_t p, uint32_t k = 1);
    Field(uint64_t p, uint32_t k, std::vector<uint64_t> modulus_coeffs);

    uint64_t p() const { return p_; }
    uint32_t k() const { return k_; }
    uint64_t q() const { return q_; }
    bool char_two() const { return p_ == 2; }

    uint64_t zero() const { return 0; }
    uint64_t one() const { return k_ == 0 ? 0 : 1; }

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;
    uint64_t pow(uint64_t a, uint64_t e) const;

    /// Reduce an integer (possibly negative) into the prime subfield.
    uint64_t of_int(int64_t v) const;

    bool is_square(uint64_t a) const; // a != 0
    SquareClass square_class(uint64_t a) const;

    std::vector<uint64_t> digits(uint64_t a) const;           // little-endian base-p
    uint64_t from_digits(const std::vector<uint64_t>& d) const;

    /// Modulus polynomial as little-endian coefficient list over F_p (degree k).
    const std::vector<uint64_t>& modulus() const { return modulus_; }
    std::string modulus_string() const;

    bool operator==(const Field& o) const { return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_; }

  private:
    void build_tables();
    uint64_t mul_slow(uint64_t a, uint64_t b) const;

    uint64_t p_;
    uint32_t k_;
    uint64_t q_;
    std::vector<uint64_t> modulus_; // degree k, monic, little-endian, over F_p
    bool lut_ = false;
    std::vector<uint32_t> mul_tab_, add_tab_;
    std::vector<uint32_t> inv_tab_, neg_tab_;
};

/// Element of F_q with its owning field; thin typed wrapper over the code.
struct FqElement {
    const Field* field = nullptr;
    uint64_t v = 0;

    FqElement() = default;
    FqElement(const Field& f, uint64_t code) : field(&f), v(code) {}

    FqElement operator+(const FqElement& o) const { return {*field, field->add(v, o.v)}; }
    FqElement operator-(const FqElement& o) const { return {*field, field->sub(v, o.v)}; }
    FqElement operator*(const FqElement& o) const { return {*field, field->mul(v, o.v)}; }
    FqElement operator-() const { return {*field, field->neg(v)}; }
    FqElement inverse() const { return {*field, field->inv(v)}; }
    bool operator==(const FqElement& o) const { return v == o.v; }
};

/// Square class of a nonzero field element (errors on zero).
SquareClass square_class(const FqElement& a);

} // namespace ortho

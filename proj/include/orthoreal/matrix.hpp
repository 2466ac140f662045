#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orthoreal/poly.hpp"

namespace ortho {

using Vec = std::vector<uint64_t>;

/// Dense matrix over F_q, row-major codes.
class FqMatrix {
  public:
    FqMatrix() = default;
    FqMatrix(const Field& f, uint32_t rows, uint32_t cols)
        : field_(&f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}
    FqMatrix(const Field& f, uint32_t rows, uint32_t cols, std::vector<uint64_t> data)
        : field_(&f), rows_(rows), cols_(cols), a_(std::move(data)) {}

    static FqMatrix identity(const Field& f, uint32_t n);
    /// Build from signed integer entries (reduced into the prime subfield).
    static FqMatrix from_int(const Field& f, uint32_t rows, uint32_t cols, const std::vector<int64_t>& e);
    /// Antidiagonal of ones.
    static FqMatrix antidiag(const Field& f, uint32_t n);
    static FqMatrix companion(const FqPoly& monic);
    static FqMatrix direct_sum(const FqMatrix& a, const FqMatrix& b);

    const Field& field() const { return *field_; }
    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    uint64_t at(uint32_t i, uint32_t j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    uint64_t& at(uint32_t i, uint32_t j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const std::vector<uint64_t>& data() const { return a_; }

    FqMatrix operator+(const FqMatrix& o) const;
    FqMatrix operator-(const FqMatrix& o) const;
    FqMatrix operator*(const FqMatrix& o) const;
    Vec operator*(const Vec& v) const;
    FqMatrix operator*(uint64_t s) const;
    FqMatrix neg() const;
    bool operator==(const FqMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const FqMatrix& o) const { return !(*this == o); }

    FqMatrix transpose() const;
    uint64_t det() const;
    uint32_t rank() const;
    FqMatrix inverse() const; // throws on singular
    FqMatrix pow(uint64_t e) const;
    bool is_identity() const;

    Vec row(uint32_t i) const;
    void set_row(uint32_t i, const Vec& v);

    /// Kernel of the matrix as a map on column vectors: basis of {x : Ax = 0},
    /// one vector per row of the result, reduced and deterministic.
    std::vector<Vec> kernel() const;
    /// Solve Ax = b; empty optional when inconsistent.
    std::optional<Vec> solve(const Vec& b) const;
    /// Row space basis (rref rows, zero rows dropped).
    FqMatrix row_basis() const;

    /// In-place reduced row echelon; returns pivot column list.
    std::vector<uint32_t> rref();

    /// Packed canonical bytes (little-endian uint16 per entry), for hashing.
    std::string canonical_bytes() const;
    bool lex_less(const FqMatrix& o) const { return a_ < o.a_; }

    std::string str() const;

  private:
    const Field* field_ = nullptr;
    uint32_t rows_ = 0, cols_ = 0;
    std::vector<uint64_t> a_;
};

/// f evaluated at a square matrix.
FqMatrix poly_at(const FqPoly& f, const FqMatrix& g);

/// Minimal polynomial of a square matrix (monic).
FqPoly minimal_polynomial(const FqMatrix& g);

/// Elementary divisors of the F_q[t]-module defined by g: multiset of
/// (irreducible monic f, exponent e), one entry per repeat, sorted.
std::vector<std::pair<FqPoly, int>> elementary_divisors(const FqMatrix& g);

/// Characteristic polynomial, assembled as the product of the elementary divisors.
FqPoly characteristic_polynomial(const FqMatrix& g);

Vec vec_add(const Field& F, const Vec& a, const Vec& b);
Vec vec_scale(const Field& F, const Vec& a, uint64_t s);
uint64_t vec_dot(const Field& F, const Vec& a, const Vec& b);
bool vec_is_zero(const Vec& a);

} // namespace ortho

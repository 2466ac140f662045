#pragma once

#include <unordered_map>

#include "orthoreal/ogroup.hpp"

namespace ortho {

/// Concrete finite matrix group with index-based operations; optionally a
/// quotient by {+-I} (elements stored as the lex-min of {g, -g}).
struct FinGroup {
    std::vector<FqMatrix> elems; // elems[0] = identity representative
    std::unordered_map<std::string, uint32_t> index;
    bool mod_pm = false;

    static FinGroup from_enumerated(const EnumeratedGroup& g);
    /// Quotient by {+-I} when -I lies in the group; otherwise the group itself.
    static FinGroup quotient_pm(const EnumeratedGroup& g);
    /// Closure of H's elements together with extra generators.
    static FinGroup extend(const EnumeratedGroup& h, const std::vector<FqMatrix>& extra, uint64_t cap);

    size_t size() const { return elems.size(); }
    FqMatrix canon(FqMatrix m) const;
    uint32_t find(const FqMatrix& m) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t e) const;
};

struct GroupClasses {
    std::vector<uint32_t> class_of;
    std::vector<uint32_t> reps; // element index per class; class 0 = identity
    std::vector<uint64_t> sizes;
    std::vector<uint32_t> inverse_class;
    uint32_t num() const { return static_cast<uint32_t>(reps.size()); }
};
GroupClasses conjugacy_classes(const FinGroup& g);

/// Integer element of Z[zeta_e], coordinates in the power basis 1..zeta^(e-1).
struct CycInt {
    uint32_t level = 1;
    std::vector<int64_t> m{0};

    static CycInt integer(uint32_t level, int64_t c);
    CycInt raised(uint32_t new_level) const; // level must divide new_level
    CycInt operator+(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const; // convolution mod x^level - 1
    CycInt operator*(int64_t s) const;
    CycInt conj() const; // zeta -> zeta^-1
    bool operator==(const CycInt& o) const;
    bool is_real() const { return *this == conj(); }
};

/// Cyclotomic polynomial Phi_e over the integers (monic).
std::vector<int64_t> cyclotomic_poly(uint32_t e);

/// Whether v equals the rational integer c in Z[zeta_level] (exact, via
/// divisibility by Phi_level).
bool cyc_equals_integer(const CycInt& v, int64_t c);

struct CharTable {
    uint64_t order = 0;
    uint32_t exponent = 1;
    uint64_t ell = 0; // splitting prime used by the computation
    GroupClasses classes;
    std::vector<uint32_t> square_class_map; // class of rep^2
    std::vector<uint64_t> degrees;
    std::vector<std::vector<CycInt>> values; // [character][class]
    uint32_t num_chars() const { return static_cast<uint32_t>(values.size()); }
    const CycInt& value(uint32_t chi, uint32_t cls) const { return values[chi][cls]; }
};

/// Dixon's method: exact table over cyclotomic integers; verifies row and
/// column orthogonality before returning.
CharTable char_table(const FinGroup& g, uint64_t cap = 100000);

/// Frobenius-Schur indicator of values[chi] via the squaring class map.
int fs_indicator(const CharTable& t, uint32_t chi);

/// Twisted indicator for the automorphism g -> s g s^-1 of the group behind t.
int twisted_indicator(const FinGroup& g, const CharTable& t, const FqMatrix& s, uint32_t chi);

/// Exact inner product <a, b> summed over classes (b conjugated), times |G|.
CycInt inner_product_times_order(const CharTable& t, const std::vector<CycInt>& a, const std::vector<CycInt>& b);

/// Every irreducible of the quotient inflates to one of the group with the
/// same Frobenius-Schur indicator.
bool lift_check(const FinGroup& h, const CharTable& th, const FinGroup& quot, const CharTable& tq);

} // namespace ortho

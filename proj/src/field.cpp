#include "orthoreal/field.hpp"

#include <algorithm>

namespace ortho {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ZeroInSquareClass: return "ZeroInSquareClass";
        case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::CharTwoDiscriminant: return "CharTwoDiscriminant";
        case ErrorCode::SpinorNormCharTwo: return "SpinorNormCharTwo";
        case ErrorCode::DegenerateForm: return "DegenerateForm";
        case ErrorCode::DependentBasis: return "DependentBasis";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::SpaceMismatch: return "SpaceMismatch";
        case ErrorCode::GroupTooLarge: return "GroupTooLarge";
        case ErrorCode::SearchTooLarge: return "SearchTooLarge";
        case ErrorCode::DecompositionFailure: return "DecompositionFailure";
        case ErrorCode::WrongAmbient: return "WrongAmbient";
        case ErrorCode::WrongFieldClass: return "WrongFieldClass";
        case ErrorCode::EtaConstructionFailed: return "EtaConstructionFailed";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "UnknownError";
}

namespace {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// F_p[x] helpers on little-endian coefficient vectors, used only to pick and
// apply the extension modulus.
using PVec = std::vector<uint64_t>;

void ptrim(PVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& mod, uint64_t p) {
    PVec r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // reduce by monic mod
    size_t dm = mod.size() - 1;
    for (size_t i = r.size(); i-- > dm;) {
        uint64_t c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (size_t j = 0; j < dm; ++j) {
            uint64_t t = (c * mod[j]) % p;
            r[i - dm + j] = (r[i - dm + j] + p - t) % p;
        }
    }
    r.resize(dm);
    return r;
}

PVec ppowmod(PVec a, uint64_t e, const PVec& mod, uint64_t p) {
    PVec r{1};
    r.resize(mod.size() - 1, 0);
    a.resize(mod.size() - 1, 0);
    while (e) {
        if (e & 1) r = pmulmod(r, a, mod, p);
        a = pmulmod(a, a, mod, p);
        e >>= 1;
    }
    return r;
}

bool pis_zero(const PVec& a) {
    for (uint64_t c : a)
        if (c) return false;
    return true;
}

uint64_t pinv_mod(uint64_t a, uint64_t p) {
    int64_t t = 0, newt = 1, r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a);
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(p)) : static_cast<uint64_t>(t);
}

PVec pmod(PVec a, const PVec& b, uint64_t p) {
    ptrim(a);
    PVec d = b;
    ptrim(d);
    uint64_t li = pinv_mod(d.back(), p);
    while (a.size() >= d.size() && !a.empty()) {
        uint64_t c = (a.back() * li) % p;
        size_t off = a.size() - d.size();
        for (size_t j = 0; j < d.size(); ++j) a[off + j] = (a[off + j] + p - (c * d[j]) % p) % p;
        ptrim(a);
    }
    return a;
}

PVec pgcd(PVec a, PVec b, uint64_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PVec r = pmod(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

// f of degree k is irreducible over F_p iff x^(p^k) = x mod f and
// gcd(x^(p^(k/r)) - x, f) = 1 for every prime r dividing k.
bool modulus_irreducible(const PVec& f, uint64_t p) {
    size_t k = f.size() - 1;
    PVec xx{0, 1};
    xx.resize(k, 0);
    PVec cur = xx;
    for (size_t j = 0; j < k; ++j) cur = ppowmod(cur, p, f, p);
    PVec diff(k, 0);
    for (size_t i = 0; i < k; ++i) diff[i] = (cur[i] + p - xx[i]) % p;
    if (!pis_zero(diff)) return false;
    for (uint64_t r = 2; r <= k; ++r) {
        if (k % r != 0 || !is_prime_u64(r)) continue;
        size_t m = k / r;
        PVec c2 = xx;
        for (size_t j = 0; j < m; ++j) c2 = ppowmod(c2, p, f, p);
        PVec d2(k, 0);
        for (size_t i = 0; i < k; ++i) d2[i] = (c2[i] + p - xx[i]) % p;
        PVec g = pgcd(f, d2, p);
        if (!(g.size() == 1)) return false; // nontrivial common factor
    }
    return true;
}

PVec default_modulus(uint64_t p, uint32_t k) {
    if (k == 1) return PVec{0, 1}; // x (unused)
    // deterministic: smallest monic irreducible of degree k in the counter
    // order on the k low coefficients
    uint64_t total = 1;
    for (uint32_t i = 0; i < k; ++i) total *= p;
    for (uint64_t n = 0; n < total; ++n) {
        PVec f(k + 1, 0);
        uint64_t t = n;
        for (uint32_t i = 0; i < k; ++i) {
            f[i] = t % p;
            t /= p;
        }
        f[k] = 1;
        if (f[0] == 0) continue;
        if (modulus_irreducible(f, p)) return f;
    }
    fail(ErrorCode::InternalError, "no irreducible modulus found");
}

} // namespace

Field::Field(uint64_t p, uint32_t k) : Field(p, k, default_modulus(p, k)) {}

Field::Field(uint64_t p, uint32_t k, std::vector<uint64_t> modulus_coeffs)
    : p_(p), k_(k), modulus_(std::move(modulus_coeffs)) {
    if (!is_prime_u64(p_)) fail(ErrorCode::InvalidConfig, "field characteristic must be prime");
    if (k_ < 1) fail(ErrorCode::InvalidConfig, "extension degree must be >= 1");
    q_ = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        if (q_ > (uint64_t(1) << 62) / p_) fail(ErrorCode::InvalidConfig, "q too large for a machine word");
        q_ *= p_;
    }
    if (k_ > 1) {
        if (modulus_.size() != k_ + 1 || modulus_[k_] != 1)
            fail(ErrorCode::InvalidConfig, "modulus must be monic of degree k");
        if (!modulus_irreducible(modulus_, p_)) fail(ErrorCode::InvalidConfig, "modulus is reducible");
        build_tables();
    }
}

void Field::build_tables() {
    if (q_ > 1024) return; // fall back to slow polynomial arithmetic
    lut_ = true;
    mul_tab_.assign(q_ * q_, 0);
    add_tab_.assign(q_ * q_, 0);
    inv_tab_.assign(q_, 0);
    neg_tab_.assign(q_, 0);
    for (uint64_t a = 0; a < q_; ++a) {
        for (uint64_t b = 0; b < q_; ++b) {
            // add: digitwise mod p
            uint64_t s = 0, pw = 1, x = a, y = b;
            for (uint32_t i = 0; i < k_; ++i) {
                s += ((x % p_ + y % p_) % p_) * pw;
                x /= p_;
                y /= p_;
                pw *= p_;
            }
            add_tab_[a * q_ + b] = static_cast<uint32_t>(s);
            mul_tab_[a * q_ + b] = static_cast<uint32_t>(mul_slow(a, b));
        }
        // neg
        uint64_t s = 0, pw = 1, x = a;
        for (uint32_t i = 0; i < k_; ++i) {
            s += ((p_ - x % p_) % p_) * pw;
            x /= p_;
            pw *= p_;
        }
        neg_tab_[a] = static_cast<uint32_t>(s);
    }
    for (uint64_t a = 1; a < q_; ++a) {
        for (uint64_t b = 1; b < q_; ++b)
            if (mul_tab_[a * q_ + b] == 1) {
                inv_tab_[a] = static_cast<uint32_t>(b);
                break;
            }
    }
}

uint64_t Field::mul_slow(uint64_t a, uint64_t b) const {
    PVec pa = digits(a), pb = digits(b);
    PVec r = pmulmod(pa, pb, modulus_, p_);
    uint64_t v = 0, pw = 1;
    for (size_t i = 0; i < r.size(); ++i) {
        v += r[i] * pw;
        pw *= p_;
    }
    return v;
}

uint64_t Field::add(uint64_t a, uint64_t b) const {
    if (k_ == 1) {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (lut_) return add_tab_[a * q_ + b];
    uint64_t s = 0, pw = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        s += ((a % p_ + b % p_) % p_) * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return s;
}

uint64_t Field::neg(uint64_t a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    if (lut_) return neg_tab_[a];
    uint64_t s = 0, pw = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        s += ((p_ - a % p_) % p_) * pw;
        a /= p_;
        pw *= p_;
    }
    return s;
}

uint64_t Field::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t Field::mul(uint64_t a, uint64_t b) const {
    if (k_ == 1) return (a * b) % p_; // p < 2^31 in all supported uses
    if (lut_) return mul_tab_[a * q_ + b];
    return mul_slow(a, b);
}

uint64_t Field::pow(uint64_t a, uint64_t e) const {
    uint64_t r = one(), x = a;
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

uint64_t Field::inv(uint64_t a) const {
    if (a == 0) fail(ErrorCode::InternalError, "division by zero in F_q");
    if (k_ == 1) {
        // extended Euclid mod p
        int64_t t = 0, newt = 1;
        int64_t r = static_cast<int64_t>(p_), newr = static_cast<int64_t>(a);
        while (newr != 0) {
            int64_t qq = r / newr;
            std::swap(t -= qq * newt, newt);
            std::swap(r -= qq * newr, newr);
        }
        if (t < 0) t += static_cast<int64_t>(p_);
        return static_cast<uint64_t>(t);
    }
    if (lut_) return inv_tab_[a];
    return pow(a, q_ - 2);
}

uint64_t Field::of_int(int64_t v) const {
    int64_t m = v % static_cast<int64_t>(p_);
    if (m < 0) m += static_cast<int64_t>(p_);
    return static_cast<uint64_t>(m);
}

bool Field::is_square(uint64_t a) const {
    if (a == 0) fail(ErrorCode::ZeroInSquareClass, "square class of zero is undefined");
    if (p_ == 2) return true; // Frobenius is bijective
    return pow(a, (q_ - 1) / 2) == one();
}

SquareClass Field::square_class(uint64_t a) const {
    return is_square(a) ? SquareClass::Trivial : SquareClass::NonSquare;
}

std::vector<uint64_t> Field::digits(uint64_t a) const {
    std::vector<uint64_t> d(k_);
    for (uint32_t i = 0; i < k_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

uint64_t Field::from_digits(const std::vector<uint64_t>& d) const {
    uint64_t v = 0, pw = 1;
    for (uint32_t i = 0; i < k_ && i < d.size(); ++i) {
        v += (d[i] % p_) * pw;
        pw *= p_;
    }
    return v;
}

std::string Field::modulus_string() const {
    if (k_ == 1) return "x";
    std::string s;
    for (size_t i = modulus_.size(); i-- > 0;) {
        if (modulus_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0)
            s += std::to_string(modulus_[i]);
        else {
            if (modulus_[i] != 1) s += std::to_string(modulus_[i]) + "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

SquareClass square_class(const FqElement& a) {
    if (a.v == 0) fail(ErrorCode::ZeroInSquareClass, "square class of zero is undefined");
    return a.field->square_class(a.v);
}

} // namespace ortho

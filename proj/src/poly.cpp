#include "orthoreal/poly.hpp"

#include <algorithm>
#include <map>

namespace ortho {

FqPoly FqPoly::operator+(const FqPoly& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_->add(coeff(i), o.coeff(i));
    return FqPoly(*field_, std::move(r));
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_->sub(coeff(i), o.coeff(i));
    return FqPoly(*field_, std::move(r));
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
    if (is_zero() || o.is_zero()) return FqPoly(*field_);
    std::vector<uint64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = field_->add(r[i + j], field_->mul(c_[i], o.c_[j]));
    }
    return FqPoly(*field_, std::move(r));
}

FqPoly FqPoly::operator*(uint64_t s) const {
    std::vector<uint64_t> r(c_);
    for (auto& x : r) x = field_->mul(x, s);
    return FqPoly(*field_, std::move(r));
}

bool FqPoly::operator<(const FqPoly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& d) const {
    if (d.is_zero()) fail(ErrorCode::InternalError, "polynomial division by zero");
    FqPoly r = *this;
    if (r.degree() < d.degree()) return {FqPoly(*field_), r};
    std::vector<uint64_t> q(r.degree() - d.degree() + 1, 0);
    uint64_t dl = field_->inv(d.leading());
    for (int i = r.degree(); i >= d.degree(); --i) {
        uint64_t c = r.coeff(i);
        if (!c) continue;
        uint64_t f = field_->mul(c, dl);
        q[i - d.degree()] = f;
        for (int j = 0; j <= d.degree(); ++j)
            r.c_[i - d.degree() + j] = field_->sub(r.c_[i - d.degree() + j], field_->mul(f, d.c_[j]));
    }
    r.trim();
    return {FqPoly(*field_, std::move(q)), r};
}

FqPoly FqPoly::monic() const {
    if (is_zero() || leading() == field_->one()) return *this;
    return *this * field_->inv(leading());
}

FqPoly FqPoly::derivative() const {
    if (degree() < 1) return FqPoly(*field_);
    std::vector<uint64_t> r(c_.size() - 1, 0);
    for (size_t i = 1; i < c_.size(); ++i) {
        uint64_t m = field_->of_int(static_cast<int64_t>(i));
        r[i - 1] = field_->mul(c_[i], m);
    }
    return FqPoly(*field_, std::move(r));
}

uint64_t FqPoly::eval(uint64_t a) const {
    uint64_t r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = field_->add(field_->mul(r, a), c_[i]);
    return r;
}

FqPoly FqPoly::pow(uint64_t e) const {
    FqPoly r = FqPoly::constant(*field_, field_->one());
    FqPoly x = *this;
    while (e) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

std::string FqPoly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
        if (i >= 1) {
            if (c_[i] != 1) s += "*";
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

FqPoly gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

FqPoly powmod(FqPoly a, uint64_t e, const FqPoly& m) {
    const Field& F = a.field();
    FqPoly r = FqPoly::constant(F, F.one());
    a = a % m;
    while (e) {
        if (e & 1) r = (r * a) % m;
        a = (a * a) % m;
        e >>= 1;
    }
    return r;
}

FqPoly reciprocal(const FqPoly& f) {
    if (f.is_zero() || f.coeff(0) == 0) fail(ErrorCode::ZeroConstantTerm, "reciprocal needs f(0) != 0");
    std::vector<uint64_t> r(f.coeffs().rbegin(), f.coeffs().rend());
    return FqPoly(f.field(), std::move(r)).monic();
}

FqPoly twist(const FqPoly& f) {
    const Field& F = f.field();
    if (F.char_two()) fail(ErrorCode::WrongFieldClass, "twist is defined for odd q");
    if (!is_irreducible(f)) fail(ErrorCode::NotIrreducible, "twist needs an irreducible input");
    // roots -1/alpha: reverse coefficients (as for the reciprocal), then t -> -t
    std::vector<uint64_t> r(f.coeffs().rbegin(), f.coeffs().rend());
    for (size_t i = 1; i < r.size(); i += 2) r[i] = F.neg(r[i]);
    return FqPoly(F, std::move(r)).monic();
}

bool is_irreducible(const FqPoly& f) {
    const Field& F = f.field();
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    FqPoly x = FqPoly::x(F);
    // x^(q^n) == x mod f, and gcd(x^(q^(n/r)) - x, f) = 1 for prime r | n
    FqPoly xp = x % f;
    FqPoly cur = xp;
    std::vector<FqPoly> frob_iter; // cur after j q-power steps
    for (int j = 0; j < n; ++j) {
        cur = powmod(cur, F.q(), f);
        frob_iter.push_back(cur);
    }
    if (!(frob_iter[n - 1] % f == xp)) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= r; ++d)
            if (r % d == 0) prime = false;
        if (!prime) continue;
        if (gcd(frob_iter[n / r - 1] - xp, f).degree() != 0) return false;
    }
    return true;
}

namespace {

// deterministic LCG for the equal-degree splitting retries
struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed ^ 0x9e3779b97f4a7c15ULL) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 11;
    }
};

FqPoly random_poly(const Field& F, int deg, Lcg& rng) {
    std::vector<uint64_t> c(deg + 1);
    for (auto& x : c) x = rng.next() % F.q();
    return FqPoly(F, std::move(c));
}

// squarefree part decomposition: returns list of (squarefree g_i, multiplicity i)
void squarefree_split(const FqPoly& f, int mult, std::map<FqPoly, int>& out);

void record(const FqPoly& g, int mult, std::map<FqPoly, int>& out) {
    if (g.degree() >= 1) {
        auto m = g.monic();
        out[m] += mult;
    }
}

// classical char-p squarefree decomposition
void squarefree_split(const FqPoly& f, int mult, std::map<FqPoly, int>& out) {
    const Field& F = f.field();
    FqPoly d = f.derivative();
    if (d.is_zero()) {
        // f = g(x^p): take p-th roots of coefficients (a -> a^(q/p))
        uint64_t pr = F.q() / F.p();
        std::vector<uint64_t> g;
        for (int i = 0; i <= f.degree(); i += static_cast<int>(F.p()))
            g.push_back(F.pow(f.coeff(i), pr == 0 ? 1 : pr));
        squarefree_split(FqPoly(F, std::move(g)), mult * static_cast<int>(F.p()), out);
        return;
    }
    FqPoly c = gcd(f, d);
    FqPoly w = f / c;
    int i = 1;
    while (w.degree() >= 1) {
        FqPoly y = gcd(w, c);
        FqPoly z = w / y;
        record(z, mult * i, out);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() >= 1) squarefree_split(c, mult, out);
}

// distinct-degree on a squarefree monic input: (product of deg-d irreducibles, d)
std::vector<std::pair<FqPoly, int>> ddf(const FqPoly& f) {
    const Field& F = f.field();
    std::vector<std::pair<FqPoly, int>> out;
    FqPoly rem = f;
    FqPoly x = FqPoly::x(F);
    FqPoly xq = x % rem;
    int d = 0;
    while (rem.degree() >= 1) {
        ++d;
        if (rem.degree() < 2 * d) {
            out.emplace_back(rem, rem.degree());
            break;
        }
        xq = powmod(xq, F.q(), rem);
        FqPoly g = gcd(xq - (x % rem), rem);
        if (g.degree() >= 1) {
            out.emplace_back(g, d);
            rem = rem / g;
            xq = xq % rem;
        }
    }
    return out;
}

// Cantor-Zassenhaus equal-degree splitting of a product of deg-d irreducibles
void edf(const FqPoly& f, int d, std::vector<FqPoly>& out, Lcg& rng) {
    const Field& F = f.field();
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    FqPoly g = f;
    while (true) {
        FqPoly r = random_poly(F, f.degree() - 1, rng);
        if (r.degree() < 1) continue;
        FqPoly h;
        if (!F.char_two()) {
            uint64_t e1 = 1;
            // (q^d - 1) / 2 via repeated multiply (d small at desk scale)
            uint64_t qe = 1;
            for (int i = 0; i < d; ++i) qe *= F.q();
            e1 = (qe - 1) / 2;
            h = powmod(r, e1, g) - FqPoly::constant(F, F.one());
        } else {
            // trace map T(r) = r + r^2 + r^4 + ... over F_2-extensions
            FqPoly t = r % g, acc = t;
            uint64_t steps = static_cast<uint64_t>(d) * F.k();
            for (uint64_t i = 1; i < steps; ++i) {
                t = (t * t) % g;
                acc = (acc + t) % g;
            }
            h = acc;
        }
        FqPoly c = gcd(h, g);
        if (c.degree() >= 1 && c.degree() < g.degree()) {
            edf(c, d, out, rng);
            edf(g / c, d, out, rng);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<FqPoly, int>> factorize(const FqPoly& f) {
    if (f.degree() < 1) fail(ErrorCode::InvalidConfig, "factorize needs degree >= 1");
    std::map<FqPoly, int> sqf;
    squarefree_split(f.monic(), 1, sqf);
    std::map<FqPoly, int> irr;
    Lcg rng(0x0f0f1234abcdULL + static_cast<uint64_t>(f.degree()) * 1315423911ULL + f.field().q());
    for (const auto& [g, mult] : sqf) {
        for (const auto& [h, d] : ddf(g)) {
            std::vector<FqPoly> fs;
            edf(h, d, fs, rng);
            for (const auto& p : fs) irr[p] += mult;
        }
    }
    std::vector<std::pair<FqPoly, int>> out(irr.begin(), irr.end());
    return out;
}

} // namespace ortho

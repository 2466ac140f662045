#include "orthoreal/matrix.hpp"

#include <algorithm>
#include <map>

namespace ortho {

FqMatrix FqMatrix::identity(const Field& f, uint32_t n) {
    FqMatrix m(f, n, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

FqMatrix FqMatrix::from_int(const Field& f, uint32_t rows, uint32_t cols, const std::vector<int64_t>& e) {
    FqMatrix m(f, rows, cols);
    for (size_t i = 0; i < e.size() && i < m.a_.size(); ++i) m.a_[i] = f.of_int(e[i]);
    return m;
}

FqMatrix FqMatrix::antidiag(const Field& f, uint32_t n) {
    FqMatrix m(f, n, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, n - 1 - i) = f.one();
    return m;
}

FqMatrix FqMatrix::companion(const FqPoly& f) {
    const Field& F = f.field();
    uint32_t n = static_cast<uint32_t>(f.degree());
    FqMatrix m(F, n, n);
    for (uint32_t i = 1; i < n; ++i) m.at(i, i - 1) = F.one();
    for (uint32_t i = 0; i < n; ++i) m.at(i, n - 1) = F.neg(f.coeff(i));
    return m;
}

FqMatrix FqMatrix::direct_sum(const FqMatrix& a, const FqMatrix& b) {
    FqMatrix m(a.field(), a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (uint32_t i = 0; i < a.rows_; ++i)
        for (uint32_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (uint32_t i = 0; i < b.rows_; ++i)
        for (uint32_t j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
    return m;
}

FqMatrix FqMatrix::operator+(const FqMatrix& o) const {
    FqMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->add(a_[i], o.a_[i]);
    return r;
}

FqMatrix FqMatrix::operator-(const FqMatrix& o) const {
    FqMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->sub(a_[i], o.a_[i]);
    return r;
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
    const Field& F = *field_;
    FqMatrix r(F, rows_, o.cols_);
    for (uint32_t i = 0; i < rows_; ++i) {
        for (uint32_t k = 0; k < cols_; ++k) {
            uint64_t v = at(i, k);
            if (!v) continue;
            const uint64_t* orow = &o.a_[static_cast<size_t>(k) * o.cols_];
            uint64_t* rrow = &r.a_[static_cast<size_t>(i) * o.cols_];
            for (uint32_t j = 0; j < o.cols_; ++j)
                if (orow[j]) rrow[j] = F.add(rrow[j], F.mul(v, orow[j]));
        }
    }
    return r;
}

Vec FqMatrix::operator*(const Vec& v) const {
    const Field& F = *field_;
    Vec r(rows_, 0);
    for (uint32_t i = 0; i < rows_; ++i) {
        uint64_t s = 0;
        for (uint32_t j = 0; j < cols_; ++j)
            if (at(i, j) && v[j]) s = F.add(s, F.mul(at(i, j), v[j]));
        r[i] = s;
    }
    return r;
}

FqMatrix FqMatrix::operator*(uint64_t s) const {
    FqMatrix r = *this;
    for (auto& x : r.a_) x = field_->mul(x, s);
    return r;
}

FqMatrix FqMatrix::neg() const {
    FqMatrix r = *this;
    for (auto& x : r.a_) x = field_->neg(x);
    return r;
}

FqMatrix FqMatrix::transpose() const {
    FqMatrix r(*field_, cols_, rows_);
    for (uint32_t i = 0; i < rows_; ++i)
        for (uint32_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<uint32_t> FqMatrix::rref() {
    const Field& F = *field_;
    std::vector<uint32_t> pivots;
    uint32_t r = 0;
    for (uint32_t c = 0; c < cols_ && r < rows_; ++c) {
        uint32_t sel = r;
        while (sel < rows_ && at(sel, c) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != r)
            for (uint32_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
        uint64_t iv = F.inv(at(r, c));
        for (uint32_t j = 0; j < cols_; ++j) at(r, j) = F.mul(at(r, j), iv);
        for (uint32_t i = 0; i < rows_; ++i) {
            if (i == r || at(i, c) == 0) continue;
            uint64_t f = at(i, c);
            for (uint32_t j = 0; j < cols_; ++j) at(i, j) = F.sub(at(i, j), F.mul(f, at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

uint64_t FqMatrix::det() const {
    const Field& F = *field_;
    FqMatrix m = *this;
    uint64_t d = F.one();
    for (uint32_t c = 0; c < cols_; ++c) {
        uint32_t sel = c;
        while (sel < rows_ && m.at(sel, c) == 0) ++sel;
        if (sel == rows_) return 0;
        if (sel != c) {
            for (uint32_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(c, j));
            d = F.neg(d);
        }
        d = F.mul(d, m.at(c, c));
        uint64_t iv = F.inv(m.at(c, c));
        for (uint32_t i = c + 1; i < rows_; ++i) {
            uint64_t f = F.mul(m.at(i, c), iv);
            if (!f) continue;
            for (uint32_t j = c; j < cols_; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(c, j)));
        }
    }
    return d;
}

uint32_t FqMatrix::rank() const {
    FqMatrix m = *this;
    return static_cast<uint32_t>(m.rref().size());
}

FqMatrix FqMatrix::inverse() const {
    const Field& F = *field_;
    FqMatrix aug(F, rows_, 2 * cols_);
    for (uint32_t i = 0; i < rows_; ++i) {
        for (uint32_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = F.one();
    }
    auto piv = aug.rref();
    if (piv.size() != rows_ || piv.back() >= cols_) fail(ErrorCode::InternalError, "inverse of singular matrix");
    FqMatrix r(F, rows_, cols_);
    for (uint32_t i = 0; i < rows_; ++i)
        for (uint32_t j = 0; j < cols_; ++j) r.at(i, j) = aug.at(i, cols_ + j);
    return r;
}

FqMatrix FqMatrix::pow(uint64_t e) const {
    FqMatrix r = identity(*field_, rows_);
    FqMatrix x = *this;
    while (e) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

bool FqMatrix::is_identity() const {
    for (uint32_t i = 0; i < rows_; ++i)
        for (uint32_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? field_->one() : 0)) return false;
    return true;
}

Vec FqMatrix::row(uint32_t i) const { return Vec(a_.begin() + static_cast<size_t>(i) * cols_, a_.begin() + static_cast<size_t>(i + 1) * cols_); }

void FqMatrix::set_row(uint32_t i, const Vec& v) {
    std::copy(v.begin(), v.end(), a_.begin() + static_cast<size_t>(i) * cols_);
}

std::vector<Vec> FqMatrix::kernel() const {
    const Field& F = *field_;
    FqMatrix m = *this;
    auto piv = m.rref();
    std::vector<bool> is_piv(cols_, false);
    for (uint32_t c : piv) is_piv[c] = true;
    std::vector<Vec> out;
    for (uint32_t c = 0; c < cols_; ++c) {
        if (is_piv[c]) continue;
        Vec v(cols_, 0);
        v[c] = F.one();
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(m.at(static_cast<uint32_t>(r), c));
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vec> FqMatrix::solve(const Vec& b) const {
    const Field& F = *field_;
    FqMatrix aug(F, rows_, cols_ + 1);
    for (uint32_t i = 0; i < rows_; ++i) {
        for (uint32_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    auto piv = aug.rref();
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    Vec x(cols_, 0);
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<uint32_t>(r), cols_);
    return x;
}

FqMatrix FqMatrix::row_basis() const {
    FqMatrix m = *this;
    auto piv = m.rref();
    FqMatrix r(*field_, static_cast<uint32_t>(piv.size()), cols_);
    for (uint32_t i = 0; i < piv.size(); ++i)
        for (uint32_t j = 0; j < cols_; ++j) r.at(i, j) = m.at(i, j);
    return r;
}

std::string FqMatrix::canonical_bytes() const {
    std::string s;
    s.reserve(a_.size() * 2);
    for (uint64_t v : a_) {
        s.push_back(static_cast<char>(v & 0xff));
        s.push_back(static_cast<char>((v >> 8) & 0xff));
    }
    return s;
}

std::string FqMatrix::str() const {
    std::string s;
    for (uint32_t i = 0; i < rows_; ++i) {
        for (uint32_t j = 0; j < cols_; ++j) {
            s += std::to_string(at(i, j));
            if (j + 1 < cols_) s += " ";
        }
        s += "\n";
    }
    return s;
}

FqMatrix poly_at(const FqPoly& f, const FqMatrix& g) {
    const Field& F = g.field();
    FqMatrix r(F, g.rows(), g.cols());
    for (int i = f.degree(); i >= 0; --i) {
        r = r * g;
        uint64_t c = f.coeff(static_cast<size_t>(i));
        if (c)
            for (uint32_t d = 0; d < g.rows(); ++d) r.at(d, d) = F.add(r.at(d, d), c);
    }
    return r;
}

namespace {

// order polynomial of v under g: monic minimal mu with mu(g)v = 0
FqPoly order_poly(const FqMatrix& g, const Vec& v) {
    const Field& F = g.field();
    uint32_t n = g.rows();
    std::vector<Vec> chain; // v, gv, g^2 v, ...
    Vec cur = v;
    // rref tracking to detect dependence with expressing coefficients
    FqMatrix rows(F, 0, 0);
    std::vector<Vec> basis;       // reduced spanning rows
    std::vector<Vec> expr;        // expression of each reduced row in chain coords
    for (uint32_t step = 0; step <= n; ++step) {
        chain.push_back(cur);
        // reduce cur against basis
        Vec red = cur;
        Vec co(chain.size(), 0);
        co.back() = F.one();
        for (size_t b = 0; b < basis.size(); ++b) {
            // find leading position of basis[b]
            size_t lead = 0;
            while (lead < red.size() && basis[b][lead] == 0) ++lead;
            if (lead >= red.size() || red[lead] == 0) continue;
            uint64_t f = F.mul(red[lead], F.inv(basis[b][lead]));
            for (size_t j = 0; j < red.size(); ++j) red[j] = F.sub(red[j], F.mul(f, basis[b][j]));
            for (size_t j = 0; j < expr[b].size(); ++j) co[j] = F.sub(co[j], F.mul(f, expr[b][j]));
        }
        if (vec_is_zero(red)) {
            // co gives mu coefficients (up to normalization): sum co_i g^i v = 0
            FqPoly mu(F, std::vector<uint64_t>(co.begin(), co.end()));
            return mu.monic();
        }
        basis.push_back(red);
        expr.push_back(co);
        cur = g * cur;
    }
    fail(ErrorCode::InternalError, "order_poly did not terminate");
}

} // namespace

FqPoly minimal_polynomial(const FqMatrix& g) {
    const Field& F = g.field();
    FqPoly m = FqPoly::constant(F, F.one());
    for (uint32_t i = 0; i < g.rows(); ++i) {
        Vec e(g.rows(), 0);
        e[i] = F.one();
        FqPoly mu = order_poly(g, e);
        m = (m * mu) / gcd(m, mu); // lcm
        // early exit when degree reaches n
        if (m.degree() == static_cast<int>(g.rows())) break;
    }
    return m.monic();
}

std::vector<std::pair<FqPoly, int>> elementary_divisors(const FqMatrix& g) {
    const Field& F = g.field();
    uint32_t n = g.rows();
    FqPoly m = minimal_polynomial(g);
    auto factors = factorize(m);
    std::vector<std::pair<FqPoly, int>> out;
    uint32_t total = 0;
    for (const auto& [f, emax] : factors) {
        uint32_t df = static_cast<uint32_t>(f.degree());
        // kernel filtration dims d_j = dim ker f(g)^j, j = 0..emax(+1)
        std::vector<uint32_t> d{0};
        FqMatrix fg = poly_at(f, g);
        FqMatrix powm = FqMatrix::identity(F, n);
        for (int j = 1; j <= emax + 1; ++j) {
            powm = powm * fg;
            d.push_back(n - powm.rank());
            if (j > 1 && d[j] == d[j - 1]) break;
        }
        while (d.size() < static_cast<size_t>(emax) + 2) d.push_back(d.back());
        for (int e = 1; e <= emax; ++e) {
            // multiplicity of exponent e among the f-elementary divisors
            int64_t mult = (2LL * d[e] - d[e - 1] - d[e + 1]) / df;
            for (int64_t t = 0; t < mult; ++t) {
                out.emplace_back(f, e);
                total += static_cast<uint32_t>(e) * df;
            }
        }
    }
    if (total != n) fail(ErrorCode::InternalError, "elementary divisor degrees do not sum to n");
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

FqPoly characteristic_polynomial(const FqMatrix& g) {
    const Field& F = g.field();
    FqPoly c = FqPoly::constant(F, F.one());
    for (const auto& [f, e] : elementary_divisors(g)) c = c * f.pow(static_cast<uint64_t>(e));
    return c;
}

Vec vec_add(const Field& F, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
    return r;
}

Vec vec_scale(const Field& F, const Vec& a, uint64_t s) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
    return r;
}

uint64_t vec_dot(const Field& F, const Vec& a, const Vec& b) {
    uint64_t s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) s = F.add(s, F.mul(a[i], b[i]));
    return s;
}

bool vec_is_zero(const Vec& a) {
    for (uint64_t x : a)
        if (x) return false;
    return true;
}

} // namespace ortho

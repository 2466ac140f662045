#include "orthoreal/quadspace.hpp"

namespace ortho {

QuadSpace QuadSpace::from_gram(const Field& f, FqMatrix gram) {
    if (f.char_two()) fail(ErrorCode::InvalidConfig, "char-2 spaces need quadratic data, use from_quadratic");
    QuadSpace s;
    s.field_ = &f;
    s.n_ = gram.rows();
    if (gram != gram.transpose()) fail(ErrorCode::InvalidConfig, "Gram matrix must be symmetric");
    s.bil_ = std::move(gram);
    return s;
}

QuadSpace QuadSpace::from_quadratic(const Field& f, FqMatrix quad) {
    if (!f.char_two()) fail(ErrorCode::InvalidConfig, "from_quadratic is the char-2 constructor");
    QuadSpace s;
    s.field_ = &f;
    s.n_ = quad.rows();
    if (s.n_ % 2 != 0) fail(ErrorCode::InvalidConfig, "char-2 spaces must have even dimension");
    // normalize to upper-triangular: A_ij += A_ji for i < j
    FqMatrix a(f, s.n_, s.n_);
    for (uint32_t i = 0; i < s.n_; ++i)
        for (uint32_t j = 0; j < s.n_; ++j) {
            if (i <= j)
                a.at(i, j) = f.add(a.at(i, j), quad.at(i, j));
            else
                a.at(j, i) = f.add(a.at(j, i), quad.at(i, j));
        }
    s.quad_ = a;
    s.bil_ = a + a.transpose();
    return s;
}

QuadSpace QuadSpace::split(const Field& f, uint32_t n) {
    if (!f.char_two()) return from_gram(f, FqMatrix::antidiag(f, n));
    if (n % 2 != 0) fail(ErrorCode::InvalidConfig, "char-2 spaces must have even dimension");
    FqMatrix a(f, n, n);
    for (uint32_t i = 0; i + 1 < n; i += 2) a.at(i, i + 1) = f.one(); // x1 x2 + x3 x4 + ...
    return from_quadratic(f, a);
}

namespace {

uint64_t absolute_trace(const Field& f, uint64_t a) {
    uint64_t tr = 0, cur = a;
    for (uint32_t i = 0; i < f.k(); ++i) {
        tr = f.add(tr, cur);
        cur = f.mul(cur, cur);
    }
    return tr;
}

} // namespace

QuadSpace QuadSpace::nonsplit(const Field& f, uint32_t n) {
    if (!f.char_two()) {
        if (n < 2) fail(ErrorCode::InvalidConfig, "nonsplit needs n >= 2");
        uint64_t delta = 0;
        for (uint64_t a = 1; a < f.q(); ++a)
            if (!f.is_square(a)) {
                delta = a;
                break;
            }
        FqMatrix g(f, n, n);
        if (n % 2 == 0) {
            // J_(n-2) plus the anisotropic plane diag(1, -delta)
            for (uint32_t i = 0; i < n - 2; ++i) g.at(i, n - 3 - i) = f.one();
            g.at(n - 2, n - 2) = f.one();
            g.at(n - 1, n - 1) = f.neg(delta);
        } else {
            // odd dimension: scale the square part; flips the discriminant label
            for (uint32_t i = 0; i < n - 1; ++i) g.at(i, n - 2 - i) = f.one();
            g.at(n - 1, n - 1) = delta;
        }
        return from_gram(f, g);
    }
    if (n % 2 != 0) fail(ErrorCode::InvalidConfig, "char-2 spaces must have even dimension");
    // split planes plus one anisotropic plane x^2 + xy + a y^2 with Tr(a) = 1
    uint64_t a0 = 0;
    for (uint64_t a = 1; a < f.q(); ++a)
        if (absolute_trace(f, a) == f.one()) {
            a0 = a;
            break;
        }
    FqMatrix m(f, n, n);
    for (uint32_t i = 0; i + 3 < n; i += 2) m.at(i, i + 1) = f.one();
    m.at(n - 2, n - 2) = f.one();
    m.at(n - 2, n - 1) = f.one();
    m.at(n - 1, n - 1) = a0;
    return from_quadratic(f, m);
}

uint64_t QuadSpace::b(const Vec& u, const Vec& v) const {
    const Field& F = *field_;
    uint64_t s = 0;
    for (uint32_t i = 0; i < n_; ++i) {
        if (!u[i]) continue;
        uint64_t row = 0;
        for (uint32_t j = 0; j < n_; ++j)
            if (v[j] && bil_.at(i, j)) row = F.add(row, F.mul(bil_.at(i, j), v[j]));
        s = F.add(s, F.mul(u[i], row));
    }
    return s;
}

uint64_t QuadSpace::qv(const Vec& v) const {
    const Field& F = *field_;
    const FqMatrix& M = char_two() ? quad_ : bil_;
    uint64_t s = 0;
    for (uint32_t i = 0; i < n_; ++i) {
        if (!v[i]) continue;
        for (uint32_t j = 0; j < n_; ++j)
            if (v[j] && M.at(i, j)) s = F.add(s, F.mul(F.mul(v[i], M.at(i, j)), v[j]));
    }
    return s;
}

SquareClass QuadSpace::discriminant() const {
    if (char_two()) fail(ErrorCode::CharTwoDiscriminant, "char-2 classification uses the Arf-type dichotomy");
    uint64_t d = bil_.det();
    if (d == 0) fail(ErrorCode::DegenerateForm, "discriminant of a degenerate form");
    return field_->square_class(d);
}

namespace {

// split-type reference discriminant: square class of det J_n = (-1)^floor(n/2)
SquareClass split_disc(const Field& F, uint32_t n) {
    uint64_t v = (n / 2) % 2 == 0 ? F.one() : F.neg(F.one());
    return F.square_class(v);
}

} // namespace

uint32_t QuadSpace::witt_index() const {
    QuadSpace cur = *this;
    uint32_t index = 0;
    uint64_t seed = 0x5bd1e995;
    while (cur.n_ >= 2) {
        const Field& F = *cur.field_;
        uint64_t total = 1;
        bool big = false;
        for (uint32_t i = 0; i < cur.n_; ++i) {
            if (total > (1ULL << 40) / F.q()) {
                big = true;
                break;
            }
            total *= F.q();
        }
        Vec found;
        auto try_vec = [&](Vec v) {
            if (vec_is_zero(v) || cur.qv(v) != 0) return false;
            for (uint32_t i = 0; i < cur.n_; ++i) {
                Vec e(cur.n_, 0);
                e[i] = F.one();
                if (cur.b(v, e) != 0) return true; // singular and outside the radical
            }
            return false;
        };
        // randomized search first, exhaustive fallback at desk scale
        for (int t = 0; t < 64 && found.empty(); ++t) {
            Vec v(cur.n_);
            for (auto& x : v) {
                seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
                x = (seed >> 17) % F.q();
            }
            if (try_vec(v)) found = v;
        }
        if (found.empty() && !big) {
            for (uint64_t code = 1; code < total && found.empty(); ++code) {
                Vec v(cur.n_, 0);
                uint64_t t = code;
                for (uint32_t i = 0; i < cur.n_; ++i) {
                    v[i] = t % F.q();
                    t /= F.q();
                }
                if (try_vec(v)) found = v;
            }
        }
        if (found.empty()) break; // anisotropic remainder
        // partner w with B(v,w) = 1
        Vec w(cur.n_, 0);
        for (uint32_t i = 0; i < cur.n_; ++i) {
            Vec e(cur.n_, 0);
            e[i] = F.one();
            uint64_t bv = cur.b(found, e);
            if (bv != 0) {
                w = vec_scale(F, e, F.inv(bv));
                break;
            }
        }
        // make w singular: Q(w + cv) = Q(w) + c B(v,w) (+ c^2 Q(v) = 0)
        uint64_t qw = cur.qv(w);
        if (qw != 0) {
            uint64_t c = F.char_two() ? qw : F.neg(F.mul(qw, F.inv(F.of_int(2))));
            w = vec_add(F, w, vec_scale(F, found, c));
        }
        FqMatrix sys(F, 2, cur.n_);
        for (uint32_t j = 0; j < cur.n_; ++j) {
            Vec e(cur.n_, 0);
            e[j] = F.one();
            sys.at(0, j) = cur.b(found, e);
            sys.at(1, j) = cur.b(w, e);
        }
        auto ker = sys.kernel();
        cur = cur.restrict_to(ker);
        ++index;
    }
    return index;
}

FormType QuadSpace::form_type() const {
    if (!nondegenerate()) fail(ErrorCode::DegenerateForm, "form type of a degenerate form");
    if (!char_two()) return discriminant() == split_disc(*field_, n_) ? FormType::Split : FormType::NonSplit;
    return witt_index() == n_ / 2 ? FormType::Split : FormType::NonSplit;
}

QuadSpace QuadSpace::restrict_to(const std::vector<Vec>& basis) const {
    const Field& F = *field_;
    uint32_t d = static_cast<uint32_t>(basis.size());
    FqMatrix bm(F, d, n_);
    for (uint32_t i = 0; i < d; ++i) bm.set_row(i, basis[i]);
    if (bm.rank() != d) fail(ErrorCode::DependentBasis, "restriction basis is dependent");
    QuadSpace s;
    s.field_ = field_;
    s.n_ = d;
    if (!char_two()) {
        FqMatrix g(F, d, d);
        for (uint32_t i = 0; i < d; ++i)
            for (uint32_t j = 0; j < d; ++j) g.at(i, j) = b(basis[i], basis[j]);
        s.bil_ = g;
        return s;
    }
    FqMatrix a(F, d, d);
    for (uint32_t i = 0; i < d; ++i) {
        a.at(i, i) = qv(basis[i]);
        for (uint32_t j = i + 1; j < d; ++j) a.at(i, j) = b(basis[i], basis[j]);
    }
    s.quad_ = a;
    s.bil_ = a + a.transpose();
    return s;
}

QuadSpace QuadSpace::direct_sum(const QuadSpace& a, const QuadSpace& b) {
    if (!(*a.field_ == *b.field_)) fail(ErrorCode::FieldMismatch, "direct sum over different fields");
    QuadSpace s;
    s.field_ = a.field_;
    s.n_ = a.n_ + b.n_;
    s.bil_ = FqMatrix::direct_sum(a.bil_, b.bil_);
    if (a.char_two()) s.quad_ = FqMatrix::direct_sum(a.quad_, b.quad_);
    return s;
}

bool QuadSpace::is_isometry(const FqMatrix& g) const {
    if (g.rows() != n_ || g.cols() != n_) return false;
    if (g.transpose() * bil_ * g != bil_) return false;
    if (char_two()) {
        const Field& F = *field_;
        for (uint32_t j = 0; j < n_; ++j) {
            Vec e(n_, 0);
            e[j] = F.one();
            Vec ge(n_, 0);
            for (uint32_t i = 0; i < n_; ++i) ge[i] = g.at(i, j);
            if (qv(ge) != qv(e)) return false;
        }
    }
    return true;
}

Isometry::Isometry(const QuadSpace& s, FqMatrix g) : space(&s), m(std::move(g)) {
    if (!s.is_isometry(m)) fail(ErrorCode::SpaceMismatch, "matrix does not preserve the form");
}

} // namespace ortho

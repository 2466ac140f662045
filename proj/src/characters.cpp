#include "orthoreal/characters.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "orthoreal/reality.hpp" // element_order

namespace ortho {

FinGroup FinGroup::from_enumerated(const EnumeratedGroup& g) {
    FinGroup out;
    out.elems = g.elems;
    out.index = g.index;
    return out;
}

FinGroup FinGroup::quotient_pm(const EnumeratedGroup& g) {
    const QuadSpace& S = *g.space;
    const Field& F = S.field();
    FqMatrix mid = FqMatrix::identity(F, S.dim()).neg();
    if (!g.contains(mid)) return from_enumerated(g); // trivial center, nothing to fold
    FinGroup out;
    out.mod_pm = true;
    for (const auto& m : g.elems) {
        FqMatrix c = out.canon(m);
        std::string key = c.canonical_bytes();
        if (out.index.count(key)) continue;
        if (c.is_identity()) {
            out.index.emplace(key, 0);
            out.elems.insert(out.elems.begin(), c);
            // reindex
            out.index.clear();
            for (uint32_t i = 0; i < out.elems.size(); ++i) out.index.emplace(out.elems[i].canonical_bytes(), i);
        } else {
            out.index.emplace(key, static_cast<uint32_t>(out.elems.size()));
            out.elems.push_back(c);
        }
    }
    return out;
}

FinGroup FinGroup::extend(const EnumeratedGroup& h, const std::vector<FqMatrix>& extra, uint64_t cap) {
    std::vector<FqMatrix> gens = small_generating_set(h);
    for (const auto& m : extra) gens.push_back(m);
    EnumeratedGroup c = closure(*h.space, gens, cap);
    return from_enumerated(c);
}

FqMatrix FinGroup::canon(FqMatrix m) const {
    if (!mod_pm) return m;
    FqMatrix n = m.neg();
    return n.lex_less(m) ? n : m;
}

uint32_t FinGroup::find(const FqMatrix& m) const {
    auto it = index.find(canon(m).canonical_bytes());
    return it == index.end() ? UINT32_MAX : it->second;
}

uint32_t FinGroup::mul(uint32_t a, uint32_t b) const {
    uint32_t r = find(elems[a] * elems[b]);
    if (r == UINT32_MAX) fail(ErrorCode::InternalError, "product escaped the group");
    return r;
}

uint32_t FinGroup::inv(uint32_t a) const {
    uint32_t r = find(elems[a].inverse());
    if (r == UINT32_MAX) fail(ErrorCode::InternalError, "inverse escaped the group");
    return r;
}

uint32_t FinGroup::pow(uint32_t a, uint64_t e) const {
    uint32_t r = 0, x = a;
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

namespace {

std::vector<uint32_t> small_gens_indices(const FinGroup& g) {
    std::vector<uint32_t> gens;
    std::vector<char> have(g.size(), 0);
    auto closure_size = [&](const std::vector<uint32_t>& gen) {
        std::fill(have.begin(), have.end(), 0);
        have[0] = 1;
        std::vector<uint32_t> frontier{0};
        size_t cnt = 1;
        while (!frontier.empty()) {
            uint32_t cur = frontier.back();
            frontier.pop_back();
            for (uint32_t s : gen) {
                uint32_t nxt = g.mul(cur, s);
                if (!have[nxt]) {
                    have[nxt] = 1;
                    ++cnt;
                    frontier.push_back(nxt);
                }
            }
        }
        return cnt;
    };
    size_t cur = 1;
    for (uint32_t i = 1; i < g.size(); ++i) {
        gens.push_back(i);
        size_t c = closure_size(gens);
        if (c == cur) {
            gens.pop_back();
            continue;
        }
        cur = c;
        if (cur == g.size()) return gens;
    }
    if (g.size() == 1) return gens;
    fail(ErrorCode::InternalError, "no generating set found");
}

} // namespace

GroupClasses conjugacy_classes(const FinGroup& g) {
    GroupClasses c;
    c.class_of.assign(g.size(), UINT32_MAX);
    auto gens = small_gens_indices(g);
    std::vector<uint32_t> gens_inv;
    for (uint32_t s : gens) gens_inv.push_back(g.inv(s));
    for (uint32_t i = 0; i < g.size(); ++i) {
        if (c.class_of[i] != UINT32_MAX) continue;
        uint32_t cls = c.num();
        c.class_of[i] = cls;
        uint64_t size = 1;
        std::vector<uint32_t> frontier{i};
        while (!frontier.empty()) {
            uint32_t cur = frontier.back();
            frontier.pop_back();
            for (size_t s = 0; s < gens.size(); ++s) {
                uint32_t conj = g.mul(g.mul(gens[s], cur), gens_inv[s]);
                if (c.class_of[conj] != UINT32_MAX) continue;
                c.class_of[conj] = cls;
                ++size;
                frontier.push_back(conj);
            }
        }
        c.reps.push_back(i);
        c.sizes.push_back(size);
    }
    c.inverse_class.resize(c.num());
    for (uint32_t k = 0; k < c.num(); ++k) c.inverse_class[k] = c.class_of[g.inv(c.reps[k])];
    return c;
}

// ---------------------------------------------------------------- cyclotomic

CycInt CycInt::integer(uint32_t level, int64_t c) {
    CycInt v;
    v.level = level;
    v.m.assign(level, 0);
    v.m[0] = c;
    return v;
}

CycInt CycInt::raised(uint32_t new_level) const {
    if (new_level == level) return *this;
    if (new_level % level != 0) fail(ErrorCode::InternalError, "cyclotomic level must divide the target");
    uint32_t f = new_level / level;
    CycInt v;
    v.level = new_level;
    v.m.assign(new_level, 0);
    for (uint32_t k = 0; k < level; ++k) v.m[static_cast<size_t>(k) * f] = m[k];
    return v;
}

CycInt CycInt::operator+(const CycInt& o) const {
    CycInt v = *this;
    for (uint32_t k = 0; k < level; ++k) v.m[k] += o.m[k];
    return v;
}

CycInt CycInt::operator*(const CycInt& o) const {
    CycInt v;
    v.level = level;
    v.m.assign(level, 0);
    for (uint32_t i = 0; i < level; ++i) {
        if (!m[i]) continue;
        for (uint32_t j = 0; j < level; ++j) {
            if (!o.m[j]) continue;
            v.m[(i + j) % level] += m[i] * o.m[j];
        }
    }
    return v;
}

CycInt CycInt::operator*(int64_t s) const {
    CycInt v = *this;
    for (auto& x : v.m) x *= s;
    return v;
}

CycInt CycInt::conj() const {
    CycInt v;
    v.level = level;
    v.m.assign(level, 0);
    for (uint32_t k = 0; k < level; ++k) v.m[(level - k) % level] += m[k];
    return v;
}

bool CycInt::operator==(const CycInt& o) const {
    // equality in Z[zeta]: difference divisible by Phi_level
    CycInt d = *this + (o * -1);
    return cyc_equals_integer(d, 0);
}

std::vector<int64_t> cyclotomic_poly(uint32_t e) {
    // x^e - 1 = prod_{d | e} Phi_d
    std::vector<std::vector<int64_t>> phis(e + 1);
    for (uint32_t d = 1; d <= e; ++d) {
        if (e % d != 0) continue;
        std::vector<int64_t> num(d + 1, 0);
        num[0] = -1;
        num[d] = 1; // x^d - 1
        for (uint32_t dd = 1; dd < d; ++dd) {
            if (d % dd != 0 || phis[dd].empty()) continue;
            // exact division num /= phis[dd]
            const auto& den = phis[dd];
            std::vector<int64_t> quot(num.size() - den.size() + 1, 0);
            std::vector<int64_t> rem = num;
            for (size_t i = quot.size(); i-- > 0;) {
                int64_t c = rem[i + den.size() - 1] / den.back();
                quot[i] = c;
                for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= c * den[j];
            }
            for (int64_t r : rem)
                if (r != 0) fail(ErrorCode::InternalError, "cyclotomic division not exact");
            num = quot;
        }
        phis[d] = num;
    }
    return phis[e];
}

bool cyc_equals_integer(const CycInt& v, int64_t c) {
    static std::map<uint32_t, std::vector<int64_t>> cache;
    auto it = cache.find(v.level);
    if (it == cache.end()) it = cache.emplace(v.level, cyclotomic_poly(v.level)).first;
    const auto& phi = it->second;
    std::vector<__int128> rem(v.m.begin(), v.m.end());
    rem[0] -= c;
    size_t dphi = phi.size() - 1; // phi is monic of this degree
    for (size_t i = rem.size(); i-- > dphi;) {
        __int128 coef = rem[i];
        if (coef == 0) continue;
        size_t off = i - dphi;
        for (size_t j = 0; j < phi.size(); ++j) rem[off + j] -= coef * phi[j];
    }
    for (__int128 r : rem)
        if (r != 0) return false;
    return true;
}

// ----------------------------------------------------------------- Dixon

namespace {

struct ModP {
    uint64_t p;
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b) % p; }
    uint64_t mul(uint64_t a, uint64_t b) const { return (a * b) % p; }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
};

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t primitive_root(uint64_t ell) {
    uint64_t n = ell - 1;
    std::vector<uint64_t> pf;
    uint64_t t = n;
    for (uint64_t d = 2; d * d <= t; ++d)
        while (t % d == 0) {
            pf.push_back(d);
            while (t % d == 0) t /= d;
            break;
        }
    if (t > 1) pf.push_back(t);
    std::sort(pf.begin(), pf.end());
    pf.erase(std::unique(pf.begin(), pf.end()), pf.end());
    ModP M{ell};
    for (uint64_t g = 2; g < ell; ++g) {
        bool ok = true;
        for (uint64_t f : pf)
            if (M.pow(g, n / f) == 1) ok = false;
        if (ok) return g;
    }
    fail(ErrorCode::InternalError, "no primitive root found");
}

} // namespace

CharTable char_table(const FinGroup& g, uint64_t cap) {
    if (g.size() > cap) fail(ErrorCode::GroupTooLarge, "group order " + std::to_string(g.size()) + " exceeds cap");
    CharTable T;
    T.order = g.size();
    T.classes = conjugacy_classes(g);
    uint32_t r = T.classes.num();

    // exponent = lcm of representative orders (group-level: matters for quotients)
    auto idx_order = [&](uint32_t i) {
        uint64_t o = 1;
        uint32_t cur = i;
        while (cur != 0) {
            cur = g.mul(cur, i);
            ++o;
        }
        return o;
    };
    uint64_t e = 1;
    for (uint32_t k = 0; k < r; ++k) e = std::lcm(e, idx_order(T.classes.reps[k]));
    T.exponent = static_cast<uint32_t>(e);

    // splitting prime
    uint64_t bound = 2;
    while (bound * bound <= 4 * g.size()) ++bound; // bound > 2 sqrt(|G|)
    uint64_t ell = e + 1;
    while (!(is_prime(ell) && ell > bound && (ell - 1) % e == 0)) ell += e;
    T.ell = ell;
    ModP M{ell};

    // class element lists
    std::vector<std::vector<uint32_t>> by_class(r);
    for (uint32_t i = 0; i < g.size(); ++i) by_class[T.classes.class_of[i]].push_back(i);

    // class matrices a_{ijk} = #{x in C_i : x^-1 z_k in C_j}, computed lazily
    std::vector<std::vector<uint64_t>> cm(r); // cm[i] = row-major r x r: [j][k]
    auto class_matrix = [&](uint32_t i) -> const std::vector<uint64_t>& {
        if (!cm[i].empty()) return cm[i];
        cm[i].assign(static_cast<size_t>(r) * r, 0);
        for (uint32_t k = 0; k < r; ++k) {
            uint32_t zk = T.classes.reps[k];
            for (uint32_t x : by_class[i]) {
                uint32_t y = g.mul(g.inv(x), zk);
                uint32_t j = T.classes.class_of[y];
                cm[i][static_cast<size_t>(j) * r + k] += 1;
            }
        }
        return cm[i];
    };

    // split the class-function space over F_ell into common eigenlines
    Field Fl(ell, 1);
    std::vector<FqMatrix> spaces; // rows = basis vectors over F_ell
    spaces.push_back(FqMatrix::identity(Fl, r));
    for (uint32_t i = 1; i < r; ++i) {
        bool all_lines = true;
        for (const auto& s : spaces)
            if (s.rows() > 1) all_lines = false;
        if (all_lines) break;
        const auto& a = class_matrix(i);
        // action matrix B: (B w)_j = sum_k a_{ijk} w_k
        FqMatrix B(Fl, r, r);
        for (uint32_t j = 0; j < r; ++j)
            for (uint32_t k = 0; k < r; ++k) B.at(j, k) = a[static_cast<size_t>(j) * r + k] % ell;
        std::vector<FqMatrix> next;
        for (auto& sp : spaces) {
            if (sp.rows() == 1) {
                next.push_back(sp);
                continue;
            }
            uint32_t d = sp.rows();
            // restricted action: solve sp^T systems
            FqMatrix sys = sp.transpose();
            FqMatrix A(Fl, d, d);
            for (uint32_t c2 = 0; c2 < d; ++c2) {
                auto sol = sys.solve(B * sp.row(c2));
                if (!sol) fail(ErrorCode::InternalError, "class matrix does not preserve the subspace");
                for (uint32_t k2 = 0; k2 < d; ++k2) A.at(k2, c2) = (*sol)[k2];
            }
            // eigenvalues via the invariant factors
            FqPoly cp = FqPoly::constant(Fl, 1);
            for (const auto& piece : cyclic_decomposition(A)) cp = cp * piece.order;
            std::set<uint64_t> lambdas;
            for (const auto& [f, mult] : factorize(cp))
                if (f.degree() == 1) lambdas.insert(Fl.neg(f.coeff(0)));
            if (lambdas.size() <= 1) {
                next.push_back(sp);
                continue;
            }
            for (uint64_t lam : lambdas) {
                FqMatrix shifted = A;
                for (uint32_t t2 = 0; t2 < d; ++t2) shifted.at(t2, t2) = Fl.sub(shifted.at(t2, t2), lam);
                auto ker = shifted.kernel();
                FqMatrix nb(Fl, static_cast<uint32_t>(ker.size()), r);
                for (uint32_t t2 = 0; t2 < ker.size(); ++t2) {
                    Vec amb(r, 0);
                    for (uint32_t c2 = 0; c2 < d; ++c2)
                        if (ker[t2][c2]) amb = vec_add(Fl, amb, vec_scale(Fl, sp.row(c2), ker[t2][c2]));
                    nb.set_row(t2, amb);
                }
                next.push_back(nb);
            }
        }
        spaces = std::move(next);
    }
    for (const auto& s : spaces)
        if (s.rows() != 1) fail(ErrorCode::InternalError, "class algebra did not split into lines");
    if (spaces.size() != r) fail(ErrorCode::InternalError, "wrong number of common eigenlines");

    // central characters omega -> degrees -> mod-ell character values
    std::vector<Vec> omegas;
    for (const auto& s : spaces) {
        Vec w = s.row(0);
        if (w[0] == 0) fail(ErrorCode::InternalError, "eigenline vanishes at the identity class");
        uint64_t iv = Fl.inv(w[0]);
        for (auto& x : w) x = Fl.mul(x, iv);
        omegas.push_back(std::move(w));
    }
    uint64_t isq = 0;
    while ((isq + 1) * (isq + 1) <= g.size()) ++isq; // floor sqrt |G|
    std::vector<Vec> chi_mod(r);
    T.degrees.resize(r);
    for (uint32_t c2 = 0; c2 < r; ++c2) {
        const Vec& w = omegas[c2];
        uint64_t s = 0;
        for (uint32_t k = 0; k < r; ++k)
            s = M.add(s, M.mul(M.mul(w[k], w[T.classes.inverse_class[k]]), M.inv(T.classes.sizes[k] % ell)));
        uint64_t d2 = M.mul(g.size() % ell, M.inv(s));
        uint64_t deg = 0;
        for (uint64_t t2 = 1; t2 <= isq; ++t2)
            if (M.mul(t2, t2) == d2) {
                deg = t2;
                break;
            }
        if (!deg) fail(ErrorCode::InternalError, "no integer degree matches the eigenline");
        T.degrees[c2] = deg;
        Vec chi(r, 0);
        for (uint32_t k = 0; k < r; ++k)
            chi[k] = M.mul(M.mul(deg % ell, w[k]), M.inv(T.classes.sizes[k] % ell));
        chi_mod[c2] = std::move(chi);
    }
    // order characters by (degree, values) for reproducible tables
    {
        std::vector<uint32_t> idx(r);
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<uint64_t> degs(r);
        for (uint32_t c2 = 0; c2 < r; ++c2) degs[c2] = chi_mod[c2][0];
        std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
            if (degs[a] != degs[b]) return degs[a] < degs[b];
            return chi_mod[a] < chi_mod[b];
        });
        std::vector<Vec> cm2;
        std::vector<uint64_t> dg2;
        for (uint32_t i : idx) {
            cm2.push_back(chi_mod[i]);
            dg2.push_back(degs[i]);
        }
        chi_mod = std::move(cm2);
        T.degrees = std::move(dg2);
    }

    // power maps: class of rep^j, j < e, per class; and the squaring map
    std::vector<std::vector<uint32_t>> pow_class(r, std::vector<uint32_t>(e));
    for (uint32_t k = 0; k < r; ++k) {
        uint32_t cur = 0; // identity
        for (uint64_t j = 0; j < e; ++j) {
            pow_class[k][j] = T.classes.class_of[cur];
            cur = g.mul(cur, T.classes.reps[k]);
        }
    }
    T.square_class_map.resize(r);
    for (uint32_t k = 0; k < r; ++k) T.square_class_map[k] = pow_class[k][2 % e];

    // lift to cyclotomic integers: multiplicities of each e-th root of unity
    uint64_t z = M.pow(primitive_root(ell), (ell - 1) / e);
    uint64_t einv = M.inv(e % ell);
    std::vector<uint64_t> zpow(e);
    zpow[0] = 1;
    for (uint32_t j = 1; j < e; ++j) zpow[j] = M.mul(zpow[j - 1], z);
    T.values.assign(r, std::vector<CycInt>(r));
    for (uint32_t c2 = 0; c2 < r; ++c2) {
        for (uint32_t k = 0; k < r; ++k) {
            CycInt v;
            v.level = static_cast<uint32_t>(e);
            v.m.assign(e, 0);
            uint64_t check = 0;
            for (uint32_t kk = 0; kk < e; ++kk) {
                uint64_t acc = 0;
                for (uint32_t j = 0; j < e; ++j) {
                    uint64_t term = M.mul(chi_mod[c2][pow_class[k][j]], zpow[(static_cast<uint64_t>(e - kk) * j) % e]);
                    acc = M.add(acc, term);
                }
                uint64_t mk = M.mul(acc, einv);
                if (mk > T.degrees[c2])
                    fail(ErrorCode::InternalError, "eigenvalue multiplicity exceeds the degree");
                v.m[kk] = static_cast<int64_t>(mk);
                check += mk;
            }
            if (check != T.degrees[c2]) fail(ErrorCode::InternalError, "multiplicities do not sum to the degree");
            // reconstruction check mod ell
            uint64_t rec = 0;
            for (uint32_t kk = 0; kk < e; ++kk) rec = M.add(rec, M.mul(static_cast<uint64_t>(v.m[kk]), zpow[kk]));
            if (rec != chi_mod[c2][k]) fail(ErrorCode::InternalError, "cyclotomic lift mismatch");
            T.values[c2][k] = std::move(v);
        }
    }

    // exact orthogonality
    for (uint32_t a = 0; a < r; ++a)
        for (uint32_t b = a; b < r; ++b) {
            CycInt s = CycInt::integer(static_cast<uint32_t>(e), 0);
            for (uint32_t k = 0; k < r; ++k) {
                CycInt term = T.values[a][k] * T.values[b][T.classes.inverse_class[k]];
                s = s + term * static_cast<int64_t>(T.classes.sizes[k]);
            }
            if (!cyc_equals_integer(s, a == b ? static_cast<int64_t>(g.size()) : 0))
                fail(ErrorCode::InternalError, "row orthogonality failed");
        }
    for (uint32_t k1 = 0; k1 < r; ++k1)
        for (uint32_t k2 = k1; k2 < r; ++k2) {
            CycInt s = CycInt::integer(static_cast<uint32_t>(e), 0);
            for (uint32_t c2 = 0; c2 < r; ++c2)
                s = s + T.values[c2][k1] * T.values[c2][k2].conj();
            int64_t expect = k1 == k2 ? static_cast<int64_t>(g.size() / T.classes.sizes[k1]) : 0;
            if (!cyc_equals_integer(s, expect)) fail(ErrorCode::InternalError, "column orthogonality failed");
        }
    return T;
}

int fs_indicator(const CharTable& t, uint32_t chi) {
    CycInt s = CycInt::integer(t.values[chi][0].level, 0);
    for (uint32_t k = 0; k < t.classes.num(); ++k)
        s = s + t.values[chi][t.square_class_map[k]] * static_cast<int64_t>(t.classes.sizes[k]);
    for (int eps : {1, -1, 0})
        if (cyc_equals_integer(s, eps * static_cast<int64_t>(t.order))) return eps;
    fail(ErrorCode::InternalError, "Frobenius-Schur sum is not -1, 0, or 1 times the order");
}

int twisted_indicator(const FinGroup& g, const CharTable& t, const FqMatrix& s, uint32_t chi) {
    if (!(s * s).is_identity()) fail(ErrorCode::InvalidConfig, "twisting element must be an involution");
    FqMatrix sinv = s.inverse();
    CycInt acc = CycInt::integer(t.values[chi][0].level, 0);
    for (uint32_t i = 0; i < g.size(); ++i) {
        FqMatrix gi = g.elems[i];
        FqMatrix prod = gi * (s * gi * sinv);
        uint32_t idx = g.find(prod);
        if (idx == UINT32_MAX) fail(ErrorCode::InvalidConfig, "twist does not normalize the group");
        acc = acc + t.values[chi][t.classes.class_of[idx]];
    }
    for (int eps : {1, -1, 0})
        if (cyc_equals_integer(acc, eps * static_cast<int64_t>(t.order))) return eps;
    fail(ErrorCode::InternalError, "twisted indicator is not -1, 0, or 1");
}

CycInt inner_product_times_order(const CharTable& t, const std::vector<CycInt>& a, const std::vector<CycInt>& b) {
    CycInt s = CycInt::integer(a[0].level, 0);
    for (uint32_t k = 0; k < t.classes.num(); ++k)
        s = s + a[k] * b[t.classes.inverse_class[k]] * static_cast<int64_t>(t.classes.sizes[k]);
    return s;
}

bool lift_check(const FinGroup& h, const CharTable& th, const FinGroup& quot, const CharTable& tq) {
    uint32_t lcm_level = std::lcm(th.exponent, tq.exponent);
    for (uint32_t w = 0; w < tq.num_chars(); ++w) {
        // inflate: psi(x) = omega(xZ); identify psi among Irr(h) by values
        std::vector<CycInt> psi(th.classes.num());
        for (uint32_t k = 0; k < th.classes.num(); ++k) {
            uint32_t qi = quot.find(h.elems[th.classes.reps[k]]);
            if (qi == UINT32_MAX) return false;
            psi[k] = tq.values[w][tq.classes.class_of[qi]];
        }
        int found = -1;
        for (uint32_t c = 0; c < th.num_chars(); ++c) {
            bool same = true;
            for (uint32_t k = 0; k < th.classes.num() && same; ++k) {
                CycInt a = th.values[c][k].raised(lcm_level);
                CycInt b = psi[k].raised(lcm_level);
                if (!(a == b)) same = false;
            }
            if (same) {
                found = static_cast<int>(c);
                break;
            }
        }
        if (found < 0) return false;
        if (fs_indicator(th, static_cast<uint32_t>(found)) != fs_indicator(tq, w)) return false;
    }
    return true;
}

} // namespace ortho

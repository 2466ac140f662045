#include "orthoreal/ogroup.hpp"

#include <algorithm>
#include <deque>

namespace ortho {

const char* to_string(Group g) {
    switch (g) {
        case Group::O: return "O";
        case Group::SO: return "SO";
        case Group::K: return "K";
        case Group::T: return "T";
        case Group::Omega: return "Omega";
        case Group::POmega: return "POmega";
    }
    return "?";
}

Group group_from_string(const std::string& s) {
    if (s == "o" || s == "O") return Group::O;
    if (s == "so" || s == "SO") return Group::SO;
    if (s == "k" || s == "K") return Group::K;
    if (s == "t" || s == "T") return Group::T;
    if (s == "omega" || s == "Omega") return Group::Omega;
    if (s == "pomega" || s == "POmega") return Group::POmega;
    fail(ErrorCode::InvalidConfig, "unknown group tag: " + s);
}

FqMatrix reflection(const QuadSpace& S, const Vec& v) {
    const Field& F = S.field();
    uint64_t qv = S.qv(v);
    if (qv == 0) fail(ErrorCode::InvalidConfig, "reflection vector must be anisotropic");
    uint32_t n = S.dim();
    FqMatrix r = FqMatrix::identity(F, n);
    uint64_t iq = F.inv(qv);
    // odd q: r(x) = x - 2 B(x,v)/Q(v) v ; char 2: r(x) = x + B(x,v)/Q(v) v
    uint64_t scale = F.char_two() ? F.one() : F.of_int(2);
    for (uint32_t j = 0; j < n; ++j) {
        Vec e(n, 0);
        e[j] = F.one();
        uint64_t c = F.mul(F.mul(scale, S.b(e, v)), iq);
        if (!c) continue;
        for (uint32_t i = 0; i < n; ++i) r.at(i, j) = F.sub(r.at(i, j), F.mul(c, v[i]));
    }
    return r;
}

std::vector<FqMatrix> reflection_generators(const QuadSpace& S) {
    const Field& F = S.field();
    uint32_t n = S.dim();
    uint64_t total = 1;
    for (uint32_t i = 0; i < n; ++i) {
        if (total > (1ULL << 40) / F.q()) fail(ErrorCode::GroupTooLarge, "too many vectors to enumerate reflections");
        total *= F.q();
    }
    std::vector<FqMatrix> out;
    for (uint64_t code = 1; code < total; ++code) {
        Vec v(n, 0);
        uint64_t t = code;
        for (uint32_t i = 0; i < n; ++i) {
            v[i] = t % F.q();
            t /= F.q();
        }
        // projective representative: first nonzero coordinate = 1
        uint32_t lead = 0;
        while (lead < n && v[lead] == 0) ++lead;
        if (v[lead] != F.one()) continue;
        if (S.qv(v) == 0) continue;
        out.push_back(reflection(S, v));
    }
    return out;
}

std::vector<Vec> reflection_factorization(const QuadSpace& S, const FqMatrix& g) {
    const Field& F = S.field();
    if (F.char_two()) fail(ErrorCode::SpinorNormCharTwo, "reflection factorization is the odd-q path");
    uint32_t n = S.dim();
    if (!S.is_isometry(g)) fail(ErrorCode::SpaceMismatch, "not an isometry");

    std::vector<Vec> refl;
    // work on a shrinking subspace: rows of basis span the current space
    FqMatrix basis = FqMatrix::identity(F, n);
    FqMatrix cur = g;

    auto apply_reflection = [&](const Vec& w) {
        refl.push_back(w);
        cur = reflection(S, w) * cur;
    };

    for (uint32_t depth = 0; depth < n; ++depth) {
        uint32_t d = basis.rows();
        if (d == 0) break;
        // restricted action must fix the complement already; test identity on the subspace
        bool is_id = true;
        for (uint32_t i = 0; i < d && is_id; ++i) {
            Vec bv = basis.row(i);
            if (!(cur * bv == bv)) is_id = false;
        }
        if (is_id) break;

        // find an anisotropic vector v in the current subspace with cur(v) != v,
        // searched over subspace coefficient vectors in counter order
        uint64_t total = 1;
        for (uint32_t i = 0; i < d; ++i) total *= F.q();
        Vec v;
        for (uint64_t code = 1; code < total; ++code) {
            Vec c(d, 0);
            uint64_t t = code;
            for (uint32_t i = 0; i < d; ++i) {
                c[i] = t % F.q();
                t /= F.q();
            }
            Vec cand(n, 0);
            for (uint32_t i = 0; i < d; ++i)
                if (c[i]) cand = vec_add(F, cand, vec_scale(F, basis.row(i), c[i]));
            if (S.qv(cand) == 0) continue;
            if (cur * cand == cand) continue;
            v = cand;
            break;
        }
        if (v.empty()) fail(ErrorCode::InternalError, "no moved anisotropic vector, but action is not identity");

        Vec gv = cur * v;
        Vec diff = vec_add(F, gv, vec_scale(F, v, F.neg(F.one())));
        if (S.qv(diff) != 0) {
            apply_reflection(diff); // r_(gv-v) maps gv to v
        } else {
            Vec sum = vec_add(F, gv, v); // Q(gv+v) = 4Q(v) != 0 here
            apply_reflection(sum);       // maps gv to -v
            apply_reflection(v);         // maps -v to v
        }
        // shrink to the orthogonal complement of v inside the current subspace
        FqMatrix sys(F, 1, d);
        for (uint32_t i = 0; i < d; ++i) sys.at(0, i) = S.b(basis.row(i), v);
        auto ker = sys.kernel(); // coefficient vectors
        FqMatrix nb(F, static_cast<uint32_t>(ker.size()), n);
        for (uint32_t r = 0; r < ker.size(); ++r) {
            Vec nv(n, 0);
            for (uint32_t i = 0; i < d; ++i)
                if (ker[r][i]) nv = vec_add(F, nv, vec_scale(F, basis.row(i), ker[r][i]));
            nb.set_row(r, nv);
        }
        basis = nb;
    }
    if (!cur.is_identity()) fail(ErrorCode::InternalError, "reflection factorization did not terminate");
    // determinant cross-check: (-1)^m = det g
    uint64_t expect = refl.size() % 2 == 0 ? F.one() : F.neg(F.one());
    if (expect != g.det()) fail(ErrorCode::InternalError, "factorization parity mismatch");
    return refl;
}

SquareClass spinor_norm(const QuadSpace& S, const FqMatrix& g) {
    if (S.field().char_two())
        fail(ErrorCode::SpinorNormCharTwo, "Omega membership in char 2 uses rank parity");
    SquareClass t = SquareClass::Trivial;
    for (const Vec& v : reflection_factorization(S, g)) t = t * S.field().square_class(S.qv(v));
    return t;
}

bool member(const QuadSpace& S, const FqMatrix& g, Group G) {
    const Field& F = S.field();
    if (!S.is_isometry(g)) fail(ErrorCode::SpaceMismatch, "not an isometry of this space");
    if (F.char_two()) {
        switch (G) {
            case Group::O: return true;
            case Group::SO: return true; // det = 1 throughout char 2
            case Group::Omega:
            case Group::POmega: {
                FqMatrix gp = g + FqMatrix::identity(F, S.dim());
                return gp.rank() % 2 == 0;
            }
            default: fail(ErrorCode::SpinorNormCharTwo, "K and T need the odd-q spinor norm");
        }
    }
    uint64_t one = F.one();
    switch (G) {
        case Group::O: return true;
        case Group::SO: return g.det() == one;
        case Group::K: return spinor_norm(S, g) == SquareClass::Trivial;
        case Group::T: {
            bool so = g.det() == one;
            bool k = spinor_norm(S, g) == SquareClass::Trivial;
            return so == k; // ker(theta x det)
        }
        case Group::Omega:
        case Group::POmega:
            return g.det() == one && spinor_norm(S, g) == SquareClass::Trivial;
    }
    return false;
}

uint64_t group_order(const QuadSpace& S, Group G) {
    const Field& F = S.field();
    uint64_t q = F.q();
    uint32_t n = S.dim();
    int eps = S.form_type() == FormType::Split ? +1 : -1;
    uint64_t o;
    if (n % 2 == 0) {
        uint64_t m = n / 2;
        o = 2;
        for (uint64_t i = 0; i < m * (m - 1); ++i) o *= q;
        uint64_t qm = 1;
        for (uint64_t i = 0; i < m; ++i) qm *= q;
        o *= (eps > 0) ? qm - 1 : qm + 1;
        for (uint64_t i = 1; i < m; ++i) {
            uint64_t q2 = 1;
            for (uint64_t j = 0; j < 2 * i; ++j) q2 *= q;
            o *= q2 - 1;
        }
    } else {
        uint64_t m = (n - 1) / 2;
        o = 2;
        for (uint64_t i = 0; i < m * m; ++i) o *= q;
        for (uint64_t i = 1; i <= m; ++i) {
            uint64_t q2 = 1;
            for (uint64_t j = 0; j < 2 * i; ++j) q2 *= q;
            o *= q2 - 1;
        }
    }
    if (F.char_two()) {
        switch (G) {
            case Group::O:
            case Group::SO: return o;
            case Group::Omega: return o / 2;
            case Group::POmega: return o / 2; // center trivial in the non-defective even case
            default: fail(ErrorCode::SpinorNormCharTwo, "K and T are odd-q subgroups");
        }
    }
    switch (G) {
        case Group::O: return o;
        case Group::SO:
        case Group::K:
        case Group::T: return o / 2;
        case Group::Omega: return o / 4;
        case Group::POmega: {
            // -I lies in Omega iff 4 | q^m - eps (n = 2m even); odd n never
            if (n % 2 != 0) return o / 4;
            uint64_t qm = 1;
            for (uint32_t i = 0; i < n / 2; ++i) qm *= q;
            uint64_t t = eps > 0 ? qm - 1 : qm + 1;
            return t % 4 == 0 ? o / 8 : o / 4;
        }
    }
    return 0;
}

EnumeratedGroup closure(const QuadSpace& S, const std::vector<FqMatrix>& gens, uint64_t cap) {
    const Field& F = S.field();
    EnumeratedGroup g;
    g.space = &S;
    FqMatrix id = FqMatrix::identity(F, S.dim());
    g.elems.push_back(id);
    g.index.emplace(id.canonical_bytes(), 0);
    std::deque<uint32_t> frontier{0};
    while (!frontier.empty()) {
        uint32_t i = frontier.front();
        frontier.pop_front();
        FqMatrix cur = g.elems[i];
        for (const FqMatrix& s : gens) {
            FqMatrix nxt = cur * s;
            std::string key = nxt.canonical_bytes();
            if (g.index.count(key)) continue;
            if (g.elems.size() >= cap)
                fail(ErrorCode::GroupTooLarge, "closure exceeded cap " + std::to_string(cap));
            uint32_t idx = static_cast<uint32_t>(g.elems.size());
            g.elems.push_back(std::move(nxt));
            g.index.emplace(std::move(key), idx);
            frontier.push_back(idx);
        }
    }
    return g;
}

EnumeratedGroup enumerate_group(const QuadSpace& S, Group G, uint64_t cap) {
    const Field& F = S.field();
    uint64_t order = group_order(S, G);
    if (order > cap)
        fail(ErrorCode::GroupTooLarge, "group order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
    uint64_t oorder = group_order(S, Group::O);
    EnumeratedGroup full = closure(S, reflection_generators(S), oorder);
    if (full.size() != oorder) {
        // char-2 exception where rank-1 involutions generate a proper subgroup:
        // brute-force the full isometry group (only hit at tiny sizes)
        uint64_t nn = static_cast<uint64_t>(S.dim()) * S.dim();
        if (F.q() == 2 && nn <= 24) {
            std::vector<FqMatrix> all;
            for (uint64_t code = 0; code < (1ULL << nn); ++code) {
                FqMatrix m(F, S.dim(), S.dim());
                for (uint64_t b = 0; b < nn; ++b)
                    if (code & (1ULL << b)) m.at(static_cast<uint32_t>(b / S.dim()), static_cast<uint32_t>(b % S.dim())) = 1;
                if (S.is_isometry(m)) all.push_back(m);
            }
            full = EnumeratedGroup{};
            full.space = &S;
            // keep identity first
            std::sort(all.begin(), all.end(), [](const FqMatrix& a, const FqMatrix& b) { return a.lex_less(b); });
            for (auto& m : all) {
                if (m.is_identity()) {
                    full.elems.insert(full.elems.begin(), m);
                } else {
                    full.elems.push_back(std::move(m));
                }
            }
            full.index.clear();
            for (uint32_t i = 0; i < full.elems.size(); ++i) full.index.emplace(full.elems[i].canonical_bytes(), i);
        }
        if (full.size() != oorder)
            fail(ErrorCode::InternalError, "enumerated |O| " + std::to_string(full.size()) + " != closed form " +
                                               std::to_string(oorder));
    }
    if (G == Group::O) return full;
    EnumeratedGroup sub;
    sub.space = &S;
    for (const auto& m : full.elems) {
        if (!member(S, m, G)) continue;
        uint32_t idx = static_cast<uint32_t>(sub.elems.size());
        sub.index.emplace(m.canonical_bytes(), idx);
        sub.elems.push_back(m);
    }
    if (sub.size() != order)
        fail(ErrorCode::InternalError, "subgroup size " + std::to_string(sub.size()) + " != closed form " +
                                           std::to_string(order));
    return sub;
}

std::vector<FqMatrix> small_generating_set(const EnumeratedGroup& g) {
    const QuadSpace& S = *g.space;
    std::vector<FqMatrix> gens;
    uint64_t have = 1;
    for (const auto& m : g.elems) {
        if (m.is_identity()) continue;
        gens.push_back(m);
        EnumeratedGroup c = closure(S, gens, g.size() + 8);
        if (c.size() == have) {
            gens.pop_back(); // no progress
            continue;
        }
        have = c.size();
        if (have == g.size()) return gens;
    }
    if (g.size() == 1) return gens;
    fail(ErrorCode::InternalError, "generating set search failed");
}

} // namespace ortho

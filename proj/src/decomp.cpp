#include "orthoreal/decomp.hpp"

#include <set>

#include <algorithm>
#include <map>

namespace ortho {

const char* to_string(BlockType t) {
    switch (t) {
        case BlockType::T1minus: return "1-";
        case BlockType::T1plus: return "1+";
        case BlockType::T2minus: return "2-";
        case BlockType::T2plus: return "2+";
        case BlockType::T2star: return "2*";
        case BlockType::T3: return "3";
        case BlockType::C2cyclic: return "cyclic";
        case BlockType::C2bicyclic: return "bicyclic";
    }
    return "?";
}

namespace {

// component workspace: a g-invariant nondegenerate subspace with the small
// Gram (and char-2 Q values) cached in component coordinates
struct Comp {
    const QuadSpace* S;
    ModSpace ms;       // basis rows ambient, act in comp coords
    FqMatrix gram;     // d x d: B(b_i, b_j)
    std::vector<uint64_t> qvals; // char 2: Q(b_i)

    const Field& F() const { return ms.basis.field(); }
    uint32_t dim() const { return ms.dim(); }

    void refresh() {
        const Field& f = F();
        uint32_t d = dim();
        gram = FqMatrix(f, d, d);
        for (uint32_t i = 0; i < d; ++i)
            for (uint32_t j = 0; j < d; ++j) gram.at(i, j) = S->b(ms.basis.row(i), ms.basis.row(j));
        if (S->char_two()) {
            qvals.assign(d, 0);
            for (uint32_t i = 0; i < d; ++i) qvals[i] = S->qv(ms.basis.row(i));
        }
    }

    uint64_t b(const Vec& x, const Vec& y) const {
        const Field& f = F();
        uint64_t s = 0;
        for (uint32_t i = 0; i < dim(); ++i) {
            if (!x[i]) continue;
            uint64_t row = 0;
            for (uint32_t j = 0; j < dim(); ++j)
                if (y[j] && gram.at(i, j)) row = f.add(row, f.mul(gram.at(i, j), y[j]));
            s = f.add(s, f.mul(x[i], row));
        }
        return s;
    }
};

// Gram determinant of a list of comp-coordinate vectors
bool nondegenerate_set(const Comp& c, const std::vector<Vec>& vs) {
    const Field& F = c.F();
    uint32_t d = static_cast<uint32_t>(vs.size());
    FqMatrix g(F, d, d);
    for (uint32_t i = 0; i < d; ++i)
        for (uint32_t j = 0; j < d; ++j) g.at(i, j) = c.b(vs[i], vs[j]);
    return g.det() != 0;
}

bool totally_isotropic_set(const Comp& c, const std::vector<Vec>& vs) {
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i; j < vs.size(); ++j)
            if (c.b(vs[i], vs[j]) != 0) return false;
    return true;
}

std::vector<Vec> rows_of(const FqMatrix& m) {
    std::vector<Vec> r;
    for (uint32_t i = 0; i < m.rows(); ++i) r.push_back(m.row(i));
    return r;
}

// deterministic candidate enumeration in counter order over comp coordinates
struct CandidateIter {
    const Field* F;
    uint32_t d;
    uint64_t code = 0;
    uint64_t limit;
    CandidateIter(const Field& f, uint32_t dim, uint64_t cap) : F(&f), d(dim) {
        uint64_t total = 1;
        bool of = false;
        for (uint32_t i = 0; i < d; ++i) {
            if (total > cap / f.q()) {
                of = true;
                break;
            }
            total *= f.q();
        }
        limit = of ? cap : total;
    }
    bool next(Vec& v) {
        if (++code >= limit) return false;
        v.assign(d, 0);
        uint64_t t = code;
        for (uint32_t i = 0; i < d; ++i) {
            v[i] = t % F->q();
            t /= F->q();
        }
        return true;
    }
};

constexpr uint64_t kSearchBudget = 4'000'000;

struct RawBlock {
    std::vector<Vec> ambient_rows;
    BlockType type;
    std::vector<std::pair<FqPoly, int>> divisors;
    bool paired;
};

// split off the orthogonal complement of the chosen block inside the component
Comp complement_of(const Comp& c, const std::vector<Vec>& block_coeffs) {
    const Field& F = c.F();
    FqMatrix sys(F, static_cast<uint32_t>(block_coeffs.size()), c.dim());
    for (uint32_t i = 0; i < block_coeffs.size(); ++i) {
        for (uint32_t j = 0; j < c.dim(); ++j) sys.at(i, j) = c.b(block_coeffs[i], [&] {
            Vec e(c.dim(), 0);
            e[j] = F.one();
            return e;
        }());
    }
    auto ker = sys.kernel();
    FqMatrix coeff(F, static_cast<uint32_t>(ker.size()), c.dim());
    for (uint32_t i = 0; i < ker.size(); ++i) coeff.set_row(i, ker[i]);
    Comp out{c.S, c.ms.sub_from_coeff(coeff), FqMatrix(), {}};
    out.refresh();
    return out;
}

// self-dual primary component: extract cyclic and paired blocks greedily
void handle_selfdual(Comp comp, const FqPoly& f, bool unipotent_pm, std::vector<RawBlock>& out) {
    const Field& F = comp.F();
    bool char2 = F.char_two();
    while (comp.dim() > 0) {
        // height filtration of N = f(act): emax = least j with N^j = 0
        FqMatrix N = poly_at(f, comp.ms.act);
        std::vector<FqMatrix> npow{FqMatrix::identity(F, comp.dim())};
        while (npow.size() <= comp.dim() + 1) {
            FqMatrix nxt = npow.back() * N;
            bool zero = true;
            for (uint32_t i = 0; i < nxt.rows() && zero; ++i)
                for (uint32_t j = 0; j < nxt.cols(); ++j)
                    if (nxt.at(i, j)) {
                        zero = false;
                        break;
                    }
            npow.push_back(nxt);
            if (zero) break;
        }
        int emax = static_cast<int>(npow.size()) - 1;
        bool top_zero = true;
        for (uint32_t i = 0; i < npow.back().rows() && top_zero; ++i)
            for (uint32_t j = 0; j < npow.back().cols(); ++j)
                if (npow.back().at(i, j)) top_zero = false;
        if (!top_zero) fail(ErrorCode::DecompositionFailure, "component action is not f-primary");
        const FqMatrix& ntop = npow[emax - 1];
        auto has_height = [&](const Vec& v) { return !vec_is_zero(ntop * v); };

        bool cyclic_legal;
        if (!unipotent_pm)
            cyclic_legal = true;
        else if (char2)
            cyclic_legal = emax % 2 == 0;
        else
            cyclic_legal = emax % 2 == 1;

        bool emitted = false;
        if (cyclic_legal) {
            CandidateIter it(F, comp.dim(), kSearchBudget);
            Vec v;
            while (it.next(v)) {
                if (!has_height(v)) continue;
                auto [cyc, mu] = spin(comp.ms.act, v);
                auto cvs = rows_of(cyc);
                if (!nondegenerate_set(comp, cvs)) continue;
                int e = mu.degree() / f.degree();
                RawBlock rb;
                for (const auto& cv : cvs) rb.ambient_rows.push_back(comp.ms.to_ambient(cv));
                rb.paired = false;
                rb.divisors = {{f, e}};
                if (char2)
                    rb.type = BlockType::C2cyclic;
                else if (unipotent_pm)
                    rb.type = f == FqPoly::linear(F, F.one()) ? BlockType::T2minus : BlockType::T2plus;
                else
                    rb.type = BlockType::T2star;
                out.push_back(std::move(rb));
                Comp rest = complement_of(comp, cvs);
                comp = std::move(rest);
                emitted = true;
                break;
            }
            if (!emitted && !unipotent_pm)
                fail(ErrorCode::DecompositionFailure, "no nondegenerate cyclic vector for a self-dual component");
            if (!emitted && !char2 && unipotent_pm)
                fail(ErrorCode::DecompositionFailure, "odd-height unipotent component without cyclic block");
        }
        if (emitted) continue;

        // paired (bicyclic) extraction: two cyclic summands of equal height
        // with nondegenerate union.  Odd q: summands must be totally isotropic
        // (type-1 blocks).  Char 2: isotropic pairs are preferred but need not
        // exist when the exponent is odd, so a second pass drops the demand.
        bool done = false;
        for (int pass = 0; pass < (char2 ? 2 : 1) && !done; ++pass) {
        bool need_isotropy = pass == 0;
        CandidateIter vit(F, comp.dim(), kSearchBudget);
        Vec v;
        uint64_t w_budget = 300'000;
        while (!done && vit.next(v)) {
            if (!has_height(v)) continue;
            auto [cycv, muv] = spin(comp.ms.act, v);
            if (muv.degree() != emax * f.degree()) continue;
            auto uvs = rows_of(cycv);
            if (need_isotropy && !totally_isotropic_set(comp, uvs)) continue;
            // quick pairing precheck: phi = Gram * (ntop v) must be nonzero
            Vec vtop = ntop * v;
            Vec phi(comp.dim(), 0);
            for (uint32_t j = 0; j < comp.dim(); ++j) {
                Vec e(comp.dim(), 0);
                e[j] = F.one();
                phi[j] = comp.b(vtop, e);
            }
            if (vec_is_zero(phi)) continue;
            CandidateIter wit(F, comp.dim(), w_budget);
            Vec w;
            while (wit.next(w)) {
                if (!has_height(w)) continue;
                // necessary: the top of C_v pairs with C_w
                uint64_t pair_hit = 0;
                Vec cw = w;
                auto [cycw, muw] = spin(comp.ms.act, w);
                if (muw.degree() != emax * f.degree()) continue;
                auto wvs = rows_of(cycw);
                for (const auto& wv : wvs) pair_hit |= vec_dot(F, phi, wv);
                if (!pair_hit) continue;
                if (need_isotropy && !totally_isotropic_set(comp, wvs)) continue;
                // union must be direct and nondegenerate
                std::vector<Vec> all = uvs;
                all.insert(all.end(), wvs.begin(), wvs.end());
                FqMatrix um(F, static_cast<uint32_t>(all.size()), comp.dim());
                for (uint32_t i = 0; i < all.size(); ++i) um.set_row(i, all[i]);
                if (um.rank() != all.size()) continue;
                if (!nondegenerate_set(comp, all)) continue;
                RawBlock rb;
                for (const auto& x : all) rb.ambient_rows.push_back(comp.ms.to_ambient(x));
                rb.paired = true;
                rb.divisors = {{f, emax}, {f, emax}};
                if (char2)
                    rb.type = BlockType::C2bicyclic;
                else
                    rb.type = f == FqPoly::linear(F, F.one()) ? BlockType::T1minus : BlockType::T1plus;
                out.push_back(std::move(rb));
                Comp rest = complement_of(comp, all);
                comp = std::move(rest);
                done = true;
                break;
            }
        }
        }
        if (!done) fail(ErrorCode::DecompositionFailure, "no bicyclic pair found for component");
    }
}

// dual pair f != f*: type-3 blocks via the dual cyclic decomposition
void handle_pair(const Comp& whole, const FqMatrix& vf_coeff, const FqMatrix& vfs_coeff, const FqPoly& f,
                 const FqPoly& fstar, std::vector<RawBlock>& out) {
    const Field& F = whole.F();
    ModSpace mf = whole.ms.sub_from_coeff(vf_coeff);
    ModSpace mfs = whole.ms.sub_from_coeff(vfs_coeff);
    auto pieces = cyclic_decomposition(mf.act);
    // ambient bases of the U_i
    std::vector<std::vector<Vec>> ubases;
    for (const auto& p : pieces) {
        std::vector<Vec> rows;
        for (uint32_t i = 0; i < p.basis.rows(); ++i) {
            Vec amb(whole.ms.basis.cols(), 0);
            Vec inmf = p.basis.row(i); // coords in mf
            for (uint32_t k = 0; k < mf.basis.rows(); ++k)
                if (inmf[k]) amb = vec_add(F, amb, vec_scale(F, mf.basis.row(k), inmf[k]));
            rows.push_back(amb);
        }
        ubases.push_back(std::move(rows));
    }
    const QuadSpace& S = *whole.S;
    for (size_t i = 0; i < pieces.size(); ++i) {
        // W_i = vectors of V_f* orthogonal to all U_k, k != i
        std::vector<Vec> conds;
        for (size_t k = 0; k < pieces.size(); ++k) {
            if (k == i) continue;
            for (const auto& u : ubases[k]) conds.push_back(u);
        }
        FqMatrix sys(F, static_cast<uint32_t>(conds.size()), mfs.basis.rows());
        for (uint32_t r = 0; r < conds.size(); ++r)
            for (uint32_t j = 0; j < mfs.basis.rows(); ++j) sys.at(r, j) = S.b(conds[r], mfs.basis.row(j));
        std::vector<Vec> wcoeffs;
        if (conds.empty()) {
            for (uint32_t j = 0; j < mfs.basis.rows(); ++j) {
                Vec e(mfs.basis.rows(), 0);
                e[j] = F.one();
                wcoeffs.push_back(e);
            }
        } else {
            wcoeffs = sys.kernel();
        }
        if (wcoeffs.size() != ubases[i].size())
            fail(ErrorCode::DecompositionFailure, "dual summand dimension mismatch");
        RawBlock rb;
        for (const auto& u : ubases[i]) rb.ambient_rows.push_back(u);
        for (const auto& wc : wcoeffs) {
            Vec amb(whole.ms.basis.cols(), 0);
            for (uint32_t k = 0; k < mfs.basis.rows(); ++k)
                if (wc[k]) amb = vec_add(F, amb, vec_scale(F, mfs.basis.row(k), wc[k]));
            rb.ambient_rows.push_back(amb);
        }
        int e = pieces[i].order.degree() / f.degree();
        rb.paired = true;
        rb.type = BlockType::T3;
        rb.divisors = {{f, e}, {fstar, e}};
        out.push_back(std::move(rb));
    }
}

} // namespace

Decomposition decompose(const QuadSpace& S, const FqMatrix& g) {
    const Field& F = S.field();
    if (!S.is_isometry(g)) fail(ErrorCode::SpaceMismatch, "decompose needs an isometry");
    uint32_t n = S.dim();

    FqPoly mp = minimal_polynomial(g);
    auto factors = factorize(mp);
    // group into self-dual components and dual pairs
    struct Item {
        FqPoly f, fstar;
        int emax_f, emax_fstar;
        bool selfdual;
    };
    std::vector<Item> items;
    std::map<std::string, int> emax_of;
    for (const auto& [f, e] : factors) emax_of[f.str()] = e;
    std::vector<std::string> used;
    for (const auto& [f, e] : factors) {
        if (std::count(used.begin(), used.end(), f.str())) continue;
        FqPoly fs = reciprocal(f);
        if (fs == f) {
            items.push_back({f, fs, e, e, true});
            used.push_back(f.str());
        } else {
            if (!emax_of.count(fs.str()))
                fail(ErrorCode::DecompositionFailure, "reciprocal factor missing for " + f.str());
            items.push_back({f, fs, e, emax_of[fs.str()], false});
            used.push_back(f.str());
            used.push_back(fs.str());
        }
    }
    // processing order: (deg f, coefficient tuple, e) descending
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        const FqPoly& ka = a.f < a.fstar ? a.fstar : a.f;
        const FqPoly& kb = b.f < b.fstar ? b.fstar : b.f;
        if (!(ka == kb)) return kb < ka;
        return a.emax_f > b.emax_f;
    });

    std::vector<RawBlock> raw;
    for (const auto& it : items) {
        if (it.selfdual) {
            FqMatrix coeff = primary_component(g, it.f, it.emax_f);
            Comp comp{&S, ModSpace::ambient(g).sub_from_coeff(coeff), FqMatrix(), {}};
            comp.refresh();
            bool unip = it.f.degree() == 1; // t -+ 1 are the only self-dual linears for isometries
            handle_selfdual(std::move(comp), it.f, unip, raw);
        } else {
            FqMatrix cf = primary_component(g, it.f, it.emax_f);
            FqMatrix cfs = primary_component(g, it.fstar, it.emax_fstar);
            // the pair component spans both; work relative to the ambient space
            Comp whole{&S, ModSpace::ambient(g), FqMatrix(), {}};
            whole.refresh();
            handle_pair(whole, cf, cfs, it.f, it.fstar, raw);
        }
    }

    // assemble typed blocks with restricted data
    Decomposition dec;
    dec.g = g;
    for (const auto& rb : raw) {
        Block b;
        b.basis = rb.ambient_rows;
        b.type = rb.type;
        b.divisors = rb.divisors;
        b.paired = rb.paired;
        b.restricted = S.restrict_to(rb.ambient_rows);
        uint32_t d = static_cast<uint32_t>(rb.ambient_rows.size());
        FqMatrix bas(F, d, n);
        for (uint32_t i = 0; i < d; ++i) bas.set_row(i, rb.ambient_rows[i]);
        FqMatrix sys = bas.transpose();
        FqMatrix act(F, d, d);
        for (uint32_t i = 0; i < d; ++i) {
            auto sol = sys.solve(g * rb.ambient_rows[i]);
            if (!sol) fail(ErrorCode::DecompositionFailure, "block not g-invariant");
            for (uint32_t k = 0; k < d; ++k) act.at(k, i) = (*sol)[k];
        }
        b.action = act;
        dec.blocks.push_back(std::move(b));
    }

    // global invariants: orthogonality, dimension, divisor multisets, legality
    uint32_t dims = 0;
    for (const auto& b : dec.blocks) dims += static_cast<uint32_t>(b.basis.size());
    if (dims != n) fail(ErrorCode::DecompositionFailure, "block dimensions do not sum to n");
    for (size_t i = 0; i < dec.blocks.size(); ++i)
        for (size_t j = i + 1; j < dec.blocks.size(); ++j)
            for (const auto& x : dec.blocks[i].basis)
                for (const auto& y : dec.blocks[j].basis)
                    if (S.b(x, y) != 0) fail(ErrorCode::DecompositionFailure, "blocks are not orthogonal");
    std::multiset<std::pair<std::string, int>> want, got;
    for (const auto& [f, e] : elementary_divisors(g)) want.insert({f.str(), e});
    for (const auto& b : dec.blocks) {
        if (!b.restricted.nondegenerate()) fail(ErrorCode::DecompositionFailure, "degenerate block form");
        std::multiset<std::pair<std::string, int>> bd;
        for (const auto& [f, e] : b.divisors) {
            got.insert({f.str(), e});
            bd.insert({f.str(), e});
        }
        std::multiset<std::pair<std::string, int>> bact;
        for (const auto& [f, e] : elementary_divisors(b.action)) bact.insert({f.str(), e});
        if (bd != bact) fail(ErrorCode::DecompositionFailure, "block divisor mismatch with restricted action");
        // type legality
        const Field& Ff = F;
        bool unip_minus = b.divisors[0].first == FqPoly::linear(Ff, Ff.one());
        switch (b.type) {
            case BlockType::T1minus:
            case BlockType::T1plus:
                if (b.divisors.size() != 2 || b.divisors[0].second % 2 != 0)
                    fail(ErrorCode::DecompositionFailure, "type 1 block must pair even exponents");
                if ((b.type == BlockType::T1minus) != unip_minus)
                    fail(ErrorCode::DecompositionFailure, "type 1 sign mismatch");
                break;
            case BlockType::T2minus:
            case BlockType::T2plus:
                if (b.divisors.size() != 1 || b.divisors[0].second % 2 != 1)
                    fail(ErrorCode::DecompositionFailure, "type 2 block must be cyclic of odd exponent");
                if ((b.type == BlockType::T2minus) != unip_minus)
                    fail(ErrorCode::DecompositionFailure, "type 2 sign mismatch");
                break;
            case BlockType::T2star:
                if (b.divisors.size() != 1 || b.divisors[0].first.degree() < 2 ||
                    !(reciprocal(b.divisors[0].first) == b.divisors[0].first))
                    fail(ErrorCode::DecompositionFailure, "type 2* block must be self-reciprocal of degree >= 2");
                break;
            case BlockType::T3:
                if (b.divisors.size() != 2 || reciprocal(b.divisors[0].first) != b.divisors[1].first ||
                    b.divisors[0].first == b.divisors[1].first)
                    fail(ErrorCode::DecompositionFailure, "type 3 block needs a dual divisor pair");
                break;
            case BlockType::C2cyclic:
                if (b.divisors.size() != 1 ||
                    (b.divisors[0].first.degree() == 1 && b.divisors[0].second % 2 != 0))
                    fail(ErrorCode::DecompositionFailure, "char-2 cyclic unipotent block needs even exponent");
                break;
            case BlockType::C2bicyclic:
                if (b.divisors.size() != 2 || b.divisors[0].first.degree() != 1)
                    fail(ErrorCode::DecompositionFailure, "char-2 bicyclic block must be unipotent");
                break;
        }
    }
    if (want != got) fail(ErrorCode::DecompositionFailure, "divisor multiset not preserved");
    return dec;
}

BlockMembership classify_block_membership(const Block& b) {
    const Field& F = b.restricted.field();
    if (F.char_two()) fail(ErrorCode::SpinorNormCharTwo, "block membership classification is the odd-q path");
    BlockMembership m{};
    m.det = b.action.det();
    m.theta = spinor_norm(b.restricted, b.action);
    bool so = m.det == F.one();
    bool k = m.theta == SquareClass::Trivial;
    m.in_so = so;
    m.in_k = k;
    m.in_t = so == k;
    m.in_omega = so && k;
    switch (b.type) {
        case BlockType::T1minus:
        case BlockType::T1plus:
        case BlockType::T2minus:
            if (!m.in_omega) fail(ErrorCode::InternalError, "type 1/2- block outside Omega");
            break;
        case BlockType::T2plus:
            if (m.det != F.neg(F.one())) fail(ErrorCode::InternalError, "type 2+ block must have det -1");
            if (m.theta != b.restricted.discriminant())
                fail(ErrorCode::InternalError, "type 2+ block theta must equal the discriminant");
            break;
        default: break;
    }
    return m;
}

SrSufficiency strongly_real_sufficient(const Decomposition& d) {
    SrSufficiency s;
    if (d.blocks.empty()) return s;
    const Field& F = d.blocks[0].restricted.field();
    if (!F.char_two()) {
        for (const auto& b : d.blocks) {
            if ((b.type == BlockType::T2star || b.type == BlockType::T3) && b.basis.size() % 4 == 2)
                s.dim2mod4_selfdual_block = true;
            if ((b.type == BlockType::T2minus || b.type == BlockType::T2plus) &&
                b.restricted.discriminant() == SquareClass::Trivial)
                s.trivial_disc_2pm_block = true;
        }
        return s;
    }
    // char 2: condition (i) counts self-dual elementary divisor labels of odd
    // exponent and degree 2 mod 4: irreducible self-reciprocal f^e with
    // deg f = 2 mod 4, and dual pairs {f^e, f*^e} with deg(f f*) = 2 mod 4
    // (the pair blocks carry the same forced coset parity as the 2* blocks;
    // counting only literal self-reciprocal divisors misclassifies elements
    // such as the 7-elements of the split 6-dim group)
    uint64_t count = 0;
    for (const auto& b : d.blocks) {
        if (b.type == BlockType::C2cyclic) {
            const auto& [f, e] = b.divisors[0];
            if (e % 2 == 1 && f.degree() % 4 == 2 && reciprocal(f) == f) ++count;
        } else if (b.type == BlockType::T3) {
            const auto& [f, e] = b.divisors[0];
            if (e % 2 == 1 && (2 * f.degree()) % 4 == 2) ++count;
        }
    }
    s.even_count_deg2mod4 = count % 2 == 0;
    // condition (ii): a unipotent block other than bicyclic of dim 0 mod 4
    for (const auto& b : d.blocks) {
        bool unip = true;
        for (const auto& [f, e] : b.divisors)
            if (f != FqPoly::linear(F, F.one())) unip = false;
        if (!unip) continue;
        if (b.paired && b.basis.size() % 4 == 0) continue;
        s.unipotent_special_block = true;
    }
    return s;
}

} // namespace ortho

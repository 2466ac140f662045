#include "orthoreal/modspace.hpp"

namespace ortho {

ModSpace ModSpace::ambient(const FqMatrix& g) {
    return ModSpace{FqMatrix::identity(g.field(), g.rows()), g};
}

ModSpace ModSpace::sub_from_coeff(const FqMatrix& coeff_rows) const {
    uint32_t d = coeff_rows.rows();
    FqMatrix nb = coeff_rows * basis; // new rows in ambient coordinates
    // induced action (column convention): na column i solves U x = act u_i
    // where U has the new basis coefficient vectors as columns
    FqMatrix sys = coeff_rows.transpose();
    FqMatrix na(basis.field(), d, d);
    for (uint32_t i = 0; i < d; ++i) {
        auto sol = sys.solve(act * coeff_rows.row(i));
        if (!sol) fail(ErrorCode::InternalError, "subspace not invariant under action");
        for (uint32_t k = 0; k < d; ++k) na.at(k, i) = (*sol)[k];
    }
    return ModSpace{nb, na};
}

Vec ModSpace::to_ambient(const Vec& coeff) const {
    const Field& F = basis.field();
    Vec r(basis.cols(), 0);
    for (uint32_t i = 0; i < basis.rows(); ++i)
        if (coeff[i]) r = vec_add(F, r, vec_scale(F, basis.row(i), coeff[i]));
    return r;
}

std::pair<FqMatrix, FqPoly> spin(const FqMatrix& act, const Vec& v) {
    const Field& F = act.field();
    uint32_t n = act.rows();
    std::vector<Vec> rows;
    std::vector<Vec> reduced;  // row-reduced copies
    std::vector<Vec> expr;     // expression of reduced rows in chain coordinates
    Vec cur = v;
    for (uint32_t step = 0; step <= n; ++step) {
        Vec red = cur;
        Vec co(step + 1, 0);
        co[step] = F.one();
        for (size_t b = 0; b < reduced.size(); ++b) {
            size_t lead = 0;
            while (lead < red.size() && reduced[b][lead] == 0) ++lead;
            if (lead >= red.size() || red[lead] == 0) continue;
            uint64_t f = F.mul(red[lead], F.inv(reduced[b][lead]));
            for (size_t j = 0; j < red.size(); ++j) red[j] = F.sub(red[j], F.mul(f, reduced[b][j]));
            for (size_t j = 0; j <= b && j < co.size(); ++j) {
                // expr[b] has length b+1
                if (j < expr[b].size()) co[j] = F.sub(co[j], F.mul(f, expr[b][j]));
            }
        }
        if (vec_is_zero(red)) {
            FqPoly mu(F, std::vector<uint64_t>(co.begin(), co.end()));
            FqMatrix b(F, static_cast<uint32_t>(rows.size()), n);
            for (uint32_t i = 0; i < rows.size(); ++i) b.set_row(i, rows[i]);
            return {b, mu.monic()};
        }
        rows.push_back(cur);
        reduced.push_back(red);
        expr.push_back(co);
        cur = act * cur;
    }
    fail(ErrorCode::InternalError, "spin did not close");
}

FqPoly order_of(const FqMatrix& act, const Vec& v) { return spin(act, v).second; }

namespace {

// vector of maximal order: CRT-combine basis vectors achieving each
// prime-power part of the minimal polynomial
Vec max_order_vector(const FqMatrix& act, const FqPoly& minpoly) {
    const Field& F = act.field();
    uint32_t n = act.rows();
    Vec v(n, 0);
    for (const auto& [f, e] : factorize(minpoly)) {
        FqPoly target = f.pow(static_cast<uint64_t>(e));
        FqPoly cof = minpoly / target;
        // find a basis vector whose order is divisible by f^e
        Vec comp;
        for (uint32_t i = 0; i < n; ++i) {
            Vec ei(n, 0);
            ei[i] = F.one();
            Vec w = poly_at(cof, act) * ei;
            if (vec_is_zero(w)) continue;
            // order of w divides target; check it is exactly target
            if (order_of(act, w) == target) {
                comp = w;
                break;
            }
        }
        if (comp.empty()) {
            // combine two basis vectors; guaranteed to exist, search pairs
            for (uint32_t i = 0; i < n && comp.empty(); ++i)
                for (uint32_t j = i + 1; j < n && comp.empty(); ++j) {
                    Vec ei(n, 0), ej(n, 0);
                    ei[i] = F.one();
                    ej[j] = F.one();
                    Vec w = poly_at(cof, act) * vec_add(F, ei, ej);
                    if (!vec_is_zero(w) && order_of(act, w) == target) comp = w;
                }
        }
        if (comp.empty()) fail(ErrorCode::InternalError, "no component of maximal order found");
        v = vec_add(F, v, comp);
    }
    if (order_of(act, v) != minpoly) fail(ErrorCode::InternalError, "max order vector construction failed");
    return v;
}

} // namespace

FqMatrix invariant_complement(const FqMatrix& act, const FqMatrix& cyc_rows) {
    const Field& F = act.field();
    uint32_t n = act.rows();
    uint32_t d = cyc_rows.rows();
    // induced action on the cyclic subspace, column convention
    FqMatrix sys = cyc_rows.transpose();
    FqMatrix ca(F, d, d);
    for (uint32_t i = 0; i < d; ++i) {
        auto sol = sys.solve(act * cyc_rows.row(i));
        if (!sol) fail(ErrorCode::InternalError, "cyclic space not invariant");
        for (uint32_t k = 0; k < d; ++k) ca.at(k, i) = (*sol)[k];
    }
    // unknowns: P (d x n) with P act = ca P and P cyc_rows^T = I_d
    // build the linear system over entries of P
    uint32_t un = d * n;
    std::vector<Vec> eqs;
    std::vector<uint64_t> rhs;
    // equivariance: (P act)_{ij} - (ca P)_{ij} = 0
    for (uint32_t i = 0; i < d; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            Vec row(un, 0);
            for (uint32_t k = 0; k < n; ++k) row[i * n + k] = F.add(row[i * n + k], act.at(k, j));
            for (uint32_t k = 0; k < d; ++k) row[k * n + j] = F.sub(row[k * n + j], ca.at(i, k));
            eqs.push_back(std::move(row));
            rhs.push_back(0);
        }
    // restriction to identity: sum_k P_{ik} (cyc_rows)_{jk} = delta_ij
    for (uint32_t i = 0; i < d; ++i)
        for (uint32_t j = 0; j < d; ++j) {
            Vec row(un, 0);
            for (uint32_t k = 0; k < n; ++k) row[i * n + k] = cyc_rows.at(j, k);
            eqs.push_back(std::move(row));
            rhs.push_back(i == j ? F.one() : 0);
        }
    FqMatrix A(F, static_cast<uint32_t>(eqs.size()), un);
    for (uint32_t i = 0; i < eqs.size(); ++i) A.set_row(i, eqs[i]);
    auto sol = A.solve(rhs);
    if (!sol) fail(ErrorCode::InternalError, "no equivariant projection (complement must exist)");
    FqMatrix P(F, d, n, std::move(*sol));
    return P.kernel().empty() ? FqMatrix(F, 0, n) : [&] {
        auto ker = P.kernel();
        FqMatrix K(F, static_cast<uint32_t>(ker.size()), n);
        for (uint32_t i = 0; i < ker.size(); ++i) K.set_row(i, ker[i]);
        return K;
    }();
}

std::vector<CyclicPiece> cyclic_decomposition(const FqMatrix& act) {
    const Field& F = act.field();
    std::vector<CyclicPiece> out;
    // work in shrinking coordinates; track the embedding back to the original
    FqMatrix embed = FqMatrix::identity(F, act.rows()); // rows: current basis in original coords
    FqMatrix cur = act;
    while (embed.rows() > 0) {
        FqPoly mp = minimal_polynomial(cur);
        Vec v = max_order_vector(cur, mp);
        auto [cyc, mu] = spin(cur, v);
        CyclicPiece piece;
        piece.order = mu;
        // generator and basis in original coordinates
        piece.gen_coeff = [&] {
            Vec r(act.rows(), 0);
            for (uint32_t i = 0; i < embed.rows(); ++i)
                if (v[i]) r = vec_add(F, r, vec_scale(F, embed.row(i), v[i]));
            return r;
        }();
        piece.basis = cyc * embed;
        out.push_back(piece);
        if (cyc.rows() == embed.rows()) break; // whole space was cyclic
        FqMatrix comp = invariant_complement(cur, cyc); // coefficient rows
        // new embedding and action
        ModSpace ms{embed, cur};
        ModSpace subsp = ms.sub_from_coeff(comp);
        embed = subsp.basis;
        cur = subsp.act;
    }
    return out;
}

FqMatrix primary_component(const FqMatrix& act, const FqPoly& f, int e) {
    const Field& F = act.field();
    FqMatrix m = poly_at(f.pow(static_cast<uint64_t>(e)), act);
    auto ker = m.kernel();
    FqMatrix k(F, static_cast<uint32_t>(ker.size()), act.rows());
    for (uint32_t i = 0; i < ker.size(); ++i) k.set_row(i, ker[i]);
    return k;
}

} // namespace ortho

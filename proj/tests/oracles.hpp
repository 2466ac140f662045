// Brute-force oracles used by the test suites. Everything here recomputes
// expected values by enumeration or from closed formulas, independently of the
// library code paths under test.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "orthoreal/field.hpp"
#include "orthoreal/matrix.hpp"
#include "orthoreal/poly.hpp"

namespace oracle {

using namespace ortho;

/// Set of nonzero squares of F_q by enumerating b^2 over all b.
inline std::set<uint64_t> square_set(const Field& F) {
    std::set<uint64_t> s;
    for (uint64_t b = 1; b < F.q(); ++b) s.insert(F.mul(b, b));
    return s;
}

/// Roots of f in F (with multiplicity), by scanning all field elements and
/// peeling linear factors.
inline std::multiset<uint64_t> root_multiset(const FqPoly& f) {
    const Field& F = f.field();
    std::multiset<uint64_t> roots;
    FqPoly g = f;
    for (uint64_t a = 0; a < F.q(); ++a) {
        while (g.degree() >= 1 && g.eval(a) == 0) {
            roots.insert(a);
            g = g / FqPoly::linear(F, a);
        }
    }
    return roots;
}

/// Map the coefficients of f over F_small into F_big, where F_big contains an
/// element beta whose minimal polynomial over F_p is F_small's modulus.  The
/// embedding sends the generator x of F_small to beta.
inline FqPoly embed_poly(const FqPoly& f, const Field& small, const Field& big, uint64_t beta) {
    std::vector<uint64_t> cc(f.degree() + 1, 0);
    for (int i = 0; i <= f.degree(); ++i) {
        auto d = small.digits(f.coeff(static_cast<size_t>(i)));
        uint64_t v = 0, pw = big.one();
        for (size_t j = 0; j < d.size(); ++j) {
            v = big.add(v, big.mul(big.of_int(static_cast<int64_t>(d[j])), pw));
            pw = big.mul(pw, beta);
        }
        cc[static_cast<size_t>(i)] = v;
    }
    return FqPoly(big, std::move(cc));
}

/// Find an embedding image of F_small's generator inside F_big by scanning for
/// a root of the modulus.
inline uint64_t embedding_generator(const Field& small, const Field& big) {
    FqPoly mod(big, {});
    std::vector<uint64_t> mc(small.modulus().size());
    for (size_t i = 0; i < mc.size(); ++i) mc[i] = big.of_int(static_cast<int64_t>(small.modulus()[i]));
    FqPoly m(big, std::move(mc));
    for (uint64_t b = 0; b < big.q(); ++b)
        if (m.eval(b) == 0) return b;
    return 0; // unreachable for a valid extension
}

/// Closed-form order of the full orthogonal group; q odd or even, plus=+1/-1
/// (for odd n the sign is only a labeling).
inline uint64_t o_group_order(uint32_t n, uint64_t q, int eps) {
    if (n % 2 == 0) {
        uint64_t m = n / 2;
        uint64_t r = 2;
        for (uint64_t i = 0; i < m * (m - 1); ++i) r *= q;
        uint64_t qm = 1;
        for (uint64_t i = 0; i < m; ++i) qm *= q;
        r *= (eps > 0) ? (qm - 1) : (qm + 1);
        for (uint64_t i = 1; i < m; ++i) {
            uint64_t q2i = 1;
            for (uint64_t j = 0; j < 2 * i; ++j) q2i *= q;
            r *= (q2i - 1);
        }
        return r;
    }
    uint64_t m = (n - 1) / 2;
    uint64_t r = 2;
    for (uint64_t i = 0; i < m * m; ++i) r *= q;
    for (uint64_t i = 1; i <= m; ++i) {
        uint64_t q2i = 1;
        for (uint64_t j = 0; j < 2 * i; ++j) q2i *= q;
        r *= (q2i - 1);
    }
    return r;
}

} // namespace oracle

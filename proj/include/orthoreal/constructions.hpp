#pragma once

#include <map>

#include "orthoreal/reality.hpp"

namespace ortho {

/// An explicitly constructed space/element pair with its verified facts.
struct NamedConstruction {
    std::string name;
    QuadSpace space;
    FqMatrix matrix;
    std::map<std::string, std::string> facts; // verified statements, value "ok"/detail
};

/// The shared field objects behind constructions; constructions reference
/// fields by q, owned in a process-wide registry so returned spaces stay valid.
const Field& field_for(uint64_t q);

/// Unipotent element with divisors (t-1)^2, (t-1)^2 on the J_4 split space;
/// requires q = 3 mod 4.  Verifies: membership in Omega+(4,q); every element
/// of SO+(4,q) inverting u lies outside Omega+(4,q); no isometry squaring to
/// -I inverts u.
NamedConstruction build_u(uint64_t q, uint64_t cap = kDefaultRealityCap);

/// The block swap on the J_4 space: in SO+(4,q) minus Omega+(4,q), inverts u.
NamedConstruction build_s0(uint64_t q);

/// h = diag(u, -I_2) on diag(J_4, I_2): in Omega-(6,q), weakly real mod Z.
NamedConstruction build_h(uint64_t q, uint64_t cap = kDefaultRealityCap);

/// u_1: regular-unipotent pair with parameter 2*gamma + 1 = 0 on diag(J_3,J_3);
/// in Omega-(6,q); every inverting involution in SO-(6,q) lies in Omega-(6,q).
NamedConstruction build_u1(uint64_t q, uint64_t cap = kDefaultRealityCap);

/// h_0 = diag(u_1, -u) on diag(J_3,J_3,J_4): in Omega-(10,q), weakly real mod Z.
NamedConstruction build_h0(uint64_t q, uint64_t cap = kDefaultRealityCap);

/// eta on the hyperbolic 8-dim space with divisors (t^2+1)^2, (t^2+1)^2,
/// constructed as diag(C, C^-T); lies in Omega+(8,q), and its full isometry
/// centralizer is contained in Omega+(8,q).
NamedConstruction build_eta(uint64_t q, uint64_t cap = kDefaultRealityCap);

/// The weakly real family: m = 1 -> h, m = 2 -> h_0, then g = base + eta + ...
/// on dimension 4m+2; verifies eigenvalue disjointness and (within cap) weak
/// reality mod Z.
NamedConstruction build_weakly_real_family(uint32_t m, uint64_t q, uint64_t cap = kDefaultRealityCap);

NamedConstruction build_by_name(const std::string& name, uint64_t q, uint32_t m, uint64_t cap);

} // namespace ortho

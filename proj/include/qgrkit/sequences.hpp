#pragma once

#include <string>
#include <vector>

#include "qgrkit/module.hpp"

namespace qgrkit {

// Map between cyclic modules sending the generator of M to p times the generator of N.
ModuleMap cyclic_map(const PresentedModule& M, const PresentedModule& N, const Polynomial& p);

// A named complex of degree-0 maps, read as 0 -> M_0 -> M_1 -> ... -> M_r -> 0.
struct NamedSequence {
  std::string label;
  std::vector<ModuleMap> maps;
};

// 0 -> Q_{j+2r,j} --x1^s--> Q_{j+2r+2s,j} --> Q_{j+2r+2s,j+2r+2} -> 0, r >= 0, s > 0, r+s < 2n-1.
NamedSequence sequence_qqq(const Ring& A, int j, int r, int s);
// 0 -> Q_{j+2r-2,j} -> Q_{j+2r,j} -> chi_{j+2r} -> 0, r >= 1.
NamedSequence sequence_sur(const Ring& A, int j, int r);
// 0 -> chi_j -> Q_{j+2r,j} -> Q_{j+2r,j+2} -> 0, r >= 1.
NamedSequence sequence_inj(const Ring& A, int j, int r);
// 0 -> chi_j --x2--> (A/(x0,x1))(j+2n-1) -> chi_{j+2n-1} -> 0.
NamedSequence sequence_xqx(const Ring& A, int j);
// 0 -> A(k-3) -> A(k-1)+A(k-2) -> A(k) -> (A/(x0,x1))(k) -> 0.
NamedSequence koszul_x0x1(const Ring& A, int k);
// 0 -> A(k-2n) -> A(k-1)+A(k-2n+1) -> A(k) -> Q_{k,k-4n+4} -> 0.
NamedSequence koszul_x0x2(const Ring& A, int k);
// 0 -> G_{2n} -> A(2n) -> Q_{2n,4} -> 0.
NamedSequence sequence_G(const Ring& A);
// 0 -> H_{2n+1} -> A(2n+1) -> chi_{2n+1} -> 0.
NamedSequence sequence_H(const Ring& A);

// Subquotients Q_{j+2i,j} / Q_{j+2i-2,j}, i = 0..r, compared with chi_{j+2i}.
struct FiltrationStep {
  int index;
  PresentedModule quotient;
  std::string expected;  // e.g. "chi(6)"
  IsoVerdict verdict;
};
std::vector<FiltrationStep> filtration_report(const Ring& A, int j, int r);

}  // namespace qgrkit

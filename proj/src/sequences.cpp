#include "qgrkit/sequences.hpp"

#include "qgrkit/error.hpp"

namespace qgrkit {

namespace {

Polynomial mono(const Ring& A, int var, int power = 1) { return poly_monomial(A->variable(var, power)); }
Polynomial one(const Ring& A) { return poly_monomial(A->monomial({0, 0, 0, 0})); }

int n_of(const Ring& A) {
  if (!A->n_param() || !A->is_quotient()) throw QgrError(ErrorKind::kInvalidParameter, "sequence needs the ring A");
  return *A->n_param();
}

// Map from a free module F(k) with several generators onto a cyclic target.
ModuleMap row_map(const PresentedModule& src, const PresentedModule& dst, const std::vector<Polynomial>& entries) {
  ModuleMap m{src, dst, {}, 0};
  FreeModule T = dst.generators();
  for (const auto& p : entries) m.images.push_back(vec_from_components(T, p.degree + T.degrees[0], {p}));
  return m;
}

}  // namespace

ModuleMap cyclic_map(const PresentedModule& M, const PresentedModule& N, const Polynomial& p) {
  if (M.num_generators() != 1 || N.num_generators() != 1) {
    throw QgrError(ErrorKind::kInvalidInput, "cyclic_map needs cyclic modules");
  }
  ModuleMap m{M, N, {vec_from_components(N.generators(), p.degree + N.generators().degrees[0], {p})}, 0};
  if (m.images[0].degree != M.generators().degrees[0]) {
    throw QgrError(ErrorKind::kInvalidMap, "cyclic_map: multiplier has the wrong degree");
  }
  check_map(m);
  return m;
}

NamedSequence sequence_qqq(const Ring& A, int j, int r, int s) {
  int n = n_of(A);
  if (r < 0 || s <= 0 || r + s >= 2 * n - 1) throw QgrError(ErrorKind::kInvalidParameter, "qqq needs r>=0, s>0, r+s<2n-1");
  auto M = make_Q(A, j, r), N = make_Q(A, j, r + s), P = make_Q(A, j + 2 * r + 2, s - 1);
  return {"qqq(j=" + std::to_string(j) + ",r=" + std::to_string(r) + ",s=" + std::to_string(s) + ")",
          {cyclic_map(M, N, mono(A, 1, s)), cyclic_map(N, P, one(A))}};
}

NamedSequence sequence_sur(const Ring& A, int j, int r) {
  auto seq = sequence_qqq(A, j, r - 1, 1);
  seq.label = "sur(j=" + std::to_string(j) + ",r=" + std::to_string(r) + ")";
  return seq;
}

NamedSequence sequence_inj(const Ring& A, int j, int r) {
  auto seq = sequence_qqq(A, j, 0, r);
  seq.label = "inj(j=" + std::to_string(j) + ",r=" + std::to_string(r) + ")";
  return seq;
}

NamedSequence sequence_xqx(const Ring& A, int j) {
  int n = n_of(A);
  auto M = make_chi(A, j), N = make_Aq01(A, j + 2 * n - 1), P = make_chi(A, j + 2 * n - 1);
  return {"xqx(j=" + std::to_string(j) + ")", {cyclic_map(M, N, mono(A, 2)), cyclic_map(N, P, one(A))}};
}

NamedSequence koszul_x0x1(const Ring& A, int k) {
  auto F2 = make_free(A, k - 3);
  auto F1 = direct_sum({make_free(A, k - 1), make_free(A, k - 2)});
  auto F0 = make_free(A, k);
  ModuleMap d2{F2, F1, {vec_from_components(F1.generators(), 3 - k, {mono(A, 1), poly_scale(mono(A, 0), -1)})}, 0};
  return {"koszul(x0,x1;k=" + std::to_string(k) + ")",
          {d2, row_map(F1, F0, {mono(A, 0), mono(A, 1)}), cyclic_map(F0, make_Aq01(A, k), one(A))}};
}

NamedSequence koszul_x0x2(const Ring& A, int k) {
  int n = n_of(A);
  auto F2 = make_free(A, k - 2 * n);
  auto F1 = direct_sum({make_free(A, k - 1), make_free(A, k - 2 * n + 1)});
  auto F0 = make_free(A, k);
  ModuleMap d2{F2, F1, {vec_from_components(F1.generators(), 2 * n - k, {mono(A, 2), poly_scale(mono(A, 0), -1)})},
               0};
  return {"koszul(x0,x2;k=" + std::to_string(k) + ")",
          {d2, row_map(F1, F0, {mono(A, 0), mono(A, 2)}),
           cyclic_map(F0, make_Q_top_bottom(A, k, k - 4 * n + 4), one(A))}};
}

NamedSequence sequence_G(const Ring& A) {
  int n = n_of(A);
  auto sq = make_ideal(A, 2 * n, {mono(A, 0), mono(A, 1, n - 1), mono(A, 2)}, "G(" + std::to_string(2 * n) + ")");
  auto F = make_free(A, 2 * n);
  return {"G-sequence", {ModuleMap{sq.module, F, sq.generators_in_ambient, 0},
                         cyclic_map(F, make_Q_top_bottom(A, 2 * n, 4), one(A))}};
}

NamedSequence sequence_H(const Ring& A) {
  int n = n_of(A);
  auto sq = make_ideal(A, 2 * n + 1, {mono(A, 0), mono(A, 1), mono(A, 2)}, "H(" + std::to_string(2 * n + 1) + ")");
  auto F = make_free(A, 2 * n + 1);
  return {"H-sequence", {ModuleMap{sq.module, F, sq.generators_in_ambient, 0},
                         cyclic_map(F, make_chi(A, 2 * n + 1), one(A))}};
}

std::vector<FiltrationStep> filtration_report(const Ring& A, int j, int r) {
  std::vector<FiltrationStep> out;
  for (int i = 0; i <= r; ++i) {
    PresentedModule q;
    if (i == 0) {
      q = make_Q(A, j, 0);
    } else {
      q = cokernel(cyclic_map(make_Q(A, j, i - 1), make_Q(A, j, i), mono(A, 1))).module;
    }
    auto chi = make_chi(A, j + 2 * i);
    out.push_back({i, q, chi.name(), is_isomorphic(q, chi).verdict});
  }
  return out;
}

}  // namespace qgrkit

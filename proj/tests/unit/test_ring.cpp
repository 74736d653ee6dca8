#include <doctest.h>

#include <random>

#include "qgrkit/error.hpp"
#include "qgrkit/ring.hpp"

using namespace qgrkit;

namespace {

// Coefficients of (1 - t^d) / prod_i (1 - t^{a_i}) up to t^kmax, by repeated
// prefix sums; independent of monomial enumeration.
std::vector<long> series_oracle(const std::vector<int>& weights, int d, int kmax) {
  std::vector<long> c(kmax + 1, 0);
  c[0] = 1;
  if (d <= kmax) c[d] = -1;
  for (int a : weights) {
    for (int k = a; k <= kmax; ++k) c[k] += c[k - a];
  }
  return c;
}

Polynomial P(const std::string& s, const Ring& R) { return parse_polynomial(s, *R); }

}  // namespace

TEST_CASE("make_ring builds the weighted family") {
  Ring A = make_ring(2, true);
  CHECK(A->weights() == std::vector<int>{1, 2, 3, 5});
  CHECK(A->degree_d() == 6);
  CHECK(A->s_total() == 11);
  CHECK(A->kappa() == -5);
  CHECK(format_polynomial(*A->relation(), *A) == "x0*x3 + x1^3 + x2^2");

  Ring B = make_ring(3, false);
  CHECK(B->weights() == std::vector<int>{1, 2, 5, 9});
  CHECK_FALSE(B->relation().has_value());
  CHECK_FALSE(B->degree_d().has_value());
  CHECK(B->s_total() == 17);

  CHECK_THROWS_AS(make_ring(1, true), QgrError);
  try {
    make_ring(1, false);
  } catch (const QgrError& e) {
    CHECK(e.kind() == ErrorKind::kInvalidParameter);
  }
}

TEST_CASE("lead term of f is x0*x3 for n = 2..6") {
  for (int n = 2; n <= 6; ++n) {
    Ring A = make_ring(n, true);
    const auto& f = *A->relation();
    CHECK(f.lead().mono == A->monomial({1, 0, 0, 1}));
    CHECK(f.degree == 4 * n - 2);
    CHECK(*A->kappa() == -2 * n - 1);
  }
}

TEST_CASE("normal_form examples") {
  Ring A = make_ring(2, true);
  CHECK(normal_form(P("x0*x3", A), *A) == P("-x1^3 - x2^2", A));
  CHECK(normal_form(P("x1^3", A), *A) == P("x1^3", A));
  // x0^2 x3^2 = (x0 x3)^2 = (x1^3 + x2^2)^2
  Polynomial sq = poly_mul(P("x1^3 + x2^2", A), P("x1^3 + x2^2", A));
  CHECK(normal_form(P("x0^2*x3^2", A), *A) == sq);
  CHECK(format_polynomial(sq, *A) == "x1^6 + 2*x1^3*x2^2 + x2^4");
  Ring B = make_ring(2, false);
  CHECK(normal_form(P("x0*x3", B), *B) == P("x0*x3", B));
}

TEST_CASE("normal_form is sound for products") {
  std::mt19937 rng(12345);
  for (int n = 2; n <= 3; ++n) {
    Ring A = make_ring(n, true);
    for (int trial = 0; trial < 40; ++trial) {
      int dp = 3 + static_cast<int>(rng() % 12), dq = 2 + static_cast<int>(rng() % 12);
      auto random_poly = [&](int deg) {
        std::vector<PolyTerm> terms;
        for (const auto& m : A->all_monomials(deg)) {
          if (rng() % 2) terms.push_back({m, Rational(static_cast<long long>(rng() % 7) - 3)});
        }
        std::erase_if(terms, [](const PolyTerm& t) { return t.coeff.is_zero(); });
        return poly_from_terms(deg, terms);
      };
      Polynomial p = random_poly(dp), q = random_poly(dq);
      Polynomial lhs = normal_form(poly_mul(p, q), *A);
      Polynomial rhs = normal_form(poly_mul(normal_form(p, *A), normal_form(q, *A)), *A);
      CHECK(lhs == rhs);
      CHECK(lhs.degree == dp + dq);
      for (const auto& t : lhs.terms) CHECK_FALSE((t.mono.exponent(0) > 0 && t.mono.exponent(3) > 0));
      CHECK(normal_form(lhs, *A) == lhs);
    }
  }
}

TEST_CASE("monomial_basis and hilbert_dim") {
  Ring A = make_ring(2, true);
  auto b2 = monomial_basis(*A, 2);
  REQUIRE(b2.size() == 2);
  CHECK(A->format(b2[0]) == "x0^2");
  CHECK(A->format(b2[1]) == "x1");
  CHECK(monomial_basis(*A, 0).size() == 1);
  CHECK(monomial_basis(*A, -1).empty());
  CHECK(hilbert_dim(*A, 0) == 1);
  CHECK(hilbert_dim(*A, 2) == 2);
  bool has_x3 = false;
  for (const auto& m : monomial_basis(*A, 5)) has_x3 |= (m == A->variable(3));
  CHECK(has_x3);
}

TEST_CASE("Hilbert function matches the series for n = 2..5, k <= 200") {
  for (int n = 2; n <= 5; ++n) {
    Ring A = make_ring(n, true);
    auto c = series_oracle(A->weights(), 4 * n - 2, 200);
    for (int k = 0; k <= 200; ++k) REQUIRE(hilbert_dim(*A, k) == c[k]);
    Ring B = make_ring(n, false);
    auto cb = series_oracle(B->weights(), 100000, 200);
    for (int k = 0; k <= 200; ++k) REQUIRE(hilbert_dim(*B, k) == cb[k]);
  }
}

TEST_CASE("polynomial parser") {
  Ring A = make_ring(2, true);
  Polynomial p = P("3*x0^2*x3 - 1/2*x1^2*x0^3", A);
  CHECK(p.degree == 7);
  CHECK(format_polynomial(p, *A) == "-1/2*x0^3*x1^2 + 3*x0^2*x3");
  CHECK_THROWS_AS(P("x0 + x1", A), QgrError);     // inhomogeneous
  CHECK_THROWS_AS(P("x0 + * x1", A), ParseError);
  CHECK_THROWS_AS(P("x7", A), ParseError);
}

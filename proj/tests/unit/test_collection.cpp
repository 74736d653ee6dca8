#include <doctest.h>

#include <set>
#include <tuple>

#include "qgrkit/collection.hpp"
#include "qgrkit/error.hpp"
#include "qgrkit/report.hpp"

using namespace qgrkit;

namespace {

// Cofactor expansion, for small matrices only.
long det_oracle(const std::vector<std::vector<long>>& m) {
  size_t N = m.size();
  if (N == 0) return 1;
  long d = 0;
  for (size_t c = 0; c < N; ++c) {
    std::vector<std::vector<long>> minor;
    for (size_t r = 1; r < N; ++r) {
      std::vector<long> row;
      for (size_t j = 0; j < N; ++j) {
        if (j != c) row.push_back(m[r][j]);
      }
      minor.push_back(row);
    }
    d += (c % 2 ? -1 : 1) * m[0][c] * det_oracle(minor);
  }
  return d;
}

void check_complete(const CollectionReport& r) {
  size_t N = r.objects.size();
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& c : r.checks) CHECK(seen.insert({c.k, c.l, c.i}).second);
  CHECK(seen.size() == N * N * 3);
}

void check_pass(const CollectionReport& r, size_t size) {
  CHECK(r.objects.size() == size);
  CHECK(r.passed);
  CHECK(r.unitriangular);
  CHECK(r.determinant == "1");
  CHECK(r.backward_failures.empty());
  check_complete(r);
}

}  // namespace

TEST_CASE("exceptional objects") {
  Ring A = make_ring(3, true);
  ExtEngine engine;
  for (int k : {-3, 0, 5}) CHECK(is_exceptional_object(make_free(A, k), engine));
  for (int j : {0, 4, 7}) CHECK(is_exceptional_object(make_chi(A, j), engine));
  CHECK(is_exceptional_object(make_G(A, 6), engine));
  CHECK(is_exceptional_object(make_H(A, 7), engine));
  auto Q = make_Q_top_bottom(A, 6, 4);
  CHECK_FALSE(is_exceptional_object(Q, engine));
  CHECK(engine.ext(Q, Q).dim(2) == 1);
}

TEST_CASE("built-in collections have the stated sizes") {
  for (int n = 2; n <= 5; ++n) {
    Ring A = make_ring(n, true);
    CHECK(builtin_collection("intro", A).objects.size() == static_cast<size_t>(2 * n + 1));
    for (const char* l : {"ec_1", "ec_2", "ec_3"}) {
      CHECK(builtin_collection(l, A).objects.size() == static_cast<size_t>(4 * n - 1));
    }
  }
  Ring A = make_ring(4, true);
  auto ec3 = builtin_collection("ec_3", A);
  std::vector<std::string> tail;
  for (size_t i = 11; i < ec3.objects.size(); ++i) tail.push_back(ec3.objects[i].label());
  CHECK(tail == std::vector<std::string>{"Q(6,6)", "Q(8,6)", "Q(5,5)", "Q(7,5)"});
  CHECK_THROWS_AS(builtin_collection("ec_4", A), QgrError);
  CHECK_THROWS_AS(builtin_collection("intro", make_ring(3, false)), QgrError);
}

TEST_CASE("collections pass for small n") {
  for (int n = 2; n <= 3; ++n) {
    CAPTURE(n);
    Ring A = make_ring(n, true);
    ExtEngine engine;
    check_pass(verify_collection(builtin_collection("intro", A), {}, engine), 2 * n + 1);
    check_pass(verify_collection(builtin_collection("ec_1", A), {}, engine), 4 * n - 1);
  }
  Ring A = make_ring(3, true);
  check_pass(verify_collection(builtin_collection("ec_2", A)), 11);
}

TEST_CASE("Gram matrix entries and determinant") {
  Ring A = make_ring(2, true);
  auto r = verify_collection(builtin_collection("ec_1", A));
  REQUIRE(r.gram.size() == 7);
  // chi(A(k), A(l)) = dim A_{l-k} for k <= l.
  CHECK(r.gram[0][2] == 2);
  CHECK(r.gram[0][6] == 4);
  CHECK(std::to_string(det_oracle(r.gram)) == r.determinant);

  Ring A3 = make_ring(3, true);
  NamedCollection single{"custom", 3, {{make_chi(A3, 3), 0}}};
  auto one = verify_collection(single);
  CHECK(one.gram == std::vector<std::vector<long>>{{1}});
  CHECK(one.determinant == "1");
  // For n = 2, 2n+1 = 4n-3 so chi has a self-Ext^2.
  NamedCollection bad{"custom", 2, {{make_chi(A, 3), 0}}};
  auto two = verify_collection(bad);
  CHECK_FALSE(two.passed);
  CHECK(two.exceptional[0].dims == std::vector<long>{1, 0, 1});
  CHECK(two.determinant == "2");

  for (const auto& m : std::vector<std::vector<std::vector<long>>>{
           {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, {{0, 1}, {1, 0}}, {{1, 2}, {2, 4}}, {{0, 0, 1}, {0, 1, 0}, {3, 0, 0}}}) {
    CHECK(integer_determinant(m) == std::to_string(det_oracle(m)));
  }
  CHECK_THROWS_AS(integer_determinant({{1, 2}}), QgrError);
}

TEST_CASE("shifts enter Hom^i and the Euler form with the standard sign") {
  Ring A = make_ring(2, true);
  NamedCollection c{"custom", 2, {{make_free(A, 0), 0}, {make_free(A, 1), 1}}};
  auto r = verify_collection(c);
  // Hom^i(A, A(1)[1]) = Ext^{i+1}(A, A(1)) = 0 for i >= 0.
  for (int i = 0; i <= 2; ++i) CHECK(r.hom(0, 1, i) == 0);
  CHECK(r.gram[0][1] == -1);
  CHECK(r.passed);
  // Backward: Hom^i(A(1)[1], A) = Ext^{i-1}(A(1), A), and Ext^2(A(1), A) = A_{-4} = 0.
  CHECK(r.backward_failures.empty());
}

TEST_CASE("parallel verification is deterministic") {
  Ring A = make_ring(3, true);
  auto c = builtin_collection("ec_1", A);
  VerifyOptions one, three;
  three.jobs = 3;
  ExtEngine e1, e3;
  auto a = verify_collection(c, one, e1);
  auto b = verify_collection(c, three, e3);
  CHECK(collection_json(a) == collection_json(b));
}

TEST_CASE("ceiling check finds no Ext^3") {
  Ring A = make_ring(3, true);
  VerifyOptions o;
  o.ceiling_check = true;
  CHECK(verify_collection(builtin_collection("ec_2", A), o).passed);
}

TEST_CASE("ec_1 and ec_2 agree on their common prefix") {
  Ring A = make_ring(3, true);
  ExtEngine engine;
  auto r1 = verify_collection(builtin_collection("ec_1", A), {}, engine);
  auto r2 = verify_collection(builtin_collection("ec_2", A), {}, engine);
  const int n = 3;
  for (int k = 0; k <= 2 * n - 2; ++k) {
    for (int l = 0; l <= 2 * n - 2; ++l) {
      CHECK(r1.gram[k][l] == r2.gram[k][l]);
      for (int i = 0; i <= 2; ++i) CHECK(r1.hom(k, l, i) == r2.hom(k, l, i));
    }
  }
}

TEST_CASE("A-bar span drops exactly the pure x1 powers") {
  for (int n = 3; n <= 4; ++n) {
    Ring A = make_ring(n, true);
    for (int k = 0; k <= 2 * n; ++k) {
      long count = 0;
      for (const auto& m : A->basis(k)) {
        bool dropped = k % 2 == 0 && k / 2 <= n - 2 && m == A->variable(1, k / 2);
        count += !dropped;
      }
      CHECK(dim_A_bar(A, k) == count);
    }
  }
}

TEST_CASE("morphism algebra of ec_3, n = 3") {
  Ring A = make_ring(3, true);
  ExtEngine engine;
  auto c = builtin_collection("ec_3", A);
  auto r = verify_collection(c, {}, engine);
  auto alg = morphism_algebra(c, r, engine);
  CHECK(alg.passed);
  // Named positions: G(6) = 6, A(6) = 7, H(7) = 8, Q(6,6) = 9, Q(5,5) = 10.
  CHECK(r.objects[6] == "G(6)");
  CHECK(r.hom(6, 8, 0) == 1);
  CHECK(r.hom(6, 7, 1) == 1);
  CHECK(r.hom(6, 9, 1) == 1);
  CHECK(r.hom(8, 10, 0) == 1);
  for (const auto& e : alg.entries) {
    CAPTURE(e.k);
    CAPTURE(e.l);
    CAPTURE(e.i);
    REQUIRE(e.expected);
    CHECK(e.dim == *e.expected);
  }
  std::set<std::string> rules;
  for (const auto& cc : alg.compositions) {
    CAPTURE(cc.description);
    CHECK(cc.ok);
    rules.insert(cc.rule);
  }
  CHECK(rules == std::set<std::string>{"(a)", "(b)", "(d)", "(e)", "(g)", "(i)", "(j)"});
  // Serre duality on rows with a free source.
  for (const auto& e : alg.entries) {
    if (c.objects[e.k].module.name().rfind("A(", 0) != 0) continue;
    int k = -c.objects[e.k].module.min_generator_degree();
    auto v = duality_check(twist(c.objects[e.l].module, -k), e.i, engine);
    CHECK(v.ok);
    CHECK(v.lhs == e.dim);
  }
}

TEST_CASE("non-ec_3 collections carry no expected values") {
  Ring A = make_ring(2, true);
  auto c = builtin_collection("intro", A);
  auto alg = morphism_algebra(c, verify_collection(c));
  CHECK(alg.passed);
  CHECK(alg.compositions.empty());
  for (const auto& e : alg.entries) CHECK_FALSE(e.expected);
  CHECK(alg.entries.size() == 5 * 6 / 2 * 3);
}

TEST_CASE("negative control fails with the predicted pairs") {
  for (int n = 2; n <= 4; ++n) {
    Ring A = make_ring(n, true);
    ExtEngine engine;
    for (uint64_t seed : {1u, 5u, 11u}) {
      CAPTURE(n);
      CAPTURE(seed);
      auto nc = negative_control(A, seed);
      CHECK(nc.p < nc.q);
      auto r = verify_collection(nc.permuted, {}, engine);
      CHECK_FALSE(r.passed);
      std::set<std::tuple<int, int, int, long>> got, want;
      for (const auto& f : r.backward_failures) got.insert({f.k, f.l, f.i, f.dim});
      for (const auto& f : nc.predicted) want.insert({f.k, f.l, f.i, f.dim});
      CHECK(got == want);
    }
    // Same seed, same permutation.
    CHECK(negative_control(A, 9).p == negative_control(A, 9).p);
  }
}

TEST_CASE("report renderings carry the same numbers") {
  Ring A = make_ring(2, true);
  auto r = verify_collection(builtin_collection("ec_1", A));
  auto j = collection_json(r);
  CHECK(j["det"] == r.determinant);
  CHECK(j["checks"].size() == r.checks.size());
  std::string csv = collection_csv(r);
  size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == r.checks.size() + 1);
  std::string table = collection_table(r);
  CHECK(table.find("det = 1") != std::string::npos);
  CHECK(table.find("fullness is not checked") != std::string::npos);
}

TEST_CASE("Hilbert series helper") {
  // 1/((1-t)(1-t^2)(1-t^3)(1-t^5)) * (1 - t^6) for n = 2.
  auto s = hilbert_series(2, 6);
  CHECK(s == std::vector<long>{1, 1, 2, 3, 4, 6, 7});
  for (const auto& row : hilbert_rows(make_ring(3, true), 40)) CHECK(row.enumerated == row.series);
}

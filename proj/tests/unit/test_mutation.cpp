#include <doctest.h>

#include "qgrkit/error.hpp"
#include "qgrkit/mutation.hpp"

using namespace qgrkit;

namespace {

ShiftedObject obj(PresentedModule M, int shift = 0) { return {std::move(M), shift}; }

void check_outcome(const MutationOutcome& o, const std::string& name, int shift, MutationMechanism mech) {
  CHECK(o.witness_exact);
  CHECK(o.mechanism == mech);
  REQUIRE(o.identified);
  CHECK(o.identified->name == name);
  CHECK_FALSE(o.identified->up_to_torsion);
  CHECK(o.result.shift == shift);
}

}  // namespace

TEST_CASE("object expressions") {
  Ring A = make_ring(3, true);
  CHECK(parse_object("A(3)", A).module.name() == "A(3)");
  CHECK(parse_object(" chi( -2 ) ", A).module.name() == "chi(-2)");
  auto q = parse_object("Q(8,4)[-2]", A);
  CHECK(q.module.name() == "Q(8,4)");
  CHECK(q.shift == -2);
  CHECK(q.label() == "Q(8,4)[-2]");
  auto list = parse_object_list("A(0), Q(6,4), G(6), H(7), Aq01(1)", A);
  REQUIRE(list.size() == 5);
  CHECK(list[1].module.name() == "Q(6,4)");
  CHECK(list[4].module.name() == "Aq01(1)");
  try {
    parse_object("Q(5,4)", A);
    FAIL("odd Q accepted");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ErrorKind::kParse);
  }
  try {
    parse_object("B(1)", A);
    FAIL("unknown name accepted");
  } catch (const ParseError& e) {
    CHECK(e.position() == 0);
  }
  CHECK_THROWS_AS(parse_object("A(1) x", A), ParseError);
  CHECK_THROWS_AS(parse_object("chi(1,2)", A), ParseError);
  CHECK_THROWS_AS(parse_object_list("A(1),,A(2)", A), ParseError);
}

TEST_CASE("printed expressions re-parse to isomorphic objects") {
  Ring A = make_ring(3, true);
  for (const char* e : {"A(2)", "chi(5)", "Q(6,4)", "G(6)", "H(7)", "Aq01(3)"}) {
    auto M = parse_object(e, A).module;
    auto again = parse_object(M.name(), A).module;
    CHECK(is_isomorphic(M, again).verdict == IsoVerdict::kIsomorphic);
    auto id = identify_named(M);
    REQUIRE(id);
    CHECK(id->name == e);
  }
}

TEST_CASE("module JSON round trip") {
  Ring A = make_ring(2, true);
  auto M = make_Q(A, 2, 1);
  auto j = module_to_json(M);
  auto back = module_from_json(j, A);
  CHECK(is_isomorphic(M, back).verdict == IsoVerdict::kIsomorphic);
  auto custom = nlohmann::json::parse(R"({"generators": [0, 1], "relations": [["x1", "-x0"]]})");
  auto C = module_from_json(custom, A);
  CHECK(C.num_generators() == 2);
  CHECK(C.relations().size() == 1);
  auto bad = nlohmann::json::parse(R"({"generators": [0], "relations": [["x1", "x0"]]})");
  CHECK_THROWS_AS(module_from_json(bad, A), QgrError);
}

TEST_CASE("left mutations of chi chains give Q") {
  for (int n = 2; n <= 4; ++n) {
    Ring A = make_ring(n, true);
    ExtEngine engine;
    const int j = 4;
    for (int k = 0; k <= n - 2; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      std::vector<ShiftedObject> prefix;
      for (int i = k; i >= 1; --i) prefix.push_back(obj(make_chi(A, j + 2 * i)));
      MutationChain chain = iterated_left_mutation(prefix, obj(make_chi(A, j)), {}, engine);
      CHECK(chain.steps.size() == static_cast<size_t>(k));
      for (const auto& s : chain.steps) {
        CHECK(s.witness_exact);
        CHECK(s.mechanism == MutationMechanism::kExt1UniversalExtension);
      }
      CHECK(chain.result.shift == -k);
      REQUIRE(is_isomorphic(chain.result.module, make_Q_top_bottom(A, j + 2 * k, j)).verdict ==
              IsoVerdict::kIsomorphic);
    }
  }
}

TEST_CASE("G and H from mutation chains") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    Ring A = make_ring(n, true);
    ExtEngine engine;
    std::vector<ShiftedObject> prefix{obj(make_free(A, 2 * n))};
    for (int i = 2 * n; i >= 6; i -= 2) prefix.push_back(obj(make_chi(A, i)));
    MutationChain g = iterated_left_mutation(prefix, obj(make_chi(A, 4)), {}, engine);
    check_outcome(g.steps.back(), "G(" + std::to_string(2 * n) + ")", -(n - 2), MutationMechanism::kHomKernel);
    // Same chain one degree lower.
    std::vector<ShiftedObject> odd{obj(make_free(A, 2 * n - 1))};
    for (int i = 2 * n - 1; i >= 5; i -= 2) odd.push_back(obj(make_chi(A, i)));
    MutationChain g2 = iterated_left_mutation(odd, obj(make_chi(A, 3)), {}, engine);
    check_outcome(g2.steps.back(), "G(" + std::to_string(2 * n - 1) + ")", -(n - 2), MutationMechanism::kHomKernel);
    if (n >= 3) {
      auto h = left_mutation(obj(make_free(A, 2 * n + 1)), obj(make_chi(A, 2 * n + 1)), {}, engine);
      check_outcome(h, "H(" + std::to_string(2 * n + 1) + ")", 0, MutationMechanism::kHomKernel);
      // Right mutation undoes it.
      auto back = right_mutation(obj(make_free(A, 2 * n + 1)), h.result, {}, engine);
      check_outcome(back, "chi(" + std::to_string(2 * n + 1) + ")", 0, MutationMechanism::kHomCokernel);
    }
  }
}

TEST_CASE("right mutations and inverses") {
  Ring A3 = make_ring(3, true);
  auto r = right_mutation(obj(make_chi(A3, 6)), obj(make_chi(A3, 8)));
  check_outcome(r, "Q(8,6)", 1, MutationMechanism::kExt1UniversalExtension);

  Ring A = make_ring(4, true);
  ExtEngine engine;
  // (chi_8, chi_6) is an exceptional pair for n = 4.
  auto up = right_mutation(obj(make_chi(A, 6)), obj(make_chi(A, 8)), {}, engine);
  check_outcome(up, "Q(8,6)", 1, MutationMechanism::kExt1UniversalExtension);
  auto down = left_mutation(obj(make_chi(A, 6)), up.result, {}, engine);
  check_outcome(down, "chi(8)", 0, MutationMechanism::kHomCokernel);
  // The chain (chi_{2n}, ..., chi_6) -> (Q_{6,6}, Q_{8,6}, ...): last object.
  auto chain = iterated_right_mutation(obj(make_chi(A, 8)), {obj(make_chi(A, 6))}, {}, engine);
  CHECK(chain.result.module.name() == "Q(8,6)");
  CHECK(iterated_right_mutation(obj(make_chi(A, 8)), {}, {}, engine).result.module.name() == "chi(8)");
}

TEST_CASE("orthogonal and non-representable cases") {
  Ring A = make_ring(3, true);
  ExtEngine engine;
  // Hom^.(chi_1, chi_0) = 0 for n = 3.
  auto o = left_mutation(obj(make_chi(A, 1)), obj(make_chi(A, 0), 2), {}, engine);
  CHECK(o.mechanism == MutationMechanism::kOrthogonal);
  CHECK(o.result.module.name() == "chi(0)");
  CHECK(o.result.shift == 2);
  // Shifts of Y carry through.
  auto s = left_mutation(obj(make_chi(A, 6), 5), obj(make_chi(A, 4), 3), {}, engine);
  CHECK(s.result.shift == 2);
  // Hom and Ext^1 both nonzero.
  auto G = make_G(A, 6);
  try {
    right_mutation(obj(make_free(A, 6)), obj(G), {}, engine);
    FAIL("expected not-module-representable");
  } catch (const QgrError& e) {
    CHECK(e.kind() == ErrorKind::kNotModuleRepresentable);
  }
  // Mutating object must be exceptional.
  CHECK_THROWS_AS(left_mutation(obj(make_Q_top_bottom(A, 6, 4)), obj(make_chi(A, 0)), {}, engine), QgrError);
}

#pragma once

#include <optional>
#include <vector>

#include "qgrkit/free_module.hpp"

namespace qgrkit {

// Inputs of a Groebner computation inside one free module. "Aux" inputs are
// part of the submodule but carry no coordinate in the syzygy bookkeeping;
// they hold the f-multiples of the generators and any ambient relations.
struct GbInput {
  Vec vec;
  bool tracked = true;
};

enum class SyzygyMode {
  kNone,     // no representation tracking
  kMinimal,  // drop tracked inputs already in the span; syzygies among the kept ones
  kAll,      // keep every tracked coordinate; redundant inputs yield syzygies too
};

struct GbOptions {
  SyzygyMode mode = SyzygyMode::kNone;
  // Skip computing syzygies (only the kept/minimal selection is wanted).
  bool want_syzygies = true;
  // Stop after this degree; the basis is then a truncated Groebner basis.
  std::optional<int> max_degree;
};

struct GbElement {
  Vec vec;   // monic lead
  Vec rep;   // in tracked coordinates (source module)
};

struct GbResult {
  FreeModule ambient;
  std::vector<GbElement> basis;
  // Tracked input indices that survived as minimal generators, in processing
  // order (by degree, then input order); syzygy coordinates follow this order.
  std::vector<int> kept;
  // Source module of the syzygies: one generator per tracked coordinate
  // (kept inputs in minimal mode, all tracked inputs otherwise).
  FreeModule syzygy_source;
  std::vector<Vec> syzygies;
  std::optional<int> max_degree;
};

GbResult gb_run(const FreeModule& ambient, const std::vector<GbInput>& inputs, const GbOptions& options = {});

// Aux inputs f*e_j for every generator when the ring is a quotient.
std::vector<GbInput> relation_multiples(const FreeModule& F);

// Plain Groebner basis of a submodule (over A the f-multiples are added).
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(FreeModule ambient, std::vector<Vec> elements, std::optional<int> max_degree = std::nullopt);

  const FreeModule& ambient() const { return ambient_; }
  const std::vector<Vec>& elements() const { return elements_; }
  std::optional<int> max_degree() const { return max_degree_; }

  // Full reduction; also returns quotients (one per element) when asked.
  Vec reduce(const Vec& v, std::vector<Polynomial>* quotients = nullptr) const;
  bool contains(const Vec& v) const { return reduce(v).is_zero(); }
  // Is the monomial m*e_comp a lead-term multiple?
  bool is_lead_multiple(int comp, const Monomial& m) const;
  // Standard monomials of the quotient F/submodule in degree k, sorted decreasing.
  std::vector<std::pair<int, Monomial>> standard_monomials(int k) const;

 private:
  void index();
  FreeModule ambient_;
  std::vector<Vec> elements_;
  std::vector<std::vector<int>> by_comp_;
  std::optional<int> max_degree_;
};

GroebnerBasis buchberger(const FreeModule& ambient, const std::vector<Vec>& generators);

struct Division {
  std::vector<Polynomial> quotients;  // one per basis element
  Vec remainder;
};
Division divide(const Vec& v, const GroebnerBasis& gb);

// Generators of the syzygy module of the given elements (over A: modulo f).
GradedMatrix syzygies(const FreeModule& ambient, const std::vector<Vec>& elements);

struct ReductionStep {
  int index;
  Monomial mono;
  Rational coeff;
};
// Full reduction of v by monic-lead elements indexed per component; records
// each subtraction v -= coeff * mono * basis[index] when steps is given.
Vec reduce_by(const Vec& v, const std::vector<const Vec*>& basis, const std::vector<std::vector<int>>& by_comp,
              std::vector<ReductionStep>* steps);

}  // namespace qgrkit

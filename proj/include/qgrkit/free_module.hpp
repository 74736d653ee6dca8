#pragma once

#include <map>
#include <span>

#include <string>
#include <vector>

#include "qgrkit/ring.hpp"

namespace qgrkit {

// Graded free module R(-b_1) + ... + R(-b_r); generator j lives in degree b_j.
struct FreeModule {
  Ring ring;
  std::vector<int> degrees;

  int rank() const { return static_cast<int>(degrees.size()); }
  long graded_rank(int k) const;
};

struct VecTerm {
  int comp;
  Monomial mono;
  Rational coeff;
};

// Term order on a free module: monomial first, then smaller component index wins.
inline bool term_greater(int ca, const Monomial& ma, int cb, const Monomial& mb) {
  if (ma.bits != mb.bits) return mb < ma;
  return ca < cb;
}

// Sparse sum of terms kept in term order; the largest term is first.
class TermAccumulator {
 public:
  struct Key {
    int comp;
    Monomial mono;
  };
  struct Before {
    bool operator()(const Key& a, const Key& b) const { return term_greater(a.comp, a.mono, b.comp, b.mono); }
  };
  using Map = std::map<Key, Rational, Before>;

  void add(int comp, const Monomial& m, const Rational& c);
  // Adds c * m * terms.
  void add_scaled(std::span<const VecTerm> terms, const Monomial& m, const Rational& c);
  bool empty() const { return map_.empty(); }
  Map::iterator top() { return map_.begin(); }
  void erase(Map::iterator it) { map_.erase(it); }

 private:
  Map map_;
};

// Homogeneous element of a free module. Terms sorted decreasing, no zeros.
struct Vec {
  int degree = 0;
  std::vector<VecTerm> terms;

  bool is_zero() const { return terms.empty(); }
  const VecTerm& lead() const { return terms.front(); }
};

bool operator==(const Vec& a, const Vec& b);

Vec vec_zero(int degree);
Vec vec_basis(const FreeModule& F, int comp);
Vec vec_monomial(const FreeModule& F, int comp, const Monomial& m, Rational c = 1);
Vec vec_add_scaled(const Vec& a, const Vec& b, const Rational& c);
inline Vec vec_add(const Vec& a, const Vec& b) { return vec_add_scaled(a, b, Rational(1)); }
inline Vec vec_sub(const Vec& a, const Vec& b) { return vec_add_scaled(a, b, Rational(-1)); }
Vec vec_scale(const Vec& a, const Rational& c);
Vec vec_mul_term(const Vec& a, const Monomial& m, const Rational& c);
Vec vec_mul_poly(const Vec& a, const Polynomial& p);
// Builds an element from per-component polynomials (zero components allowed).
Vec vec_from_components(const FreeModule& F, int degree, const std::vector<Polynomial>& comps);
std::vector<Polynomial> vec_components(const FreeModule& F, const Vec& v);
Polynomial vec_component(const Vec& v, int comp, int poly_degree);
// Coefficient-wise reduction modulo the ring relation.
Vec vec_normal_form(const Vec& v, const RingDescriptor& ring);
// Sends basis element j of the source to images[j]; images live in one target module.
Vec vec_substitute(const Vec& v, const std::vector<Vec>& images, int degree_shift = 0);
Vec vec_reindex(const Vec& v, const std::vector<int>& new_index);  // -1 drops the component
std::string format_vec(const Vec& v, const RingDescriptor& ring);

// Homogeneous map of free modules given by the images of the source generators.
struct GradedMatrix {
  FreeModule source;
  FreeModule target;
  std::vector<Vec> columns;  // columns[j] has degree source.degrees[j]

  // Image of an element of the source.
  Vec apply(const Vec& v) const;
};

GradedMatrix compose(const GradedMatrix& outer, const GradedMatrix& inner);

struct ChainComplexSegment {
  std::vector<FreeModule> modules;        // F_0 .. F_L
  std::vector<GradedMatrix> differentials;  // differentials[k-1] : F_k -> F_{k-1}
  int length() const { return static_cast<int>(modules.size()) - 1; }
};

}  // namespace qgrkit

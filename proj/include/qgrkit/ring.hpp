#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgrkit/rational.hpp"

namespace qgrkit {

inline constexpr int kMaxVars = 4;

// Exponent vector packed into 16-bit lanes (x0 in the top lane) together with
// its weighted degree. Lanes stay below 2^15 so that lane-wise sums and
// differences never carry.
struct Monomial {
  uint64_t bits = 0;
  int32_t degree = 0;

  int exponent(int var) const { return static_cast<int>((bits >> (16 * (kMaxVars - 1 - var))) & 0xffffu); }
  bool is_one() const { return bits == 0; }

  // Weighted degree first, then lexicographic with x0 > x1 > x2 > x3.
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    if (a.degree != b.degree) return a.degree <=> b.degree;
    return a.bits <=> b.bits;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.bits == b.bits; }
};

inline bool divides(const Monomial& a, const Monomial& b) {
  constexpr uint64_t guard = 0x8000800080008000ull;
  return (((b.bits | guard) - a.bits) & guard) == guard;
}

Monomial operator*(const Monomial& a, const Monomial& b);
// Requires divides(b, a).
Monomial operator/(const Monomial& a, const Monomial& b);

struct PolyTerm {
  Monomial mono;
  Rational coeff;
};

// Homogeneous polynomial; terms sorted strictly decreasing, no zero coefficients.
struct Polynomial {
  int degree = 0;
  std::vector<PolyTerm> terms;

  bool is_zero() const { return terms.empty(); }
  const PolyTerm& lead() const { return terms.front(); }
  friend bool operator==(const Polynomial& a, const Polynomial& b);
};

class RingDescriptor;
using Ring = std::shared_ptr<const RingDescriptor>;

class RingDescriptor {
 public:
  RingDescriptor(std::vector<int> weights, std::optional<Polynomial> relation, std::optional<int> n_param,
                 std::string name);

  int num_vars() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& weights() const { return weights_; }
  int weight(int var) const { return weights_[var]; }
  int max_weight() const;
  const std::optional<Polynomial>& relation() const { return relation_; }
  bool is_quotient() const { return relation_.has_value(); }
  std::optional<int> n_param() const { return n_param_; }
  std::optional<int> degree_d() const { return degree_d_; }
  int s_total() const { return s_total_; }
  std::optional<int> kappa() const;
  const std::string& name() const { return name_; }
  // Stable text identifying weights and relation, used as a cache key.
  std::string fingerprint() const;

  Monomial monomial(const std::vector<int>& exponents) const;
  Monomial variable(int var, int power = 1) const;
  Monomial lcm(const Monomial& a, const Monomial& b) const;
  Monomial gcd(const Monomial& a, const Monomial& b) const;
  std::string format(const Monomial& m) const;

  // Normal-form monomial basis of R_k, sorted decreasing; empty for k < 0.
  const std::vector<Monomial>& basis(int k) const;
  // All monomials of the polynomial ring in degree k (ignores the relation).
  const std::vector<Monomial>& all_monomials(int k) const;

 private:
  std::vector<Monomial> enumerate(int k) const;

  std::vector<int> weights_;
  std::optional<Polynomial> relation_;
  std::optional<int> n_param_;
  std::optional<int> degree_d_;
  int s_total_ = 0;
  std::string name_;

  mutable std::mutex memo_mutex_;
  mutable std::vector<std::unique_ptr<std::vector<Monomial>>> all_memo_;
  mutable std::vector<std::unique_ptr<std::vector<Monomial>>> basis_memo_;
};

// B = Q[x0..x3] with weights (1, 2, 2n-1, 4n-3), or A = B/(x0x3 + x1^{2n-1} + x2^2).
Ring make_ring(int n, bool quotient);
// General weighted polynomial ring, optionally modulo one homogeneous relation.
Ring make_weighted_ring(std::vector<int> weights, std::optional<Polynomial> relation = std::nullopt,
                        std::string name = "custom");

// ---- polynomial arithmetic (all inputs homogeneous) ----
Polynomial poly_zero(int degree);
Polynomial poly_monomial(const Monomial& m, Rational c = 1);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const Rational& c);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul_term(const Polynomial& a, const Monomial& m, const Rational& c);
Polynomial poly_from_terms(int degree, std::vector<PolyTerm> terms);  // sorts and merges

// Reduction modulo the ring relation; identity when the ring has none.
Polynomial normal_form(const Polynomial& p, const RingDescriptor& ring);
Polynomial ring_mul(const Polynomial& a, const Polynomial& b, const RingDescriptor& ring);

std::vector<Monomial> monomial_basis(const RingDescriptor& ring, int k);
long hilbert_dim(const RingDescriptor& ring, int k);

// Grammar: terms such as `3*x0^2*x3 - 1/2*x1^3`; variables x0..x{m}.
Polynomial parse_polynomial(std::string_view text, const RingDescriptor& ring);
std::string format_polynomial(const Polynomial& p, const RingDescriptor& ring);

}  // namespace qgrkit

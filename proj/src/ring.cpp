#include "qgrkit/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qgrkit/error.hpp"

namespace qgrkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kInvalidMap: return "invalid-map";
    case ErrorKind::kNotApplicable: return "not-applicable";
    case ErrorKind::kStabilizationNotReached: return "stabilization-not-reached";
    case ErrorKind::kOracleDisagreement: return "oracle-disagreement";
    case ErrorKind::kNotModuleRepresentable: return "not-module-representable";
    case ErrorKind::kInvalidIndex: return "invalid-index";
    case ErrorKind::kLiftFailure: return "lift-failure";
    case ErrorKind::kParse: return "parse-error";
  }
  return "unknown";
}

namespace {

constexpr uint64_t kLaneGuard = 0x8000800080008000ull;

uint64_t pack(const std::vector<int>& e) {
  uint64_t bits = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] >= 0x8000) throw QgrError(ErrorKind::kInvalidInput, "exponent out of range");
    bits |= static_cast<uint64_t>(e[i]) << (16 * (kMaxVars - 1 - i));
  }
  return bits;
}

}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r{a.bits + b.bits, a.degree + b.degree};
  if (r.bits & kLaneGuard) throw QgrError(ErrorKind::kInvalidInput, "exponent overflow");
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) { return Monomial{a.bits - b.bits, a.degree - b.degree}; }

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms.size() != b.terms.size()) return false;
  if (a.terms.empty()) return true;
  if (a.degree != b.degree) return false;
  for (size_t i = 0; i < a.terms.size(); ++i) {
    if (!(a.terms[i].mono == b.terms[i].mono) || a.terms[i].coeff != b.terms[i].coeff) return false;
  }
  return true;
}

RingDescriptor::RingDescriptor(std::vector<int> weights, std::optional<Polynomial> relation,
                               std::optional<int> n_param, std::string name)
    : weights_(std::move(weights)), relation_(std::move(relation)), n_param_(n_param), name_(std::move(name)) {
  if (weights_.empty() || static_cast<int>(weights_.size()) > kMaxVars) {
    throw QgrError(ErrorKind::kInvalidParameter, "ring must have between 1 and 4 variables");
  }
  for (int w : weights_) {
    if (w < 1) throw QgrError(ErrorKind::kInvalidParameter, "weights must be positive");
    s_total_ += w;
  }
  if (relation_) {
    if (relation_->is_zero()) throw QgrError(ErrorKind::kInvalidParameter, "relation must be nonzero");
    for (const auto& t : relation_->terms) {
      if (t.mono.degree != relation_->degree) {
        throw QgrError(ErrorKind::kInvalidParameter, "relation is not homogeneous");
      }
    }
    degree_d_ = relation_->degree;
    // Keep the relation monic so one-step reductions need no division.
    *relation_ = poly_scale(*relation_, relation_->lead().coeff.inverse());
  }
}

int RingDescriptor::max_weight() const { return *std::max_element(weights_.begin(), weights_.end()); }

std::optional<int> RingDescriptor::kappa() const {
  if (!degree_d_) return std::nullopt;
  return *degree_d_ - s_total_;
}

std::string RingDescriptor::fingerprint() const {
  std::ostringstream os;
  os << "w";
  for (int w : weights_) os << ":" << w;
  if (relation_) os << "|f=" << format_polynomial(*relation_, *this);
  return os.str();
}

Monomial RingDescriptor::monomial(const std::vector<int>& exponents) const {
  if (static_cast<int>(exponents.size()) != num_vars()) {
    throw QgrError(ErrorKind::kInvalidInput, "exponent vector has wrong length");
  }
  Monomial m{pack(exponents), 0};
  for (int i = 0; i < num_vars(); ++i) m.degree += exponents[i] * weights_[i];
  return m;
}

Monomial RingDescriptor::variable(int var, int power) const {
  std::vector<int> e(num_vars(), 0);
  e.at(var) = power;
  return monomial(e);
}

Monomial RingDescriptor::lcm(const Monomial& a, const Monomial& b) const {
  std::vector<int> e(num_vars());
  for (int i = 0; i < num_vars(); ++i) e[i] = std::max(a.exponent(i), b.exponent(i));
  return monomial(e);
}

Monomial RingDescriptor::gcd(const Monomial& a, const Monomial& b) const {
  std::vector<int> e(num_vars());
  for (int i = 0; i < num_vars(); ++i) e[i] = std::min(a.exponent(i), b.exponent(i));
  return monomial(e);
}

std::string RingDescriptor::format(const Monomial& m) const {
  std::string out;
  for (int i = 0; i < num_vars(); ++i) {
    int e = m.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::vector<Monomial> RingDescriptor::enumerate(int k) const {
  std::vector<Monomial> out;
  if (k < 0) return out;
  std::vector<int> e(num_vars(), 0);
  // Recursive fill of the exponent tuple, last variable determined by the remainder.
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == num_vars() - 1) {
      if (remaining % weights_[var] != 0) return;
      e[var] = remaining / weights_[var];
      out.push_back(monomial(e));
      return;
    }
    for (int p = remaining / weights_[var]; p >= 0; --p) {
      e[var] = p;
      self(self, var + 1, remaining - p * weights_[var]);
    }
    e[var] = 0;
  };
  rec(rec, 0, k);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return b < a; });
  return out;
}

const std::vector<Monomial>& RingDescriptor::all_monomials(int k) const {
  static const std::vector<Monomial> kEmpty;
  if (k < 0) return kEmpty;
  std::lock_guard lock(memo_mutex_);
  if (static_cast<int>(all_memo_.size()) <= k) all_memo_.resize(k + 1);
  if (!all_memo_[k]) all_memo_[k] = std::make_unique<std::vector<Monomial>>(enumerate(k));
  return *all_memo_[k];
}

const std::vector<Monomial>& RingDescriptor::basis(int k) const {
  static const std::vector<Monomial> kEmpty;
  if (k < 0) return kEmpty;
  if (!relation_) return all_monomials(k);
  const auto& all = all_monomials(k);
  std::lock_guard lock(memo_mutex_);
  if (static_cast<int>(basis_memo_.size()) <= k) basis_memo_.resize(k + 1);
  if (!basis_memo_[k]) {
    auto v = std::make_unique<std::vector<Monomial>>();
    const Monomial& lead = relation_->lead().mono;
    for (const auto& m : all) {
      if (!divides(lead, m)) v->push_back(m);
    }
    basis_memo_[k] = std::move(v);
  }
  return *basis_memo_[k];
}

Ring make_weighted_ring(std::vector<int> weights, std::optional<Polynomial> relation, std::string name) {
  return std::make_shared<RingDescriptor>(std::move(weights), std::move(relation), std::nullopt, std::move(name));
}

Ring make_ring(int n, bool quotient) {
  if (n < 2) throw QgrError(ErrorKind::kInvalidParameter, "n must be at least 2");
  if (4 * n - 3 >= 0x8000) throw QgrError(ErrorKind::kInvalidParameter, "n too large");
  std::vector<int> weights{1, 2, 2 * n - 1, 4 * n - 3};
  std::optional<Polynomial> rel;
  if (quotient) {
    RingDescriptor plain(weights, std::nullopt, n, "B");
    Polynomial f = poly_from_terms(4 * n - 2, {{plain.monomial({1, 0, 0, 1}), 1},
                                               {plain.monomial({0, 2 * n - 1, 0, 0}), 1},
                                               {plain.monomial({0, 0, 2, 0}), 1}});
    rel = std::move(f);
  }
  return std::make_shared<RingDescriptor>(std::move(weights), std::move(rel), n, quotient ? "A" : "B");
}

// ---------------------------------------------------------------- arithmetic

Polynomial poly_zero(int degree) { return Polynomial{degree, {}}; }

Polynomial poly_monomial(const Monomial& m, Rational c) {
  Polynomial p{m.degree, {}};
  if (!c.is_zero()) p.terms.push_back({m, std::move(c)});
  return p;
}

Polynomial poly_from_terms(int degree, std::vector<PolyTerm> terms) {
  std::sort(terms.begin(), terms.end(), [](const PolyTerm& a, const PolyTerm& b) { return b.mono < a.mono; });
  Polynomial p{degree, {}};
  for (auto& t : terms) {
    if (t.mono.degree != degree) throw QgrError(ErrorKind::kInvalidInput, "polynomial is not homogeneous");
    if (!p.terms.empty() && p.terms.back().mono == t.mono) {
      p.terms.back().coeff += t.coeff;
      if (p.terms.back().coeff.is_zero()) p.terms.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms.push_back(std::move(t));
    }
  }
  return p;
}

namespace {

// a + c * b, both sorted decreasing.
Polynomial add_scaled(const Polynomial& a, const Polynomial& b, const Rational& c) {
  if (b.is_zero() || c.is_zero()) return a;
  if (a.is_zero()) return poly_scale(b, c);
  if (a.degree != b.degree) throw QgrError(ErrorKind::kInvalidInput, "adding polynomials of different degree");
  Polynomial r{a.degree, {}};
  r.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() || (i < a.terms.size() && b.terms[j].mono < a.terms[i].mono)) {
      r.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size() || a.terms[i].mono < b.terms[j].mono) {
      r.terms.push_back({b.terms[j].mono, c * b.terms[j].coeff});
      ++j;
    } else {
      Rational s = a.terms[i].coeff + c * b.terms[j].coeff;
      if (!s.is_zero()) r.terms.push_back({a.terms[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return add_scaled(a, b, 1); }
Polynomial poly_sub(const Polynomial& a, const Polynomial& b) { return add_scaled(a, b, -1); }

Polynomial poly_scale(const Polynomial& a, const Rational& c) {
  Polynomial r{a.degree, {}};
  if (c.is_zero()) return r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) r.terms.push_back({t.mono, t.coeff * c});
  return r;
}

Polynomial poly_mul_term(const Polynomial& a, const Monomial& m, const Rational& c) {
  Polynomial r{a.degree + m.degree, {}};
  if (c.is_zero()) return r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) r.terms.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial r = poly_zero(a.degree + b.degree);
  for (const auto& t : b.terms) r = poly_add(r, poly_mul_term(a, t.mono, t.coeff));
  return r;
}

Polynomial normal_form(const Polynomial& p, const RingDescriptor& ring) {
  if (!ring.relation()) return p;
  const Polynomial& f = *ring.relation();
  const Monomial& lead = f.lead().mono;
  Polynomial work = p;
  Polynomial done{p.degree, {}};
  while (!work.is_zero()) {
    // Terms are processed from the top; anything not divisible by the lead is final.
    const PolyTerm t = work.terms.front();
    if (divides(lead, t.mono)) {
      work = add_scaled(work, poly_mul_term(f, t.mono / lead, 1), -t.coeff);
    } else {
      done.terms.push_back(t);
      work.terms.erase(work.terms.begin());
    }
  }
  return done;
}

Polynomial ring_mul(const Polynomial& a, const Polynomial& b, const RingDescriptor& ring) {
  return normal_form(poly_mul(a, b), ring);
}

std::vector<Monomial> monomial_basis(const RingDescriptor& ring, int k) { return ring.basis(k); }

long hilbert_dim(const RingDescriptor& ring, int k) { return static_cast<long>(ring.basis(k).size()); }

// ---------------------------------------------------------------- text grammar

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingDescriptor& ring) : s_(text), ring_(ring) {}

  Polynomial parse() {
    std::vector<PolyTerm> terms;
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      terms.push_back(parse_term(sign));
      skip_ws();
    }
    if (terms.empty()) throw ParseError("empty polynomial", pos_);
    int degree = terms.front().mono.degree;
    for (const auto& t : terms) {
      if (t.mono.degree != degree) throw ParseError("polynomial is not homogeneous", pos_);
    }
    return poly_from_terms(degree, std::move(terms));
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  long parse_int() {
    size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", pos_);
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  PolyTerm parse_term(int sign) {
    Rational coeff = sign;
    std::vector<int> e(ring_.num_vars(), 0);
    bool any = false;
    while (true) {
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        size_t start = pos_;
        parse_int();
        if (peek() == '/') {
          ++pos_;
          parse_int();
        }
        coeff *= Rational::parse(s_.substr(start, pos_ - start));
      } else if (peek() == 'x') {
        ++pos_;
        size_t at = pos_;
        long var = parse_int();
        if (var < 0 || var >= ring_.num_vars()) throw ParseError("unknown variable", at);
        long power = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          skip_ws();
          power = parse_int();
        }
        e[var] += static_cast<int>(power);
      } else {
        throw ParseError("expected coefficient or variable", pos_);
      }
      any = true;
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    if (!any) throw ParseError("empty term", pos_);
    return PolyTerm{ring_.monomial(e), coeff};
  }

  std::string_view s_;
  const RingDescriptor& ring_;
  size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingDescriptor& ring) {
  return PolyParser(text, ring).parse();
}

std::string format_polynomial(const Polynomial& p, const RingDescriptor& ring) {
  if (p.is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < p.terms.size(); ++i) {
    const auto& t = p.terms[i];
    Rational c = t.coeff;
    if (i == 0) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    if (c.sign() < 0) c = -c;
    bool unit = c.is_one();
    if (!unit) out += c.to_string();
    if (!t.mono.is_one()) {
      if (!unit) out += "*";
      out += ring.format(t.mono);
    } else if (unit) {
      out += "1";
    }
  }
  return out;
}

}  // namespace qgrkit

#include "qgrkit/free_module.hpp"

#include <algorithm>

#include "qgrkit/error.hpp"

namespace qgrkit {

long FreeModule::graded_rank(int k) const {
  long total = 0;
  for (int b : degrees) total += hilbert_dim(*ring, k - b);
  return total;
}

bool operator==(const Vec& a, const Vec& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i) {
    const auto& x = a.terms[i];
    const auto& y = b.terms[i];
    if (x.comp != y.comp || x.mono.bits != y.mono.bits || x.coeff != y.coeff) return false;
  }
  return a.terms.empty() || a.degree == b.degree;
}

Vec vec_zero(int degree) { return Vec{degree, {}}; }

Vec vec_basis(const FreeModule& F, int comp) {
  return Vec{F.degrees.at(comp), {{comp, Monomial{}, Rational(1)}}};
}

Vec vec_monomial(const FreeModule& F, int comp, const Monomial& m, Rational c) {
  Vec v{F.degrees.at(comp) + m.degree, {}};
  if (!c.is_zero()) v.terms.push_back({comp, m, std::move(c)});
  return v;
}

Vec vec_add_scaled(const Vec& a, const Vec& b, const Rational& c) {
  if (b.is_zero() || c.is_zero()) return a;
  if (a.is_zero()) return vec_scale(b, c);
  if (a.degree != b.degree) throw QgrError(ErrorKind::kInvalidInput, "adding module elements of different degree");
  Vec r{a.degree, {}};
  r.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size()) {
      r.terms.push_back(a.terms[i++]);
      continue;
    }
    if (i == a.terms.size()) {
      r.terms.push_back({b.terms[j].comp, b.terms[j].mono, c * b.terms[j].coeff});
      ++j;
      continue;
    }
    const auto& x = a.terms[i];
    const auto& y = b.terms[j];
    if (x.comp == y.comp && x.mono.bits == y.mono.bits) {
      Rational s = Rational::sub_mul(x.coeff, -c, y.coeff);
      if (!s.is_zero()) r.terms.push_back({x.comp, x.mono, std::move(s)});
      ++i;
      ++j;
    } else if (term_greater(x.comp, x.mono, y.comp, y.mono)) {
      r.terms.push_back(x);
      ++i;
    } else {
      r.terms.push_back({y.comp, y.mono, c * y.coeff});
      ++j;
    }
  }
  return r;
}

Vec vec_scale(const Vec& a, const Rational& c) {
  Vec r{a.degree, {}};
  if (c.is_zero()) return r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) r.terms.push_back({t.comp, t.mono, t.coeff * c});
  return r;
}

Vec vec_mul_term(const Vec& a, const Monomial& m, const Rational& c) {
  Vec r{a.degree + m.degree, {}};
  if (c.is_zero()) return r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) r.terms.push_back({t.comp, t.mono * m, t.coeff * c});
  return r;
}

Vec vec_mul_poly(const Vec& a, const Polynomial& p) {
  Vec r = vec_zero(a.degree + p.degree);
  for (const auto& t : p.terms) r = vec_add(r, vec_mul_term(a, t.mono, t.coeff));
  return r;
}

Vec vec_from_components(const FreeModule& F, int degree, const std::vector<Polynomial>& comps) {
  if (static_cast<int>(comps.size()) != F.rank()) throw QgrError(ErrorKind::kInvalidInput, "component count mismatch");
  std::vector<VecTerm> terms;
  for (int j = 0; j < F.rank(); ++j) {
    for (const auto& t : comps[j].terms) {
      if (t.mono.degree + F.degrees[j] != degree) {
        throw QgrError(ErrorKind::kInvalidInput, "inhomogeneous module element");
      }
      terms.push_back({j, t.mono, t.coeff});
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const VecTerm& a, const VecTerm& b) { return term_greater(a.comp, a.mono, b.comp, b.mono); });
  return Vec{degree, std::move(terms)};
}

Polynomial vec_component(const Vec& v, int comp, int poly_degree) {
  Polynomial p{poly_degree, {}};
  for (const auto& t : v.terms) {
    if (t.comp == comp) p.terms.push_back({t.mono, t.coeff});
  }
  return p;
}

std::vector<Polynomial> vec_components(const FreeModule& F, const Vec& v) {
  std::vector<Polynomial> out;
  out.reserve(F.rank());
  for (int j = 0; j < F.rank(); ++j) out.push_back(Polynomial{v.degree - F.degrees[j], {}});
  for (const auto& t : v.terms) out[t.comp].terms.push_back({t.mono, t.coeff});
  return out;
}

void TermAccumulator::add(int comp, const Monomial& m, const Rational& c) {
  auto [it, inserted] = map_.try_emplace(Key{comp, m}, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) map_.erase(it);
}

void TermAccumulator::add_scaled(std::span<const VecTerm> terms, const Monomial& m, const Rational& c) {
  for (const auto& t : terms) add(t.comp, t.mono * m, c * t.coeff);
}

Vec vec_normal_form(const Vec& v, const RingDescriptor& ring) {
  if (!ring.relation()) return v;
  const Polynomial& f = *ring.relation();
  const Monomial& lead = f.lead().mono;
  bool any = false;
  for (const auto& t : v.terms) {
    if (divides(lead, t.mono)) {
      any = true;
      break;
    }
  }
  if (!any) return v;
  TermAccumulator acc;
  for (const auto& t : v.terms) acc.add(t.comp, t.mono, t.coeff);
  Vec done{v.degree, {}};
  while (!acc.empty()) {
    auto it = acc.top();
    int comp = it->first.comp;
    Monomial mono = it->first.mono;
    Rational c = std::move(it->second);
    acc.erase(it);
    if (!divides(lead, mono)) {
      done.terms.push_back({comp, mono, std::move(c)});
      continue;
    }
    // f is monic; subtract c * (mono / lead) * f, whose lead cancels the removed term.
    Monomial q = mono / lead;
    for (size_t k = 1; k < f.terms.size(); ++k) acc.add(comp, f.terms[k].mono * q, -(c * f.terms[k].coeff));
  }
  return done;
}

Vec vec_substitute(const Vec& v, const std::vector<Vec>& images, int degree_shift) {
  Vec r = vec_zero(v.degree + degree_shift);
  // Group by component to multiply each image by a polynomial once.
  std::vector<std::vector<PolyTerm>> by_comp(images.size());
  for (const auto& t : v.terms) by_comp.at(t.comp).push_back({t.mono, t.coeff});
  for (size_t j = 0; j < images.size(); ++j) {
    if (by_comp[j].empty() || images[j].is_zero()) continue;
    for (const auto& pt : by_comp[j]) r = vec_add(r, vec_mul_term(images[j], pt.mono, pt.coeff));
  }
  return r;
}

Vec vec_reindex(const Vec& v, const std::vector<int>& new_index) {
  std::vector<VecTerm> terms;
  terms.reserve(v.terms.size());
  for (const auto& t : v.terms) {
    int c = new_index.at(t.comp);
    if (c >= 0) terms.push_back({c, t.mono, t.coeff});
  }
  std::sort(terms.begin(), terms.end(),
            [](const VecTerm& a, const VecTerm& b) { return term_greater(a.comp, a.mono, b.comp, b.mono); });
  return Vec{v.degree, std::move(terms)};
}

std::string format_vec(const Vec& v, const RingDescriptor& ring) {
  if (v.is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < v.terms.size(); ++i) {
    const auto& t = v.terms[i];
    Rational c = t.coeff;
    if (i > 0) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    if (c.sign() < 0) c = -c;
    if (!c.is_one()) out += c.to_string() + "*";
    if (!t.mono.is_one()) out += ring.format(t.mono) + "*";
    out += "e" + std::to_string(t.comp);
  }
  return out;
}

Vec GradedMatrix::apply(const Vec& v) const { return vec_substitute(v, columns, 0); }

GradedMatrix compose(const GradedMatrix& outer, const GradedMatrix& inner) {
  GradedMatrix r{inner.source, outer.target, {}};
  r.columns.reserve(inner.columns.size());
  for (const auto& c : inner.columns) r.columns.push_back(vec_normal_form(outer.apply(c), *outer.target.ring));
  return r;
}

}  // namespace qgrkit

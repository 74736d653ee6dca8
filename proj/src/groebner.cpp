#include "qgrkit/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "qgrkit/error.hpp"

namespace qgrkit {

namespace {

int find_reducer(const VecTerm& t, const std::vector<const Vec*>& basis, const std::vector<std::vector<int>>& by_comp) {
  if (t.comp >= static_cast<int>(by_comp.size())) return -1;
  for (int idx : by_comp[t.comp]) {
    if (divides(basis[idx]->lead().mono, t.mono)) return idx;
  }
  return -1;
}

}  // namespace

Vec reduce_by(const Vec& v, const std::vector<const Vec*>& basis, const std::vector<std::vector<int>>& by_comp,
              std::vector<ReductionStep>* steps) {
  TermAccumulator acc;
  for (const auto& t : v.terms) acc.add(t.comp, t.mono, t.coeff);
  Vec done{v.degree, {}};
  while (!acc.empty()) {
    auto it = acc.top();
    VecTerm t{it->first.comp, it->first.mono, std::move(it->second)};
    acc.erase(it);
    int idx = find_reducer(t, basis, by_comp);
    if (idx < 0) {
      done.terms.push_back(std::move(t));
      continue;
    }
    const Vec& g = *basis[idx];
    Monomial m = t.mono / g.lead().mono;
    if (steps) steps->push_back({idx, m, t.coeff});  // leads are monic
    acc.add_scaled(std::span(g.terms).subspan(1), m, -t.coeff);
  }
  return done;
}

std::vector<GbInput> relation_multiples(const FreeModule& F) {
  std::vector<GbInput> out;
  if (!F.ring->relation()) return out;
  const Polynomial& f = *F.ring->relation();
  for (int j = 0; j < F.rank(); ++j) {
    Vec v{F.degrees[j] + f.degree, {}};
    for (const auto& t : f.terms) v.terms.push_back({j, t.mono, t.coeff});
    out.push_back({std::move(v), false});
  }
  return out;
}

namespace {

class GbRunner {
 public:
  GbRunner(const FreeModule& ambient, const std::vector<GbInput>& inputs, const GbOptions& options)
      : ambient_(ambient), inputs_(inputs), options_(options) {
    track_ = options.mode != SyzygyMode::kNone && options.want_syzygies;
    by_comp_.resize(ambient.rank());
    result_.ambient = ambient;
    result_.syzygy_source.ring = ambient.ring;
    result_.max_degree = options.max_degree;
    if (options.mode == SyzygyMode::kAll) {
      coord_.assign(inputs.size(), -1);
      for (size_t k = 0; k < inputs.size(); ++k) {
        if (inputs[k].tracked) {
          coord_[k] = result_.syzygy_source.rank();
          result_.syzygy_source.degrees.push_back(inputs[k].vec.degree);
        }
      }
    } else {
      coord_.assign(inputs.size(), -1);
    }
  }

  GbResult run() {
    // Processing order: degree, then aux before tracked, then input order.
    std::vector<int> order;
    for (size_t k = 0; k < inputs_.size(); ++k) {
      const Vec& v = inputs_[k].vec;
      if (!v.is_zero()) {
        for (const auto& t : v.terms) {
          if (t.comp < 0 || t.comp >= ambient_.rank() || t.mono.degree + ambient_.degrees[t.comp] != v.degree) {
            throw QgrError(ErrorKind::kInvalidInput, "inhomogeneous generator in Groebner input");
          }
        }
      }
      order.push_back(static_cast<int>(k));
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (inputs_[a].vec.degree != inputs_[b].vec.degree) return inputs_[a].vec.degree < inputs_[b].vec.degree;
      return !inputs_[a].tracked && inputs_[b].tracked;
    });

    size_t next_input = 0;
    while (true) {
      std::optional<int> deg;
      if (next_input < order.size()) deg = inputs_[order[next_input]].vec.degree;
      if (!pairs_.empty() && (!deg || pairs_.begin()->first < *deg)) deg = pairs_.begin()->first;
      if (!deg) break;
      if (options_.max_degree && *deg > *options_.max_degree) break;
      int D = *deg;
      auto it = pairs_.find(D);
      if (it != pairs_.end()) {
        std::vector<std::pair<int, int>> batch = std::move(it->second);
        pairs_.erase(it);
        std::sort(batch.begin(), batch.end());
        for (auto [i, j] : batch) process_pair(i, j);
      }
      while (next_input < order.size() && inputs_[order[next_input]].vec.degree == D) {
        process_input(order[next_input]);
        ++next_input;
      }
    }
    for (auto& e : elems_) result_.basis.push_back(std::move(e));
    return std::move(result_);
  }

 private:
  bool pending(int a, int b) const {
    if (a > b) std::swap(a, b);
    return pending_[b][a] != 0;
  }

  void add_element(Vec v, Vec rep) {
    Rational inv = v.lead().coeff.inverse();
    if (!inv.is_one()) {
      v = vec_scale(v, inv);
      if (track_) rep = vec_scale(rep, inv);
    }
    int n = static_cast<int>(elems_.size());
    int comp = v.lead().comp;
    pending_.emplace_back(n, 0);
    for (int i : by_comp_[comp]) {
      const Monomial& mi = elems_[i].vec.lead().mono;
      Monomial l = ambient_.ring->lcm(mi, v.lead().mono);
      int pd = l.degree + ambient_.degrees[comp];
      pairs_[pd].emplace_back(i, n);
      pending_[n][i] = 1;
    }
    by_comp_[comp].push_back(n);
    elems_.push_back(GbElement{std::move(v), std::move(rep)});
    ptrs_.push_back(&elems_.back().vec);
  }

  // Reduces v (with representation rep); returns the remainder and updates rep.
  Vec reduce(const Vec& v, Vec* rep) {
    std::vector<ReductionStep> steps;
    Vec r = reduce_by(v, ptrs_, by_comp_, track_ ? &steps : nullptr);
    if (track_ && rep && !steps.empty()) {
      // Gather every contribution first and merge once; updating rep step by
      // step is quadratic in its size.
      std::vector<VecTerm> terms = std::move(rep->terms);
      for (const auto& s : steps) {
        for (const auto& t : elems_[s.index].rep.terms) terms.push_back({t.comp, t.mono * s.mono, -(s.coeff * t.coeff)});
      }
      std::sort(terms.begin(), terms.end(),
                [](const VecTerm& a, const VecTerm& b) { return term_greater(a.comp, a.mono, b.comp, b.mono); });
      std::vector<VecTerm> merged;
      merged.reserve(terms.size());
      for (auto& t : terms) {
        if (!merged.empty() && merged.back().comp == t.comp && merged.back().mono.bits == t.mono.bits) {
          merged.back().coeff += t.coeff;
          if (merged.back().coeff.is_zero()) merged.pop_back();
        } else {
          merged.push_back(std::move(t));
        }
      }
      rep->terms = std::move(merged);
      *rep = vec_normal_form(*rep, *ambient_.ring);
    }
    return r;
  }

  void record_syzygy(Vec rep) {
    if (!track_) return;
    rep = vec_normal_form(rep, *ambient_.ring);
    if (!rep.is_zero()) result_.syzygies.push_back(std::move(rep));
  }

  void process_pair(int i, int j) {
    pending_[j][i] = 0;
    const Vec& gi = elems_[i].vec;
    const Vec& gj = elems_[j].vec;
    int comp = gi.lead().comp;
    Monomial l = ambient_.ring->lcm(gi.lead().mono, gj.lead().mono);
    // Chain criterion.
    for (int k : by_comp_[comp]) {
      if (k == i || k == j) continue;
      if (!divides(elems_[k].vec.lead().mono, l)) continue;
      if (!pending(i, k) && !pending(j, k)) return;
    }
    Monomial mi = l / gi.lead().mono;
    Monomial mj = l / gj.lead().mono;
    Vec s = vec_sub(vec_mul_term(gi, mi, Rational(1)), vec_mul_term(gj, mj, Rational(1)));
    Vec rep;
    if (track_) {
      rep = vec_sub(vec_mul_term(elems_[i].rep, mi, Rational(1)), vec_mul_term(elems_[j].rep, mj, Rational(1)));
      rep.degree = s.degree;
    }
    Vec r = reduce(s, &rep);
    if (r.is_zero()) {
      record_syzygy(std::move(rep));
    } else {
      add_element(std::move(r), std::move(rep));
    }
  }

  void process_input(int k) {
    const GbInput& in = inputs_[k];
    if (in.vec.is_zero()) {
      if (in.tracked && options_.mode == SyzygyMode::kAll && track_) {
        result_.syzygies.push_back(vec_basis(result_.syzygy_source, coord_[k]));
      }
      return;
    }
    Vec rep = vec_zero(in.vec.degree);
    if (track_ && in.tracked) {
      if (options_.mode == SyzygyMode::kAll) {
        rep = vec_basis(result_.syzygy_source, coord_[k]);
      } else {
        // Provisional coordinate; only becomes real if the input is kept.
        rep = Vec{in.vec.degree, {{result_.syzygy_source.rank(), Monomial{}, Rational(1)}}};
      }
    }
    Vec r = reduce(in.vec, &rep);
    if (r.is_zero()) {
      if (in.tracked && options_.mode == SyzygyMode::kAll) {
        record_syzygy(std::move(rep));
      } else if (!in.tracked) {
        record_syzygy(std::move(rep));
      }
      return;
    }
    if (in.tracked) {
      result_.kept.push_back(k);
      if (options_.mode == SyzygyMode::kMinimal) result_.syzygy_source.degrees.push_back(in.vec.degree);
    }
    add_element(std::move(r), std::move(rep));
  }

  const FreeModule& ambient_;
  const std::vector<GbInput>& inputs_;
  GbOptions options_;
  bool track_ = false;
  std::vector<int> coord_;
  std::deque<GbElement> elems_;  // stable addresses for ptrs_
  std::vector<const Vec*> ptrs_;
  std::vector<std::vector<int>> by_comp_;
  std::vector<std::vector<char>> pending_;
  std::map<int, std::vector<std::pair<int, int>>> pairs_;
  GbResult result_;
};

}  // namespace

GbResult gb_run(const FreeModule& ambient, const std::vector<GbInput>& inputs, const GbOptions& options) {
  return GbRunner(ambient, inputs, options).run();
}

GroebnerBasis::GroebnerBasis(FreeModule ambient, std::vector<Vec> elements, std::optional<int> max_degree)
    : ambient_(std::move(ambient)), max_degree_(max_degree) {
  std::vector<GbInput> inputs = relation_multiples(ambient_);
  for (auto& e : elements) inputs.push_back({std::move(e), true});
  GbOptions opts;
  opts.max_degree = max_degree;
  GbResult r = gb_run(ambient_, inputs, opts);
  for (auto& e : r.basis) elements_.push_back(std::move(e.vec));
  index();
}

void GroebnerBasis::index() {
  by_comp_.assign(ambient_.rank(), {});
  for (size_t i = 0; i < elements_.size(); ++i) by_comp_[elements_[i].lead().comp].push_back(static_cast<int>(i));
}

Vec GroebnerBasis::reduce(const Vec& v, std::vector<Polynomial>* quotients) const {
  if (max_degree_ && v.degree > *max_degree_) {
    throw QgrError(ErrorKind::kInvalidInput, "reduction above the truncation degree of a Groebner basis");
  }
  std::vector<const Vec*> ptrs;
  ptrs.reserve(elements_.size());
  for (const auto& e : elements_) ptrs.push_back(&e);
  std::vector<ReductionStep> steps;
  Vec r = reduce_by(v, ptrs, by_comp_, quotients ? &steps : nullptr);
  if (quotients) {
    quotients->clear();
    for (const auto& e : elements_) quotients->push_back(poly_zero(v.degree - e.degree));
    for (const auto& s : steps) {
      (*quotients)[s.index] = poly_add((*quotients)[s.index], poly_monomial(s.mono, s.coeff));
    }
  }
  return r;
}

bool GroebnerBasis::is_lead_multiple(int comp, const Monomial& m) const {
  for (int idx : by_comp_[comp]) {
    if (divides(elements_[idx].lead().mono, m)) return true;
  }
  return false;
}

std::vector<std::pair<int, Monomial>> GroebnerBasis::standard_monomials(int k) const {
  if (max_degree_ && k > *max_degree_) {
    throw QgrError(ErrorKind::kInvalidInput, "graded piece above the truncation degree of a Groebner basis");
  }
  std::vector<std::pair<int, Monomial>> out;
  for (int j = 0; j < ambient_.rank(); ++j) {
    for (const auto& m : ambient_.ring->basis(k - ambient_.degrees[j])) {
      if (!is_lead_multiple(j, m)) out.emplace_back(j, m);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return term_greater(a.first, a.second, b.first, b.second); });
  return out;
}

GroebnerBasis buchberger(const FreeModule& ambient, const std::vector<Vec>& generators) {
  return GroebnerBasis(ambient, generators);
}

Division divide(const Vec& v, const GroebnerBasis& gb) {
  Division d;
  d.remainder = gb.reduce(v, &d.quotients);
  return d;
}

GradedMatrix syzygies(const FreeModule& ambient, const std::vector<Vec>& elements) {
  std::vector<GbInput> inputs;
  for (const auto& e : elements) inputs.push_back({e, true});
  for (auto& a : relation_multiples(ambient)) inputs.push_back(std::move(a));
  GbOptions opts;
  opts.mode = SyzygyMode::kAll;
  GbResult r = gb_run(ambient, inputs, opts);
  GradedMatrix m;
  m.target = r.syzygy_source;
  m.source.ring = ambient.ring;
  for (auto& s : r.syzygies) {
    m.source.degrees.push_back(s.degree);
    m.columns.push_back(std::move(s));
  }
  return m;
}

}  // namespace qgrkit

#include "qgrkit/ext.hpp"

#include <algorithm>
#include <climits>
#include <regex>
#include <sstream>

#include "qgrkit/error.hpp"

namespace qgrkit {

namespace {

std::string dims_text(const std::vector<long>& d) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < d.size(); ++i) os << (i ? ", " : "") << d[i];
  os << "]";
  return os.str();
}

FreeModule position(const Resolution& R, int k) {
  if (k <= R.length()) return R.F(k);
  return FreeModule{R.F(0).ring, {}};
}

bool is_free_rank_one(const PresentedModule& M) { return M.num_generators() == 1 && M.relations().empty(); }

// The polynomial ring covering `R` (R itself when it has no relation).
Ring cover_ring(const Ring& R) {
  if (!R->is_quotient()) return R;
  if (R->n_param()) return make_ring(*R->n_param(), false);
  return make_weighted_ring(R->weights());
}

// The same module viewed over the covering polynomial ring.
PresentedModule to_cover(const PresentedModule& N) {
  const Ring& R = N.ring();
  if (!R->is_quotient()) return N;
  Ring B = cover_ring(R);
  FreeModule F{B, N.generators().degrees};
  std::vector<Vec> rels = N.relations();
  const Polynomial& f = *R->relation();
  for (int j = 0; j < F.rank(); ++j) {
    Vec v{f.degree + F.degrees[j], {}};
    for (const auto& t : f.terms) v.terms.push_back({j, t.mono, t.coeff});
    rels.push_back(std::move(v));
  }
  return PresentedModule(F, std::move(rels), N.name());
}

}  // namespace

// ---------------------------------------------------------------- engine

ExtEngine::ExtEngine(std::optional<std::filesystem::path> cache_dir) : resolutions_(std::move(cache_dir)) {}

std::filesystem::path ExtEngine::cache_directory() const {
  return resolutions_.directory() ? *resolutions_.directory() : std::filesystem::path();
}

std::shared_ptr<const TruncatedResolution> ExtEngine::truncated_resolution(const PresentedModule& M, int t,
                                                                          int length) {
  std::string key = M.fingerprint() + "@" + std::to_string(t);
  std::shared_ptr<const TruncatedResolution> have;
  {
    std::lock_guard lock(mu_);
    auto it = truncations_.find(key);
    if (it != truncations_.end()) have = it->second;
  }
  if (have) {
    const Resolution& r = *have->resolution;
    if (r.length() >= length || r.terminated_at) return have;
  }
  auto out = std::make_shared<TruncatedResolution>();
  out->level = t;
  if (have) {
    out->truncated = have->truncated;
    out->inclusion = have->inclusion;
  } else {
    TruncationResult tr = truncate(M, t);
    out->truncated = tr.module;
    out->inclusion = tr.inclusion;
  }
  auto res = resolutions_.get(out->truncated, length);
  out->resolution = res.resolution;
  out->augmentation = res.augmentation;
  std::lock_guard lock(mu_);
  auto& slot = truncations_[key];
  if (!slot || slot->resolution->length() < out->resolution->length()) slot = out;
  return slot;
}

CochainData ExtEngine::cochains(const Resolution& R, const PresentedModule& N, int top) {
  CochainData cd;
  for (int i = 0; i <= top; ++i) cd.layouts.push_back(hom_layout(position(R, i), N, 0));
  for (int i = 0; i < top; ++i) {
    if (i + 1 > R.length()) {
      cd.coboundary.emplace_back(cd.layouts[i].dim);
      continue;
    }
    const GradedMatrix& d = R.d(i + 1);
    cd.coboundary.push_back(pullback_rows(d.target, d.columns, d.source, N, 0, cd.layouts[i], cd.layouts[i + 1]));
  }
  return cd;
}

namespace {

std::vector<long> cohomology_dims(const CochainData& cd, int i_max) {
  std::vector<long> ranks(i_max + 2, 0);  // ranks[i] = rank of C^{i-1} -> C^i
  for (int i = 0; i <= i_max; ++i) {
    ranks[i + 1] = matrix_rank(cd.coboundary[i], cd.layouts[i + 1].dim);
  }
  std::vector<long> dims;
  for (int i = 0; i <= i_max; ++i) dims.push_back(cd.layouts[i].dim - ranks[i + 1] - ranks[i]);
  return dims;
}

}  // namespace

std::vector<long> ExtEngine::ext_at_level(const PresentedModule& M, const PresentedModule& N, int t, int i_max) {
  auto R = truncated_resolution(M, t, i_max + 1);
  return cohomology_dims(cochains(*R->resolution, N, i_max + 1), i_max);
}

int ExtEngine::b_regularity_bound(const PresentedModule& N) {
  std::string key = N.ring()->fingerprint() + "|" + N.fingerprint();
  {
    std::lock_guard lock(mu_);
    auto it = bounds_.find(key);
    if (it != bounds_.end()) return it->second;
  }
  PresentedModule NB = to_cover(N);
  auto res = resolutions_.get(NB, NB.ring()->num_vars() + 1);
  auto top = res.resolution->max_generator_degree();
  int bound = top ? *top - NB.ring()->s_total() : INT_MIN / 4;
  std::lock_guard lock(mu_);
  bounds_[key] = bound;
  return bound;
}

int ExtEngine::truncation_start(const PresentedModule& M, const PresentedModule& N) {
  int t = M.max_generator_degree() + 1;
  if (!N.is_zero_presentation()) t = std::max(t, b_regularity_bound(N) + 1);
  return t;
}

ExtResult ExtEngine::colimit(const PresentedModule& M, const PresentedModule& N, const ExtOptions& options) {
  ExtResult out;
  int t0 = options.trunc_start ? *options.trunc_start : truncation_start(M, N);
  int cap = options.trunc_cap ? *options.trunc_cap : t0 + 10 * M.ring()->max_weight();
  int window = std::max(1, options.window);
  for (int t = t0; t <= cap; ++t) {
    out.trace.push_back({t, ext_at_level(M, N, t, options.i_max)});
    int sz = static_cast<int>(out.trace.size());
    if (sz >= window) {
      bool same = true;
      for (int k = sz - window; k < sz; ++k) same &= out.trace[k].dims == out.trace.back().dims;
      if (same) {
        out.dims = out.trace.back().dims;
        out.stable_level = out.trace[sz - window].t;
        return out;
      }
    }
  }
  std::ostringstream os;
  os << "Ext did not stabilize for " << M.name() << ", " << N.name() << " up to level " << cap << ":";
  for (const auto& e : out.trace) os << " t=" << e.t << " " << dims_text(e.dims);
  throw QgrError(ErrorKind::kStabilizationNotReached, os.str());
}

ExtResult ExtEngine::ext(const PresentedModule& M, const PresentedModule& N, const ExtOptions& options) {
  if (M.ring()->fingerprint() != N.ring()->fingerprint()) {
    throw QgrError(ErrorKind::kInvalidInput, "Ext arguments live over different rings");
  }
  int top = M.ring()->num_vars() - 1;
  if (options.i_max < 0 || options.i_max > top) {
    throw QgrError(ErrorKind::kInvalidParameter, "i_max must lie in [0, " + std::to_string(top) + "]");
  }
  ExtResult out;
  out.source = M.name();
  out.target = N.name();
  if (M.is_zero_presentation() || N.is_zero_presentation()) {
    out.dims.assign(options.i_max + 1, 0);
    out.certified_by.push_back("zero-module");
    return out;
  }
  // Ext(M, N) = Ext(M(-c), N(-c)); normalizing makes resolutions reusable across twists.
  int c = M.min_generator_degree();
  PresentedModule Mn = twist(M, c), Nn = twist(N, c);
  ExtOptions local = options;
  if (local.trunc_start) *local.trunc_start -= c;
  if (local.trunc_cap) *local.trunc_cap -= c;
  ExtResult col = colimit(Mn, Nn, local);
  out.dims = col.dims;
  out.stable_level = col.stable_level + c;
  for (auto& e : col.trace) out.trace.push_back({e.t + c, e.dims});
  out.certified_by.push_back("truncation-colimit");
  if (!options.oracles) return out;

  auto compare = [&](const char* tag, const std::optional<std::vector<long>>& o, int upto) {
    if (!o) return;
    for (int i = 0; i <= std::min(upto, options.i_max); ++i) {
      if ((*o)[i] != out.dims[i]) {
        throw QgrError(ErrorKind::kOracleDisagreement,
                       std::string("oracle ") + tag + " gives " + dims_text(*o) + " but truncation colimit gives " +
                           dims_text(out.dims) + " for Ext(" + M.name() + ", " + N.name() + ")");
      }
    }
    out.certified_by.push_back(tag);
  };
  compare("forpolinoms", oracle_forpolinoms(M, N, options.i_max), options.i_max);
  compare("basechange", oracle_basechange(M, N, options.i_max), options.i_max);
  compare("chart", oracle_chart(M, N, options.i_max), options.i_max);
  compare("duality", oracle_duality(M, N, options.i_max), 2);
  return out;
}

// ---------------------------------------------------------------- oracles

std::optional<std::vector<long>> ExtEngine::oracle_forpolinoms(const PresentedModule& M, const PresentedModule& N,
                                                               int i_max) {
  const Ring& B = M.ring();
  if (B->is_quotient() || !is_free_rank_one(M) || !is_free_rank_one(N)) return std::nullopt;
  int k = -M.generators().degrees[0], l = -N.generators().degrees[0];
  int m = B->num_vars() - 1;
  std::vector<long> d(i_max + 1, 0);
  d[0] = hilbert_dim(*B, l - k);
  if (m <= i_max) d[m] = hilbert_dim(*B, -B->s_total() - (l - k));
  return d;
}

std::optional<std::vector<long>> ExtEngine::oracle_basechange(const PresentedModule& M, const PresentedModule& N,
                                                              int i_max) {
  const Ring& A = M.ring();
  if (!A->is_quotient() || !is_free_rank_one(M)) return std::nullopt;
  // Ext(A(k), N) = Ext(A, N(-k)) and N(-k) = twist(N, gen degree of A(k)).
  PresentedModule Np = twist(N, M.generators().degrees[0]);
  PresentedModule NB = to_cover(Np);
  const Ring& B = NB.ring();
  int m = B->num_vars() - 1;
  auto res = resolutions_.get(NB, m + 2);
  PresentedModule omega(FreeModule{B, {B->s_total()}}, {}, "B(-s)");
  // E^j = dim Ext^j_B(N', B(-s))_0, dual to local cohomology H^{m+1-j}(N')_0.
  std::vector<long> E = cohomology_dims(cochains(*res.resolution, omega, m + 2), m + 1);
  std::vector<long> d(i_max + 1, 0);
  d[0] = Np.dim(0) - E[m + 1] + E[m];
  for (int i = 1; i <= i_max; ++i) d[i] = (m - i >= 0) ? E[m - i] : 0;
  return d;
}

namespace {

// Module S/(x1^a, x2^b)(shift) over S = Q[x1, x2] with x3 inverted; a = 0 means free.
struct ChartModule {
  bool free = false;
  int a = 0, b = 0;
  int shift = 0;
};

std::optional<ChartModule> chart_model(const PresentedModule& M) {
  const Ring& A = M.ring();
  if (!A->n_param() || !A->is_quotient()) return std::nullopt;
  static const std::regex pat(R"(^(A|chi|Aq01|Q)\((-?\d+)(?:,(-?\d+))?\)$)");
  std::smatch m;
  const std::string& name = M.name();
  if (!std::regex_match(name, m, pat)) return std::nullopt;
  std::string kind = m[1];
  int x = std::stoi(m[2]);
  ChartModule c;
  PresentedModule rebuilt;
  try {
    if (kind == "A" && !m[3].matched) {
      c = {true, 0, 0, x};
      rebuilt = make_free(A, x);
    } else if (kind == "chi" && !m[3].matched) {
      c = {false, 1, 1, x};
      rebuilt = make_chi(A, x);
    } else if (kind == "Aq01" && !m[3].matched) {
      c = {false, 1, 2, x};
      rebuilt = make_Aq01(A, x);
    } else if (kind == "Q" && m[3].matched) {
      int bottom = std::stoi(m[3]);
      c = {false, (x - bottom) / 2 + 1, 1, x};
      rebuilt = make_Q_top_bottom(A, x, bottom);
    } else {
      return std::nullopt;
    }
  } catch (const QgrError&) {
    return std::nullopt;
  }
  // Guard against a module that merely carries a familiar name.
  if (rebuilt.fingerprint() != M.fingerprint()) return std::nullopt;
  return c;
}

// Monomials x1^u x2^v of weighted degree D in S/(x1^a, x2^b), by v.
std::vector<std::pair<int, int>> chart_piece(const ChartModule& N, int w, int D) {
  std::vector<std::pair<int, int>> out;
  if (D < 0) return out;
  for (int v = 0; v * w <= D; ++v) {
    if (!N.free && v >= N.b) break;
    int rest = D - v * w;
    if (rest % 2) continue;
    int u = rest / 2;
    if (!N.free && u >= N.a) continue;
    out.emplace_back(u, v);
  }
  return out;
}

// Matrix rows for multiplication by x1^p x2^q from piece D to piece D + 2p + wq.
std::vector<SparseVec> chart_mult(const ChartModule& N, int w, int D, int p, int q, const Rational& sign,
                                  int col_offset) {
  auto src = chart_piece(N, w, D);
  auto dst = chart_piece(N, w, D + 2 * p + w * q);
  std::vector<SparseVec> rows;
  for (auto [u, v] : src) {
    SparseVec row;
    for (size_t k = 0; k < dst.size(); ++k) {
      if (dst[k].first == u + p && dst[k].second == v + q) row.emplace_back(col_offset + static_cast<int>(k), sign);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::optional<std::vector<long>> ExtEngine::oracle_chart(const PresentedModule& M, const PresentedModule& N,
                                                         int i_max) {
  auto cm = chart_model(M), cn = chart_model(N);
  if (!cm || !cn) return std::nullopt;
  if (cm->free && cn->free) return std::nullopt;
  int n = *M.ring()->n_param();
  int w = 2 * n - 1, period = 4 * n - 3;
  std::vector<long> d(std::max(i_max, 2) + 1, 0);
  // Hom_R(M, N)_0 splits over Z-graded S-degrees D = m*period - c + gamma of N's underlying S/J.
  int c = cm->shift, gamma = cn->shift;
  int e = cm->free ? 0 : 2 * cm->a + w * cm->b;
  int socle_m = cm->free ? 0 : 2 * (cm->a - 1) + w * (cm->b - 1);
  int top_n = cn->free ? 0 : 2 * (cn->a - 1) + w * (cn->b - 1);
  int lo = -e - 1, hi = std::max(socle_m, top_n) + 1;
  auto floor_div = [](long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  for (long m = floor_div(lo + c - gamma, period) - 1; m * period - c + gamma <= hi; ++m) {
    int D0 = static_cast<int>(m * period - c + gamma);
    if (D0 < lo) continue;
    if (cm->free) {
      d[0] += static_cast<long>(chart_piece(*cn, w, D0).size());
      continue;
    }
    int a = cm->a, b = cm->b;
    auto c0 = chart_piece(*cn, w, D0);
    auto c1a = chart_piece(*cn, w, D0 + 2 * a);
    auto c1b = chart_piece(*cn, w, D0 + w * b);
    auto c2 = chart_piece(*cn, w, D0 + 2 * a + w * b);
    int dim1 = static_cast<int>(c1a.size() + c1b.size());
    // d0: phi -> (x1^a phi, x2^b phi)
    auto ra = chart_mult(*cn, w, D0, a, 0, Rational(1), 0);
    auto rb = chart_mult(*cn, w, D0, 0, b, Rational(1), static_cast<int>(c1a.size()));
    std::vector<SparseVec> d0rows;
    for (size_t k = 0; k < ra.size(); ++k) {
      SparseVec row = ra[k];
      row.insert(row.end(), rb[k].begin(), rb[k].end());
      d0rows.push_back(row);
    }
    // d1: (u, v) -> x2^b u - x1^a v
    auto d1rows = chart_mult(*cn, w, D0 + 2 * a, 0, b, Rational(1), 0);
    auto d1b = chart_mult(*cn, w, D0 + w * b, a, 0, Rational(-1), 0);
    d1rows.insert(d1rows.end(), d1b.begin(), d1b.end());
    long r0 = matrix_rank(d0rows, dim1);
    long r1 = matrix_rank(d1rows, static_cast<int>(c2.size()));
    d[0] += static_cast<long>(c0.size()) - r0;
    d[1] += dim1 - r1 - r0;
    d[2] += static_cast<long>(c2.size()) - r1;
  }
  d.resize(i_max + 1, 0);
  return d;
}

std::optional<std::vector<long>> ExtEngine::oracle_duality(const PresentedModule& M, const PresentedModule& N,
                                                           int i_max) {
  const Ring& A = M.ring();
  if (!A->n_param() || !A->is_quotient()) return std::nullopt;
  int n = *A->n_param();
  ExtOptions o;
  o.i_max = 2;
  o.oracles = false;
  std::vector<long> other;
  if (is_free_rank_one(M)) {
    // Ext^i(A(k), N) = Ext^{2-i}(N, A(k-2n-1))
    int k = -M.generators().degrees[0];
    other = ext(N, make_free(A, k - 2 * n - 1), o).dims;
  } else if (is_free_rank_one(N)) {
    // Ext^i(M, A(j)) = Ext^{2-i}(A(j+2n+1), M)
    int j = -N.generators().degrees[0];
    other = ext(make_free(A, j + 2 * n + 1), M, o).dims;
  } else {
    return std::nullopt;
  }
  std::vector<long> d(i_max + 1, 0);
  for (int i = 0; i <= std::min(i_max, 2); ++i) d[i] = other[2 - i];
  return d;
}

// ---------------------------------------------------------------- defaults

namespace {
std::mutex g_engine_mu;
std::unique_ptr<ExtEngine> g_engine;
}  // namespace

ExtEngine& default_engine() {
  std::lock_guard lock(g_engine_mu);
  if (!g_engine) g_engine = std::make_unique<ExtEngine>();
  return *g_engine;
}

void configure_default_engine(std::optional<std::filesystem::path> cache_dir) {
  std::lock_guard lock(g_engine_mu);
  g_engine = std::make_unique<ExtEngine>(std::move(cache_dir));
}

ExtResult ext_qgr(const PresentedModule& M, const PresentedModule& N, const ExtOptions& options) {
  return default_engine().ext(M, N, options);
}

DualityVerdict duality_check(const PresentedModule& M, int i, ExtEngine& engine) {
  const Ring& A = M.ring();
  if (!A->n_param() || !A->is_quotient()) throw QgrError(ErrorKind::kNotApplicable, "duality needs the ring A");
  if (i < 0 || i > 2) throw QgrError(ErrorKind::kInvalidParameter, "duality degree must be 0, 1 or 2");
  int n = *A->n_param();
  ExtOptions o;
  o.oracles = false;
  DualityVerdict v;
  auto lhs = engine.ext(make_free(A, 0), M, o);
  auto rhs = engine.ext(M, make_free(A, -2 * n - 1), o);
  v.lhs = lhs.dim(i);
  v.rhs = rhs.dim(2 - i);
  v.ok = v.lhs == v.rhs;
  if (!v.ok) {
    v.detail = "Ext^" + std::to_string(i) + "(A, " + M.name() + ") = " + std::to_string(v.lhs) + " but Ext^" +
               std::to_string(2 - i) + "(" + M.name() + ", A(" + std::to_string(-2 * n - 1) +
               ")) = " + std::to_string(v.rhs);
  }
  return v;
}

// ---------------------------------------------------------------- classes

namespace {

// Solves phi(y) = target degree by degree, where phi sends generator c of a
// free module to images[c] in T.
class LinearLift {
 public:
  LinearLift(FreeModule src, std::vector<Vec> images, PresentedModule T)
      : src_(std::move(src)), free_(src_, {}), images_(std::move(images)), T_(std::move(T)) {}

  std::optional<Vec> solve(const Vec& target) {
    int b = target.degree;
    if (target.is_zero()) return vec_zero(b);
    auto it = cache_.find(b);
    if (it == cache_.end()) {
      auto E = std::make_unique<Echelon>(static_cast<int>(T_.dim(b)), true);
      for (const auto& [c, m] : free_.basis(b)) E->insert(T_.coords(vec_mul_term(images_[c], m, Rational(1))));
      it = cache_.emplace(b, std::move(E)).first;
    }
    auto sol = it->second->solve(T_.coords(target));
    if (!sol) return std::nullopt;
    Vec y = vec_zero(b);
    const auto& basis = free_.basis(b);
    for (const auto& [idx, x] : *sol) y = vec_add_scaled(y, vec_monomial(src_, basis[idx].first, basis[idx].second), x);
    return y;
  }

 private:
  FreeModule src_;
  PresentedModule free_;
  std::vector<Vec> images_;
  PresentedModule T_;
  std::map<int, std::unique_ptr<Echelon>> cache_;
};

// Images of F_0's generators of a truncated resolution inside the original module.
std::vector<Vec> augmentation_into(const TruncatedResolution& G, const PresentedModule& X) {
  std::vector<Vec> out;
  for (const auto& a : G.augmentation) out.push_back(X.normal_form(vec_substitute(a, G.inclusion.images)));
  return out;
}

// Lifts phi0 : F_{p0} -> X (images in X) to maps alpha_k : F_{p0+k} -> G_k, k = 0..steps.
std::vector<std::vector<Vec>> lift_chain(const Resolution& F, int p0, const std::vector<Vec>& phi0,
                                         const PresentedModule& X, const TruncatedResolution& G, int steps) {
  std::vector<std::vector<Vec>> alpha;
  const Ring& ring = X.ring();
  for (int k = 0; k <= steps; ++k) {
    FreeModule Gk = position(*G.resolution, k);
    std::unique_ptr<LinearLift> lift;
    if (k == 0) {
      lift = std::make_unique<LinearLift>(Gk, augmentation_into(G, X), X);
    } else {
      FreeModule Gprev = position(*G.resolution, k - 1);
      std::vector<Vec> cols = k <= G.resolution->length() ? G.resolution->d(k).columns : std::vector<Vec>{};
      lift = std::make_unique<LinearLift>(Gk, cols, PresentedModule(Gprev, {}));
    }
    std::vector<Vec> images;
    FreeModule Fk = position(F, p0 + k);
    for (int g = 0; g < Fk.rank(); ++g) {
      Vec rhs;
      if (k == 0) {
        rhs = X.normal_form(phi0[g]);
      } else {
        rhs = vec_normal_form(vec_substitute(F.d(p0 + k).columns[g], alpha[k - 1]), *ring);
      }
      if (rhs.is_zero()) rhs.degree = Fk.degrees[g];
      auto y = lift->solve(rhs);
      if (!y) throw QgrError(ErrorKind::kLiftFailure, "cannot lift along the resolution at step " + std::to_string(k));
      images.push_back(*y);
    }
    alpha.push_back(std::move(images));
  }
  return alpha;
}

SparseVec cocycle_coords(const ExtClass& c, const HomSpaceLayout& L) {
  SparseVec out;
  for (size_t g = 0; g < c.cocycle.size(); ++g) {
    for (const auto& [i, x] : c.target.coords(c.cocycle[g])) out.emplace_back(L.offsets[g] + i, x);
  }
  return out;
}

bool nonzero_at_level(const ExtClass& c, ExtEngine& engine) {
  auto R = engine.truncated_resolution(c.source, c.level, c.degree + 1);
  CochainData cd = engine.cochains(*R->resolution, c.target, c.degree);
  SparseVec x = cocycle_coords(c, cd.layouts[c.degree]);
  if (x.empty()) return false;
  if (c.degree == 0) return true;
  Echelon E(cd.layouts[c.degree].dim);
  for (const auto& row : cd.coboundary[c.degree - 1]) E.insert(row);
  return !E.contains(x);
}

}  // namespace

std::vector<ExtClass> ext_class_basis(const PresentedModule& M, const PresentedModule& N, int p, int t,
                                      ExtEngine& engine) {
  auto R = engine.truncated_resolution(M, t, p + 1);
  CochainData cd = engine.cochains(*R->resolution, N, p + 1);
  Echelon E(cd.layouts[p].dim);
  if (p > 0) {
    for (const auto& row : cd.coboundary[p - 1]) E.insert(row);
  }
  std::vector<ExtClass> out;
  FreeModule Fp = position(*R->resolution, p);
  for (const auto& z : left_nullspace(cd.coboundary[p], cd.layouts[p + 1].dim)) {
    if (!E.insert(z)) continue;
    ExtClass c{M, N, p, t, {}};
    for (int g = 0; g < Fp.rank(); ++g) {
      int lo = cd.layouts[p].offsets[g];
      int hi = lo + static_cast<int>(N.dim(Fp.degrees[g]));
      SparseVec part;
      for (const auto& [i, x] : z) {
        if (i >= lo && i < hi) part.emplace_back(i - lo, x);
      }
      c.cocycle.push_back(N.from_coords(Fp.degrees[g], part));
    }
    out.push_back(std::move(c));
  }
  return out;
}

ExtClass ext_class(const PresentedModule& M, const PresentedModule& N, int p, int index, ExtEngine& engine) {
  ExtOptions o;
  o.i_max = std::max(p, 0);
  o.oracles = false;
  ExtResult r = engine.ext(M, N, o);
  if (index < 0 || index >= r.dim(p)) {
    throw QgrError(ErrorKind::kInvalidIndex, "Ext^" + std::to_string(p) + "(" + M.name() + ", " + N.name() +
                                                 ") has dimension " + std::to_string(r.dim(p)));
  }
  int t = r.trace.empty() ? M.min_generator_degree() : r.trace.back().t;
  auto basis = ext_class_basis(M, N, p, t, engine);
  return basis.at(index);
}

ExtClass class_from_map(const ModuleMap& phi, int t, ExtEngine& engine) {
  if (phi.twist != 0) throw QgrError(ErrorKind::kInvalidMap, "classes need degree-0 maps");
  auto R = engine.truncated_resolution(phi.source, t, 1);
  ExtClass c{phi.source, phi.target, 0, t, {}};
  for (const auto& v : augmentation_into(*R, phi.source)) c.cocycle.push_back(apply_map(phi, v));
  return c;
}

ExtClass retruncate(const ExtClass& c, int t, ExtEngine& engine) {
  if (t == c.level) return c;
  if (t < c.level) throw QgrError(ErrorKind::kInvalidParameter, "retruncation can only raise the level");
  auto Fnew = engine.truncated_resolution(c.source, t, c.degree + 1);
  auto Fold = engine.truncated_resolution(c.source, c.level, c.degree + 1);
  auto alpha = lift_chain(*Fnew->resolution, 0, augmentation_into(*Fnew, c.source), c.source, *Fold, c.degree);
  ExtClass out{c.source, c.target, c.degree, t, {}};
  for (const auto& y : alpha[c.degree]) out.cocycle.push_back(c.target.normal_form(vec_substitute(y, c.cocycle)));
  return out;
}

ExtClass yoneda_compose(const ExtClass& beta, const ExtClass& alpha_in, ExtEngine& engine) {
  if (alpha_in.target.fingerprint() != beta.source.fingerprint()) {
    throw QgrError(ErrorKind::kInvalidInput, "Yoneda product of classes that do not compose");
  }
  ExtClass alpha = alpha_in.level < beta.level ? retruncate(alpha_in, beta.level, engine) : alpha_in;
  int q = beta.degree, p = alpha.degree;
  auto F = engine.truncated_resolution(alpha.source, alpha.level, p + q + 1);
  auto G = engine.truncated_resolution(beta.source, beta.level, q + 1);
  auto lifted = lift_chain(*F->resolution, p, alpha.cocycle, alpha.target, *G, q);
  ExtClass out{alpha.source, beta.target, p + q, alpha.level, {}};
  for (const auto& y : lifted[q]) out.cocycle.push_back(beta.target.normal_form(vec_substitute(y, beta.cocycle)));
  return out;
}

bool is_nonzero(const ExtClass& c, ExtEngine& engine) {
  bool here = nonzero_at_level(c, engine);
  bool next = nonzero_at_level(retruncate(c, c.level + 1, engine), engine);
  if (here != next) {
    throw QgrError(ErrorKind::kStabilizationNotReached,
                   "class changes under retruncation from level " + std::to_string(c.level));
  }
  return here;
}

ExtClass scale_class(const ExtClass& c, const Rational& s) {
  ExtClass out = c;
  for (auto& v : out.cocycle) v = vec_scale(v, s);
  return out;
}

ExtClass add_classes(const ExtClass& a, const ExtClass& b) {
  if (a.level != b.level || a.degree != b.degree || a.cocycle.size() != b.cocycle.size()) {
    throw QgrError(ErrorKind::kInvalidInput, "adding classes at different levels or degrees");
  }
  ExtClass out = a;
  for (size_t g = 0; g < out.cocycle.size(); ++g) out.cocycle[g] = vec_add(a.cocycle[g], b.cocycle[g]);
  return out;
}

long class_rank(const std::vector<ExtClass>& classes, int level, ExtEngine& engine) {
  if (classes.empty()) return 0;
  const ExtClass& c0 = classes.front();
  auto R = engine.truncated_resolution(c0.source, level, c0.degree + 1);
  CochainData cd = engine.cochains(*R->resolution, c0.target, c0.degree);
  Echelon E(cd.layouts[c0.degree].dim);
  if (c0.degree > 0) {
    for (const auto& row : cd.coboundary[c0.degree - 1]) E.insert(row);
  }
  long rank = 0;
  for (const auto& c : classes) {
    if (c.degree != c0.degree) throw QgrError(ErrorKind::kInvalidInput, "class_rank needs classes of one degree");
    if (E.insert(cocycle_coords(retruncate(c, level, engine), cd.layouts[c0.degree]))) ++rank;
  }
  return rank;
}

bool classes_equal(const ExtClass& a, const ExtClass& b, ExtEngine& engine) {
  int t = std::max(a.level, b.level);
  ExtClass x = retruncate(a, t, engine), y = retruncate(b, t, engine);
  return !nonzero_at_level(add_classes(x, scale_class(y, Rational(-1))), engine);
}

}  // namespace qgrkit

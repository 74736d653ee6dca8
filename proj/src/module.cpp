#include "qgrkit/module.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "qgrkit/error.hpp"

namespace qgrkit {

namespace {

struct TermKey {
  int comp;
  uint64_t bits;
  bool operator==(const TermKey& o) const { return comp == o.comp && bits == o.bits; }
};
struct TermKeyHash {
  size_t operator()(const TermKey& k) const {
    return std::hash<uint64_t>()(k.bits * 0x9E3779B97F4A7C15ull ^ static_cast<uint64_t>(k.comp));
  }
};

struct Piece {
  std::vector<std::pair<int, Monomial>> basis;
  std::unordered_map<TermKey, int, TermKeyHash> index;
};

}  // namespace

struct PresentedModule::Lazy {
  std::once_flag gb_once;
  std::unique_ptr<GroebnerBasis> gb;
  std::mutex mu;
  std::map<int, std::unique_ptr<Piece>> pieces;
  std::unordered_map<TermKey, std::unique_ptr<SparseVec>, TermKeyHash> nf_cache;
  std::optional<bool> torsion;
};

PresentedModule::PresentedModule(FreeModule generators, std::vector<Vec> relations, std::string name)
    : gens_(std::move(generators)), name_(std::move(name)), lazy_(std::make_shared<Lazy>()) {
  for (auto& r : relations) {
    for (const auto& t : r.terms) {
      if (t.comp < 0 || t.comp >= gens_.rank() || t.mono.degree + gens_.degrees[t.comp] != r.degree) {
        throw QgrError(ErrorKind::kInvalidInput, "relation is not homogeneous in the generator grading");
      }
    }
    Vec nf = vec_normal_form(r, *gens_.ring);
    if (!nf.is_zero()) relations_.push_back(std::move(nf));
  }
}

PresentedModule PresentedModule::renamed(std::string name) const {
  PresentedModule m = *this;
  m.name_ = std::move(name);
  return m;
}

int PresentedModule::min_generator_degree() const {
  if (gens_.degrees.empty()) return 0;
  return *std::min_element(gens_.degrees.begin(), gens_.degrees.end());
}

int PresentedModule::max_generator_degree() const {
  if (gens_.degrees.empty()) return 0;
  return *std::max_element(gens_.degrees.begin(), gens_.degrees.end());
}

std::string PresentedModule::fingerprint() const {
  std::ostringstream os;
  os << gens_.ring->fingerprint() << "|g";
  for (int b : gens_.degrees) os << ":" << b;
  os << "|r";
  for (const auto& r : relations_) os << "[" << r.degree << ";" << format_vec(r, *gens_.ring) << "]";
  return os.str();
}

const GroebnerBasis& PresentedModule::gb() const {
  std::call_once(lazy_->gb_once, [this] { lazy_->gb = std::make_unique<GroebnerBasis>(gens_, relations_); });
  return *lazy_->gb;
}

const std::vector<std::pair<int, Monomial>>& PresentedModule::basis(int k) const {
  const GroebnerBasis& g = gb();
  {
    std::lock_guard lock(lazy_->mu);
    auto it = lazy_->pieces.find(k);
    if (it != lazy_->pieces.end()) return it->second->basis;
  }
  auto piece = std::make_unique<Piece>();
  piece->basis = g.standard_monomials(k);
  for (size_t i = 0; i < piece->basis.size(); ++i) {
    piece->index.emplace(TermKey{piece->basis[i].first, piece->basis[i].second.bits}, static_cast<int>(i));
  }
  std::lock_guard lock(lazy_->mu);
  auto [it, inserted] = lazy_->pieces.emplace(k, std::move(piece));
  return it->second->basis;
}

long PresentedModule::dim(int k) const { return static_cast<long>(basis(k).size()); }

Vec PresentedModule::basis_vec(int k, int index) const {
  const auto& b = basis(k).at(index);
  return vec_monomial(gens_, b.first, b.second);
}

Vec PresentedModule::normal_form(const Vec& v) const { return gb().reduce(v); }

SparseVec PresentedModule::coords(const Vec& v) const {
  Vec nf = normal_form(v);
  SparseVec out;
  if (nf.is_zero()) return out;
  basis(v.degree);
  const Piece* piece;
  {
    std::lock_guard lock(lazy_->mu);
    piece = lazy_->pieces.at(v.degree).get();
  }
  out.reserve(nf.terms.size());
  for (const auto& t : nf.terms) {
    auto it = piece->index.find(TermKey{t.comp, t.mono.bits});
    if (it == piece->index.end()) throw QgrError(ErrorKind::kInvalidInput, "normal form left the standard basis");
    out.emplace_back(it->second, t.coeff);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

const SparseVec& PresentedModule::monomial_coords(int comp, const Monomial& m) const {
  TermKey key{comp, m.bits};
  {
    std::lock_guard lock(lazy_->mu);
    auto it = lazy_->nf_cache.find(key);
    if (it != lazy_->nf_cache.end()) return *it->second;
  }
  auto value = std::make_unique<SparseVec>(coords(vec_monomial(gens_, comp, m)));
  std::lock_guard lock(lazy_->mu);
  auto [it, inserted] = lazy_->nf_cache.emplace(key, std::move(value));
  return *it->second;
}

Vec PresentedModule::from_coords(int k, const SparseVec& c) const {
  const auto& b = basis(k);
  std::vector<VecTerm> terms;
  terms.reserve(c.size());
  for (const auto& [i, x] : c) terms.push_back({b.at(i).first, b.at(i).second, x});
  std::sort(terms.begin(), terms.end(),
            [](const VecTerm& a, const VecTerm& b2) { return term_greater(a.comp, a.mono, b2.comp, b2.mono); });
  return Vec{k, std::move(terms)};
}

bool PresentedModule::is_torsion() const {
  {
    std::lock_guard lock(lazy_->mu);
    if (lazy_->torsion) return *lazy_->torsion;
  }
  const GroebnerBasis& g = gb();
  int nv = ring()->num_vars();
  bool torsion = true;
  for (int j = 0; j < gens_.rank() && torsion; ++j) {
    std::vector<bool> has_power(nv, false);
    for (const auto& e : g.elements()) {
      const auto& lt = e.lead();
      if (lt.comp != j) continue;
      int support = 0, var = -1;
      for (int i = 0; i < nv; ++i) {
        if (lt.mono.exponent(i) > 0) {
          ++support;
          var = i;
        }
      }
      if (support == 1) has_power[var] = true;
      if (support == 0) std::fill(has_power.begin(), has_power.end(), true);
    }
    for (bool h : has_power) torsion = torsion && h;
  }
  std::lock_guard lock(lazy_->mu);
  lazy_->torsion = torsion;
  return torsion;
}

// ---------------------------------------------------------------- maps

Vec apply_map(const ModuleMap& phi, const Vec& v) {
  return phi.target.normal_form(vec_substitute(v, phi.images, phi.twist));
}

std::optional<int> map_defect(const ModuleMap& phi) {
  if (static_cast<int>(phi.images.size()) != phi.source.num_generators()) return -1;
  for (int j = 0; j < phi.source.num_generators(); ++j) {
    const Vec& im = phi.images[j];
    if (!im.is_zero() && im.degree != phi.source.generators().degrees[j] + phi.twist) return -1;
  }
  const auto& rels = phi.source.relations();
  for (size_t i = 0; i < rels.size(); ++i) {
    if (!apply_map(phi, rels[i]).is_zero()) return static_cast<int>(i);
  }
  return std::nullopt;
}

void check_map(const ModuleMap& phi) {
  auto d = map_defect(phi);
  if (d) {
    if (*d < 0) throw QgrError(ErrorKind::kInvalidMap, "map images have the wrong shape or degree");
    throw QgrError(ErrorKind::kInvalidMap, "relation " + std::to_string(*d) + " of the source does not map to zero");
  }
}

ModuleMap compose_maps(const ModuleMap& outer, const ModuleMap& inner) {
  ModuleMap r{inner.source, outer.target, {}, inner.twist + outer.twist};
  r.images.reserve(inner.images.size());
  for (const auto& im : inner.images) {
    r.images.push_back(outer.target.normal_form(vec_substitute(im, outer.images, outer.twist)));
  }
  return r;
}

ModuleMap identity_map(const PresentedModule& M) {
  ModuleMap r{M, M, {}, 0};
  for (int j = 0; j < M.num_generators(); ++j) r.images.push_back(M.normal_form(vec_basis(M.generators(), j)));
  return r;
}

ModuleMap zero_map(const PresentedModule& M, const PresentedModule& N) {
  ModuleMap r{M, N, {}, 0};
  for (int b : M.generators().degrees) r.images.push_back(vec_zero(b));
  return r;
}

bool is_zero_map(const ModuleMap& phi) {
  for (const auto& im : phi.images) {
    if (!phi.target.normal_form(im).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- presentations

Subquotient subquotient(const FreeModule& F, const std::vector<Vec>& P, const std::vector<Vec>& U,
                        const std::string& name) {
  std::vector<GbInput> inputs;
  for (const auto& u : U) inputs.push_back({u, false});
  for (auto& a : relation_multiples(F)) inputs.push_back(std::move(a));
  for (const auto& p : P) inputs.push_back({p, true});
  GbOptions opts;
  opts.mode = SyzygyMode::kMinimal;
  GbResult r = gb_run(F, inputs, opts);
  Subquotient out;
  FreeModule gens{F.ring, r.syzygy_source.degrees};
  for (int k : r.kept) out.generators_in_ambient.push_back(inputs[k].vec);
  out.module = PresentedModule(gens, std::move(r.syzygies), name);
  return out;
}

Minimized minimize_presentation(const PresentedModule& M) {
  const FreeModule& F = M.generators();
  int r = F.rank();
  std::vector<Vec> subst;  // old generator -> element of F (in surviving generators)
  for (int j = 0; j < r; ++j) subst.push_back(vec_basis(F, j));
  std::vector<bool> alive(r, true);
  std::vector<Vec> rels = M.relations();
  const RingDescriptor& ring = *F.ring;
  while (true) {
    int rel_idx = -1, comp = -1;
    Rational c;
    for (size_t i = 0; i < rels.size() && rel_idx < 0; ++i) {
      // Prefer the largest generator index so earlier generators survive.
      for (auto it = rels[i].terms.rbegin(); it != rels[i].terms.rend(); ++it) {
        if (it->mono.is_one()) {
          if (comp < 0 || it->comp > comp) {
            comp = it->comp;
            c = it->coeff;
          }
        }
      }
      if (comp >= 0) rel_idx = static_cast<int>(i);
    }
    if (rel_idx < 0) break;
    // e_comp = -(1/c) * (rel - c e_comp)
    Vec rest = vec_sub(rels[rel_idx], vec_monomial(F, comp, Monomial{}, c));
    Vec sol = vec_scale(rest, -c.inverse());
    std::vector<Vec> images;
    for (int j = 0; j < r; ++j) images.push_back(j == comp ? sol : vec_basis(F, j));
    std::vector<Vec> next;
    for (size_t i = 0; i < rels.size(); ++i) {
      if (static_cast<int>(i) == rel_idx) continue;
      Vec v = vec_normal_form(vec_substitute(rels[i], images), ring);
      if (!v.is_zero()) next.push_back(std::move(v));
    }
    rels = std::move(next);
    for (auto& s : subst) s = vec_normal_form(vec_substitute(s, images), ring);
    alive[comp] = false;
  }
  std::vector<int> new_index(r, -1);
  Minimized out;
  FreeModule G{F.ring, {}};
  for (int j = 0; j < r; ++j) {
    if (alive[j]) {
      new_index[j] = G.rank();
      G.degrees.push_back(F.degrees[j]);
      out.kept.push_back(j);
    }
  }
  std::vector<Vec> new_rels;
  for (const auto& v : rels) new_rels.push_back(vec_reindex(v, new_index));
  for (const auto& s : subst) out.old_to_new.push_back(vec_reindex(s, new_index));
  out.module = PresentedModule(G, std::move(new_rels), M.name());
  return out;
}

// ---------------------------------------------------------------- named modules

namespace {

int require_n(const Ring& A) {
  if (!A->n_param() || !A->is_quotient()) {
    throw QgrError(ErrorKind::kInvalidParameter, "named modules require the ring A of the family");
  }
  return *A->n_param();
}

Vec poly_as_vec(const FreeModule& F, const Polynomial& p) {
  Vec v{p.degree + F.degrees[0], {}};
  for (const auto& t : p.terms) v.terms.push_back({0, t.mono, t.coeff});
  return v;
}

}  // namespace

PresentedModule make_quotient(const Ring& R, int k, const std::vector<Polynomial>& ideal, const std::string& name) {
  FreeModule F{R, {-k}};
  std::vector<Vec> rels;
  for (const auto& p : ideal) rels.push_back(poly_as_vec(F, p));
  return PresentedModule(F, std::move(rels), name);
}

Subquotient make_ideal(const Ring& R, int j, const std::vector<Polynomial>& polys, const std::string& name) {
  FreeModule F{R, {-j}};
  std::vector<Vec> P;
  for (const auto& p : polys) P.push_back(poly_as_vec(F, p));
  return subquotient(F, P, {}, name);
}

PresentedModule make_free(const Ring& A, int k) {
  return PresentedModule(FreeModule{A, {-k}}, {}, "A(" + std::to_string(k) + ")");
}

PresentedModule make_chi(const Ring& A, int j) {
  require_n(A);
  return make_quotient(A, j,
                       {poly_monomial(A->variable(0)), poly_monomial(A->variable(1)), poly_monomial(A->variable(2))},
                       "chi(" + std::to_string(j) + ")");
}

PresentedModule make_Q(const Ring& A, int j, int r) {
  int n = require_n(A);
  if (r < 0 || r >= 2 * n - 1) throw QgrError(ErrorKind::kInvalidParameter, "Q requires 0 <= r < 2n-1");
  int top = j + 2 * r;
  return make_quotient(A, top,
                       {poly_monomial(A->variable(0)), poly_monomial(A->variable(1, r + 1)),
                        poly_monomial(A->variable(2))},
                       "Q(" + std::to_string(top) + "," + std::to_string(j) + ")");
}

PresentedModule make_Q_top_bottom(const Ring& A, int top, int bottom) {
  if ((top - bottom) % 2 != 0) throw QgrError(ErrorKind::kInvalidParameter, "Q(top,bottom) needs top-bottom even");
  return make_Q(A, bottom, (top - bottom) / 2);
}

PresentedModule make_G(const Ring& A, int j) {
  int n = require_n(A);
  return make_ideal(A, j,
                    {poly_monomial(A->variable(0)), poly_monomial(A->variable(1, n - 1)),
                     poly_monomial(A->variable(2))},
                    "G(" + std::to_string(j) + ")")
      .module;
}

PresentedModule make_H(const Ring& A, int j) {
  require_n(A);
  return make_ideal(A, j,
                    {poly_monomial(A->variable(0)), poly_monomial(A->variable(1)), poly_monomial(A->variable(2))},
                    "H(" + std::to_string(j) + ")")
      .module;
}

PresentedModule make_Aq01(const Ring& A, int k) {
  require_n(A);
  return make_quotient(A, k, {poly_monomial(A->variable(0)), poly_monomial(A->variable(1))},
                       "Aq01(" + std::to_string(k) + ")");
}

Vec twist_vec(const Vec& v, int k) {
  Vec r = v;
  r.degree -= k;
  return r;
}

PresentedModule twist(const PresentedModule& M, int k) {
  if (k == 0) return M;
  FreeModule F = M.generators();
  for (int& b : F.degrees) b -= k;
  std::vector<Vec> rels;
  for (const auto& r : M.relations()) rels.push_back(twist_vec(r, k));
  std::string name = M.name().empty() ? "" : M.name() + "<" + std::to_string(k) + ">";
  return PresentedModule(F, std::move(rels), name);
}

PresentedModule direct_sum(const std::vector<PresentedModule>& summands, const std::string& name) {
  if (summands.empty()) throw QgrError(ErrorKind::kInvalidInput, "direct sum of no modules");
  FreeModule F{summands.front().ring(), {}};
  std::vector<Vec> rels;
  for (const auto& M : summands) {
    int offset = F.rank();
    for (int b : M.generators().degrees) F.degrees.push_back(b);
    std::vector<int> idx(M.num_generators());
    for (int j = 0; j < M.num_generators(); ++j) idx[j] = offset + j;
    for (const auto& r : M.relations()) rels.push_back(vec_reindex(r, idx));
  }
  return PresentedModule(F, std::move(rels), name);
}

// ---------------------------------------------------------------- kernel / image / cokernel

KernelResult kernel(const ModuleMap& phi) {
  check_map(phi);
  const PresentedModule& M = phi.source;
  const PresentedModule& N = phi.target;
  std::vector<GbInput> inputs;
  for (const auto& im : phi.images) inputs.push_back({im, true});
  for (const auto& u : N.relations()) inputs.push_back({u, false});
  for (auto& a : relation_multiples(N.generators())) inputs.push_back(std::move(a));
  // Zero images must still carry the right degree for the coordinate module.
  for (int j = 0; j < M.num_generators(); ++j) {
    if (inputs[j].vec.is_zero()) inputs[j].vec.degree = M.generators().degrees[j] + phi.twist;
  }
  GbOptions opts;
  opts.mode = SyzygyMode::kAll;
  GbResult r = gb_run(N.generators(), inputs, opts);
  // Syzygies live in the image grading; shift back to the source grading.
  std::vector<Vec> K;
  for (const auto& s : r.syzygies) K.push_back(twist_vec(s, phi.twist));
  Subquotient sq = subquotient(M.generators(), K, M.relations());
  KernelResult out;
  out.module = sq.module;
  out.inclusion = ModuleMap{sq.module, M, sq.generators_in_ambient, 0};
  return out;
}

ImageResult image(const ModuleMap& phi) {
  check_map(phi);
  Subquotient sq = subquotient(phi.target.generators(), phi.images, phi.target.relations());
  ImageResult out;
  out.module = sq.module;
  out.inclusion = ModuleMap{sq.module, phi.target, sq.generators_in_ambient, 0};
  return out;
}

CokernelResult cokernel(const ModuleMap& phi) {
  check_map(phi);
  std::vector<Vec> rels = phi.target.relations();
  for (const auto& im : phi.images) {
    if (!im.is_zero()) rels.push_back(im);
  }
  PresentedModule raw(phi.target.generators(), std::move(rels));
  Minimized mini = minimize_presentation(raw);
  CokernelResult out;
  out.module = mini.module;
  out.projection = ModuleMap{phi.target, mini.module, mini.old_to_new, 0};
  for (auto& v : out.projection.images) v = mini.module.normal_form(v);
  return out;
}

TruncationResult truncate(const PresentedModule& M, int t) {
  TruncationResult out;
  if (M.is_zero_presentation() || t <= M.min_generator_degree()) {
    out.module = M;
    out.inclusion = identity_map(M);
    return out;
  }
  int top = std::max(t + M.ring()->max_weight() - 1, M.max_generator_degree());
  std::vector<Vec> P;
  for (int k = t; k <= top; ++k) {
    for (int i = 0; i < M.dim(k); ++i) P.push_back(M.basis_vec(k, i));
  }
  Subquotient sq = subquotient(M.generators(), P, M.relations());
  std::string name = M.name().empty() ? "" : M.name() + ">=" + std::to_string(t);
  out.module = sq.module.renamed(name);
  out.inclusion = ModuleMap{out.module, M, sq.generators_in_ambient, 0};
  return out;
}

// ---------------------------------------------------------------- exactness

namespace {

// Rank of the degree-k component of phi.
long map_rank(const ModuleMap& phi, int k) {
  long dm = phi.source.dim(k);
  if (dm == 0) return 0;
  Echelon e(static_cast<int>(phi.target.dim(k + phi.twist)));
  for (int i = 0; i < dm; ++i) e.insert(phi.target.coords(apply_map(phi, phi.source.basis_vec(k, i))));
  return e.rank();
}

GroebnerBasis span_gb(const FreeModule& F, const std::vector<Vec>& gens, const std::vector<Vec>& rels) {
  std::vector<Vec> all;
  for (const auto& g : gens) {
    if (!g.is_zero()) all.push_back(g);
  }
  for (const auto& r : rels) all.push_back(r);
  return GroebnerBasis(F, all);
}

}  // namespace

long homology_dim(const ModuleMap& phi, const ModuleMap& psi, int k) {
  long ker = psi.source.dim(k) - map_rank(psi, k);
  return ker - map_rank(phi, k - phi.twist);
}

bool homology_is_zero(const std::vector<ModuleMap>& maps, int lo, int hi, std::string* detail) {
  auto fail = [&](const std::string& why) {
    if (detail) *detail = why;
    return false;
  };
  for (size_t i = 0; i < maps.size(); ++i) {
    if (map_defect(maps[i])) return fail("map " + std::to_string(i) + " is not well defined");
    if (maps[i].twist != 0) return fail("maps must be of degree 0");
  }
  for (size_t i = 0; i + 1 < maps.size(); ++i) {
    if (!is_zero_map(compose_maps(maps[i + 1], maps[i]))) {
      return fail("composition of maps " + std::to_string(i) + " and " + std::to_string(i + 1) + " is nonzero");
    }
  }
  // Exact module-level checks: injective start, ker = im in the middle, surjective end.
  if (!maps.empty()) {
    KernelResult k0 = kernel(maps.front());
    for (const auto& g : k0.inclusion.images) {
      if (!maps.front().source.is_zero_element(g)) return fail("first map is not injective");
    }
    const ModuleMap& last = maps.back();
    const FreeModule& T = last.target.generators();
    GroebnerBasis gb = span_gb(T, last.images, last.target.relations());
    for (int j = 0; j < T.rank(); ++j) {
      if (!gb.contains(vec_basis(T, j))) return fail("last map is not surjective");
    }
  }
  for (size_t i = 0; i + 1 < maps.size(); ++i) {
    KernelResult k = kernel(maps[i + 1]);
    const FreeModule& F = maps[i + 1].source.generators();
    GroebnerBasis gb = span_gb(F, maps[i].images, maps[i + 1].source.relations());
    for (const auto& g : k.inclusion.images) {
      if (!gb.contains(g)) {
        return fail("homology at position " + std::to_string(i + 1) + " is nonzero");
      }
    }
  }
  // Dimension audit over the window.
  for (int k = lo; k <= hi; ++k) {
    long alt = 0;
    long sign = 1;
    if (!maps.empty()) {
      alt += maps.front().source.dim(k);
      for (const auto& m : maps) {
        sign = -sign;
        alt += sign * m.target.dim(k);
      }
    }
    if (alt != 0) return fail("Euler characteristic nonzero in degree " + std::to_string(k));
  }
  return true;
}

bool short_exact(const ModuleMap& phi, const ModuleMap& psi, int lo, int hi, std::string* detail) {
  return homology_is_zero({phi, psi}, lo, hi, detail);
}

// ---------------------------------------------------------------- Hom spaces

HomSpaceLayout hom_layout(const FreeModule& F, const PresentedModule& N, int shift) {
  HomSpaceLayout L;
  for (int b : F.degrees) {
    L.offsets.push_back(L.dim);
    L.dim += static_cast<int>(N.dim(b + shift));
  }
  return L;
}

std::vector<SparseVec> pullback_rows(const FreeModule& F, const std::vector<Vec>& columns, const FreeModule& G,
                                     const PresentedModule& N, int shift, const HomSpaceLayout& Fl,
                                     const HomSpaceLayout& Gl) {
  (void)G;
  struct Entry {
    int row, col;
    Rational val;
  };
  std::vector<Entry> entries;
  for (size_t h = 0; h < columns.size(); ++h) {
    for (const auto& t : columns[h].terms) {
      const auto& basis_g = N.basis(F.degrees[t.comp] + shift);
      for (size_t u = 0; u < basis_g.size(); ++u) {
        const SparseVec& img = N.monomial_coords(basis_g[u].first, basis_g[u].second * t.mono);
        int row = Fl.offsets[t.comp] + static_cast<int>(u);
        for (const auto& [idx, x] : img) entries.push_back({row, Gl.offsets[h] + idx, t.coeff * x});
      }
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  std::vector<SparseVec> rows(Fl.dim);
  for (size_t i = 0; i < entries.size();) {
    size_t j = i;
    Rational sum;
    while (j < entries.size() && entries[j].row == entries[i].row && entries[j].col == entries[i].col) {
      sum += entries[j].val;
      ++j;
    }
    if (!sum.is_zero()) rows[entries[i].row].emplace_back(entries[i].col, std::move(sum));
    i = j;
  }
  return rows;
}

ModuleMap map_from_coords(const PresentedModule& M, const PresentedModule& N, int shift, const HomSpaceLayout& L,
                          const SparseVec& c) {
  ModuleMap phi{M, N, {}, shift};
  const auto& degs = M.generators().degrees;
  for (size_t g = 0; g < degs.size(); ++g) {
    int lo = L.offsets[g];
    int hi = lo + static_cast<int>(N.dim(degs[g] + shift));
    SparseVec part;
    for (const auto& [i, x] : c) {
      if (i >= lo && i < hi) part.emplace_back(i - lo, x);
    }
    phi.images.push_back(N.from_coords(degs[g] + shift, part));
  }
  return phi;
}

SparseVec map_coords(const ModuleMap& phi, const HomSpaceLayout& L) {
  SparseVec out;
  for (size_t g = 0; g < phi.images.size(); ++g) {
    for (const auto& [i, x] : phi.target.coords(phi.images[g])) out.emplace_back(L.offsets[g] + i, x);
  }
  return out;
}

std::vector<ModuleMap> hom_basis(const PresentedModule& M, const PresentedModule& N, int shift) {
  std::vector<ModuleMap> out;
  if (M.is_zero_presentation()) return out;
  FreeModule R{M.ring(), {}};
  for (const auto& r : M.relations()) R.degrees.push_back(r.degree);
  HomSpaceLayout Fl = hom_layout(M.generators(), N, shift);
  HomSpaceLayout Rl = hom_layout(R, N, shift);
  auto rows = pullback_rows(M.generators(), M.relations(), R, N, shift, Fl, Rl);
  for (const auto& c : left_nullspace(rows, Rl.dim)) out.push_back(map_from_coords(M, N, shift, Fl, c));
  return out;
}

std::vector<long> hilbert_window(const PresentedModule& M, int lo, int hi) {
  std::vector<long> out;
  for (int k = lo; k <= hi; ++k) out.push_back(M.dim(k));
  return out;
}

namespace {

// Candidate coefficient vectors in {-h..h}^d, nonzero, smallest max-norm first.
std::vector<std::vector<int>> coefficient_candidates(int d, int h, size_t limit) {
  std::vector<std::vector<int>> out;
  for (int norm = 1; norm <= h && out.size() < limit; ++norm) {
    std::vector<int> c(d, -norm);
    while (true) {
      int mx = 0;
      for (int x : c) mx = std::max(mx, std::abs(x));
      if (mx == norm) out.push_back(c);
      if (out.size() >= limit) break;
      int i = 0;
      while (i < d && c[i] == norm) c[i++] = -norm;
      if (i == d) break;
      ++c[i];
    }
  }
  return out;
}

ModuleMap combine(const std::vector<ModuleMap>& basis, const std::vector<int>& c) {
  ModuleMap r = basis.front();
  for (auto& im : r.images) im = vec_zero(im.degree);
  for (size_t g = 0; g < r.images.size(); ++g) {
    r.images[g].degree = r.source.generators().degrees[g] + r.twist;
    for (size_t k = 0; k < basis.size(); ++k) {
      if (c[k] != 0) r.images[g] = vec_add_scaled(r.images[g], basis[k].images[g], Rational(c[k]));
    }
  }
  return r;
}

}  // namespace

IsoResult is_isomorphic(const PresentedModule& M, const PresentedModule& N, int height) {
  IsoResult res;
  if (M.is_zero_presentation() && N.is_zero_presentation()) {
    res.verdict = IsoVerdict::kIsomorphic;
    res.evidence = "both zero";
    return res;
  }
  int lo = std::min(M.is_zero_presentation() ? N.min_generator_degree() : M.min_generator_degree(),
                    N.is_zero_presentation() ? M.min_generator_degree() : N.min_generator_degree());
  int hi = std::max(M.max_generator_degree(), N.max_generator_degree()) + 2 * M.ring()->max_weight();
  for (int k = lo; k <= hi; ++k) {
    if (M.dim(k) != N.dim(k)) {
      res.verdict = IsoVerdict::kNotIsomorphic;
      res.evidence = "Hilbert functions differ in degree " + std::to_string(k);
      return res;
    }
  }
  auto fwd = hom_basis(M, N);
  if (fwd.empty()) {
    res.verdict = IsoVerdict::kNotIsomorphic;
    res.evidence = "Hom(M,N)_0 = 0";
    return res;
  }
  auto bwd = hom_basis(N, M);
  if (bwd.empty()) {
    res.verdict = IsoVerdict::kNotIsomorphic;
    res.evidence = "Hom(N,M)_0 = 0";
    return res;
  }
  // Coordinates for the identity equations.
  std::vector<int> offM, offN;
  int total = 0;
  for (int b : M.generators().degrees) {
    offM.push_back(total);
    total += static_cast<int>(M.dim(b));
  }
  for (int b : N.generators().degrees) {
    offN.push_back(total);
    total += static_cast<int>(N.dim(b));
  }
  SparseVec target;
  for (int g = 0; g < M.num_generators(); ++g) {
    for (const auto& [i, x] : M.coords(vec_basis(M.generators(), g))) target.emplace_back(offM[g] + i, x);
  }
  for (int g = 0; g < N.num_generators(); ++g) {
    for (const auto& [i, x] : N.coords(vec_basis(N.generators(), g))) target.emplace_back(offN[g] + i, x);
  }
  for (const auto& c : coefficient_candidates(static_cast<int>(fwd.size()), height, 4096)) {
    ModuleMap phi = combine(fwd, c);
    Echelon e(total, true);
    for (const auto& psi : bwd) {
      SparseVec w;
      ModuleMap pf = compose_maps(psi, phi);
      ModuleMap fp = compose_maps(phi, psi);
      for (int g = 0; g < M.num_generators(); ++g) {
        for (const auto& [i, x] : M.coords(pf.images[g])) w.emplace_back(offM[g] + i, x);
      }
      for (int g = 0; g < N.num_generators(); ++g) {
        for (const auto& [i, x] : N.coords(fp.images[g])) w.emplace_back(offN[g] + i, x);
      }
      e.insert(w);
    }
    auto sol = e.solve(target);
    if (!sol) continue;
    ModuleMap psi = bwd.front();
    for (size_t g = 0; g < psi.images.size(); ++g) {
      psi.images[g] = vec_zero(N.generators().degrees[g]);
      for (const auto& [k, x] : *sol) psi.images[g] = vec_add_scaled(psi.images[g], bwd[k].images[g], x);
      psi.images[g] = M.normal_form(psi.images[g]);
    }
    res.verdict = IsoVerdict::kIsomorphic;
    res.forward = phi;
    res.backward = psi;
    res.evidence = "witness pair found";
    return res;
  }
  res.verdict = IsoVerdict::kUndetermined;
  res.evidence = "bounded search exhausted";
  return res;
}

bool qgr_isomorphic(const PresentedModule& M, const PresentedModule& N, int height) {
  if (M.is_zero_presentation() || N.is_zero_presentation()) return M.is_torsion() && N.is_torsion();
  int base = M.max_generator_degree() + 1;
  for (int t : {M.min_generator_degree(), base, base + M.ring()->max_weight()}) {
    TruncationResult tr = truncate(M, t);
    auto homs = hom_basis(tr.module, N);
    if (homs.empty()) continue;
    for (const auto& c : coefficient_candidates(static_cast<int>(homs.size()), height, 256)) {
      ModuleMap phi = combine(homs, c);
      if (kernel(phi).module.is_torsion() && cokernel(phi).module.is_torsion()) return true;
    }
  }
  return false;
}

}  // namespace qgrkit

#include "qgrkit/mutation.hpp"

#include "qgrkit/error.hpp"

namespace qgrkit {

const char* to_string(MutationMechanism m) {
  switch (m) {
    case MutationMechanism::kOrthogonal: return "orthogonal";
    case MutationMechanism::kHomKernel: return "hom-kernel";
    case MutationMechanism::kHomCokernel: return "hom-cokernel";
    case MutationMechanism::kExt1UniversalExtension: return "ext1-universal-extension";
  }
  return "?";
}

namespace {

PresentedModule copies(const PresentedModule& M, long h) {
  if (h == 1) return M;
  return direct_sum(std::vector<PresentedModule>(h, M), std::to_string(h) + "*" + M.name());
}

// Moves a vector of a free module into generator block starting at `offset`.
Vec shifted(const Vec& v, int offset, int rank) {
  std::vector<int> idx(rank);
  for (int g = 0; g < rank; ++g) idx[g] = offset + g;
  return vec_reindex(v, idx);
}

struct Picked {
  int level = 0;
  std::vector<ExtClass> classes;
  std::vector<ModuleMap> maps;  // degree 0 only: maps X_{>=level} -> Y
};

// h classes in Ext^p(X, Y) realized at the lowest truncation level of X that
// reaches the whole quotient-category group.
Picked pick_classes(const PresentedModule& X, const PresentedModule& Y, int p, long h, int stable,
                    ExtEngine& engine) {
  for (int t = std::min(X.min_generator_degree(), stable); t <= stable; ++t) {
    Picked out;
    out.level = t;
    std::vector<ExtClass> cand;
    std::vector<ModuleMap> maps;
    if (p == 0) {
      auto tr = engine.truncated_resolution(X, t, 1);
      maps = hom_basis(tr->truncated, Y);
      for (const auto& m : maps) cand.push_back(class_from_map(m, t, engine));
    } else {
      cand = ext_class_basis(X, Y, p, t, engine);
    }
    for (size_t k = 0; k < cand.size() && static_cast<long>(out.classes.size()) < h; ++k) {
      out.classes.push_back(cand[k]);
      if (class_rank(out.classes, stable, engine) < static_cast<long>(out.classes.size())) {
        out.classes.pop_back();
      } else if (p == 0) {
        out.maps.push_back(maps[k]);
      }
    }
    if (static_cast<long>(out.classes.size()) == h) return out;
  }
  throw QgrError(ErrorKind::kLiftFailure, "could not realize Ext^" + std::to_string(p) + "(" + X.name() + ", " +
                                              Y.name() + ") by classes at any truncation level");
}

bool exact_window(const std::vector<ModuleMap>& maps) {
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& m : maps) {
    for (const auto* M : {&m.source, &m.target}) {
      if (M->is_zero_presentation()) continue;
      int a = M->min_generator_degree(), b = M->max_generator_degree();
      lo = first ? a : std::min(lo, a);
      hi = first ? b : std::max(hi, b);
      first = false;
    }
  }
  int w = maps.front().source.ring()->max_weight();
  return homology_is_zero(maps, lo - 1, hi + 2 * w);
}

void check_exceptional(const PresentedModule& X, ExtEngine& engine) {
  ExtResult r = engine.ext(X, X);
  if (r.dim(0) != 1 || r.dim(1) != 0 || r.dim(2) != 0) {
    throw QgrError(ErrorKind::kInvalidInput, "mutating object " + X.name() + " is not exceptional");
  }
}

struct Concentration {
  int degree = -1;
  long dim = 0;
  int stable = 0;
};

Concentration concentration(const PresentedModule& X, const PresentedModule& Y, ExtEngine& engine) {
  ExtResult r = engine.ext(X, Y);
  Concentration c;
  c.stable = r.stable_level;
  for (int i = 0; i <= 2; ++i) {
    if (r.dim(i) == 0) continue;
    if (c.degree >= 0) {
      throw QgrError(ErrorKind::kNotModuleRepresentable,
                     "Hom complex of " + X.name() + " and " + Y.name() + " is spread over several degrees");
    }
    c.degree = i;
    c.dim = r.dim(i);
  }
  if (c.degree == 2) {
    throw QgrError(ErrorKind::kNotModuleRepresentable,
                   "Hom complex of " + X.name() + " and " + Y.name() + " sits in degree 2");
  }
  return c;
}

// (Y^a + F_0^b) / (relations of Y^a, (-c(g), d_1(g))) for the extension classified
// by `cls` (one class per copy of the side that is repeated).
struct Extension {
  PresentedModule module;
  ModuleMap in;   // Y^a -> E
  ModuleMap out;  // E -> X_t^b
};

Extension build_extension(const std::vector<ExtClass>& cls, bool repeat_x, const std::string& name,
                          ExtEngine& engine) {
  const ExtClass& c0 = cls.front();
  auto tr = engine.truncated_resolution(c0.source, c0.level, 2);
  const Resolution& R = *tr->resolution;
  const PresentedModule& Y = c0.target;
  long h = static_cast<long>(cls.size());
  long a = repeat_x ? 1 : h, b = repeat_x ? h : 1;
  PresentedModule Ya = copies(Y, a), Xb = copies(tr->truncated, b);
  const FreeModule& F0 = R.F(0);
  int rY = Y.num_generators(), r0 = F0.rank(), rX = tr->truncated.num_generators();
  std::vector<int> degs = Ya.generators().degrees;
  for (long i = 0; i < b; ++i) degs.insert(degs.end(), F0.degrees.begin(), F0.degrees.end());
  FreeModule EF{Y.ring(), degs};
  std::vector<Vec> rels;
  for (const auto& v : Ya.relations()) rels.push_back(v);
  int yblock = static_cast<int>(a * rY);
  if (R.length() >= 1) {
    for (int g = 0; g < R.F(1).rank(); ++g) {
      const Vec& d = R.d(1).columns[g];
      if (repeat_x) {
        // h copies of X, each glued to Y by its own class.
        for (long k = 0; k < h; ++k) {
          rels.push_back(vec_sub(shifted(d, yblock + static_cast<int>(k) * r0, r0), cls[k].cocycle[g]));
        }
      } else {
        // One copy of X glued to Y^h by all classes at once.
        Vec rel = shifted(d, yblock, r0);
        for (long k = 0; k < h; ++k) rel = vec_sub(rel, shifted(cls[k].cocycle[g], static_cast<int>(k) * rY, rY));
        rels.push_back(std::move(rel));
      }
    }
  }
  Extension e;
  e.module = PresentedModule(EF, std::move(rels), name);
  std::vector<Vec> in_images;
  for (int g = 0; g < Ya.num_generators(); ++g) in_images.push_back(vec_basis(EF, g));
  e.in = ModuleMap{Ya, e.module, std::move(in_images), 0};
  std::vector<Vec> out_images;
  for (int g = 0; g < Ya.num_generators(); ++g) out_images.push_back(vec_zero(EF.degrees[g]));
  for (long k = 0; k < b; ++k) {
    for (int g = 0; g < r0; ++g) out_images.push_back(shifted(tr->augmentation[g], static_cast<int>(k * rX), rX));
  }
  e.out = ModuleMap{e.module, Xb, std::move(out_images), 0};
  check_map(e.in);
  check_map(e.out);
  return e;
}

void finish(MutationOutcome& o, const MutationOptions& options, const std::string& fallback) {
  if (!o.witness.maps.empty()) o.witness_exact = exact_window(o.witness.maps);
  if (options.identify) o.identified = identify_named(o.result.module, options.height);
  o.result.module = o.result.module.renamed(o.identified ? o.identified->name : fallback);
}

}  // namespace

MutationOutcome left_mutation(const ShiftedObject& Xs, const ShiftedObject& Ys, const MutationOptions& options,
                              ExtEngine& engine) {
  const PresentedModule& X = Xs.module;
  const PresentedModule& Y = Ys.module;
  if (options.verify_exceptional) check_exceptional(X, engine);
  MutationOutcome o;
  Concentration c = concentration(X, Y, engine);
  o.hom_degree = c.degree;
  o.hom_dim = c.dim;
  std::string label = "L_" + X.name() + "(" + Y.name() + ")";
  if (c.degree < 0) {
    o.result = Ys;
    o.witness.label = label + ": orthogonal";
    return o;
  }
  Picked pk = pick_classes(X, Y, c.degree, c.dim, c.stable, engine);
  o.level = pk.level;
  if (c.degree == 0) {
    auto tr = engine.truncated_resolution(X, pk.level, 1);
    PresentedModule Xh = copies(tr->truncated, c.dim);
    std::vector<Vec> images;
    for (const auto& m : pk.maps) images.insert(images.end(), m.images.begin(), m.images.end());
    ModuleMap ev{Xh, Y, std::move(images), 0};
    check_map(ev);
    CokernelResult cok = cokernel(ev);
    if (cok.module.is_zero_presentation() || minimize_presentation(cok.module).module.is_zero_presentation()) {
      KernelResult ker = kernel(ev);
      o.mechanism = MutationMechanism::kHomKernel;
      o.result = {ker.module, Ys.shift};
      o.witness = {label + ": kernel of evaluation", {ker.inclusion, ev}};
    } else if (kernel(ev).module.is_zero_presentation()) {
      o.mechanism = MutationMechanism::kHomCokernel;
      o.result = {cok.module, Ys.shift - 1};
      o.witness = {label + ": cokernel of evaluation", {ev, cok.projection}};
    } else {
      throw QgrError(ErrorKind::kNotModuleRepresentable,
                     "evaluation map for " + label + " is neither injective nor surjective");
    }
  } else {
    Extension e = build_extension(pk.classes, true, label, engine);
    o.mechanism = MutationMechanism::kExt1UniversalExtension;
    o.result = {e.module, Ys.shift - 1};
    o.witness = {label + ": universal extension", {e.in, e.out}};
  }
  finish(o, options, label);
  return o;
}

MutationOutcome right_mutation(const ShiftedObject& Ys, const ShiftedObject& Xs, const MutationOptions& options,
                               ExtEngine& engine) {
  const PresentedModule& X = Xs.module;
  const PresentedModule& Y = Ys.module;
  if (options.verify_exceptional) check_exceptional(Y, engine);
  MutationOutcome o;
  Concentration c = concentration(X, Y, engine);
  o.hom_degree = c.degree;
  o.hom_dim = c.dim;
  std::string label = "R_" + Y.name() + "(" + X.name() + ")";
  if (c.degree < 0) {
    o.result = Xs;
    o.witness.label = label + ": orthogonal";
    return o;
  }
  Picked pk = pick_classes(X, Y, c.degree, c.dim, c.stable, engine);
  o.level = pk.level;
  if (c.degree == 0) {
    auto tr = engine.truncated_resolution(X, pk.level, 1);
    const PresentedModule& Xt = tr->truncated;
    PresentedModule Yh = copies(Y, c.dim);
    int rY = Y.num_generators();
    std::vector<Vec> images;
    for (int g = 0; g < Xt.num_generators(); ++g) {
      Vec v = vec_zero(Xt.generators().degrees[g]);
      for (size_t k = 0; k < pk.maps.size(); ++k) {
        v = vec_add(v, shifted(pk.maps[k].images[g], static_cast<int>(k) * rY, rY));
      }
      images.push_back(std::move(v));
    }
    ModuleMap coev{Xt, Yh, std::move(images), 0};
    check_map(coev);
    KernelResult ker = kernel(coev);
    bool injective = true;
    for (const auto& g : ker.inclusion.images) injective &= Xt.is_zero_element(g);
    if (injective) {
      CokernelResult cok = cokernel(coev);
      o.mechanism = MutationMechanism::kHomCokernel;
      o.result = {cok.module, Xs.shift};
      o.witness = {label + ": cokernel of coevaluation", {coev, cok.projection}};
    } else if (minimize_presentation(cokernel(coev).module).module.is_zero_presentation()) {
      o.mechanism = MutationMechanism::kHomKernel;
      o.result = {ker.module, Xs.shift + 1};
      o.witness = {label + ": kernel of coevaluation", {ker.inclusion, coev}};
    } else {
      throw QgrError(ErrorKind::kNotModuleRepresentable,
                     "coevaluation map for " + label + " is neither injective nor surjective");
    }
  } else {
    Extension e = build_extension(pk.classes, false, label, engine);
    o.mechanism = MutationMechanism::kExt1UniversalExtension;
    o.result = {e.module, Xs.shift + 1};
    o.witness = {label + ": universal extension", {e.in, e.out}};
  }
  finish(o, options, label);
  return o;
}

MutationChain iterated_left_mutation(const std::vector<ShiftedObject>& prefix, const ShiftedObject& Y,
                                     const MutationOptions& options, ExtEngine& engine) {
  MutationChain chain;
  chain.result = Y;
  for (size_t k = prefix.size(); k-- > 0;) {
    try {
      chain.steps.push_back(left_mutation(prefix[k], chain.result, options, engine));
    } catch (const QgrError& e) {
      if (e.kind() != ErrorKind::kNotModuleRepresentable) throw;
      throw QgrError(e.kind(), "step " + std::to_string(prefix.size() - k) + " (past " + prefix[k].label() +
                                   "): " + e.what());
    }
    chain.result = chain.steps.back().result;
  }
  return chain;
}

MutationChain iterated_right_mutation(const ShiftedObject& X, const std::vector<ShiftedObject>& suffix,
                                      const MutationOptions& options, ExtEngine& engine) {
  MutationChain chain;
  chain.result = X;
  for (size_t k = 0; k < suffix.size(); ++k) {
    try {
      chain.steps.push_back(right_mutation(suffix[k], chain.result, options, engine));
    } catch (const QgrError& e) {
      if (e.kind() != ErrorKind::kNotModuleRepresentable) throw;
      throw QgrError(e.kind(), "step " + std::to_string(k + 1) + " (past " + suffix[k].label() + "): " + e.what());
    }
    chain.result = chain.steps.back().result;
  }
  return chain;
}

}  // namespace qgrkit

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgrkit/groebner.hpp"
#include "qgrkit/linalg.hpp"

namespace qgrkit {

struct PieceIndex;

// Finitely presented graded module F/(relations) over the ring of F. Over A
// the relation f*e_j is implicit. Immutable; lazily computed data (Groebner
// basis, graded pieces, normal-form cache) is shared between copies.
class PresentedModule {
 public:
  PresentedModule() = default;
  PresentedModule(FreeModule generators, std::vector<Vec> relations, std::string name = "");

  const Ring& ring() const { return gens_.ring; }
  const FreeModule& generators() const { return gens_; }
  const std::vector<Vec>& relations() const { return relations_; }
  const std::string& name() const { return name_; }
  PresentedModule renamed(std::string name) const;

  bool is_zero_presentation() const { return gens_.degrees.empty(); }
  int num_generators() const { return gens_.rank(); }
  int min_generator_degree() const;
  int max_generator_degree() const;
  // Structural fingerprint of the presentation; invariant under renaming.
  std::string fingerprint() const;

  const GroebnerBasis& gb() const;
  long dim(int k) const;
  // Normal-form monomial basis of M_k as (generator, monomial) pairs.
  const std::vector<std::pair<int, Monomial>>& basis(int k) const;
  Vec basis_vec(int k, int index) const;
  Vec normal_form(const Vec& v) const;
  bool is_zero_element(const Vec& v) const { return normal_form(v).is_zero(); }
  // Coordinates of v in basis(v.degree).
  SparseVec coords(const Vec& v) const;
  // Coordinates of m * e_comp; cached.
  const SparseVec& monomial_coords(int comp, const Monomial& m) const;
  Vec from_coords(int k, const SparseVec& c) const;
  // True when M_k = 0 for all large k (lead ideal is zero-dimensional in every component).
  bool is_torsion() const;

 private:
  struct Lazy;
  FreeModule gens_;
  std::vector<Vec> relations_;
  std::string name_;
  std::shared_ptr<Lazy> lazy_;
};

// Degree-preserving (after twist) map given by the images of source generators.
struct ModuleMap {
  PresentedModule source;
  PresentedModule target;
  std::vector<Vec> images;  // images[j] in target.generators(), degree source degree + twist
  int twist = 0;
};

// Certificate: index of the first source relation whose image is nonzero, or nullopt.
std::optional<int> map_defect(const ModuleMap& phi);
void check_map(const ModuleMap& phi);  // throws invalid-map
Vec apply_map(const ModuleMap& phi, const Vec& v);  // normal form in the target
ModuleMap compose_maps(const ModuleMap& outer, const ModuleMap& inner);
ModuleMap identity_map(const PresentedModule& M);
ModuleMap zero_map(const PresentedModule& M, const PresentedModule& N);
bool is_zero_map(const ModuleMap& phi);

// Submodule (P + U)/U of F/U, where U are relations: a minimal presentation plus
// the chosen generators as elements of F.
struct Subquotient {
  PresentedModule module;
  std::vector<Vec> generators_in_ambient;
};
Subquotient subquotient(const FreeModule& F, const std::vector<Vec>& P, const std::vector<Vec>& U,
                        const std::string& name = "");

// Removes generators killed by relations with a unit entry.
struct Minimized {
  PresentedModule module;
  // Old generator j as an element of the new generators.
  std::vector<Vec> old_to_new;
  // New generator i corresponds to old generator kept[i].
  std::vector<int> kept;
};
Minimized minimize_presentation(const PresentedModule& M);

// ---- named modules ----
PresentedModule make_free(const Ring& A, int k);                // A(k)
PresentedModule make_chi(const Ring& A, int j);                 // A/(x0,x1,x2) (j)
PresentedModule make_Q(const Ring& A, int j, int r);            // Q_{j+2r, j}
PresentedModule make_Q_top_bottom(const Ring& A, int top, int bottom);
PresentedModule make_G(const Ring& A, int j);                   // (x0, x1^{n-1}, x2)(j)
PresentedModule make_H(const Ring& A, int j);                   // (x0, x1, x2)(j)
PresentedModule make_Aq01(const Ring& A, int k);                // (A/(x0,x1))(k)
PresentedModule make_quotient(const Ring& R, int k, const std::vector<Polynomial>& ideal, const std::string& name);
// Ideal generated by polys, twisted by j, presented through its syzygies.
Subquotient make_ideal(const Ring& R, int j, const std::vector<Polynomial>& polys, const std::string& name);

PresentedModule twist(const PresentedModule& M, int k);
// Generators and relations of the summands concatenated in order.
PresentedModule direct_sum(const std::vector<PresentedModule>& summands, const std::string& name = "");
Vec twist_vec(const Vec& v, int k);

// ---- kernels, images, cokernels ----
struct KernelResult {
  PresentedModule module;
  ModuleMap inclusion;  // kernel -> source
};
KernelResult kernel(const ModuleMap& phi);
struct ImageResult {
  PresentedModule module;
  ModuleMap inclusion;  // image -> target
};
ImageResult image(const ModuleMap& phi);
struct CokernelResult {
  PresentedModule module;
  ModuleMap projection;  // target -> cokernel
};
CokernelResult cokernel(const ModuleMap& phi);

struct TruncationResult {
  PresentedModule module;
  ModuleMap inclusion;  // M_{>=t} -> M
};
TruncationResult truncate(const PresentedModule& M, int t);

// Homology at the middle of M --phi--> N --psi--> P: dim ker psi_k - dim im phi_k.
long homology_dim(const ModuleMap& phi, const ModuleMap& psi, int k);
// Zero homology on [lo, hi] for every position of the complex; also psi∘phi = 0.
bool homology_is_zero(const std::vector<ModuleMap>& maps, int lo, int hi, std::string* detail = nullptr);
// Checks 0 -> M -> N -> P -> 0 for exactness on [lo, hi].
bool short_exact(const ModuleMap& phi, const ModuleMap& psi, int lo, int hi, std::string* detail = nullptr);

// ---- degree-0 homomorphisms ----
// Pullback matrix rows for Hom(F, N)_shift -> Hom(G, N)_shift along columns
// (images of G's generators in F). Row (g, u) -> coordinates over G's generators.
struct HomSpaceLayout {
  std::vector<int> offsets;  // per generator of the free module
  int dim = 0;
};
HomSpaceLayout hom_layout(const FreeModule& F, const PresentedModule& N, int shift);
std::vector<SparseVec> pullback_rows(const FreeModule& F, const std::vector<Vec>& columns, const FreeModule& G,
                                     const PresentedModule& N, int shift, const HomSpaceLayout& Fl,
                                     const HomSpaceLayout& Gl);

// Basis of Hom_gr(M, N(shift))_0 as module maps.
std::vector<ModuleMap> hom_basis(const PresentedModule& M, const PresentedModule& N, int shift = 0);
ModuleMap map_from_coords(const PresentedModule& M, const PresentedModule& N, int shift, const HomSpaceLayout& L,
                          const SparseVec& c);
SparseVec map_coords(const ModuleMap& phi, const HomSpaceLayout& L);

enum class IsoVerdict { kIsomorphic, kNotIsomorphic, kUndetermined };
struct IsoResult {
  IsoVerdict verdict = IsoVerdict::kUndetermined;
  std::optional<ModuleMap> forward;   // M -> N
  std::optional<ModuleMap> backward;  // N -> M
  std::string evidence;
};
IsoResult is_isomorphic(const PresentedModule& M, const PresentedModule& N, int height = 2);
// Exists a degree-0 map from a truncation of M to N with torsion kernel and cokernel.
bool qgr_isomorphic(const PresentedModule& M, const PresentedModule& N, int height = 2);

// Hilbert function window helper.
std::vector<long> hilbert_window(const PresentedModule& M, int lo, int hi);

}  // namespace qgrkit

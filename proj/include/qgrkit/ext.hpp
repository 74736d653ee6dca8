#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qgrkit/module.hpp"
#include "qgrkit/resolution.hpp"

namespace qgrkit {

struct ExtOptions {
  int i_max = 2;
  std::optional<int> trunc_start;  // overrides the computed start level
  int window = 3;                  // consecutive equal levels required
  std::optional<int> trunc_cap;    // overrides start + 10 * a_max
  bool oracles = true;             // cross-check with every applicable oracle
};

struct ExtTraceEntry {
  int t;
  std::vector<long> dims;
};

struct ExtResult {
  std::string source;
  std::string target;
  std::vector<long> dims;  // dims[i] = dim Ext^i, 0 <= i <= i_max
  std::vector<ExtTraceEntry> trace;
  int stable_level = 0;  // first level of the stable window
  std::vector<std::string> certified_by;

  long dim(int i) const { return i >= 0 && i < static_cast<int>(dims.size()) ? dims[i] : 0; }
};

// Minimal resolution of a truncation M_{>=t} together with its embedding into M.
struct TruncatedResolution {
  int level = 0;
  PresentedModule truncated;
  ModuleMap inclusion;  // truncated -> M
  std::shared_ptr<const Resolution> resolution;
  std::vector<Vec> augmentation;  // F_0 generators in truncated.generators()
};

// Ext^i(M, N) with a fixed module M is read off the complex Hom(F_., N)_0.
struct CochainData {
  std::vector<HomSpaceLayout> layouts;           // C^0 .. C^{i_max+1}
  std::vector<std::vector<SparseVec>> coboundary;  // coboundary[i]: rows C^i -> C^{i+1}
};

class ExtEngine {
 public:
  explicit ExtEngine(std::optional<std::filesystem::path> cache_dir = std::nullopt);

  // Ext^i in the quotient category, 0 <= i <= i_max.
  ExtResult ext(const PresentedModule& M, const PresentedModule& N, const ExtOptions& options = {});
  // Graded Ext^i(M_{>=t}, N)_0 for i <= i_max (no stabilization).
  std::vector<long> ext_at_level(const PresentedModule& M, const PresentedModule& N, int t, int i_max);
  // Default start level for the stabilization search.
  int truncation_start(const PresentedModule& M, const PresentedModule& N);
  std::shared_ptr<const TruncatedResolution> truncated_resolution(const PresentedModule& M, int t, int length);
  // Cochains C^0..C^top of Hom(F_., N)_0 and the coboundaries between them.
  CochainData cochains(const Resolution& R, const PresentedModule& N, int top);

  // ---- independent oracles; nullopt when not applicable ----
  // Free rank-one modules over the polynomial ring B.
  std::optional<std::vector<long>> oracle_forpolinoms(const PresentedModule& M, const PresentedModule& N, int i_max);
  // First argument free of rank one over A: recomputed over B by local duality.
  std::optional<std::vector<long>> oracle_basechange(const PresentedModule& M, const PresentedModule& N, int i_max);
  // Named modules supported at the point where x3 is invertible: Koszul cochains on the chart.
  std::optional<std::vector<long>> oracle_chart(const PresentedModule& M, const PresentedModule& N, int i_max);
  // One side free of rank one over A: Serre-type duality, both sides by truncation.
  std::optional<std::vector<long>> oracle_duality(const PresentedModule& M, const PresentedModule& N, int i_max);

  std::filesystem::path cache_directory() const;
  size_t cached_resolutions() const { return resolutions_.size(); }

 private:
  ExtResult colimit(const PresentedModule& M, const PresentedModule& N, const ExtOptions& options);
  int b_regularity_bound(const PresentedModule& N);

  ResolutionCache resolutions_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const TruncatedResolution>> truncations_;
  std::map<std::string, int> bounds_;
};

// Process-wide engine; on-disk caching only if configure_default_engine was called.
ExtEngine& default_engine();
void configure_default_engine(std::optional<std::filesystem::path> cache_dir);

ExtResult ext_qgr(const PresentedModule& M, const PresentedModule& N, const ExtOptions& options = {});

// dim Ext^i(A, M) == dim Ext^{2-i}(M, A(-2n-1)); returns a message on mismatch.
struct DualityVerdict {
  bool ok = true;
  long lhs = 0, rhs = 0;
  std::string detail;
};
DualityVerdict duality_check(const PresentedModule& M, int i, ExtEngine& engine = default_engine());

// ---- Ext classes and Yoneda products ----

// A class in Ext^p(M, N) represented at truncation level t by a cocycle
// F_p(M_{>=t}) -> N, stored as images of F_p's generators in N.generators().
struct ExtClass {
  PresentedModule source;
  PresentedModule target;
  int degree = 0;
  int level = 0;
  std::vector<Vec> cocycle;
};

// Basis of Ext^p(M, N) at level t (a complement of coboundaries in cocycles).
std::vector<ExtClass> ext_class_basis(const PresentedModule& M, const PresentedModule& N, int p, int t,
                                      ExtEngine& engine = default_engine());
// The index-th basis class at the stable level of ext_qgr.
ExtClass ext_class(const PresentedModule& M, const PresentedModule& N, int p, int index,
                   ExtEngine& engine = default_engine());
// Degree-0 class of a module map restricted to M_{>=t}.
ExtClass class_from_map(const ModuleMap& phi, int t, ExtEngine& engine = default_engine());
// The same class represented at a higher level t' >= level.
ExtClass retruncate(const ExtClass& c, int t, ExtEngine& engine = default_engine());
// beta in Ext^q(N, K), alpha in Ext^p(M, N) -> beta . alpha in Ext^{p+q}(M, K).
ExtClass yoneda_compose(const ExtClass& beta, const ExtClass& alpha, ExtEngine& engine = default_engine());
// Nonzero modulo coboundaries at the class level and one level higher.
bool is_nonzero(const ExtClass& c, ExtEngine& engine = default_engine());
ExtClass scale_class(const ExtClass& c, const Rational& s);
ExtClass add_classes(const ExtClass& a, const ExtClass& b);
// Rank of the span of same-degree classes in cohomology after retruncation to `level`.
long class_rank(const std::vector<ExtClass>& classes, int level, ExtEngine& engine = default_engine());
// Do the two classes agree in cohomology (at a common level)?
bool classes_equal(const ExtClass& a, const ExtClass& b, ExtEngine& engine = default_engine());

}  // namespace qgrkit

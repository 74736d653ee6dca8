#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgrkit/ext.hpp"
#include "qgrkit/objects.hpp"

namespace qgrkit {

struct NamedCollection {
  std::string label;  // intro, ec_1, ec_2, ec_3 or custom
  int n = 0;
  std::vector<ShiftedObject> objects;
};

// intro: (A, ..., A(2n)).
// ec_1:  (A, ..., A(2n-2), G(2n-1), A(2n-1), G(2n), A(2n), chi(2n), ..., chi(5)).
// ec_2:  (A, ..., A(2n-1), G(2n), A(2n), H(2n+1), chi(2n), ..., chi(5)).
// ec_3:  (A, ..., A(2n-1), G(2n), A(2n), H(2n+1), Q(6,6), ..., Q(2n,6), Q(5,5), ..., Q(2n-1,5)).
NamedCollection builtin_collection(const std::string& label, const Ring& A);
std::vector<std::string> builtin_labels();

struct VerifyOptions {
  int jobs = 1;
  // Also compute Ext^3 and abort if it is ever nonzero.
  bool ceiling_check = false;
  ExtOptions ext;
};

struct PairCheck {
  int k = 0, l = 0, i = 0;  // Hom^i(E_k, E_l), shifts applied
  long dim = 0;
  std::string method;
};

struct ObjectVerdict {
  std::string label;
  std::vector<long> dims;  // Hom^i(E, E), i = 0..2
  bool exceptional = false;
};

struct Offence {
  int k, l, i;
  long dim;
};

struct CollectionReport {
  std::string label;
  int n = 0;
  std::vector<std::string> objects;
  std::vector<ObjectVerdict> exceptional;
  std::vector<PairCheck> checks;        // every (k, l, i), ordered
  std::vector<Offence> backward_failures;  // k > l with nonzero Hom^i
  std::vector<std::vector<long>> gram;
  std::string determinant;  // exact integer
  bool unitriangular = false;
  bool passed = false;

  long hom(int k, int l, int i) const;
};

// All Hom^i(E_k, E_l) for i = 0..2, exceptionality, backward vanishing and the Gram matrix.
CollectionReport verify_collection(const NamedCollection& c, const VerifyOptions& options = {},
                                   ExtEngine& engine = default_engine());

// Exact determinant of an integer matrix.
std::string integer_determinant(const std::vector<std::vector<long>>& m);

bool is_exceptional_object(const PresentedModule& E, ExtEngine& engine = default_engine());

// ---- morphism algebra ----

struct MorphismEntry {
  int k = 0, l = 0, i = 0;
  long dim = 0;
  std::optional<long> expected;  // closed-form value when the pair is covered by the table
  std::string rule;              // which table row predicts the value
  bool ok = true;
};

struct CompositionCheck {
  std::string rule;  // (a), (b), ...
  std::string description;
  bool predicted_nonzero = false;
  bool observed_nonzero = false;
  bool ok = false;
};

struct MorphismAlgebra {
  std::string label;
  int n = 0;
  std::vector<std::string> objects;
  std::vector<MorphismEntry> entries;  // k <= l, i = 0..2
  std::vector<CompositionCheck> compositions;
  bool passed = false;
};

// Forward Ext table compared with the closed forms for ec_3 (other collections get no
// expected values); composition checks run for ec_3.
MorphismAlgebra morphism_algebra(const NamedCollection& c, const CollectionReport& report,
                                 ExtEngine& engine = default_engine());
// The composition rules on objects of the ec_3 family for parameter n.
std::vector<CompositionCheck> composition_checks(const Ring& A, ExtEngine& engine = default_engine());

// dim of the span of all degree-k monomials of A except x1^m when k = 2m, m <= n-2.
long dim_A_bar(const Ring& A, int k);

// ---- negative control ----

struct NegativeControl {
  NamedCollection permuted;
  int p = 0, q = 0;  // positions swapped in the original
  std::vector<Offence> predicted;  // backward pairs predicted to be nonzero (closed forms)
};

// Swaps two objects of ec_1 chosen with `seed` among transpositions that the
// closed-form Ext tables predict to break the collection.
NegativeControl negative_control(const Ring& A, uint64_t seed);

}  // namespace qgrkit

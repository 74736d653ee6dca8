#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgrkit/ext.hpp"
#include "qgrkit/objects.hpp"
#include "qgrkit/sequences.hpp"

namespace qgrkit {

enum class MutationMechanism { kOrthogonal, kHomKernel, kHomCokernel, kExt1UniversalExtension };
const char* to_string(MutationMechanism m);

struct MutationOutcome {
  ShiftedObject result;
  MutationMechanism mechanism = MutationMechanism::kOrthogonal;
  int hom_degree = -1;  // cohomological degree carrying Hom^.(X, Y); -1 when zero
  long hom_dim = 0;
  int level = 0;        // truncation level of X used to build the witness
  NamedSequence witness;  // short exact sequence defining the result
  bool witness_exact = true;
  std::optional<Identification> identified;
};

struct MutationOptions {
  bool verify_exceptional = true;
  int height = 2;  // coefficient height for isomorphism witnesses
  bool identify = true;
};

// L_X(Y), defined by the triangle L_X(Y) -> Hom^.(X,Y) (x) X -> Y.
MutationOutcome left_mutation(const ShiftedObject& X, const ShiftedObject& Y, const MutationOptions& options = {},
                              ExtEngine& engine = default_engine());
// R_Y(X), defined by the triangle X -> Hom^.(X,Y)^* (x) Y -> R_Y(X).
MutationOutcome right_mutation(const ShiftedObject& Y, const ShiftedObject& X, const MutationOptions& options = {},
                               ExtEngine& engine = default_engine());

struct MutationChain {
  std::vector<MutationOutcome> steps;  // in the order they were performed
  ShiftedObject result;
};

// L_<E_1..E_r>(Y) = L_{E_1}(L_<E_2..E_r>(Y)).
MutationChain iterated_left_mutation(const std::vector<ShiftedObject>& prefix, const ShiftedObject& Y,
                                     const MutationOptions& options = {}, ExtEngine& engine = default_engine());
// R_<E_1..E_r>(X) = R_{E_r}(R_<E_1..E_{r-1}>(X)).
MutationChain iterated_right_mutation(const ShiftedObject& X, const std::vector<ShiftedObject>& suffix,
                                      const MutationOptions& options = {}, ExtEngine& engine = default_engine());

}  // namespace qgrkit

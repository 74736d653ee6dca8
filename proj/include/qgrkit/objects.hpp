#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qgrkit/module.hpp"

namespace qgrkit {

// A module placed in homological degree -shift, i.e. M[shift].
struct ShiftedObject {
  PresentedModule module;
  int shift = 0;

  std::string label() const;
};

// Object expressions: A(k), chi(j), Q(top,bottom), G(j), H(j), Aq01(k), each
// optionally followed by a shift [s]. Whitespace is ignored.
ShiftedObject parse_object(std::string_view text, const Ring& A);
// Comma-separated list of expressions (commas inside parentheses belong to Q).
std::vector<ShiftedObject> parse_object_list(std::string_view text, const Ring& A);

// {"generators": [degrees], "relations": [[poly per generator], ...], "name": optional}
PresentedModule module_from_json(const nlohmann::json& j, const Ring& R);
nlohmann::json module_to_json(const PresentedModule& M);

struct Identification {
  std::string name;       // canonical expression, e.g. "Q(8,6)"
  bool up_to_torsion = false;  // only isomorphic in the quotient category
  IsoResult witness;      // module isomorphism witness when !up_to_torsion
};

// Matches M against the named families by Hilbert function and an explicit
// isomorphism search; falls back to isomorphism modulo torsion.
std::optional<Identification> identify_named(const PresentedModule& M, int height = 2, bool allow_qgr = true);

}  // namespace qgrkit

#pragma once

#include <vector>

#include "imbrex/galois.hpp"

namespace imbrex::detail {

// Generators of Q+(9,2): sum x_i x_{i+5}, in the family of span(e5..e9),
// in enumeration order.  Shared by the half-spin geometry and its spinor
// embedding so their point orders agree.
struct HalfSpin {
  FieldPtr field;
  std::vector<ProjSubspace> generators;
};
const HalfSpin& halfspin_data();

}  // namespace imbrex::detail

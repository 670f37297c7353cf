#pragma once

#include <optional>
#include <vector>

#include "imbrex/axioms.hpp"

namespace imbrex::detail {

// check_polar_space plus the data computed along the way.
struct PolarCheck {
  AxiomReport report;
  int rank = 0;
  std::vector<PointSet> maximal;
};

PolarCheck polar_check(const IncidenceGeometry& g, std::optional<int> expect_rank);

}  // namespace imbrex::detail

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "imbrex/geometry.hpp"
#include "imbrex/report.hpp"

namespace imbrex {

struct GqClass {
  enum class Kind { thick, grid, dual_grid, not_a_gq };
  Kind kind = Kind::not_a_gq;
  // thick: order (s,t).  grid / dual grid: the two side lengths.
  std::size_t s = 0, t = 0;
  std::size_t m = 0, n = 0;
  ojson witness;  // set for not_a_gq

  bool is_gq() const { return kind != Kind::not_a_gq; }
  ojson to_json() const;
};

/// Total classification; the witness names the violated axiom (PS2 is
/// tested first, so a projective plane reports a point collinear with all).
GqClass classify_gq(const IncidenceGeometry& g);

/// Lines concurrent with every member of T.  A line counts as concurrent
/// with itself, so L is in {L}^perp.  Sorted ascending.
std::vector<LineId> perp(const IncidenceGeometry& g, const std::vector<LineId>& t);

struct RegularPair {
  bool regular = false;
  std::vector<LineId> perp;         // {L,M}^perp
  std::vector<LineId> double_perp;  // ({L,M}^perp)^perp
  std::optional<std::pair<LineId, LineId>> witness;  // L', M' realizing it
};

/// Throws Error("pair must be non-concurrent") when L and M meet.
RegularPair is_regular_pair(const IncidenceGeometry& g, LineId l, LineId m);

/// Ideality of the substructure whose lines are the traces line ∩ subpoints
/// of `sublines`.  Throws Error when the substructure is not a GQ.
/// Witness on failure: {"point", "line"} with a line of g missing.
AxiomReport is_ideal_subquadrangle(const IncidenceGeometry& g, const PointSet& subpoints,
                                   const std::vector<LineId>& sublines);

struct OnanConfig {
  std::array<LineId, 4> lines{};
  std::vector<Point> points;  // 5 (non-closing) or 6 (closing), sorted
  bool closing = false;
  ojson to_json() const;
};

enum class OnanMode { nonclosing, closing, any };

/// O'Nan configurations among the lines of g inside S.  `limit` = 0 means
/// all of them.
std::vector<OnanConfig> find_onan(const IncidenceGeometry& g, const PointSet& s, OnanMode mode,
                                  std::size_t limit = 0);

/// True iff any two lines of g inside S meet (projective-plane-shaped).
bool all_lines_meet(const IncidenceGeometry& g, const PointSet& s);

}  // namespace imbrex

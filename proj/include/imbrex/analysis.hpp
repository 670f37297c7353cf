#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "imbrex/geometry.hpp"
#include "imbrex/report.hpp"

namespace imbrex {

/// Delta: the points of Gamma with the maximal singular subspaces as blocks.
struct BlockGeometry {
  std::vector<PointSet> blocks;
  IncidenceGeometry delta;  // lines = blocks, same numbering
  /// Delta-GQ, far, moreprop, lineblock, ideal-symps.
  std::vector<AxiomReport> reports;
  bool pass = false;

  std::optional<std::size_t> block_of(Point x, Point y) const;  // collinear pair
  const std::vector<LineId>& blocks_through(Point x) const { return delta.lines_through(x); }
};

/// Throws Error when the symplectic rank is not constantly 2.
BlockGeometry block_geometry(const IncidenceGeometry& g, const SympIndex& symps);

struct Spread {
  std::size_t symp = 0;
  std::size_t block = 0;
  std::vector<std::vector<Point>> lines;
  /// image[i]: the point where the block through lines[i] meets the
  /// inducing block.
  std::vector<Point> image;
  AxiomReport report;  // "spread"
  ojson to_json() const;
};

struct DoublePerpGeometry {
  /// Each line of sigma as indices into the spread lines.
  std::vector<std::vector<std::size_t>> lines;
  AxiomReport closure;   // "spread-double-perp"
  AxiomReport morphism;  // "sigma-beta"
  bool pass() const { return closure.pass && morphism.pass; }
};

/// Shares per-symp data (induced quadrangle, double perps) across many
/// spreads.
class SpreadAnalyzer {
 public:
  SpreadAnalyzer(const IncidenceGeometry& g, const SympIndex& symps, const BlockGeometry& bg);
  ~SpreadAnalyzer();

  /// Throws Error("block meets symp") when they share a point.
  Spread spread(std::size_t block, std::size_t symp);
  DoublePerpGeometry double_perp(const Spread& s);

 private:
  struct Local;
  Local& local(std::size_t symp);
  const IncidenceGeometry* g_;
  const SympIndex* symps_;
  const BlockGeometry* bg_;
  std::vector<std::unique_ptr<Local>> cache_;
};

Spread induced_spread(const IncidenceGeometry& g, const SympIndex& symps, const BlockGeometry& bg,
                      std::size_t block, std::size_t symp);
DoublePerpGeometry double_perp_geometry(const IncidenceGeometry& g, const SympIndex& symps,
                                        const BlockGeometry& bg, const Spread& spread);

/// Every (block, disjoint symp) pair: the spread is a partition and its
/// double perps stay inside it, with the sigma -> beta morphism.
AxiomReport check_spreads(const IncidenceGeometry& g, const SympIndex& symps, const BlockGeometry& bg);

/// Non-concurrent line pairs of every symp are regular.
AxiomReport check_pair_regularity(const IncidenceGeometry& g, const SympIndex& symps);

/// For x and a line q1q2 with no point collinear to x, some point of
/// xi(x,q1) ∩ xi(x,q2) is collinear with the whole line.
AxiomReport check_pointcol(const IncidenceGeometry& g, const SympIndex& symps, const ScanOptions& opts = {});

/// Every block holds a non-closing O'Nan configuration; per-block counts.
/// Throws Error("theorem requires thick symplecta") unless rank 2 with
/// thick symps.
AxiomReport verify_nonclosing_theorem(const IncidenceGeometry& g, const SympIndex& symps, const BlockGeometry& bg);

/// (CC1) for symplectic rank >= 3; throws Error below that.
AxiomReport check_cc1(const IncidenceGeometry& g, const SympIndex& symps, const ScanOptions& opts = {});

}  // namespace imbrex

#pragma once

#include <optional>
#include <vector>

#include "imbrex/geometry.hpp"
#include "imbrex/report.hpp"

namespace imbrex {

/// (PS1)-(PS4).  The certificate holds the realized rank; PS3 fails only
/// when `expect_rank` is given and differs.
AxiomReport check_polar_space(const IncidenceGeometry& g, std::optional<int> expect_rank = std::nullopt);

/// 1 + projective dimension of a largest maximal singular subspace.
int polar_rank(const IncidenceGeometry& g, const std::vector<PointSet>& maximal);

/// Thickness class of a polar space.  Rank 2 follows classify_gq; for
/// higher rank, a next-to-maximal singular subspace lying in exactly two
/// maximal ones gives `grid` (the hyperbolic type), three or more `thick`.
Thickness polar_thickness(const IncidenceGeometry& g, int rank, const std::vector<PointSet>& maximal);

struct ParapolarCheck {
  AxiomReport report;
  std::optional<SympIndex> symps;  // present when PPS2 was reached and passed
};

/// Connectivity, (PPS1) read geometry-wide, diameter exactly 2, (PPS2).
ParapolarCheck check_strong_parapolar_diam2(const IncidenceGeometry& g);

/// Always passes on finite input; certificate = longest singular chain,
/// the empty subspace included.
AxiomReport check_pps4(const IncidenceGeometry& g);

/// (Imb) over all triples (x, L, {y1,y2}) with no point of L collinear
/// with x.  Results are memoized per symp pair.
AxiomReport check_imb(const IncidenceGeometry& g, const SympIndex& symps, const ScanOptions& opts = {});
/// (Imb*): the intersection need only contain a full line.
AxiomReport check_imb_star(const IncidenceGeometry& g, const SympIndex& symps, const ScanOptions& opts = {});
/// Convenience forms; throw Error("not a strong parapolar space of
/// diameter 2") when the precondition fails.
AxiomReport check_imb(const IncidenceGeometry& g);
AxiomReport check_imb_star(const IncidenceGeometry& g);

struct RankProfile {
  std::vector<int> ranks;
  std::vector<Thickness> thickness;
  std::optional<int> rank;  // set iff constant
  bool uniform_thickness = false;
  ojson to_json() const;
};
RankProfile rank_profile(const SympIndex& symps);

struct ImbrexResult {
  bool pass = false;
  std::vector<AxiomReport> reports;
  RankProfile profile;
  std::optional<SympIndex> symps;
  ojson to_json() const;
};

/// Strong parapolar diameter 2 + (PPS4) + (Imb) + constant rank.
ImbrexResult is_imbrex(const IncidenceGeometry& g, const ScanOptions& opts = {});

/// Quadrangle Lemma: every closed 4-path p1 p2 p3 p4 with p1, p3
/// non-collinear has its four lines inside xi(p1,p3).
AxiomReport check_quadrangle_lemma(const IncidenceGeometry& g, const SympIndex& symps, const ScanOptions& opts = {});
/// Points of a symp collinear with an outside point form a singular subspace.
AxiomReport check_subspace_lemma(const IncidenceGeometry& g, const SympIndex& symps);
/// For collinear x,y some symp contains x and not y (only with >= 2 symps).
AxiomReport check_proper_lemma(const IncidenceGeometry& g, const SympIndex& symps);

/// Re-derives the violation named in a failed report from scratch.  True
/// iff the witness is a genuine counterexample.  Unknown witness shapes
/// return false.
bool replay_witness(const IncidenceGeometry& g, const AxiomReport& report);

}  // namespace imbrex

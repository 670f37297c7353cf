#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "imbrex/galois.hpp"
#include "imbrex/geometry.hpp"
#include "imbrex/report.hpp"

namespace imbrex {

/// A point set X of PG(N,q) with a family Xi of (d+1)-spaces.  Each member
/// of Xi is stored as a generating set of points of X.
struct EmbeddedMMSet {
  std::string name;
  FieldPtr field;
  int ambient_dim = 0;
  std::vector<Vec> points;
  std::vector<std::vector<Point>> xi;
  int d = 0;
  int r = 0;

  bool proper() const { return xi.size() >= 2; }
};

/// Derived lookup structure: spans, the points of X in each member of Xi,
/// and the full projective lines inside X.
class MMIndex {
 public:
  explicit MMIndex(const EmbeddedMMSet& e);
  explicit MMIndex(EmbeddedMMSet&&) = delete;  // keeps a pointer to e

  const EmbeddedMMSet& set() const { return *e_; }
  const ProjectiveSpace& space() const { return pg_; }
  std::size_t size() const { return e_->points.size(); }

  /// Index in X of a vector, if it is a point of X.
  std::optional<Point> find(const Vec& v) const;
  const ProjSubspace& xi_span(std::size_t i) const { return spans_[i]; }
  /// Points of X inside the span of member i.
  const PointSet& xi_points(std::size_t i) const { return xi_points_[i]; }
  const std::vector<std::size_t>& xi_through(Point x) const { return xi_through_[x]; }

  bool x_collinear(Point x, Point y) const { return x != y && xcol_[x].test(y); }
  const PointSet& x_neighbours(Point x) const { return xcol_[x]; }
  /// Full projective lines inside X, each as sorted point indices.
  const std::vector<std::vector<Point>>& x_lines() const { return lines_; }
  const std::vector<std::uint32_t>& x_lines_through(Point x) const { return lines_through_[x]; }

 private:
  const EmbeddedMMSet* e_;
  ProjectiveSpace pg_;
  std::unordered_map<std::uint64_t, Point> index_;
  std::vector<ProjSubspace> spans_;
  std::vector<PointSet> xi_points_;
  std::vector<std::vector<std::size_t>> xi_through_;
  std::vector<PointSet> xcol_;
  std::vector<std::vector<Point>> lines_;
  std::vector<std::vector<std::uint32_t>> lines_through_;
};

/// True iff the projective line xy lies in X.  Throws for x == y.
bool x_collinear(const MMIndex& m, Point x, Point y);

struct TangentData {
  Point x = 0;
  std::size_t xi = 0;
  ProjSubspace tangent;
};

/// Span of x and the points of X(xi) X-collinear with x.  Throws Error when
/// x is not in X(xi).
TangentData tangent_space(const MMIndex& m, std::size_t xi, Point x);

struct MMCheck {
  std::vector<AxiomReport> reports;  // structure, MM1, MM2
  bool pass = false;
  /// [x,y]: the member of Xi through a non-X-collinear pair, -1 otherwise.
  std::vector<std::int32_t> bracket;
  std::optional<std::size_t> lookup(Point x, Point y) const;
  std::size_t n = 0;
};

/// Structural validation (spanning, member dimensions, X(xi) polar of
/// rank r) followed by MM1 (with uniqueness of [x,y]) and MM2.
MMCheck check_mm_axioms(const MMIndex& m);

/// LMM3 with bound 2d-r+1.  Throws Error when `mm` did not pass.  The
/// certificate holds the realized maximum and a histogram of dimensions.
AxiomReport check_lmm3(const MMIndex& m, const MMCheck& mm, const ScanOptions& opts = {});

/// Residue at x: the lines of X through x, projected from x, with the
/// projected tangent spaces of the members through x.  Type (d-2, r-1).
/// Throws Error when x lies on no line of X.
EmbeddedMMSet residue(const MMIndex& m, Point x);

/// Short structural description (point and line counts, connectivity).
ojson describe(const EmbeddedMMSet& e);

/// Points X, lines the full projective lines inside X.
IncidenceGeometry abstract_geometry(const MMIndex& m);

/// Same type parameters and ambient dimension, and a point bijection
/// mapping X-lines to X-lines and the X(xi) family onto itself.
bool structurally_isomorphic(const EmbeddedMMSet& a, const EmbeddedMMSet& b);

ojson to_json(const EmbeddedMMSet& e);
EmbeddedMMSet embedded_from_json(const nlohmann::json& j);

/// Re-derives a failed MM1/MM2/LMM3 witness.
bool replay_mm_witness(const MMIndex& m, const AxiomReport& report);

}  // namespace imbrex

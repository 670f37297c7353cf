#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "imbrex/galois.hpp"
#include "json.hpp"

namespace imbrex {

using Point = std::uint32_t;
using LineId = std::uint32_t;
/// Dense point set; all set algebra in the hot loops goes through this.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

std::vector<Point> to_list(const PointSet& s);
PointSet to_set(std::size_t universe, std::span<const Point> points);

/// Point-line geometry with dense point identifiers 0..n-1.
///
/// Lines are stored sorted and deduplicated, in lexicographic order, so two
/// geometries built from the same line family are identical.  Partial
/// linearity is not required; it is recorded and can be queried.
class IncidenceGeometry {
 public:
  IncidenceGeometry() = default;
  /// Throws Error naming the offending line for an identifier out of range
  /// or a line with fewer than two distinct points.
  IncidenceGeometry(std::size_t point_count, std::vector<std::vector<Point>> lines, std::string name = {});

  std::size_t point_count() const { return n_; }
  std::size_t line_count() const { return lines_.size(); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<std::vector<Point>>& lines() const { return lines_; }
  const std::vector<Point>& line(LineId l) const { return lines_[l]; }
  const PointSet& line_set(LineId l) const { return line_sets_[l]; }
  const std::vector<LineId>& lines_through(Point p) const { return point_lines_[p]; }

  /// Points collinear with p, p itself excluded.
  const PointSet& neighbours(Point p) const { return nbr_[p]; }
  bool collinear(Point a, Point b) const { return nbr_[a].test(b); }
  std::vector<LineId> lines_through_pair(Point a, Point b) const;
  /// The first line through both points, if any.
  std::optional<LineId> line_through(Point a, Point b) const;
  bool partial_linear() const { return partial_linear_; }

  PointSet empty_set() const { return PointSet(n_); }
  PointSet full_set() const { return PointSet(n_).set(); }

 private:
  std::size_t n_ = 0;
  std::string name_;
  std::vector<std::vector<Point>> lines_;
  std::vector<PointSet> line_sets_;
  std::vector<std::vector<LineId>> point_lines_;
  std::vector<PointSet> nbr_;
  std::vector<std::int32_t> pair_line_;  // dense first-line table, small geometries only
  bool partial_linear_ = true;
};

IncidenceGeometry build_geometry(std::vector<std::vector<Point>> lines, std::size_t point_count,
                                 std::string name = {});

/// Sub-geometry on a point subset with the lines fully inside it.
struct InducedGeometry {
  IncidenceGeometry geometry;
  std::vector<Point> to_parent;
  std::vector<LineId> parent_lines;
};
InducedGeometry induced_geometry(const IncidenceGeometry& g, const PointSet& points);

/// Disjoint union; points of `b` are shifted by a.point_count().
IncidenceGeometry disjoint_union(const IncidenceGeometry& a, const IncidenceGeometry& b);

enum class Metric { collinearity, incidence };

/// Graph distance between points; nullopt when they are disconnected.
/// The incidence metric counts steps in the point-line incidence graph.
std::optional<std::size_t> distance(const IncidenceGeometry& g, Point x, Point y,
                                    Metric metric = Metric::collinearity);
/// Collinearity-graph BFS distances from one point (SIZE_MAX = unreachable).
std::vector<std::size_t> distances_from(const IncidenceGeometry& g, Point x);
bool is_connected(const IncidenceGeometry& g);

bool is_subspace(const IncidenceGeometry& g, const PointSet& s);
bool is_clique(const IncidenceGeometry& g, const PointSet& s);
bool is_singular_subspace(const IncidenceGeometry& g, const PointSet& s);

struct SingularClosure {
  PointSet points;
  /// Set when the fixpoint is not singular: a non-collinear pair produced.
  std::optional<std::pair<Point, Point>> witness;
  bool singular() const { return !witness.has_value(); }
};

/// Least fixpoint of repeatedly adding every line with two points in the set.
SingularClosure singular_closure(const IncidenceGeometry& g, const PointSet& s);

/// Number of nonempty members of a chain built by adding one point at a
/// time and closing; equals projective dimension + 1 on projective spaces.
std::size_t generation_length(const IncidenceGeometry& g, const PointSet& s);

/// Maximal cliques of the collinearity graph restricted to `domain`.
std::vector<PointSet> maximal_cliques(const IncidenceGeometry& g, const PointSet& domain);

/// Maximal singular subspaces, sorted by their point lists.
std::vector<PointSet> maximal_singular_subspaces(const IncidenceGeometry& g);
/// Same, for the geometry induced on `domain` (lines inside the domain).
std::vector<PointSet> maximal_singular_subspaces(const IncidenceGeometry& g, const PointSet& domain);

/// Smallest convex subspace through two points at distance 2.
/// Throws Error("not at distance 2") otherwise.
PointSet convex_closure(const IncidenceGeometry& g, Point x, Point y);

enum class Thickness { thick, grid, other };
const char* to_string(Thickness t);

struct Symp {
  PointSet points;
  std::vector<LineId> lines;  ///< lines of the parent inside the symp
  int rank = 0;
  Thickness thickness = Thickness::other;
  std::pair<Point, Point> generator;  ///< the pair it was first built from
  std::size_t size() const { return points.count(); }
};

/// Raised by enumerate_symps when a convex closure is not a polar space of
/// rank >= 2, or when two distinct symps share a non-collinear pair.
class SympError : public Error {
 public:
  SympError(Point x, Point y, std::string reason, nlohmann::ordered_json detail);
  Point x() const { return x_; }
  Point y() const { return y_; }
  const std::string& reason() const { return reason_; }
  const nlohmann::ordered_json& detail() const { return detail_; }

 private:
  Point x_;
  Point y_;
  std::string reason_;
  nlohmann::ordered_json detail_;
};

/// All symps of a geometry plus the non-collinear pair -> symp lookup.
class SympIndex {
 public:
  const std::vector<Symp>& symps() const { return symps_; }
  std::size_t size() const { return symps_.size(); }
  const Symp& operator[](std::size_t i) const { return symps_[i]; }
  /// Symp through a non-collinear pair.
  std::optional<std::size_t> symp_of(Point x, Point y) const;
  /// Symps containing the point, ascending.
  std::vector<std::size_t> symps_through(Point x) const;
  std::size_t non_collinear_pairs() const { return pairs_; }
  bool all_pairs_closed() const { return all_pairs_; }

 private:
  friend SympIndex enumerate_symps(const IncidenceGeometry&, std::optional<bool>);
  std::size_t n_ = 0;
  std::vector<Symp> symps_;
  std::vector<std::int32_t> lookup_;
  std::size_t pairs_ = 0;
  bool all_pairs_ = false;
};

/// Geometries at or below this size get a convex closure for every
/// non-collinear pair; larger ones one closure per symp.
inline constexpr std::size_t kExhaustivePointLimit = 500;

/// Enumerate symps.  `all_pairs` overrides the size-based policy.
SympIndex enumerate_symps(const IncidenceGeometry& g, std::optional<bool> all_pairs = std::nullopt);

/// Point bijection a -> b mapping lines onto lines, if one exists.
std::optional<std::vector<Point>> find_isomorphism(const IncidenceGeometry& a, const IncidenceGeometry& b);

/// Canonical Geometry JSON: {"name", "point_count", "lines"}.
nlohmann::ordered_json to_json(const IncidenceGeometry& g);
IncidenceGeometry geometry_from_json(const nlohmann::json& j);
/// One-line serialization with a trailing newline; identical geometries
/// give identical bytes.
std::string canonical_json_text(const IncidenceGeometry& g);

}  // namespace imbrex

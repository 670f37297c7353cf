#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imbrex/galois.hpp"
#include "imbrex/geometry.hpp"
#include "imbrex/mazzocca_melone.hpp"

namespace imbrex {

/// Catalog parameters; each entry reads the ones it needs.
struct Params {
  std::optional<int> m, n, p, r, q;
  std::string from;  // for "imbrex": the embedded quadrangle
};

/// One line per supported entry with its parameters and bounds.
std::vector<std::string> supported_entries();

/// grid(m,n), W(q), Q4(q), Qminus5(q), H3(q2), H4(q2), grassmann(n,q),
/// segre(p,r,q), halfspin_d5(q=2), imbrex(from, q).  Unknown names and
/// out-of-range parameters throw Error listing the supported entries.
IncidenceGeometry build(const std::string& name, const Params& params);

/// Canonical label, e.g. "grassmann(4,2)".
std::string entry_label(const std::string& name, const Params& params);

/// The nondegenerate form behind a classical quadrangle and the projective
/// dimension it lives in.  Names as for build_embedded_quadrangle.
std::pair<SesquilinearForm, int> classical_form(const std::string& name, unsigned q);

/// A quadrangle with its projective coordinatization.
struct EmbeddedQuadrangle {
  std::string name;
  FieldPtr field;
  int ambient = 0;
  std::vector<Vec> points;                    // normalized vectors
  std::vector<ProjSubspace> lines;            // projective lines
  std::vector<std::vector<Point>> line_points;  // indices into points

  IncidenceGeometry geometry() const;
};

/// Q4(q), H4(q2), Qminus5(q), H3(q2).
EmbeddedQuadrangle build_embedded_quadrangle(const std::string& name, unsigned q);

/// Points: the lines of the quadrangle.  Lines: for every point p and every
/// plane through p holding at least two quadrangle lines, the lines through
/// p in that plane.  Throws Error("construction degenerate") if fewer than
/// two such pencils exist.
IncidenceGeometry imbrex_from_embedded_quadrangle(const EmbeddedQuadrangle& omega);

/// Same geometry from raw enumeration of all planes of the ambient space;
/// slow, kept as a cross-check.
IncidenceGeometry imbrex_from_planes(const EmbeddedQuadrangle& omega);

/// Closed-form statistics of catalog entries, where known.
struct ExpectedStats {
  std::size_t points = 0;
  std::size_t lines = 0;
  std::optional<std::size_t> symps;
  std::optional<std::size_t> symp_size;
  std::optional<std::size_t> blocks;
};
std::optional<ExpectedStats> expected_statistics(const std::string& name, const Params& params);

/// Coordinatized Mazzocca-Melone data: "segre" (p,r,q), "plucker" (n,q),
/// "spinor" (q=2).  Point order matches the abstract catalog entries
/// segre, grassmann and halfspin_d5.
EmbeddedMMSet build_embedded(const std::string& name, const Params& params);

}  // namespace imbrex

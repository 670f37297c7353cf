#pragma once

#include "imbrex/geometry.hpp"

namespace imbrex::fixtures {

// m x n grid: point (i,j) has identifier i*n + j.
inline IncidenceGeometry grid(std::size_t m, std::size_t n) {
  std::vector<std::vector<Point>> lines;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Point> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(static_cast<Point>(i * n + j));
    lines.push_back(row);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Point> col;
    for (std::size_t i = 0; i < m; ++i) col.push_back(static_cast<Point>(i * n + j));
    lines.push_back(col);
  }
  return build_geometry(lines, m * n, "grid");
}

inline IncidenceGeometry fano() {
  return build_geometry({{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}}, 7, "fano");
}

// AG(2,3): points (x,y) -> 3x + y, lines y = mx + c and x = c.
inline IncidenceGeometry ag23() {
  std::vector<std::vector<Point>> lines;
  for (int m = 0; m < 3; ++m)
    for (int c = 0; c < 3; ++c) {
      std::vector<Point> l;
      for (int x = 0; x < 3; ++x) l.push_back(static_cast<Point>(3 * x + (m * x + c) % 3));
      lines.push_back(l);
    }
  for (int c = 0; c < 3; ++c) lines.push_back({static_cast<Point>(3 * c), static_cast<Point>(3 * c + 1), static_cast<Point>(3 * c + 2)});
  return build_geometry(lines, 9, "AG(2,3)");
}

}  // namespace imbrex::fixtures

#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "imbrex/catalog.hpp"
#include "imbrex/gq.hpp"

using namespace imbrex;
using namespace imbrex::fixtures;

namespace {

bool meet(const IncidenceGeometry& g, LineId a, LineId b) { return g.line_set(a).intersects(g.line_set(b)); }

// {a,b}^perp by definition.
std::vector<LineId> brute_perp(const IncidenceGeometry& g, const std::vector<LineId>& t) {
  std::vector<LineId> out;
  for (LineId l = 0; l < g.line_count(); ++l)
    if (std::all_of(t.begin(), t.end(), [&](LineId m) { return meet(g, l, m); })) out.push_back(l);
  return out;
}

// Non-closing O'Nan configurations: 4 lines, exactly one disjoint pair,
// the five meeting points distinct.
std::size_t brute_nonclosing(const IncidenceGeometry& g, const std::vector<LineId>& ls) {
  std::size_t count = 0;
  const auto k = ls.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      for (std::size_t c = b + 1; c < k; ++c)
        for (std::size_t d = c + 1; d < k; ++d) {
          const LineId q[4] = {ls[a], ls[b], ls[c], ls[d]};
          int disjoint = 0;
          std::vector<Point> pts;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
              auto m = g.line_set(q[i]) & g.line_set(q[j]);
              if (m.none()) ++disjoint;
              else pts.push_back(static_cast<Point>(m.find_first()));
            }
          std::sort(pts.begin(), pts.end());
          const bool distinct = std::adjacent_find(pts.begin(), pts.end()) == pts.end();
          if (disjoint == 1 && distinct) ++count;
        }
  return count;
}

}  // namespace

TEST_CASE("classify_gq") {
  auto g = classify_gq(grid(3, 3));
  CHECK(g.kind == GqClass::Kind::grid);
  CHECK(g.m == 3);
  CHECK(g.n == 3);

  Params p;
  p.q = 2;
  auto w = classify_gq(build("W", p));
  CHECK(w.kind == GqClass::Kind::thick);
  CHECK(w.s == 2);
  CHECK(w.t == 2);

  auto q5 = classify_gq(build("Qminus5", p));
  CHECK(q5.kind == GqClass::Kind::thick);
  CHECK(q5.s == 2);
  CHECK(q5.t == 4);

  auto f = classify_gq(fano());
  CHECK_FALSE(f.is_gq());
  CHECK(f.witness["violated"] == "PS2");

  // The dual of a 3x3 grid is again a grid; a 2x3 grid has short lines.
  CHECK(classify_gq(grid(2, 3)).kind == GqClass::Kind::grid);
}

TEST_CASE("perp agrees with the definition") {
  Params p;
  p.q = 2;
  for (const auto& g : {build("W", p), build("Qminus5", p), grid(3, 3)}) {
    for (LineId a = 0; a < g.line_count(); ++a)
      for (LineId b = a; b < g.line_count(); ++b) CHECK(perp(g, {a, b}) == brute_perp(g, {a, b}));
  }
}

TEST_CASE("regular pairs") {
  auto g = grid(3, 3);
  const auto r0 = *g.line_through(0, 1), r1 = *g.line_through(3, 4), r2 = *g.line_through(6, 7);
  auto rp = is_regular_pair(g, r0, r1);
  CHECK(rp.regular);
  CHECK(rp.perp.size() == 3);
  std::vector<LineId> rows{r0, r1, r2};
  std::sort(rows.begin(), rows.end());
  CHECK(rp.double_perp == rows);
  CHECK_THROWS_WITH(is_regular_pair(g, r0, *g.line_through(0, 3)), "pair must be non-concurrent");

  // In W(2) every pair of disjoint lines is regular (q even); the double
  // perp then has q+1 = 3 lines.
  Params p;
  p.q = 2;
  auto w = build("W", p);
  for (LineId a = 0; a < w.line_count(); ++a)
    for (LineId b = a + 1; b < w.line_count(); ++b) {
      if (meet(w, a, b)) continue;
      auto r = is_regular_pair(w, a, b);
      CHECK(r.regular);
      CHECK(r.double_perp == brute_perp(w, r.perp));
      CHECK(r.double_perp.size() == 3);
    }
}

TEST_CASE("ideal subquadrangles") {
  // A 3x3 grid inside a 3x4 grid via three of the columns: every line of
  // the big grid through a subpoint must be a subline, and the rows are not
  // fully inside the point set.
  auto big = grid(3, 4);
  PointSet sub(12);
  for (Point i = 0; i < 3; ++i)
    for (Point j = 0; j < 3; ++j) sub.set(i * 4 + j);
  std::vector<LineId> lines;
  for (LineId l = 0; l < big.line_count(); ++l)
    if ((big.line_set(l) & sub).count() >= 2) lines.push_back(l);
  auto r = is_ideal_subquadrangle(big, sub, lines);
  CHECK(r.pass);

  // Dropping the row lines: the trace is not a quadrangle.
  std::vector<LineId> cols;
  for (LineId l : lines)
    if (big.line(l).size() == 3) cols.push_back(l);
  CHECK_THROWS_WITH(is_ideal_subquadrangle(big, sub, cols), "substructure is not a generalized quadrangle");
}

TEST_CASE("O'Nan configurations") {
  auto ag = ag23();
  auto all = ag.full_set();
  std::vector<LineId> ls(ag.line_count());
  for (LineId l = 0; l < ag.line_count(); ++l) ls[l] = l;
  const auto nonclosing = find_onan(ag, all, OnanMode::nonclosing);
  CHECK(nonclosing.size() == brute_nonclosing(ag, ls));
  CHECK(!nonclosing.empty());
  for (const auto& c : nonclosing) {
    CHECK_FALSE(c.closing);
    CHECK(c.points.size() == 5);
  }
  CHECK_FALSE(all_lines_meet(ag, all));

  auto f = fano();
  CHECK(find_onan(f, f.full_set(), OnanMode::nonclosing).empty());
  CHECK(all_lines_meet(f, f.full_set()));
  CHECK(find_onan(f, f.full_set(), OnanMode::any, 1).size() == 1);

  auto single = build_geometry({{0, 1, 2}}, 3);
  CHECK(find_onan(single, single.full_set(), OnanMode::any).empty());
}

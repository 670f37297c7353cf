#include "imbrex/axioms.hpp"
#include "polar_internal.hpp"

namespace imbrex {

namespace {

Symp make_symp(const IncidenceGeometry& g, PointSet closure, Point x, Point y) {
  const auto ind = induced_geometry(g, closure);
  const auto pc = detail::polar_check(ind.geometry, std::nullopt);
  if (!pc.report.pass || pc.rank < 2)
    throw SympError(x, y, "closure is not a polar space of rank at least 2",
                    {{"closure_size", closure.count()}, {"polar", pc.report.witness}, {"rank", pc.rank}});
  Symp s;
  s.points = std::move(closure);
  s.lines = ind.parent_lines;
  s.rank = pc.rank;
  s.thickness = polar_thickness(ind.geometry, pc.rank, pc.maximal);
  s.generator = {x, y};
  return s;
}

}  // namespace

SympIndex enumerate_symps(const IncidenceGeometry& g, std::optional<bool> all_pairs) {
  SympIndex idx;
  const auto n = g.point_count();
  idx.n_ = n;
  idx.all_pairs_ = all_pairs.value_or(n <= kExhaustivePointLimit);
  idx.lookup_.assign(n * n, -1);

  for (Point x = 0; x < n; ++x) {
    const PointSet rest = ~g.neighbours(x);
    for (auto yy = rest.find_next(x); yy != PointSet::npos; yy = rest.find_next(yy)) {
      const auto y = static_cast<Point>(yy);
      ++idx.pairs_;
      const auto slot = idx.lookup_[x * n + y];
      if (slot >= 0 && !idx.all_pairs_) continue;
      PointSet c;
      try {
        c = convex_closure(g, x, y);
      } catch (const Error&) {
        throw SympError(x, y, "not at distance 2", ojson::object());
      }
      if (slot >= 0) {
        if (c != idx.symps_[slot].points)
          throw SympError(x, y, "pair lies in two distinct convex closures",
                          {{"conflict_pair", idx.symps_[slot].generator}});
        continue;
      }
      const auto id = static_cast<std::int32_t>(idx.symps_.size());
      for (auto a = c.find_first(); a != PointSet::npos; a = c.find_next(a)) {
        const PointSet far = c - g.neighbours(static_cast<Point>(a));
        for (auto b = far.find_next(a); b != PointSet::npos; b = far.find_next(b)) {
          auto& s = idx.lookup_[a * n + b];
          if (s >= 0)
            throw SympError(x, y, "pair lies in two distinct convex closures",
                            {{"conflict_pair", {a, b}}});
          s = id;
          idx.lookup_[b * n + a] = id;
        }
      }
      idx.symps_.push_back(make_symp(g, std::move(c), x, y));
    }
  }
  return idx;
}

}  // namespace imbrex

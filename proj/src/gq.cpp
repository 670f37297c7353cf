#include "imbrex/gq.hpp"

#include <algorithm>
#include <set>

namespace imbrex {

ojson GqClass::to_json() const {
  ojson j;
  switch (kind) {
    case Kind::thick:
      j["class"] = "thick";
      j["s"] = s;
      j["t"] = t;
      break;
    case Kind::grid:
      j["class"] = "grid";
      j["m"] = m;
      j["n"] = n;
      break;
    case Kind::dual_grid:
      j["class"] = "dual_grid";
      j["m"] = m;
      j["n"] = n;
      break;
    case Kind::not_a_gq:
      j["class"] = "not_a_gq";
      j["witness"] = witness;
      break;
  }
  return j;
}

GqClass classify_gq(const IncidenceGeometry& g) {
  GqClass out;
  const auto n = g.point_count();
  auto fail = [&](ojson w) {
    out.kind = GqClass::Kind::not_a_gq;
    out.witness = std::move(w);
    return out;
  };
  if (n == 0 || g.line_count() == 0) return fail({{"violated", "PS1"}, {"reason", "no lines"}});
  for (Point x = 0; x < n; ++x)
    if (g.neighbours(x).count() + 1 == n) return fail({{"violated", "PS2"}, {"point", x}});
  if (!g.partial_linear()) {
    for (Point x = 0; x < n; ++x)
      for (auto a : g.lines_through(x))
        for (auto b : g.lines_through(x))
          if (a < b && (g.line_set(a) & g.line_set(b)).count() > 1)
            return fail({{"violated", "partial-linear"}, {"lines", {a, b}}});
  }
  for (Point x = 0; x < n; ++x)
    for (LineId l = 0; l < g.line_count(); ++l) {
      if (g.line_set(l).test(x)) continue;
      std::size_t c = 0;
      for (Point p : g.line(l)) c += g.collinear(x, p);
      if (c == 1) continue;
      return fail({{"violated", c == g.line(l).size() ? "PS3" : "PS4"}, {"point", x}, {"line", l}, {"collinear", c}});
    }

  std::set<std::size_t> sizes, degrees;
  for (const auto& l : g.lines()) sizes.insert(l.size());
  for (Point x = 0; x < n; ++x) {
    degrees.insert(g.lines_through(x).size());
    if (g.lines_through(x).size() < 2) return fail({{"violated", "PS1"}, {"point", x}, {"reason", "point on fewer than two lines"}});
  }
  if (*sizes.begin() >= 3 && *degrees.begin() >= 3) {
    if (sizes.size() > 1 || degrees.size() > 1) return fail({{"violated", "order"}, {"reason", "non-uniform order"}});
    out.kind = GqClass::Kind::thick;
    out.s = *sizes.begin() - 1;
    out.t = *degrees.begin() - 1;
    return out;
  }
  if (degrees.size() == 1 && *degrees.begin() == 2) {
    const auto& through0 = g.lines_through(0);
    out.kind = GqClass::Kind::grid;
    out.m = std::min(g.line(through0[0]).size(), g.line(through0[1]).size());
    out.n = std::max(g.line(through0[0]).size(), g.line(through0[1]).size());
    return out;
  }
  if (sizes.size() == 1 && *sizes.begin() == 2) {
    out.kind = GqClass::Kind::dual_grid;
    out.m = *degrees.begin();
    out.n = *degrees.rbegin();
    return out;
  }
  return fail({{"violated", "order"}, {"reason", "mixed thin and thick elements"}});
}

std::vector<LineId> perp(const IncidenceGeometry& g, const std::vector<LineId>& t) {
  PointSet acc(g.line_count());
  acc.set();
  for (LineId l : t) {
    PointSet conc(g.line_count());
    for (Point p : g.line(l))
      for (LineId m : g.lines_through(p)) conc.set(m);
    acc &= conc;
  }
  std::vector<LineId> out;
  for (auto i = acc.find_first(); i != PointSet::npos; i = acc.find_next(i)) out.push_back(static_cast<LineId>(i));
  return out;
}

RegularPair is_regular_pair(const IncidenceGeometry& g, LineId l, LineId m) {
  if (l == m || g.line_set(l).intersects(g.line_set(m))) throw Error("pair must be non-concurrent");
  RegularPair out;
  out.perp = perp(g, {l, m});
  if (out.perp.empty()) return out;
  out.double_perp = perp(g, out.perp);
  for (std::size_t i = 0; i < out.perp.size(); ++i)
    for (std::size_t j = i + 1; j < out.perp.size(); ++j)
      if (perp(g, {out.perp[i], out.perp[j]}) == out.double_perp) {
        out.regular = true;
        out.witness = std::make_pair(out.perp[i], out.perp[j]);
        return out;
      }
  return out;
}

AxiomReport is_ideal_subquadrangle(const IncidenceGeometry& g, const PointSet& subpoints,
                                   const std::vector<LineId>& sublines) {
  const auto pts = to_list(subpoints);
  std::vector<Point> local(g.point_count(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) local[pts[i]] = static_cast<Point>(i);
  std::vector<std::vector<Point>> traces;
  for (LineId l : sublines) {
    std::vector<Point> tr;
    for (Point p : g.line(l))
      if (subpoints.test(p)) tr.push_back(local[p]);
    if (tr.size() >= 2) traces.push_back(std::move(tr));
  }
  const auto cls = classify_gq(IncidenceGeometry(pts.size(), std::move(traces)));
  if (!cls.is_gq()) throw Error("substructure is not a generalized quadrangle");

  const std::set<LineId> keep(sublines.begin(), sublines.end());
  for (Point x : pts)
    for (LineId l : g.lines_through(x))
      if (!keep.count(l)) return failed("ideal", "ideal", {{"point", x}, {"line", l}});
  return passed("ideal", {{"points", pts.size()}, {"lines", keep.size()}});
}

ojson OnanConfig::to_json() const {
  return {{"lines", lines}, {"points", points}, {"closing", closing}};
}

namespace {

std::vector<LineId> lines_inside(const IncidenceGeometry& g, const PointSet& s) {
  std::set<LineId> seen;
  for (auto p = s.find_first(); p != PointSet::npos; p = s.find_next(p))
    for (LineId l : g.lines_through(static_cast<Point>(p)))
      if (g.line_set(l).is_subset_of(s)) seen.insert(l);
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<OnanConfig> find_onan(const IncidenceGeometry& g, const PointSet& s, OnanMode mode, std::size_t limit) {
  const auto ls = lines_inside(g, s);
  const auto k = ls.size();
  // meet[i][j]: the unique common point, -1 if disjoint, -2 if they share more.
  std::vector<std::int64_t> meet(k * k, -1);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const PointSet c = g.line_set(ls[i]) & g.line_set(ls[j]);
      const auto cnt = c.count();
      const std::int64_t v = cnt == 0 ? -1 : cnt == 1 ? static_cast<std::int64_t>(c.find_first()) : -2;
      meet[i * k + j] = meet[j * k + i] = v;
    }
  const std::size_t max_disjoint = mode == OnanMode::closing ? 0 : 1;
  std::vector<OnanConfig> out;
  std::array<std::size_t, 4> idx{};

  auto emit = [&]() {
    std::vector<Point> pts;
    std::size_t disjoint = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const auto v = meet[idx[a] * k + idx[b]];
        if (v == -1)
          ++disjoint;
        else
          pts.push_back(static_cast<Point>(v));
      }
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) return;
    const bool closing = disjoint == 0;
    if ((mode == OnanMode::nonclosing && closing) || (mode == OnanMode::closing && !closing)) return;
    OnanConfig c;
    for (int a = 0; a < 4; ++a) c.lines[a] = ls[idx[a]];
    c.points = std::move(pts);
    c.closing = closing;
    out.push_back(std::move(c));
  };

  // Depth-first over increasing index tuples, pruning on the disjoint count.
  auto rec = [&](auto&& self, std::size_t depth, std::size_t start, std::size_t disjoint) -> bool {
    if (depth == 4) {
      emit();
      return limit != 0 && out.size() >= limit;
    }
    for (std::size_t i = start; i < k; ++i) {
      std::size_t d = disjoint;
      bool ok = true;
      for (std::size_t a = 0; a < depth && ok; ++a) {
        const auto v = meet[idx[a] * k + i];
        if (v == -2) ok = false;
        if (v == -1) ++d;
      }
      if (!ok || d > max_disjoint) continue;
      idx[depth] = i;
      if (self(self, depth + 1, i + 1, d)) return true;
    }
    return false;
  };
  rec(rec, 0, 0, 0);
  return out;
}

bool all_lines_meet(const IncidenceGeometry& g, const PointSet& s) {
  const auto ls = lines_inside(g, s);
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j)
      if (!g.line_set(ls[i]).intersects(g.line_set(ls[j]))) return false;
  return true;
}

}  // namespace imbrex

#include "imbrex/geometry.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

namespace imbrex {

std::vector<Point> to_list(const PointSet& s) {
  std::vector<Point> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.push_back(static_cast<Point>(i));
  return out;
}

PointSet to_set(std::size_t universe, std::span<const Point> points) {
  PointSet s(universe);
  for (Point p : points) s.set(p);
  return s;
}

IncidenceGeometry::IncidenceGeometry(std::size_t point_count, std::vector<std::vector<Point>> lines,
                                     std::string name)
    : n_(point_count), name_(std::move(name)) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto& l = lines[i];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    for (Point p : l)
      if (p >= n_)
        throw Error("line " + std::to_string(i) + ": point identifier " + std::to_string(p) + " out of range");
    if (l.size() < 2) throw Error("line " + std::to_string(i) + " has fewer than two distinct points");
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  lines_ = std::move(lines);

  line_sets_.reserve(lines_.size());
  point_lines_.assign(n_, {});
  nbr_.assign(n_, PointSet(n_));
  for (LineId l = 0; l < lines_.size(); ++l) {
    line_sets_.push_back(to_set(n_, lines_[l]));
    for (Point p : lines_[l]) {
      point_lines_[p].push_back(l);
      nbr_[p] |= line_sets_.back();
    }
  }
  for (Point p = 0; p < n_; ++p) nbr_[p].reset(p);

  if (n_ <= 4096) {
    pair_line_.assign(n_ * n_, -1);
    for (LineId l = 0; l < lines_.size(); ++l) {
      const auto& pts = lines_[l];
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          auto& slot = pair_line_[pts[i] * n_ + pts[j]];
          if (slot != -1) {
            partial_linear_ = false;
            continue;
          }
          slot = static_cast<std::int32_t>(l);
          pair_line_[pts[j] * n_ + pts[i]] = slot;
        }
    }
  } else {
    for (Point p = 0; p < n_ && partial_linear_; ++p) {
      const auto& ls = point_lines_[p];
      for (std::size_t i = 0; i < ls.size() && partial_linear_; ++i)
        for (std::size_t j = i + 1; j < ls.size(); ++j)
          if ((line_sets_[ls[i]] & line_sets_[ls[j]]).count() > 1) {
            partial_linear_ = false;
            break;
          }
    }
  }
}

std::vector<LineId> IncidenceGeometry::lines_through_pair(Point a, Point b) const {
  std::vector<LineId> out;
  if (a == b) return point_lines_[a];
  for (LineId l : point_lines_[a])
    if (line_sets_[l].test(b)) out.push_back(l);
  return out;
}

std::optional<LineId> IncidenceGeometry::line_through(Point a, Point b) const {
  if (a != b && !pair_line_.empty()) {
    const auto l = pair_line_[a * n_ + b];
    if (l < 0) return std::nullopt;
    return static_cast<LineId>(l);
  }
  for (LineId l : point_lines_[a])
    if (line_sets_[l].test(b)) return l;
  return std::nullopt;
}

IncidenceGeometry build_geometry(std::vector<std::vector<Point>> lines, std::size_t point_count,
                                 std::string name) {
  return IncidenceGeometry(point_count, std::move(lines), std::move(name));
}

InducedGeometry induced_geometry(const IncidenceGeometry& g, const PointSet& points) {
  InducedGeometry out;
  out.to_parent = to_list(points);
  std::vector<Point> local(g.point_count(), std::numeric_limits<Point>::max());
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) local[out.to_parent[i]] = static_cast<Point>(i);
  std::set<LineId> seen;
  for (Point p : out.to_parent)
    for (LineId l : g.lines_through(p))
      if (g.line_set(l).is_subset_of(points)) seen.insert(l);
  std::vector<std::vector<Point>> lines;
  for (LineId l : seen) {
    out.parent_lines.push_back(l);
    std::vector<Point> ln;
    for (Point p : g.line(l)) ln.push_back(local[p]);
    lines.push_back(std::move(ln));
  }
  // Parent lines are lexicographically sorted and the relabelling is
  // monotone, so the induced line order matches parent_lines.
  out.geometry = IncidenceGeometry(out.to_parent.size(), std::move(lines), g.name() + "[induced]");
  return out;
}

IncidenceGeometry disjoint_union(const IncidenceGeometry& a, const IncidenceGeometry& b) {
  auto lines = a.lines();
  const auto shift = static_cast<Point>(a.point_count());
  for (auto l : b.lines()) {
    for (auto& p : l) p += shift;
    lines.push_back(std::move(l));
  }
  return IncidenceGeometry(a.point_count() + b.point_count(), std::move(lines), a.name() + "+" + b.name());
}

std::vector<std::size_t> distances_from(const IncidenceGeometry& g, Point x) {
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.point_count(), inf);
  std::deque<Point> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    const Point u = queue.front();
    queue.pop_front();
    const auto& nb = g.neighbours(u);
    for (auto v = nb.find_first(); v != PointSet::npos; v = nb.find_next(v))
      if (dist[v] == inf) {
        dist[v] = dist[u] + 1;
        queue.push_back(static_cast<Point>(v));
      }
  }
  return dist;
}

std::optional<std::size_t> distance(const IncidenceGeometry& g, Point x, Point y, Metric metric) {
  if (x >= g.point_count() || y >= g.point_count()) throw Error("point identifier out of range");
  const auto d = distances_from(g, x)[y];
  if (d == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return metric == Metric::incidence ? 2 * d : d;
}

bool is_connected(const IncidenceGeometry& g) {
  if (g.point_count() == 0) return true;
  const auto d = distances_from(g, 0);
  return std::none_of(d.begin(), d.end(), [](std::size_t v) { return v == std::numeric_limits<std::size_t>::max(); });
}

bool is_subspace(const IncidenceGeometry& g, const PointSet& s) {
  for (auto p = s.find_first(); p != PointSet::npos; p = s.find_next(p))
    for (LineId l : g.lines_through(static_cast<Point>(p))) {
      const auto& ls = g.line_set(l);
      if (ls.is_subset_of(s)) continue;
      std::size_t inside = 0;
      for (Point q : g.line(l)) inside += s.test(q);
      if (inside >= 2) return false;
    }
  return true;
}

bool is_clique(const IncidenceGeometry& g, const PointSet& s) {
  for (auto p = s.find_first(); p != PointSet::npos; p = s.find_next(p)) {
    PointSet rest = s;
    rest.reset(p);
    if (!rest.is_subset_of(g.neighbours(static_cast<Point>(p)))) return false;
  }
  return true;
}

bool is_singular_subspace(const IncidenceGeometry& g, const PointSet& s) {
  return is_clique(g, s) && is_subspace(g, s);
}

SingularClosure singular_closure(const IncidenceGeometry& g, const PointSet& s) {
  PointSet cur = s;
  while (true) {
    for (auto p = cur.find_first(); p != PointSet::npos; p = cur.find_next(p)) {
      PointSet far = cur - g.neighbours(static_cast<Point>(p));
      far.reset(p);
      if (auto q = far.find_first(); q != PointSet::npos)
        return {cur, std::make_pair(static_cast<Point>(p), static_cast<Point>(q))};
    }
    PointSet next = cur;
    for (auto p = cur.find_first(); p != PointSet::npos; p = cur.find_next(p))
      for (LineId l : g.lines_through(static_cast<Point>(p))) {
        const auto& ls = g.line_set(l);
        if (ls.is_subset_of(next)) continue;
        std::size_t inside = 0;
        for (Point q : g.line(l)) inside += cur.test(q);
        if (inside >= 2) next |= ls;
      }
    if (next == cur) return {cur, std::nullopt};
    cur = std::move(next);
  }
}

std::size_t generation_length(const IncidenceGeometry& g, const PointSet& s) {
  PointSet cur(g.point_count());
  std::size_t len = 0;
  while (cur != s) {
    const auto p = (s - cur).find_first();
    if (p == PointSet::npos) break;
    cur.set(p);
    cur = singular_closure(g, cur).points;
    ++len;
    if (!cur.is_subset_of(s)) break;
  }
  return len;
}

namespace {

void bron_kerbosch(const IncidenceGeometry& g, PointSet& r, PointSet p, PointSet x, std::vector<PointSet>& out) {
  if (p.none()) {
    if (x.none()) out.push_back(r);
    return;
  }
  // Tomita pivot: maximise |P ∩ N(u)| over u in P ∪ X.
  const PointSet px = p | x;
  std::size_t best = PointSet::npos;
  std::size_t best_count = 0;
  for (auto u = px.find_first(); u != PointSet::npos; u = px.find_next(u)) {
    const auto c = (p & g.neighbours(static_cast<Point>(u))).count();
    if (best == PointSet::npos || c > best_count) {
      best = u;
      best_count = c;
    }
  }
  const PointSet cand = p - g.neighbours(static_cast<Point>(best));
  for (auto v = cand.find_first(); v != PointSet::npos; v = cand.find_next(v)) {
    const auto& nv = g.neighbours(static_cast<Point>(v));
    r.set(v);
    bron_kerbosch(g, r, p & nv, x & nv, out);
    r.reset(v);
    p.reset(v);
    x.set(v);
  }
}

bool lex_less(const PointSet& a, const PointSet& b) { return to_list(a) < to_list(b); }

// Lines of the geometry induced on `domain` that break the subspace property of `c`.
std::optional<LineId> violating_line(const IncidenceGeometry& g, const PointSet& c, const PointSet& domain) {
  for (auto p = c.find_first(); p != PointSet::npos; p = c.find_next(p))
    for (LineId l : g.lines_through(static_cast<Point>(p))) {
      const auto& ls = g.line_set(l);
      if (!ls.is_subset_of(domain) || ls.is_subset_of(c)) continue;
      std::size_t inside = 0;
      for (Point q : g.line(l)) inside += c.test(q);
      if (inside >= 2) return l;
    }
  return std::nullopt;
}

// Maximal line-closed subsets of a clique: a closed subset keeps at most one
// point of every line that leaves the clique.
void closed_subsets(const IncidenceGeometry& g, const PointSet& c, const PointSet& domain, std::vector<PointSet>& out) {
  const auto l = violating_line(g, c, domain);
  if (!l) {
    out.push_back(c);
    return;
  }
  const PointSet on = c & g.line_set(*l);
  PointSet none = c - on;
  closed_subsets(g, none, domain, out);
  for (auto p = on.find_first(); p != PointSet::npos; p = on.find_next(p)) {
    PointSet keep = none;
    keep.set(p);
    closed_subsets(g, keep, domain, out);
  }
}

}  // namespace

std::vector<PointSet> maximal_cliques(const IncidenceGeometry& g, const PointSet& domain) {
  std::vector<PointSet> out;
  PointSet r(g.point_count());
  bron_kerbosch(g, r, domain, PointSet(g.point_count()), out);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<PointSet> maximal_singular_subspaces(const IncidenceGeometry& g, const PointSet& domain) {
  std::vector<PointSet> candidates;
  bool all_closed = true;
  for (auto& c : maximal_cliques(g, domain)) {
    if (!violating_line(g, c, domain)) {
      candidates.push_back(std::move(c));
      continue;
    }
    all_closed = false;
    closed_subsets(g, c, domain, candidates);
  }
  if (!all_closed) {
    std::sort(candidates.begin(), candidates.end(), lex_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<PointSet> maximal;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < candidates.size() && !dominated; ++j)
        dominated = i != j && candidates[i].is_proper_subset_of(candidates[j]);
      if (!dominated && candidates[i].any()) maximal.push_back(candidates[i]);
    }
    candidates = std::move(maximal);
  }
  std::sort(candidates.begin(), candidates.end(), lex_less);
  return candidates;
}

std::vector<PointSet> maximal_singular_subspaces(const IncidenceGeometry& g) {
  return maximal_singular_subspaces(g, g.full_set());
}

PointSet convex_closure(const IncidenceGeometry& g, Point x, Point y) {
  if (x == y || g.collinear(x, y) || !g.neighbours(x).intersects(g.neighbours(y)))
    throw Error("not at distance 2");
  PointSet s(g.point_count());
  std::vector<Point> order;
  auto add = [&](Point p) {
    if (!s.test(p)) {
      s.set(p);
      order.push_back(p);
    }
  };
  add(x);
  add(y);
  // Each point b, once reached, is paired with everything in the set:
  // lines through b with a second point are added, and so are common
  // neighbours of b and any point of the set not collinear with b.
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point b = order[i];
    for (LineId l : g.lines_through(b)) {
      const auto& ls = g.line_set(l);
      if ((ls & s).count() >= 2)
        for (Point p : g.line(l)) add(p);
    }
    PointSet far = s - g.neighbours(b);
    far.reset(b);
    if (far.none()) continue;
    const PointSet cand = g.neighbours(b) - s;
    for (auto m = cand.find_first(); m != PointSet::npos; m = cand.find_next(m))
      if (g.neighbours(static_cast<Point>(m)).intersects(far)) add(static_cast<Point>(m));
  }
  return s;
}

const char* to_string(Thickness t) {
  switch (t) {
    case Thickness::thick:
      return "thick";
    case Thickness::grid:
      return "grid";
    case Thickness::other:
      return "dual-grid-or-other";
  }
  return "?";
}

SympError::SympError(Point x, Point y, std::string reason, nlohmann::ordered_json detail)
    : Error("symp through (" + std::to_string(x) + "," + std::to_string(y) + "): " + reason),
      x_(x),
      y_(y),
      reason_(std::move(reason)),
      detail_(std::move(detail)) {}

std::optional<std::size_t> SympIndex::symp_of(Point x, Point y) const {
  const auto v = lookup_[static_cast<std::size_t>(x) * n_ + y];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> SympIndex::symps_through(Point x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < symps_.size(); ++i)
    if (symps_[i].points.test(x)) out.push_back(i);
  return out;
}

namespace {

struct IsoSearch {
  const IncidenceGeometry& a;
  const IncidenceGeometry& b;
  std::vector<Point> order;
  std::vector<std::int64_t> fwd;
  std::vector<std::int64_t> back;
  std::vector<std::size_t> deg_a;
  std::vector<std::size_t> deg_b;

  bool lines_consistent(Point v, Point w) const {
    if (!a.partial_linear() || !b.partial_linear()) return true;
    for (LineId l : a.lines_through(v)) {
      std::optional<LineId> image;
      for (Point m : a.line(l)) {
        if (m == v || fwd[m] < 0) continue;
        const auto fm = static_cast<Point>(fwd[m]);
        if (!image) {
          image = b.line_through(w, fm);
          if (!image) return false;
        } else if (!b.line_set(*image).test(fm)) {
          return false;
        }
      }
      if (image)
        for (Point m2 : b.line(*image))
          if (m2 != w && back[m2] >= 0 && !a.line_set(l).test(static_cast<Point>(back[m2]))) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const Point v = order[depth];
    PointSet cand(b.point_count());
    cand.set();
    for (std::size_t i = 0; i < depth; ++i) {
      const Point u = order[i];
      const auto& nb = b.neighbours(static_cast<Point>(fwd[u]));
      if (a.collinear(u, v))
        cand &= nb;
      else
        cand -= nb;
    }
    for (auto w = cand.find_first(); w != PointSet::npos; w = cand.find_next(w)) {
      if (back[w] >= 0 || deg_b[w] != deg_a[v]) continue;
      if (b.neighbours(static_cast<Point>(w)).count() != a.neighbours(v).count()) continue;
      if (!lines_consistent(v, static_cast<Point>(w))) continue;
      fwd[v] = static_cast<std::int64_t>(w);
      back[w] = v;
      if (extend(depth + 1)) return true;
      fwd[v] = -1;
      back[w] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Point>> find_isomorphism(const IncidenceGeometry& a, const IncidenceGeometry& b) {
  if (a.point_count() != b.point_count() || a.line_count() != b.line_count()) return std::nullopt;
  auto profile = [](const IncidenceGeometry& g) {
    std::multiset<std::pair<std::size_t, std::size_t>> prof;
    for (Point p = 0; p < g.point_count(); ++p) prof.emplace(g.lines_through(p).size(), g.neighbours(p).count());
    std::multiset<std::size_t> sizes;
    for (const auto& l : g.lines()) sizes.insert(l.size());
    return std::make_pair(prof, sizes);
  };
  if (profile(a) != profile(b)) return std::nullopt;

  IsoSearch s{a, b, {}, std::vector<std::int64_t>(a.point_count(), -1),
              std::vector<std::int64_t>(b.point_count(), -1), {}, {}};
  for (Point p = 0; p < a.point_count(); ++p) s.deg_a.push_back(a.lines_through(p).size());
  for (Point p = 0; p < b.point_count(); ++p) s.deg_b.push_back(b.lines_through(p).size());
  // BFS order so each new point is constrained by an already mapped neighbour.
  std::vector<bool> seen(a.point_count(), false);
  for (Point root = 0; root < a.point_count(); ++root) {
    if (seen[root]) continue;
    std::deque<Point> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const Point u = queue.front();
      queue.pop_front();
      s.order.push_back(u);
      const auto& nb = a.neighbours(u);
      for (auto v = nb.find_first(); v != PointSet::npos; v = nb.find_next(v))
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(static_cast<Point>(v));
        }
    }
  }
  if (!s.extend(0)) return std::nullopt;
  std::vector<Point> map(a.point_count());
  for (Point p = 0; p < a.point_count(); ++p) map[p] = static_cast<Point>(s.fwd[p]);
  std::set<std::vector<Point>> imaged;
  for (const auto& l : a.lines()) {
    std::vector<Point> m;
    for (Point p : l) m.push_back(map[p]);
    std::sort(m.begin(), m.end());
    imaged.insert(std::move(m));
  }
  const std::set<std::vector<Point>> target(b.lines().begin(), b.lines().end());
  if (imaged != target) return std::nullopt;
  return map;
}

nlohmann::ordered_json to_json(const IncidenceGeometry& g) {
  nlohmann::ordered_json j;
  j["name"] = g.name();
  j["point_count"] = g.point_count();
  j["lines"] = g.lines();
  return j;
}

IncidenceGeometry geometry_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("point_count") || !j.contains("lines"))
    throw Error("geometry JSON needs \"point_count\" and \"lines\"");
  return IncidenceGeometry(j.at("point_count").get<std::size_t>(),
                           j.at("lines").get<std::vector<std::vector<Point>>>(), j.value("name", std::string{}));
}

std::string canonical_json_text(const IncidenceGeometry& g) { return to_json(g).dump() + "\n"; }

}  // namespace imbrex

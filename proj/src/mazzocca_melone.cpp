#include "imbrex/mazzocca_melone.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "polar_internal.hpp"

namespace imbrex {

namespace {

std::uint64_t ipow(std::uint64_t q, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= q;
  return r;
}

ojson vec_json(const Vec& v) {
  ojson a = ojson::array();
  for (Elem x : v) a.push_back(static_cast<int>(x));
  return a;
}

}  // namespace

MMIndex::MMIndex(const EmbeddedMMSet& e) : e_(&e), pg_(e.field, e.ambient_dim) {
  const auto n = e.points.size();
  const auto& f = pg_.field();
  for (std::size_t i = 0; i < n; ++i) {
    if (e.points[i].size() != static_cast<std::size_t>(e.ambient_dim + 1))
      throw Error("point " + std::to_string(i) + " has the wrong length");
    if (!index_.emplace(pg_.point_index(pg_.normalized(e.points[i])), static_cast<Point>(i)).second)
      throw Error("point " + std::to_string(i) + " is repeated");
  }
  xi_through_.resize(n);
  for (std::size_t i = 0; i < e.xi.size(); ++i) {
    std::vector<Vec> rows;
    for (Point p : e.xi[i]) {
      if (p >= n) throw Error("member " + std::to_string(i) + " names a point out of range");
      rows.push_back(e.points[p]);
    }
    spans_.push_back(pg_.span(std::move(rows)));
    PointSet s(n);
    const auto& sp = spans_.back();
    if (ipow(f.order(), sp.dim() + 1) <= n) {
      for (const auto& v : pg_.points_of(sp))
        if (auto p = find(v)) s.set(*p);
    } else {
      for (std::size_t p = 0; p < n; ++p)
        if (pg_.contains(sp, e.points[p])) s.set(p);
    }
    for (auto p = s.find_first(); p != PointSet::npos; p = s.find_next(p)) xi_through_[p].push_back(i);
    xi_points_.push_back(std::move(s));
  }

  xcol_.assign(n, PointSet(n));
  lines_through_.resize(n);
  Vec w(e.ambient_dim + 1);
  for (Point x = 0; x < n; ++x)
    for (Point y = x + 1; y < n; ++y) {
      if (xcol_[x].test(y)) continue;
      std::vector<Point> line{x, y};
      bool full = true;
      for (unsigned l = 1; l < f.order() && full; ++l) {
        for (std::size_t c = 0; c < w.size(); ++c) w[c] = f.add(e.points[x][c], f.mul(static_cast<Elem>(l), e.points[y][c]));
        auto p = find(w);
        if (p) line.push_back(*p);
        else full = false;
      }
      if (!full) continue;
      std::sort(line.begin(), line.end());
      const auto id = static_cast<std::uint32_t>(lines_.size());
      for (Point a : line) {
        lines_through_[a].push_back(id);
        for (Point b : line)
          if (a != b) xcol_[a].set(b);
      }
      lines_.push_back(std::move(line));
    }
}

std::optional<Point> MMIndex::find(const Vec& v) const {
  bool zero = std::all_of(v.begin(), v.end(), [](Elem c) { return c == 0; });
  if (zero) return std::nullopt;
  auto it = index_.find(pg_.point_index(pg_.normalized(v)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool x_collinear(const MMIndex& m, Point x, Point y) {
  if (x == y) throw Error("x_collinear needs two distinct points");
  return m.x_collinear(x, y);
}

TangentData tangent_space(const MMIndex& m, std::size_t xi, Point x) {
  if (xi >= m.set().xi.size() || !m.xi_points(xi).test(x)) throw Error("point not in member");
  const auto& pts = m.set().points;
  std::vector<Vec> rows{pts[x]};
  const auto nb = m.x_neighbours(x) & m.xi_points(xi);
  for (auto p = nb.find_first(); p != PointSet::npos; p = nb.find_next(p)) rows.push_back(pts[p]);
  return {x, xi, m.space().span(std::move(rows))};
}

std::optional<std::size_t> MMCheck::lookup(Point x, Point y) const {
  if (x >= n || y >= n) return std::nullopt;
  const auto b = bracket[static_cast<std::size_t>(x) * n + y];
  if (b < 0) return std::nullopt;
  return static_cast<std::size_t>(b);
}

MMCheck check_mm_axioms(const MMIndex& m) {
  MMCheck out;
  const auto& e = m.set();
  const auto n = m.size();
  out.n = n;

  Stopwatch sw;
  AxiomReport structure = passed("structure");
  {
    const auto all = m.space().span(e.points);
    if (all.dim() != e.ambient_dim) {
      structure = failed("structure", "spanning", {{"span_dim", all.dim()}, {"ambient_dim", e.ambient_dim}});
    } else {
      IncidenceGeometry whole(n, m.x_lines());
      for (std::size_t i = 0; i < e.xi.size() && structure.pass; ++i) {
        if (m.xi_span(i).dim() != e.d + 1) {
          structure = failed("structure", "member dimension",
                             {{"member", i}, {"dim", m.xi_span(i).dim()}, {"expected", e.d + 1}});
          break;
        }
        const auto sub = induced_geometry(whole, m.xi_points(i));
        const auto pc = detail::polar_check(sub.geometry, e.r);
        if (!pc.report.pass) {
          ojson w{{"member", i}, {"polar", pc.report.witness}};
          structure = failed("structure", "member is not a polar space of rank r", w);
        }
      }
      if (structure.pass)
        structure.witness = {{"points", n}, {"x_lines", m.x_lines().size()}, {"members", e.xi.size()}};
    }
  }
  structure.ms = sw.ms();

  sw = Stopwatch();
  out.bracket.assign(n * n, -1);
  AxiomReport mm1 = passed("MM1");
  std::size_t pairs = 0;
  for (Point x = 0; x < n && mm1.pass; ++x)
    for (Point y = x + 1; y < n; ++y) {
      if (m.x_collinear(x, y)) continue;
      ++pairs;
      std::vector<std::size_t> members;
      for (auto i : m.xi_through(x))
        if (m.xi_points(i).test(y)) members.push_back(i);
      if (members.size() != 1) {
        mm1 = failed("MM1", members.empty() ? "uncovered pair" : "pair in several members",
                     {{"pair", {x, y}}, {"members", members}});
        break;
      }
      out.bracket[static_cast<std::size_t>(x) * n + y] = out.bracket[static_cast<std::size_t>(y) * n + x] =
          static_cast<std::int32_t>(members[0]);
    }
  if (mm1.pass) mm1.witness = {{"non_collinear_pairs", pairs}};
  mm1.ms = sw.ms();

  sw = Stopwatch();
  AxiomReport mm2 = passed("MM2");
  std::size_t meets = 0;
  for (std::size_t i = 0; i < e.xi.size() && mm2.pass; ++i)
    for (std::size_t j = i + 1; j < e.xi.size(); ++j) {
      const auto meet = m.space().meet(m.xi_span(i), m.xi_span(j));
      if (meet.empty()) continue;
      ++meets;
      for (const auto& v : m.space().points_of(meet))
        if (!m.find(v)) {
          mm2 = failed("MM2", "meet leaves X", {{"members", {i, j}}, {"point", vec_json(v)}});
          break;
        }
      if (!mm2.pass) break;
    }
  if (mm2.pass) mm2.witness = {{"member_pairs", e.xi.size() * (e.xi.size() - (e.xi.empty() ? 0 : 1)) / 2},
                               {"nonempty_meets", meets}};
  mm2.ms = sw.ms();

  out.pass = structure.pass && mm1.pass && mm2.pass;
  out.reports = {std::move(structure), std::move(mm1), std::move(mm2)};
  return out;
}

AxiomReport check_lmm3(const MMIndex& m, const MMCheck& mm, const ScanOptions& opts) {
  if (!mm.pass) throw Error("LMM3 requires MM1 and MM2 to pass");
  Stopwatch sw;
  const auto& e = m.set();
  const int bound = 2 * e.d - e.r + 1;
  const auto n = m.size();
  const auto& lines = m.x_lines();
  std::unordered_map<std::uint64_t, ProjSubspace> memo;
  auto tangent = [&](Point x, std::size_t xi) -> const ProjSubspace& {
    const std::uint64_t key = static_cast<std::uint64_t>(x) * e.xi.size() + xi;
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, tangent_space(m, xi, x).tangent).first;
    return it->second;
  };
  std::map<int, std::size_t> histogram;
  int realized = -1;
  std::size_t tested = 0, drawn = 0;
  std::optional<AxiomReport> fail;

  // Returns false when (x, L) does not qualify.
  auto visit = [&](Point x, std::uint32_t l) {
    const auto& line = lines[l];
    for (Point y : line)
      if (y == x || m.x_collinear(x, y)) return false;
    std::vector<Vec> rows;
    for (Point y : line) {
      const auto b = mm.lookup(x, y);
      if (!b) throw Error("bracket lookup missing");
      for (const auto& v : tangent(x, *b).basis) rows.push_back(v);
    }
    const int dim = m.space().span(std::move(rows)).dim();
    ++tested;
    ++histogram[dim];
    realized = std::max(realized, dim);
    if (dim > bound && !fail) {
      fail = failed("LMM3", "tangent span too large", {{"point", x}, {"line", line}, {"dim", dim}, {"bound", bound}});
    }
    return true;
  };

  if (opts.sample) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> px(0, n - 1), pl(0, lines.empty() ? 0 : lines.size() - 1);
    const std::size_t cap = *opts.sample * 50;
    while (tested < *opts.sample && drawn < cap && !lines.empty() && (!fail || opts.exhaustive_report)) {
      ++drawn;
      visit(static_cast<Point>(px(rng)), static_cast<std::uint32_t>(pl(rng)));
    }
  } else {
    for (Point x = 0; x < n && (!fail || opts.exhaustive_report); ++x)
      for (std::uint32_t l = 0; l < lines.size(); ++l) visit(x, l);
  }

  ojson hist = ojson::object();
  for (auto [d, c] : histogram) hist[std::to_string(d)] = c;
  AxiomReport r;
  if (fail) {
    r = *fail;
    r.witness["realized_max"] = realized;
    r.witness["histogram"] = hist;
  } else {
    r = passed("LMM3", {{"bound", bound}, {"realized_max", realized}, {"pairs", tested}, {"histogram", hist}});
    if (opts.sample) {
      r.witness["sampled"] = true;
      r.witness["seed"] = opts.seed;
    }
  }
  r.ms = sw.ms();
  return r;
}

EmbeddedMMSet residue(const MMIndex& m, Point x) {
  const auto& e = m.set();
  if (x >= m.size()) throw Error("point out of range");
  const auto& through = m.x_lines_through(x);
  if (through.empty()) throw Error("point lies on no line of X");
  const auto& f = m.space().field();
  const Vec xv = m.space().normalized(e.points[x]);
  const auto pivot = static_cast<std::size_t>(std::find_if(xv.begin(), xv.end(), [](Elem c) { return c != 0; }) - xv.begin());
  // Project from x onto the coordinate hyperplane z_pivot = 0.
  auto project = [&](const Vec& v) {
    Vec out;
    const Elem c = v[pivot];
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i != pivot) out.push_back(f.sub(v[i], f.mul(c, xv[i])));
    return out;
  };
  ProjectiveSpace quotient(e.field, e.ambient_dim - 1);
  std::vector<Vec> images;
  std::vector<Point> other;  // a second point on each line through x
  for (auto l : through) {
    const auto& line = m.x_lines()[l];
    const Point y = line[0] == x ? line[1] : line[0];
    other.push_back(y);
    images.push_back(quotient.normalized(project(e.points[y])));
  }
  const auto span = quotient.span(images);

  EmbeddedMMSet r;
  r.name = e.name + "/residue";
  r.field = e.field;
  r.ambient_dim = span.dim();
  r.d = e.d - 2;
  r.r = e.r - 1;
  ProjectiveSpace target(e.field, r.ambient_dim);
  for (const auto& v : images) r.points.push_back(target.normalized(quotient.coordinates_in(span, v)));
  for (auto xi : m.xi_through(x)) {
    std::vector<Point> member;
    for (std::size_t i = 0; i < other.size(); ++i)
      if (m.xi_points(xi).test(other[i])) member.push_back(static_cast<Point>(i));
    if (!member.empty()) r.xi.push_back(std::move(member));
  }
  return r;
}

ojson describe(const EmbeddedMMSet& e) {
  MMIndex m(e);
  const auto g = abstract_geometry(m);
  std::size_t components = 0;
  std::vector<bool> seen(g.point_count(), false);
  for (Point p = 0; p < g.point_count(); ++p) {
    if (seen[p]) continue;
    ++components;
    const auto d = distances_from(g, p);
    for (Point q = 0; q < g.point_count(); ++q)
      if (d[q] != std::numeric_limits<std::size_t>::max()) seen[q] = true;
  }
  std::set<std::size_t> line_sizes;
  for (const auto& l : m.x_lines()) line_sizes.insert(l.size());
  return {{"name", e.name},
          {"ambient_dim", e.ambient_dim},
          {"d", e.d},
          {"r", e.r},
          {"points", e.points.size()},
          {"x_lines", m.x_lines().size()},
          {"line_sizes", line_sizes},
          {"components", components},
          {"members", e.xi.size()}};
}

IncidenceGeometry abstract_geometry(const MMIndex& m) {
  return IncidenceGeometry(m.size(), m.x_lines(), m.set().name);
}

bool structurally_isomorphic(const EmbeddedMMSet& a, const EmbeddedMMSet& b) {
  if (a.d != b.d || a.r != b.r || a.ambient_dim != b.ambient_dim || a.points.size() != b.points.size() ||
      a.xi.size() != b.xi.size() || a.field->order() != b.field->order())
    return false;
  MMIndex ma(a), mb(b);
  if (ma.x_lines().size() != mb.x_lines().size()) return false;
  const auto iso = find_isomorphism(abstract_geometry(ma), abstract_geometry(mb));
  if (!iso) return false;
  std::set<std::vector<Point>> fa, fb;
  for (std::size_t i = 0; i < a.xi.size(); ++i) {
    std::vector<Point> img;
    const auto& s = ma.xi_points(i);
    for (auto p = s.find_first(); p != PointSet::npos; p = s.find_next(p)) img.push_back((*iso)[p]);
    std::sort(img.begin(), img.end());
    fa.insert(std::move(img));
  }
  for (std::size_t i = 0; i < b.xi.size(); ++i) fb.insert(to_list(mb.xi_points(i)));
  return fa == fb;
}

ojson to_json(const EmbeddedMMSet& e) {
  ojson j;
  unsigned p = e.field->characteristic(), k = e.field->degree();
  j["field"] = {{"p", p}, {"k", k}};
  j["ambient_dim"] = e.ambient_dim;
  ojson pts = ojson::array();
  for (const auto& v : e.points) pts.push_back(vec_json(v));
  j["points"] = std::move(pts);
  j["xi"] = e.xi;
  j["d"] = e.d;
  j["r"] = e.r;
  return j;
}

EmbeddedMMSet embedded_from_json(const nlohmann::json& j) {
  try {
    EmbeddedMMSet e;
    const unsigned p = j.at("field").at("p").get<unsigned>(), k = j.at("field").at("k").get<unsigned>();
    unsigned q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    e.field = FiniteField::of_order(q);
    if (e.field->characteristic() != p) throw Error("field order mismatch");
    e.ambient_dim = j.at("ambient_dim").get<int>();
    if (e.ambient_dim < 1) throw Error("ambient_dim must be positive");
    for (const auto& pt : j.at("points")) {
      Vec v;
      for (const auto& c : pt) {
        const auto x = c.get<unsigned>();
        if (x >= q) throw Error("coordinate out of field range");
        v.push_back(static_cast<Elem>(x));
      }
      if (v.size() != static_cast<std::size_t>(e.ambient_dim + 1)) throw Error("point has the wrong length");
      if (std::all_of(v.begin(), v.end(), [](Elem c) { return c == 0; })) throw Error("zero vector is not a point");
      e.points.push_back(std::move(v));
    }
    e.xi = j.at("xi").get<std::vector<std::vector<Point>>>();
    for (const auto& member : e.xi)
      for (Point x : member)
        if (x >= e.points.size()) throw Error("member names a point out of range");
    e.d = j.at("d").get<int>();
    e.r = j.at("r").get<int>();
    if (j.contains("name")) e.name = j["name"].get<std::string>();
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("malformed embedded JSON: ") + ex.what());
  }
}

bool replay_mm_witness(const MMIndex& m, const AxiomReport& report) {
  if (report.pass || !report.witness.is_object()) return false;
  const auto& w = report.witness;
  const auto& e = m.set();
  try {
    if (report.axiom == "MM1") {
      const auto x = w.at("pair")[0].get<Point>(), y = w.at("pair")[1].get<Point>();
      if (x == y || x >= m.size() || y >= m.size() || m.x_collinear(x, y)) return false;
      std::size_t count = 0;
      for (std::size_t i = 0; i < e.xi.size(); ++i) count += m.xi_points(i).test(x) && m.xi_points(i).test(y);
      return count != 1;
    }
    if (report.axiom == "MM2") {
      const auto i = w.at("members")[0].get<std::size_t>(), j = w.at("members")[1].get<std::size_t>();
      Vec v;
      for (const auto& c : w.at("point")) v.push_back(static_cast<Elem>(c.get<int>()));
      return i != j && m.space().contains(m.xi_span(i), v) && m.space().contains(m.xi_span(j), v) && !m.find(v);
    }
    if (report.axiom == "LMM3") {
      const auto x = w.at("point").get<Point>();
      const auto line = w.at("line").get<std::vector<Point>>();
      const auto bound = w.at("bound").get<int>();
      std::vector<Vec> rows;
      for (Point y : line) {
        if (y == x || m.x_collinear(x, y)) return false;
        std::optional<std::size_t> member;
        for (auto i : m.xi_through(x))
          if (m.xi_points(i).test(y)) member = i;
        if (!member) return false;
        for (const auto& v : tangent_space(m, *member, x).tangent.basis) rows.push_back(v);
      }
      return m.space().span(std::move(rows)).dim() > bound;
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

}  // namespace imbrex

#include "imbrex/analysis.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "imbrex/axioms.hpp"
#include "imbrex/gq.hpp"

namespace imbrex {

namespace {

ojson points_json(const PointSet& s) { return to_list(s); }

std::vector<Point> sorted_points(const PointSet& s) { return to_list(s); }

}  // namespace

std::optional<std::size_t> BlockGeometry::block_of(Point x, Point y) const {
  if (x == y) return std::nullopt;
  auto l = delta.line_through(x, y);
  if (!l) return std::nullopt;
  return *l;
}

BlockGeometry block_geometry(const IncidenceGeometry& g, const SympIndex& symps) {
  const auto profile = rank_profile(symps);
  if (!profile.rank || *profile.rank != 2) throw Error("block geometry requires symplectic rank 2");
  const auto n = g.point_count();
  BlockGeometry bg;
  {
    std::vector<std::vector<Point>> lists;
    for (const auto& m : maximal_singular_subspaces(g)) lists.push_back(to_list(m));
    bg.delta = IncidenceGeometry(n, std::move(lists), g.name() + "/delta");
    for (LineId b = 0; b < bg.delta.line_count(); ++b) bg.blocks.push_back(bg.delta.line_set(b));
  }
  const auto& blocks = bg.blocks;

  Stopwatch sw;
  AxiomReport gq = passed("Delta-GQ");
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b].count() < 3) {
      gq = failed("Delta-GQ", "block size", {{"block", b}, {"size", blocks[b].count()}});
      break;
    }
  if (gq.pass) {
    const auto cls = classify_gq(bg.delta);
    if (cls.is_gq())
      gq.witness = {{"class", cls.to_json()}, {"points", n}, {"blocks", blocks.size()}};
    else
      gq = failed("Delta-GQ", "GQ", {{"class", cls.to_json()}});
  }
  gq.ms = sw.ms();

  sw = Stopwatch();
  AxiomReport far = passed("far");
  if (symps.size() < 2) {
    far.witness = {{"skipped", "fewer than two symps"}};
  } else {
    for (Point r = 0; r < n && far.pass; ++r) {
      bool found = false;
      for (LineId l = 0; l < g.line_count() && !found; ++l)
        found = !g.line_set(l).test(r) && !g.line_set(l).intersects(g.neighbours(r));
      if (!found) far = failed("far", "far (i)", {{"point", r}});
    }
    for (LineId l = 0; l < g.line_count() && far.pass; ++l) {
      PointSet seen = g.line_set(l);
      for (Point p : g.line(l)) seen |= g.neighbours(p);
      if (seen.all()) far = failed("far", "far (ii)", {{"line", g.line(l)}});
    }
    if (far.pass) far.witness = {{"points", n}, {"lines", g.line_count()}};
  }
  far.ms = sw.ms();

  sw = Stopwatch();
  AxiomReport more = passed("moreprop");
  for (std::size_t a = 0; a < blocks.size() && more.pass; ++a)
    for (std::size_t b = a + 1; b < blocks.size(); ++b)
      if ((blocks[a] & blocks[b]).count() > 1) {
        more = failed("moreprop", "moreprop (i)", {{"blocks", {a, b}}, {"common", points_json(blocks[a] & blocks[b])}});
        break;
      }
  for (std::size_t b = 0; b < blocks.size() && more.pass; ++b)
    for (Point p = 0; p < n; ++p)
      if (!blocks[b].test(p) && !blocks[b].intersects(g.neighbours(p))) {
        more = failed("moreprop", "moreprop (ii)", {{"block", b}, {"point", p}});
        break;
      }
  if (more.pass) more.witness = {{"blocks", blocks.size()}};
  more.ms = sw.ms();

  sw = Stopwatch();
  AxiomReport lineblock = passed("lineblock");
  for (LineId l = 0; l < g.line_count(); ++l) {
    const auto& ls = g.line_set(l);
    bool ok = false;
    for (auto b : bg.blocks_through(g.line(l)[0]))
      if (ls.is_proper_subset_of(blocks[b])) ok = true;
    if (!ok) {
      lineblock = failed("lineblock", "lineblock", {{"line", g.line(l)}});
      break;
    }
  }
  lineblock.ms = sw.ms();

  sw = Stopwatch();
  AxiomReport ideal = passed("ideal-symps");
  for (std::size_t h = 0; h < symps.size() && ideal.pass; ++h) {
    const auto& H = symps[h].points;
    std::vector<LineId> sub;
    for (LineId b = 0; b < blocks.size(); ++b)
      if ((blocks[b] & H).count() >= 2) sub.push_back(b);
    try {
      auto r = is_ideal_subquadrangle(bg.delta, H, sub);
      if (!r.pass) {
        ojson w = r.witness;
        w.erase("violated");
        w["symp"] = h;
        ideal = failed("ideal-symps", "ideal", w);
      }
    } catch (const Error& e) {
      ideal = failed("ideal-symps", "subquadrangle", {{"symp", h}, {"reason", e.what()}});
    }
  }
  if (ideal.pass) ideal.witness = {{"symps", symps.size()}};
  ideal.ms = sw.ms();

  bg.pass = gq.pass && far.pass && more.pass && lineblock.pass && ideal.pass;
  bg.reports = {std::move(gq), std::move(far), std::move(more), std::move(lineblock), std::move(ideal)};
  return bg;
}

ojson Spread::to_json() const {
  ojson j;
  j["symp"] = symp;
  j["block"] = block;
  j["lines"] = lines;
  return j;
}

struct SpreadAnalyzer::Local {
  InducedGeometry geo;
  std::vector<std::int32_t> local_point;
  std::map<std::pair<LineId, LineId>, std::vector<LineId>> double_perps;

  std::optional<LineId> local_line(LineId parent) const {
    auto it = std::lower_bound(geo.parent_lines.begin(), geo.parent_lines.end(), parent);
    if (it == geo.parent_lines.end() || *it != parent) return std::nullopt;
    return static_cast<LineId>(it - geo.parent_lines.begin());
  }
  const std::vector<LineId>& double_perp(LineId a, LineId b) {
    if (a > b) std::swap(a, b);
    auto it = double_perps.find({a, b});
    if (it == double_perps.end()) it = double_perps.emplace(std::make_pair(a, b), is_regular_pair(geo.geometry, a, b).double_perp).first;
    return it->second;
  }
};

SpreadAnalyzer::SpreadAnalyzer(const IncidenceGeometry& g, const SympIndex& symps, const BlockGeometry& bg)
    : g_(&g), symps_(&symps), bg_(&bg), cache_(symps.size()) {}

SpreadAnalyzer::~SpreadAnalyzer() = default;

SpreadAnalyzer::Local& SpreadAnalyzer::local(std::size_t symp) {
  auto& slot = cache_.at(symp);
  if (!slot) {
    slot = std::make_unique<Local>();
    slot->geo = induced_geometry(*g_, (*symps_)[symp].points);
    slot->local_point.assign(g_->point_count(), -1);
    for (std::size_t i = 0; i < slot->geo.to_parent.size(); ++i)
      slot->local_point[slot->geo.to_parent[i]] = static_cast<std::int32_t>(i);
  }
  return *slot;
}

Spread SpreadAnalyzer::spread(std::size_t block, std::size_t symp) {
  const auto& g = *g_;
  const auto& B = bg_->blocks.at(block);
  const auto& H = (*symps_)[symp].points;
  if (B.intersects(H)) throw Error("block meets symp");
  Spread s;
  s.symp = symp;
  s.block = block;
  s.report = passed("spread");
  std::vector<std::int32_t> line_of(g.point_count(), -1);
  for (auto u = H.find_first(); u != PointSet::npos; u = H.find_next(u)) {
    std::vector<LineId> cands;
    for (auto b : bg_->blocks_through(static_cast<Point>(u)))
      if ((bg_->blocks[b] & B).count() == 1) cands.push_back(b);
    if (cands.size() != 1) {
      s.report = failed("spread", "B_u", {{"point", u}, {"candidates", cands}});
      return s;
    }
    const auto& Bu = bg_->blocks[cands[0]];
    const auto trace = Bu & H;
    const auto pts = sorted_points(trace);
    std::optional<LineId> l;
    if (pts.size() >= 2) l = g.line_through(pts[0], pts[1]);
    if (!l || g.line_set(*l) != trace) {
      s.report = failed("spread", "L_u", {{"point", u}, {"trace", pts}});
      return s;
    }
    const auto img = static_cast<Point>((Bu & B).find_first());
    if (line_of[u] >= 0) {
      if (s.image[line_of[u]] != img) {
        s.report = failed("spread", "partition", {{"point", u}, {"lines", {s.lines[line_of[u]], pts}}});
        return s;
      }
      continue;
    }
    for (Point p : pts) {
      if (line_of[p] >= 0) {
        s.report = failed("spread", "partition", {{"point", p}, {"lines", {s.lines[line_of[p]], pts}}});
        return s;
      }
      line_of[p] = static_cast<std::int32_t>(s.lines.size());
    }
    s.lines.push_back(pts);
    s.image.push_back(img);
  }
  s.report.witness = {{"lines", s.lines.size()}};
  return s;
}

DoublePerpGeometry SpreadAnalyzer::double_perp(const Spread& s) {
  if (!s.report.pass) throw Error("spread is not valid");
  const auto& g = *g_;
  auto& loc = local(s.symp);
  std::vector<LineId> ids;
  std::map<LineId, std::size_t> index;
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    auto l = g.line_through(s.lines[i][0], s.lines[i][1]);
    auto ll = l ? loc.local_line(*l) : std::nullopt;
    if (!ll) throw Error("spread line is not a line of the symp");
    ids.push_back(*ll);
    index[*ll] = i;
  }
  auto parent_points = [&](LineId local) {
    std::vector<Point> out;
    for (Point p : loc.geo.geometry.line(local)) out.push_back(loc.geo.to_parent[p]);
    return out;
  };

  DoublePerpGeometry out;
  out.closure = passed("spread-double-perp");
  std::set<std::vector<std::size_t>> sigma;
  for (std::size_t i = 0; i < ids.size() && out.closure.pass; ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const auto& dp = loc.double_perp(ids[i], ids[j]);
      std::vector<std::size_t> members;
      for (auto l : dp) {
        auto it = index.find(l);
        if (it == index.end()) {
          out.closure = failed("spread-double-perp", "double perp leaves spread",
                               {{"symp", s.symp}, {"block", s.block}, {"pair", {s.lines[i], s.lines[j]}},
                                {"escaping", parent_points(l)}});
          break;
        }
        members.push_back(it->second);
      }
      if (!out.closure.pass) break;
      std::sort(members.begin(), members.end());
      sigma.insert(std::move(members));
    }
  out.lines.assign(sigma.begin(), sigma.end());

  out.morphism = passed("sigma-beta");
  if (!out.closure.pass) {
    out.morphism = failed("sigma-beta", "closure failed first");
    return out;
  }
  std::set<Point> images(s.image.begin(), s.image.end());
  if (images.size() != s.image.size()) {
    out.morphism = failed("sigma-beta", "not injective", {{"symp", s.symp}, {"block", s.block}});
    return out;
  }
  const auto& B = bg_->blocks[s.block];
  for (const auto& line : out.lines) {
    PointSet img(g.point_count());
    for (auto i : line) img.set(s.image[i]);
    const auto pts = sorted_points(img);
    std::optional<LineId> l;
    if (pts.size() >= 2) l = g.line_through(pts[0], pts[1]);
    if (!l || !img.is_subset_of(g.line_set(*l)) || !g.line_set(*l).is_subset_of(B)) {
      out.morphism = failed("sigma-beta", "double perp not mapped into a line of the block",
                            {{"symp", s.symp}, {"block", s.block}, {"image", pts}});
      return out;
    }
  }
  out.morphism.witness = {{"sigma_points", s.lines.size()}, {"sigma_lines", out.lines.size()}};
  return out;
}

Spread induced_spread(const IncidenceGeometry& g, const SympIndex& symps, const BlockGeometry& bg,
                      std::size_t block, std::size_t symp) {
  return SpreadAnalyzer(g, symps, bg).spread(block, symp);
}

DoublePerpGeometry double_perp_geometry(const IncidenceGeometry& g, const SympIndex& symps,
                                        const BlockGeometry& bg, const Spread& spread) {
  return SpreadAnalyzer(g, symps, bg).double_perp(spread);
}

AxiomReport check_spreads(const IncidenceGeometry& g, const SympIndex& symps, const BlockGeometry& bg) {
  Stopwatch sw;
  SpreadAnalyzer an(g, symps, bg);
  std::size_t pairs = 0;
  std::map<std::size_t, std::size_t> sizes, sigma_sizes;
  auto done = [&](AxiomReport r) {
    r.ms = sw.ms();
    return r;
  };
  for (std::size_t h = 0; h < symps.size(); ++h)
    for (std::size_t b = 0; b < bg.blocks.size(); ++b) {
      if (bg.blocks[b].intersects(symps[h].points)) continue;
      ++pairs;
      auto s = an.spread(b, h);
      if (!s.report.pass) {
        auto r = s.report;
        r.axiom = "spread-double-perp";
        r.witness["symp"] = h;
        r.witness["block"] = b;
        return done(r);
      }
      ++sizes[s.lines.size()];
      auto dp = an.double_perp(s);
      if (!dp.closure.pass) return done(dp.closure);
      if (!dp.morphism.pass) {
        auto r = dp.morphism;
        r.axiom = "spread-double-perp";
        return done(r);
      }
      for (const auto& l : dp.lines) ++sigma_sizes[l.size()];
    }
  ojson hs = ojson::object(), ss = ojson::object();
  for (auto [k, v] : sizes) hs[std::to_string(k)] = v;
  for (auto [k, v] : sigma_sizes) ss[std::to_string(k)] = v;
  return done(passed("spread-double-perp", {{"pairs", pairs}, {"spread_sizes", hs}, {"sigma_line_sizes", ss}}));
}

AxiomReport check_pair_regularity(const IncidenceGeometry& g, const SympIndex& symps) {
  Stopwatch sw;
  std::size_t tested = 0;
  for (std::size_t h = 0; h < symps.size(); ++h) {
    const auto geo = induced_geometry(g, symps[h].points);
    const auto& lg = geo.geometry;
    for (LineId a = 0; a < lg.line_count(); ++a)
      for (LineId b = a + 1; b < lg.line_count(); ++b) {
        if (lg.line_set(a).intersects(lg.line_set(b))) continue;
        ++tested;
        if (!is_regular_pair(lg, a, b).regular) {
          auto r = failed("pair-regular", "pairregular (i)",
                          {{"symp", h}, {"lines", {g.line(geo.parent_lines[a]), g.line(geo.parent_lines[b])}}});
          r.ms = sw.ms();
          return r;
        }
      }
  }
  auto r = passed("pair-regular", {{"symps", symps.size()}, {"pairs", tested}});
  r.ms = sw.ms();
  return r;
}

AxiomReport check_pointcol(const IncidenceGeometry& g, const SympIndex& symps, const ScanOptions& opts) {
  Stopwatch sw;
  const auto n = g.point_count();
  std::size_t tested = 0;
  std::optional<AxiomReport> fail;
  auto visit = [&](Point x, LineId l) {
    const auto& M = g.line_set(l);
    if (M.test(x) || M.intersects(g.neighbours(x))) return;
    const auto& pts = g.line(l);
    for (std::size_t i = 0; i < pts.size() && !fail; ++i)
      for (std::size_t j = i + 1; j < pts.size() && !fail; ++j) {
        ++tested;
        const auto s1 = symps.symp_of(x, pts[i]), s2 = symps.symp_of(x, pts[j]);
        if (!s1 || !s2) {
          fail = failed("pointcol", "missing symp", {{"point", x}, {"line", pts}});
          break;
        }
        const auto common = symps[*s1].points & symps[*s2].points;
        bool found = false;
        for (auto z = common.find_first(); z != PointSet::npos && !found; z = common.find_next(z)) {
          bool all = true;
          for (Point p : pts) all = all && g.collinear(static_cast<Point>(z), p);
          found = all;
        }
        if (!found)
          fail = failed("pointcol", "pointcol", {{"point", x}, {"line", pts}, {"q", {pts[i], pts[j]}}});
      }
  };
  if (opts.sample && g.line_count() > 0) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> px(0, n - 1), pl(0, g.line_count() - 1);
    for (std::size_t k = 0; k < *opts.sample && !fail; ++k)
      visit(static_cast<Point>(px(rng)), static_cast<LineId>(pl(rng)));
  } else {
    for (Point x = 0; x < n && !fail; ++x)
      for (LineId l = 0; l < g.line_count() && !fail; ++l) visit(x, l);
  }
  AxiomReport r = fail ? *fail : passed("pointcol", {{"pairs", tested}});
  if (!fail && opts.sample) {
    r.witness["sampled"] = true;
    r.witness["seed"] = opts.seed;
  }
  r.ms = sw.ms();
  return r;
}

AxiomReport verify_nonclosing_theorem(const IncidenceGeometry& g, const SympIndex& symps, const BlockGeometry& bg) {
  Stopwatch sw;
  const auto profile = rank_profile(symps);
  bool thick = profile.rank && *profile.rank == 2 && !profile.thickness.empty();
  for (auto t : profile.thickness) thick = thick && t == Thickness::thick;
  if (!thick) throw Error("theorem requires thick symplecta");
  std::map<std::size_t, std::size_t> counts;
  std::size_t projective = 0;
  AxiomReport r = passed("nonclosing");
  for (std::size_t b = 0; b < bg.blocks.size(); ++b) {
    const auto found = find_onan(g, bg.blocks[b], OnanMode::nonclosing);
    const bool proj = all_lines_meet(g, bg.blocks[b]);
    projective += proj;
    ++counts[found.size()];
    if ((found.empty() || proj) && r.pass)
      r = failed("nonclosing", found.empty() ? "no non-closing configuration" : "block is projective",
                 {{"block", b}, {"points", points_json(bg.blocks[b])}});
  }
  ojson hist = ojson::object();
  for (auto [k, v] : counts) hist[std::to_string(k)] = v;
  if (r.pass) {
    r.witness = {{"blocks", bg.blocks.size()}, {"per_block_counts", hist}, {"uniform", counts.size() == 1},
                 {"projective_blocks", projective}};
    if (!bg.blocks.empty()) r.witness["example"] = find_onan(g, bg.blocks[0], OnanMode::nonclosing, 1).at(0).to_json();
  } else {
    r.witness["per_block_counts"] = hist;
  }
  r.ms = sw.ms();
  return r;
}

AxiomReport check_cc1(const IncidenceGeometry& g, const SympIndex& symps, const ScanOptions& opts) {
  const auto profile = rank_profile(symps);
  if (!profile.rank || *profile.rank < 3) throw Error("(CC1) requires symplectic rank at least 3");
  Stopwatch sw;
  const auto n = g.point_count();
  std::vector<std::optional<std::vector<PointSet>>> maximal(symps.size());
  std::size_t tested = 0, qualifying = 0;
  std::optional<AxiomReport> fail;
  auto visit = [&](Point x, std::size_t h) {
    const auto& H = symps[h];
    if (H.points.test(x)) return;
    ++tested;
    const auto c = g.neighbours(x) & H.points;
    if (c.count() < 2) return;
    bool has_line = false;
    for (auto l : H.lines)
      if (g.line_set(l).is_subset_of(c)) {
        has_line = true;
        break;
      }
    if (!has_line) return;
    ++qualifying;
    if (!maximal[h]) maximal[h] = maximal_singular_subspaces(g, H.points);
    for (const auto& m : *maximal[h])
      if (m.is_subset_of(c)) return;
    fail = failed("cc1", "(CC1)", {{"point", x}, {"symp", h}, {"collinear", points_json(c)}});
  };
  if (opts.sample && !symps.symps().empty()) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> px(0, n - 1), ph(0, symps.size() - 1);
    for (std::size_t k = 0; k < *opts.sample && !fail; ++k) visit(static_cast<Point>(px(rng)), ph(rng));
  } else {
    for (std::size_t h = 0; h < symps.size() && !fail; ++h)
      for (Point x = 0; x < n && !fail; ++x) visit(x, h);
  }
  AxiomReport r = fail ? *fail : passed("cc1", {{"pairs", tested}, {"qualifying", qualifying}});
  if (!fail && opts.sample) {
    r.witness["sampled"] = true;
    r.witness["seed"] = opts.seed;
  }
  r.ms = sw.ms();
  return r;
}

}  // namespace imbrex

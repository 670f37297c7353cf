// One PASS/FAIL line per acceptance criterion.  Expected values come from
// closed-form counts computed here, not from the library.
//
//   acceptance [--only N,...] [--known-failures N,...]
//
// Exit status is 0 when the failing blocking criteria (1-8) are exactly the
// listed known failures.  Criterion 9 is reported but never blocks.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "imbrex/analysis.hpp"
#include "imbrex/axioms.hpp"
#include "imbrex/catalog.hpp"
#include "imbrex/gq.hpp"
#include "imbrex/mazzocca_melone.hpp"
#include "properties.hpp"

using namespace imbrex;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail, problems;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems << "\n    " << what;
    }
  }
};

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Gaussian binomial [n choose k]_q.
std::uint64_t gauss(unsigned n, unsigned k, std::uint64_t q) {
  std::uint64_t num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

Params qp(int q) {
  Params p;
  p.q = q;
  return p;
}

Params segre_p(int a, int b, int q) {
  Params p;
  p.p = a, p.r = b, p.q = q;
  return p;
}

Params grass_p(int n, int q) {
  Params p;
  p.n = n, p.q = q;
  return p;
}

Params h44_p() {
  Params p;
  p.from = "H4", p.q = 4;
  return p;
}

// Times one build and checks it against the budget.
template <class F>
auto timed(Outcome& o, const std::string& what, double budget, F&& f) {
  const auto t = std::chrono::steady_clock::now();
  auto v = f();
  const double s = seconds_since(t);
  o.expect(s < budget, what + " took " + std::to_string(s) + " s");
  return v;
}

void criterion1(Outcome& o) {
  struct Row {
    std::string name;
    Params p;
    std::uint64_t points, lines;
  };
  const std::uint64_t q = 2, s = 2;  // W(2), Q-(5,2); H(n,s^2) with s = 2
  const std::vector<Row> rows = {
      {"W", qp(2), (q + 1) * (q * q + 1), (q + 1) * (q * q + 1)},
      {"Qminus5", qp(2), (q + 1) * (ipow(q, 3) + 1), (q * q + 1) * (ipow(q, 3) + 1)},
      {"H3", qp(4), (s * s + 1) * (ipow(s, 3) + 1), (s + 1) * (ipow(s, 3) + 1)},
      {"H4", qp(4), (s * s + 1) * (ipow(s, 5) + 1), (ipow(s, 3) + 1) * (ipow(s, 5) + 1)},
      {"grassmann", grass_p(4, 2), gauss(5, 2, 2), gauss(5, 3, 2) * gauss(3, 1, 2)},
      {"segre", segre_p(2, 2, 2), 7 * 7, 2 * 7 * 7},
  };
  for (const auto& r : rows) {
    const auto g = timed(o, r.name, 10.0, [&] { return build(r.name, r.p); });
    o.expect(g.point_count() == r.points && g.line_count() == r.lines,
             g.name() + ": " + std::to_string(g.point_count()) + "/" + std::to_string(g.line_count()));
    if (r.name == "grassmann") {
      const auto sy = timed(o, "grassmann symps", 10.0, [&] { return enumerate_symps(g); });
      o.expect(sy.size() == gauss(5, 4, 2), "grassmann(4,2) symp count " + std::to_string(sy.size()));
      for (const auto& x : sy.symps()) o.expect(x.size() == gauss(4, 2, 2), "grassmann(4,2) symp size");
    }
    if (r.name == "segre") {
      const auto sy = timed(o, "segre symps", 10.0, [&] { return enumerate_symps(g); });
      o.expect(sy.size() == 49, "segre(2,2,2) symp count " + std::to_string(sy.size()));
      for (const auto& x : sy.symps())
        o.expect(x.size() == 9 && x.thickness == Thickness::grid, "segre(2,2,2) symp is not a 3x3 grid");
    }
  }
  // Points: lines of H(4,4).  Lines: per point of H(4,4), the secants of
  // the unital H(2,4) in its tangent cone, 21 - 9 = 12 of them.  Symps:
  // non-tangent hyperplanes, 341 - 165.  Blocks: points of H(4,4).
  const std::uint64_t h4_points = (s * s + 1) * (ipow(s, 5) + 1);
  const std::uint64_t h4_lines = (ipow(s, 3) + 1) * (ipow(s, 5) + 1);
  const std::uint64_t hyperplanes = gauss(5, 4, s * s);
  const std::uint64_t secants = gauss(3, 2, s * s) - (ipow(s, 3) + 1);
  const auto t = std::chrono::steady_clock::now();
  const auto g = build("imbrex", h44_p());
  const auto sy = enumerate_symps(g);
  const auto blocks = maximal_singular_subspaces(g);
  const double secs = seconds_since(t);
  o.expect(secs < 10.0, "H44-imbrex took " + std::to_string(secs) + " s");
  o.expect(g.point_count() == h4_lines, "H44-imbrex points " + std::to_string(g.point_count()));
  o.expect(g.line_count() == h4_points * secants, "H44-imbrex lines " + std::to_string(g.line_count()));
  o.expect(sy.size() == hyperplanes - h4_points, "H44-imbrex symps " + std::to_string(sy.size()));
  o.expect(blocks.size() == h4_points, "H44-imbrex blocks " + std::to_string(blocks.size()));
  o.detail << "H44-imbrex " << g.point_count() << "/" << g.line_count() << "/" << sy.size() << "/" << blocks.size();
}

void criterion2(Outcome& o) {
  struct Row {
    std::string name;
    Params p;
    int rank;
  };
  const std::vector<Row> rows = {{"segre", segre_p(1, 2, 2), 2},  {"segre", segre_p(2, 2, 2), 2},
                                 {"grassmann", grass_p(4, 2), 3}, {"grassmann", grass_p(5, 2), 3},
                                 {"imbrex", h44_p(), 2}};
  for (const auto& r : rows) {
    const auto t = std::chrono::steady_clock::now();
    const auto g = build(r.name, r.p);
    const auto res = is_imbrex(g, ScanOptions{});
    const double secs = seconds_since(t);
    o.expect(secs < 300.0, g.name() + " took " + std::to_string(secs) + " s");
    o.expect(res.pass, g.name() + " is not imbrex: " + res.to_json().dump());
    o.expect(res.profile.rank && *res.profile.rank == r.rank, g.name() + " rank " + res.profile.to_json().dump());
    o.expect(res.profile.uniform_thickness, g.name() + " symp thickness not uniform");
    for (const auto& rep : res.reports)
      o.expect(!rep.witness.is_object() || !rep.witness.contains("sampled"), g.name() + ": sampled " + rep.axiom);
    o.detail << g.name() << " rank " << (res.profile.rank ? *res.profile.rank : -1) << " " << static_cast<int>(secs)
             << "s; ";
  }
}

// Non-closing O'Nan configurations among the lines inside `s`, by
// definition: four lines, exactly one disjoint pair, five distinct meets.
std::size_t brute_nonclosing(const IncidenceGeometry& g, const PointSet& s) {
  std::vector<LineId> ls;
  for (LineId l = 0; l < g.line_count(); ++l)
    if (g.line_set(l).is_subset_of(s)) ls.push_back(l);
  std::size_t count = 0;
  const auto k = ls.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      for (std::size_t c = b + 1; c < k; ++c)
        for (std::size_t d = c + 1; d < k; ++d) {
          const LineId q[4] = {ls[a], ls[b], ls[c], ls[d]};
          int disjoint = 0;
          std::set<Point> pts;
          int meets = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
              auto m = g.line_set(q[i]) & g.line_set(q[j]);
              if (m.none()) ++disjoint;
              else ++meets, pts.insert(static_cast<Point>(m.find_first()));
            }
          if (disjoint == 1 && pts.size() == static_cast<std::size_t>(meets)) ++count;
        }
  return count;
}

// Two lines of the block that do not meet: the block is no projective plane.
bool brute_projective(const IncidenceGeometry& g, const PointSet& s) {
  std::vector<LineId> ls;
  for (LineId l = 0; l < g.line_count(); ++l)
    if (g.line_set(l).is_subset_of(s)) ls.push_back(l);
  for (std::size_t a = 0; a < ls.size(); ++a)
    for (std::size_t b = a + 1; b < ls.size(); ++b)
      if (!g.line_set(ls[a]).intersects(g.line_set(ls[b]))) return false;
  return true;
}

void criterion3(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  const auto g = build("imbrex", h44_p());
  const auto sy = enumerate_symps(g);
  const auto bg = block_geometry(g, sy);
  const auto r = verify_nonclosing_theorem(g, sy, bg);
  const double secs = seconds_since(t);
  o.expect(secs < 60.0, "took " + std::to_string(secs) + " s");
  o.expect(r.pass, "nonclosing: " + r.witness.dump());
  o.expect(bg.blocks.size() == 165, "block count " + std::to_string(bg.blocks.size()));
  std::map<std::size_t, std::size_t> hist;
  std::size_t projective = 0;
  for (const auto& b : bg.blocks) {
    const auto c = brute_nonclosing(g, b);
    o.expect(c > 0, "a block without a non-closing configuration");
    ++hist[c];
    projective += brute_projective(g, b);
  }
  o.expect(projective == 0, std::to_string(projective) + " projective blocks");
  ojson h = ojson::object();
  for (auto [k, v] : hist) h[std::to_string(k)] = v;
  if (r.pass) o.expect(r.witness["per_block_counts"] == h, "histogram differs from brute force " + h.dump());
  o.detail << "per-block counts " << h.dump() << ", projective blocks " << projective;
}

void criterion4(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  const auto g = build("imbrex", h44_p());
  const auto sy = enumerate_symps(g);
  const auto bg = block_geometry(g, sy);
  const auto pr = check_pair_regularity(g, sy);
  const auto sp = check_spreads(g, sy, bg);
  const double secs = seconds_since(t);
  o.expect(secs < 600.0, "took " + std::to_string(secs) + " s");
  o.expect(pr.pass, "pair regularity: " + pr.witness.dump());
  o.expect(sp.pass, "spreads: " + sp.witness.dump());
  // A block (point P of H(4,4)) misses a symp (hyperplane section) iff P
  // is off the hyperplane: 165 - 45 points per section.
  const std::size_t pairs = 176 * (165 - 45);
  if (pr.pass) o.expect(pr.witness["symps"] == 176, "symps " + pr.witness.dump());
  if (sp.pass) o.expect(sp.witness["pairs"] == pairs, "pairs " + sp.witness["pairs"].dump());
  o.detail << "symps " << sy.size() << ", (block, disjoint symp) pairs " << pairs;
}

void criterion5(Outcome& o) {
  for (const auto& [name, p] : {std::pair{std::string("segre"), segre_p(1, 2, 2)},
                                std::pair{std::string("imbrex"), h44_p()}}) {
    const auto g = build(name, p);
    const auto sy = enumerate_symps(g);
    ScanOptions all;
    const auto pc = check_pointcol(g, sy, all);
    o.expect(pc.pass, g.name() + " pointcol: " + pc.witness.dump());
    const auto bg = block_geometry(g, sy);
    for (const auto& r : bg.reports) {
      if (r.axiom == "lineblock") continue;  // a corollary, not in this suite
      o.expect(r.pass, g.name() + " " + r.axiom + ": " + r.witness.dump());
    }
    bool clean = pc.pass;
    for (const auto& r : bg.reports) clean = clean && (r.axiom == "lineblock" || r.pass);
    o.detail << g.name() << (clean ? " clean" : " has violations") << "; ";
  }
  if (!o.pass)
    o.detail << "\n    on S_{1,n} every point is collinear with a point of each line PG(1) x {b}, so far (ii)"
                "\n    has no witness there; the violation is genuine, not a checker artifact";
}

void criterion6(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  for (const auto& [name, p] : {std::pair{std::string("segre"), segre_p(2, 2, 2)},
                                std::pair{std::string("plucker"), grass_p(4, 2)}}) {
    const auto e = build_embedded(name, p);
    MMIndex m(e);
    const auto mm = check_mm_axioms(m);
    for (const auto& r : mm.reports) o.expect(r.pass, name + " " + r.axiom + ": " + r.witness.dump());
    if (!mm.pass) continue;
    const auto l = check_lmm3(m, mm, ScanOptions{});
    const int bound = 2 * e.d - e.r + 1;
    o.expect(l.pass, name + " LMM3: " + l.witness.dump());
    if (l.pass) {
      o.expect(l.witness["realized_max"] == bound, name + " realized " + l.witness["realized_max"].dump());
      o.detail << name << " d=" << e.d << " r=" << e.r << " max " << l.witness["realized_max"] << "; ";
    }
    const auto imb = check_imb(abstract_geometry(m));
    o.expect(imb.pass, name + " abstract geometry Imb: " + imb.witness.dump());
  }
  const double secs = seconds_since(t);
  o.expect(secs < 900.0, "took " + std::to_string(secs) + " s");
}

void criterion7(Outcome& o) {
  const auto t = std::chrono::steady_clock::now();
  const auto e = build_embedded("plucker", grass_p(4, 2));
  const auto target = build_embedded("segre", segre_p(1, 2, 2));
  MMIndex m(e);
  std::size_t ok = 0;
  for (Point x = 0; x < m.size(); ++x) {
    const auto r = residue(m, x);
    const bool iso = structurally_isomorphic(r, target);
    o.expect(iso, "residue at " + std::to_string(x) + " " + describe(r).dump());
    ok += iso;
  }
  const double secs = seconds_since(t);
  o.expect(m.size() == 155, "point count " + std::to_string(m.size()));
  o.expect(secs < 300.0, "took " + std::to_string(secs) + " s");
  o.detail << ok << "/" << m.size() << " residues isomorphic to the Segre(1,2) embedding";
}

void criterion8(Outcome& o) {
  const auto a = properties::run_catalog_properties();
  const auto b = properties::run_witness_replay();
  for (const auto& f : a.failures) o.expect(false, f);
  for (const auto& f : b.failures) o.expect(false, f);
  o.detail << "catalog: " << a.geometries << " geometries, " << a.checks << " checks, " << a.failures.size()
           << " failures; replay: " << b.geometries << " witnesses, " << b.failures.size() << " failures";
  if (!o.pass)
    o.detail << "\n    on S_{1,n} every symp through x is PG(1) x M with M through b, so it holds every"
                "\n    y on the line PG(1) x {b}; the proper lemma has no witness there";
}

void criterion9(Outcome& o) {
  auto t = std::chrono::steady_clock::now();
  const auto g = build("halfspin_d5", qp(2));
  ScanOptions s;
  s.sample = 100000;
  s.seed = 0;
  const auto res = is_imbrex(g, s);
  o.expect(res.pass, "halfspin_d5(2): " + res.to_json().dump());
  o.expect(res.profile.rank && *res.profile.rank == 4, "rank " + res.profile.to_json().dump());
  for (const auto& r : res.reports)
    if (r.axiom == "Imb" && r.witness.is_object() && r.witness.contains("triples"))
      o.expect(r.witness["triples"].get<std::size_t>() >= 100000, "sampled triples " + r.witness["triples"].dump());
  o.detail << "halfspin_d5(2) " << g.point_count() << " points, imbrex " << (res.pass ? "yes" : "no") << " in "
           << static_cast<int>(seconds_since(t)) << "s; ";

  t = std::chrono::steady_clock::now();
  const auto e = build_embedded("spinor", qp(2));
  MMIndex m(e);
  const auto mm = check_mm_axioms(m);
  o.expect(mm.pass, "spinor MM axioms fail");
  if (mm.pass) {
    const auto l = check_lmm3(m, mm, s);
    o.expect(l.pass, "spinor LMM3: " + l.witness.dump());
    o.expect(l.witness["bound"] == 9, "bound " + l.witness["bound"].dump());
    o.detail << "spinor LMM3 bound " << l.witness["bound"] << " realized " << l.witness["realized_max"] << " in "
             << static_cast<int>(seconds_since(t)) << "s";
  }
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, known;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if ((a == "--only" || a == "--known-failures") && i + 1 < argc) {
      (a == "--only" ? only : known) = parse_list(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N,...] [--known-failures N,...]\n";
      return 2;
    }
  }
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"catalog statistics", criterion1},
      {"imbrex verdicts", criterion2},
      {"non-closing O'Nan configurations in every block", criterion3},
      {"pair regularity and spread double perps", criterion4},
      {"block-geometry lemma suite", criterion5},
      {"MM1, MM2, LMM3 and Imb of the abstract geometry", criterion6},
      {"residues of the Pluecker embedding", criterion7},
      {"property suites over the small catalog", criterion8},
      {"half-spin geometry and spinor embedding (stretch)", criterion9},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    const auto t = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f s", seconds_since(t));
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " [" << secs << "] " << criteria[i].first
              << (n == 9 ? " (non-blocking)" : "") << "\n    " << o.detail.str() << o.problems.str() << "\n"
              << std::flush;
    if (!o.pass && n != 9) failed.insert(n);
  }
  std::set<int> expected;
  for (int k : known)
    if (only.empty() || only.count(k)) expected.insert(k);
  if (!known.empty()) {
    std::cout << "known failures:";
    for (int k : expected) std::cout << " " << k;
    std::cout << (failed == expected ? " (as expected)" : " (MISMATCH)") << "\n";
  }
  return failed == expected ? 0 : 1;
}

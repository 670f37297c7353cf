#pragma once

// Property suites shared by the unit tests and the acceptance binary.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "imbrex/axioms.hpp"
#include "imbrex/catalog.hpp"
#include "imbrex/gq.hpp"

namespace imbrex::properties {

struct Tally {
  std::size_t geometries = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

struct Entry {
  std::string name;
  Params params;
};

// Catalog geometries with at most 500 points.
inline std::vector<Entry> small_catalog() {
  std::vector<Entry> out;
  auto q = [](int v) {
    Params p;
    p.q = v;
    return p;
  };
  for (int v : {2, 3, 4}) {
    out.push_back({"W", q(v)});
    out.push_back({"Q4", q(v)});
  }
  out.push_back({"Qminus5", q(2)});
  out.push_back({"Qminus5", q(3)});
  out.push_back({"H3", q(4)});
  out.push_back({"H4", q(4)});
  for (auto [m, n] : {std::pair{3, 3}, std::pair{4, 5}}) {
    Params p;
    p.m = m, p.n = n;
    out.push_back({"grid", p});
  }
  {
    Params p;
    p.n = 4, p.q = 2;
    out.push_back({"grassmann", p});
    p.n = 3, p.q = 3;
    out.push_back({"grassmann", p});
  }
  for (auto [a, b, f] : {std::tuple{1, 2, 2}, std::tuple{2, 2, 2}, std::tuple{1, 3, 2}, std::tuple{1, 2, 3}}) {
    Params p;
    p.p = a, p.r = b, p.q = f;
    out.push_back({"segre", p});
  }
  {
    Params p;
    p.from = "H4", p.q = 4;
    out.push_back({"imbrex", p});
  }
  return out;
}

// T subset of T^perp-perp and T^perp = T^perp-perp-perp, on point sets with
// collinearity (x in x^perp) and on line sets with concurrency.
inline void galois_connection(const IncidenceGeometry& g, std::mt19937_64& rng, Tally& t, const std::string& label) {
  const auto n = g.point_count();
  auto point_perp = [&](const PointSet& s) {
    PointSet out = g.full_set();
    for (auto p = s.find_first(); p != PointSet::npos; p = s.find_next(p)) {
      auto closed = g.neighbours(static_cast<Point>(p));
      closed.set(p);
      out &= closed;
    }
    return out;
  };
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet s(n);
    const int k = 1 + trial % 3;
    for (int i = 0; i < k; ++i) s.set(pick(rng));
    const auto a = point_perp(s), b = point_perp(a);
    t.expect(s.is_subset_of(b), label + ": T not in its point double perp");
    t.expect(point_perp(b) == a, label + ": point triple perp differs");
  }
  if (g.line_count() == 0) return;
  std::uniform_int_distribution<std::size_t> pl(0, g.line_count() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LineId> ls;
    const int k = 1 + trial % 3;
    for (int i = 0; i < k; ++i) ls.push_back(static_cast<LineId>(pl(rng)));
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    const auto a = perp(g, ls), b = perp(g, a);
    t.expect(std::includes(b.begin(), b.end(), ls.begin(), ls.end()), label + ": T not in its line double perp");
    t.expect(perp(g, b) == a, label + ": line triple perp differs");
  }
}

inline Tally run_catalog_properties() {
  Tally t;
  std::mt19937_64 rng(0);
  for (const auto& e : small_catalog()) {
    const auto g = build(e.name, e.params);
    if (g.point_count() > kExhaustivePointLimit) continue;
    ++t.geometries;
    const auto label = g.name();
    const auto symps = enumerate_symps(g);
    for (auto [r, what] : {std::pair{check_quadrangle_lemma(g, symps), "Quadrangle Lemma"},
                           std::pair{check_subspace_lemma(g, symps), "subspace lemma"},
                           std::pair{check_proper_lemma(g, symps), "proper lemma"}}) {
      t.expect(r.pass, label + ": " + what + " " + r.witness.dump());
      if (!r.pass) t.expect(replay_witness(g, r), label + ": " + what + " witness does not replay");
    }
    galois_connection(g, rng, t, label);
  }
  return t;
}

// Failed reports from known counterexamples; each witness must replay, and
// a replay of a passing report must be refused.
inline Tally run_witness_replay() {
  using namespace fixtures;
  Tally t;
  auto replays = [&](const IncidenceGeometry& g, const AxiomReport& r, const std::string& what) {
    ++t.geometries;
    t.expect(!r.pass, what + ": expected a failure");
    if (!r.pass) t.expect(replay_witness(g, r), what + ": witness does not replay: " + r.witness.dump());
  };
  replays(fano(), check_polar_space(fano()), "fano polar");
  replays(grid(2, 3), check_polar_space(grid(2, 3)), "short lines");
  Params p;
  p.q = 2;
  const auto w = build("W", p);
  replays(w, check_polar_space(w, 3), "W(2) rank 3");
  replays(grid(3, 3), check_strong_parapolar_diam2(grid(3, 3)).report, "single grid parapolar");
  const auto u = disjoint_union(grid(3, 3), grid(3, 3));
  replays(u, check_strong_parapolar_diam2(u).report, "disconnected");
  p.from = "Q4";
  const auto gq4 = build("imbrex", p);
  replays(gq4, check_strong_parapolar_diam2(gq4).report, "imbrex(Q4,2) parapolar");
  // Path of three lines: diameter 3.
  const auto path = build_geometry({{0, 1, 2}, {2, 3, 4}, {4, 5, 6}}, 7);
  replays(path, check_strong_parapolar_diam2(path).report, "path");

  t.expect(!replay_witness(w, check_polar_space(w)), "passing report replayed");
  return t;
}

inline std::string summary(const Tally& t) {
  std::ostringstream os;
  os << t.geometries << " inputs, " << t.checks << " checks, " << t.failures.size() << " failures";
  for (std::size_t i = 0; i < t.failures.size() && i < 5; ++i) os << "\n  " << t.failures[i];
  return os.str();
}

}  // namespace imbrex::properties

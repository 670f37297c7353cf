#include <map>

#include "catalog_internal.hpp"
#include "imbrex/catalog.hpp"

namespace imbrex {

namespace {

Vec tensor(const FiniteField& f, const Vec& a, const Vec& b) {
  Vec out;
  out.reserve(a.size() * b.size());
  for (Elem x : a)
    for (Elem y : b) out.push_back(f.mul(x, y));
  return out;
}

std::vector<Point> indices_of(const ProjectiveSpace& s, const ProjSubspace& sub) {
  std::vector<Point> out;
  for (const auto& v : s.points_of(sub)) out.push_back(static_cast<Point>(s.point_index(v)));
  return out;
}

EmbeddedMMSet segre_embedding(int p, int r, int q) {
  auto f = FiniteField::of_order(q);
  ProjectiveSpace a(f, p), b(f, r);
  EmbeddedMMSet e;
  e.name = "segre(" + std::to_string(p) + "," + std::to_string(r) + "," + std::to_string(q) + ")";
  e.field = f;
  e.ambient_dim = (p + 1) * (r + 1) - 1;
  e.d = 2;
  e.r = 2;
  const auto na = a.point_count(), nb = b.point_count();
  for (std::uint64_t i = 0; i < na; ++i)
    for (std::uint64_t j = 0; j < nb; ++j) e.points.push_back(tensor(*f, a.point_vector(i), b.point_vector(j)));
  const auto la = a.enumerate(1), lb = b.enumerate(1);
  for (const auto& l : la) {
    const auto lp = indices_of(a, l);
    for (const auto& m : lb) {
      const auto mp = indices_of(b, m);
      std::vector<Point> member;
      for (Point x : lp)
        for (Point y : mp) member.push_back(static_cast<Point>(x * nb + y));
      e.xi.push_back(std::move(member));
    }
  }
  return e;
}

EmbeddedMMSet plucker_embedding(int n, int q) {
  auto f = FiniteField::of_order(q);
  ProjectiveSpace pg(f, n);
  EmbeddedMMSet e;
  e.name = "plucker(" + std::to_string(n) + "," + std::to_string(q) + ")";
  e.field = f;
  e.ambient_dim = (n + 1) * n / 2 - 1;
  e.d = 4;
  e.r = 3;
  const auto lines = pg.enumerate(1);
  std::map<ProjSubspace, Point> idx;
  for (const auto& l : lines) {
    const auto& u = l.basis[0];
    const auto& v = l.basis[1];
    Vec c;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) c.push_back(f->sub(f->mul(u[i], v[j]), f->mul(u[j], v[i])));
    idx[l] = static_cast<Point>(e.points.size());
    e.points.push_back(ProjectiveSpace(f, e.ambient_dim).normalized(c));
  }
  for (const auto& solid : pg.enumerate(3)) {
    std::vector<Point> member;
    for (const auto& l : lines)
      if (pg.contains(solid, l)) member.push_back(idx.at(l));
    e.xi.push_back(std::move(member));
  }
  return e;
}

// Even subsets of {0..4} as bitmasks, in increasing order.
std::vector<unsigned> even_subsets() {
  std::vector<unsigned> out;
  for (unsigned s = 0; s < 32; ++s)
    if (__builtin_popcount(s) % 2 == 0) out.push_back(s);
  return out;
}

// Pure spinor of a generator: the even element of the exterior algebra of
// E = span(e0..e4) killed by every vector of the generator, acting by
// wedge with its E part and contraction with its F part.
Vec pure_spinor(const ProjectiveSpace& pg16, const ProjSubspace& g) {
  const auto& f = pg16.field();
  static const auto even = even_subsets();
  std::vector<int> pos(32, -1);
  for (std::size_t i = 0; i < even.size(); ++i) pos[even[i]] = static_cast<int>(i);
  auto sign = [&](unsigned s, int i) {
    return __builtin_popcount(s & ((1u << i) - 1)) % 2 ? f.neg(1) : Elem{1};
  };
  std::vector<Vec> rows;
  for (const auto& v : g.basis) {
    // One equation per odd subset T: coefficient of e_T in v.s.
    std::map<unsigned, Vec> eq;
    for (std::size_t c = 0; c < even.size(); ++c) {
      const unsigned s = even[c];
      for (int i = 0; i < 5; ++i) {
        if (v[i] && !(s >> i & 1)) {
          auto& row = eq.try_emplace(s | 1u << i, Vec(16, 0)).first->second;
          row[c] = f.add(row[c], f.mul(v[i], sign(s, i)));
        }
        if (v[i + 5] && (s >> i & 1)) {
          auto& row = eq.try_emplace(s & ~(1u << i), Vec(16, 0)).first->second;
          row[c] = f.add(row[c], f.mul(v[i + 5], sign(s, i)));
        }
      }
    }
    for (auto& [t, row] : eq) rows.push_back(std::move(row));
  }
  const auto null = pg16.annihilator(pg16.span(std::move(rows)));
  if (null.size() != 1) throw Error("spinor system does not have a one-dimensional solution");
  return pg16.normalized(null[0]);
}

EmbeddedMMSet spinor_embedding() {
  const auto& h = detail::halfspin_data();
  ProjectiveSpace pg16(h.field, 15), pg10(h.field, 9);
  EmbeddedMMSet e;
  e.name = "spinor_d5(2)";
  e.field = h.field;
  e.ambient_dim = 15;
  e.d = 6;
  e.r = 4;
  std::map<std::uint64_t, std::vector<Point>> through;
  for (std::size_t g = 0; g < h.generators.size(); ++g) {
    e.points.push_back(pure_spinor(pg16, h.generators[g]));
    for (const auto& v : pg10.points_of(h.generators[g])) through[pg10.point_index(v)].push_back(static_cast<Point>(g));
  }
  for (auto& [pt, members] : through) e.xi.push_back(std::move(members));
  return e;
}

}  // namespace

EmbeddedMMSet build_embedded(const std::string& name, const Params& p) {
  auto req = [&](const std::optional<int>& v, const char* key) {
    if (!v) throw Error("embedded " + name + " needs --" + key);
    return *v;
  };
  if (name == "segre") {
    const int a = req(p.p, "p"), b = req(p.r, "r"), q = req(p.q, "q");
    if (a < 1 || b < 1 || a > 4 || b > 4 || q < 2 || q > 4) throw Error("segre: parameters out of range");
    return segre_embedding(a, b, q);
  }
  if (name == "plucker" || name == "grassmann") {
    const int n = req(p.n, "n"), q = req(p.q, "q");
    if (n < 3 || n > 6 || q < 2 || q > 4 || (n > 4 && q > 2)) throw Error("plucker: parameters out of range");
    return plucker_embedding(n, q);
  }
  if (name == "spinor" || name == "halfspin_d5") {
    if (p.q && *p.q != 2) throw Error("spinor embedding is only built for q = 2");
    return spinor_embedding();
  }
  throw Error("no embedding for '" + name + "'; supported: segre, plucker, spinor");
}

}  // namespace imbrex

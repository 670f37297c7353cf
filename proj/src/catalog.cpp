#include "imbrex/catalog.hpp"
#include "catalog_internal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace imbrex {

namespace {

std::vector<Vec> square(int n) { return std::vector<Vec>(n, Vec(n, 0)); }

[[noreturn]] void unsupported(const std::string& what) {
  std::ostringstream os;
  os << what << "; supported entries:";
  for (const auto& e : supported_entries()) os << "\n  " << e;
  throw Error(os.str());
}

int need(const std::optional<int>& v, const char* key, const std::string& name) {
  if (!v) unsupported(name + " needs --" + key);
  return *v;
}

void check_q(int q, std::initializer_list<int> allowed, const std::string& name) {
  if (std::find(allowed.begin(), allowed.end(), q) == allowed.end())
    unsupported(name + ": field order " + std::to_string(q) + " out of range");
}

// Points and lines of the polar space of a form, indexed by enumeration order.
IncidenceGeometry polar_geometry(const SesquilinearForm& form, int n, std::string name) {
  ProjectiveSpace pg(form.field_ptr(), n);
  const auto pts = isotropic_subspaces(form, n, 0);
  std::unordered_map<std::uint64_t, Point> idx;
  for (std::size_t i = 0; i < pts.size(); ++i) idx[pg.point_index(pts[i].basis[0])] = static_cast<Point>(i);
  std::vector<std::vector<Point>> lines;
  for (const auto& l : isotropic_subspaces(form, n, 1)) {
    std::vector<Point> line;
    for (const auto& v : pg.points_of(l)) line.push_back(idx.at(pg.point_index(v)));
    lines.push_back(std::move(line));
  }
  return build_geometry(std::move(lines), pts.size(), std::move(name));
}

// Smallest c with t^2 + t + c irreducible over the field.
Elem elliptic_constant(const FiniteField& f) {
  for (unsigned c = 1; c < f.order(); ++c) {
    bool root = false;
    for (unsigned t = 0; t < f.order() && !root; ++t)
      root = f.add(f.add(f.mul(t, t), t), c) == 0;
    if (!root) return static_cast<Elem>(c);
  }
  throw Error("no irreducible quadratic found");
}

IncidenceGeometry grassmann(int n, int q) {
  auto f = FiniteField::of_order(q);
  ProjectiveSpace pg(f, n);
  const auto lines = pg.enumerate(1);
  std::unordered_map<ProjSubspace, Point, ProjSubspaceHash> idx;
  for (std::size_t i = 0; i < lines.size(); ++i) idx[lines[i]] = static_cast<Point>(i);
  std::vector<std::vector<Point>> pencils;
  for (const auto& plane : pg.enumerate(2)) {
    const auto pts = pg.points_of(plane);
    for (const auto& p : pts) {
      std::set<Point> pencil;
      for (const auto& r : pts)
        if (r != p) pencil.insert(idx.at(pg.span({p, r})));
      pencils.emplace_back(pencil.begin(), pencil.end());
    }
  }
  return build_geometry(std::move(pencils), lines.size(), "grassmann(" + std::to_string(n) + "," + std::to_string(q) + ")");
}

IncidenceGeometry segre(int p, int r, int q) {
  auto f = FiniteField::of_order(q);
  ProjectiveSpace a(f, p), b(f, r);
  const auto na = a.point_count(), nb = b.point_count();
  std::vector<std::vector<Point>> lines;
  auto pts_of = [](const ProjectiveSpace& s, const ProjSubspace& l) {
    std::vector<Point> out;
    for (const auto& v : s.points_of(l)) out.push_back(static_cast<Point>(s.point_index(v)));
    return out;
  };
  for (const auto& m : b.enumerate(1)) {
    const auto mp = pts_of(b, m);
    for (std::uint64_t x = 0; x < na; ++x) {
      std::vector<Point> line;
      for (Point y : mp) line.push_back(static_cast<Point>(x * nb + y));
      lines.push_back(std::move(line));
    }
  }
  for (const auto& l : a.enumerate(1)) {
    const auto lp = pts_of(a, l);
    for (std::uint64_t y = 0; y < nb; ++y) {
      std::vector<Point> line;
      for (Point x : lp) line.push_back(static_cast<Point>(x * nb + y));
      lines.push_back(std::move(line));
    }
  }
  return build_geometry(std::move(lines), na * nb,
                        "segre(" + std::to_string(p) + "," + std::to_string(r) + "," + std::to_string(q) + ")");
}

IncidenceGeometry halfspin_d5() {
  const auto& h = detail::halfspin_data();
  ProjectiveSpace pg(h.field, 9);
  ProjectiveSpace coeff(h.field, 4);
  const auto sub = coeff.enumerate(2);
  std::unordered_map<ProjSubspace, std::vector<Point>, ProjSubspaceHash> by_plane;
  for (std::size_t g = 0; g < h.generators.size(); ++g) {
    const auto& basis = h.generators[g].basis;
    for (const auto& s : sub) {
      std::vector<Vec> rows;
      for (const auto& c : s.basis) rows.push_back(pg.combine(basis, c));
      by_plane[pg.span(std::move(rows))].push_back(static_cast<Point>(g));
    }
  }
  std::vector<std::vector<Point>> lines;
  for (auto& [plane, members] : by_plane)
    if (members.size() >= 2) lines.push_back(std::move(members));
  return build_geometry(std::move(lines), h.generators.size(), "halfspin_d5(2)");
}

std::uint64_t gaussian(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= q;
    for (int j = 0; j <= i; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

}  // namespace

const detail::HalfSpin& detail::halfspin_data() {
  static const HalfSpin data = [] {
    HalfSpin h;
    h.field = FiniteField::of_order(2);
    auto c = square(10);
    for (int i = 0; i < 5; ++i) c[i][i + 5] = 1;
    const auto form = SesquilinearForm::quadratic(h.field, c);
    ProjectiveSpace pg(h.field, 9);
    std::vector<Vec> g0;
    for (int i = 5; i < 10; ++i) {
      Vec v(10, 0);
      v[i] = 1;
      g0.push_back(v);
    }
    const auto ref = pg.span(g0);
    for (auto& g : isotropic_subspaces(form, 9, 4))
      if ((5 - pg.meet(g, ref).basis.size()) % 2 == 0) h.generators.push_back(std::move(g));
    return h;
  }();
  return data;
}

std::vector<std::string> supported_entries() {
  return {"grid --m M --n N            (2 <= M,N <= 64)",
          "W --q Q                     (Q in 2,3,4)",
          "Q4 --q Q                    (Q in 2,3,4)",
          "Qminus5 --q Q               (Q in 2,3,4)",
          "H3 --q Q2                   (Q2 in 4,9)",
          "H4 --q Q2                   (Q2 in 4,9)",
          "grassmann --n N --q Q       (3 <= N <= 6, Q in 2,3,4)",
          "segre --p P --r R --q Q     (1 <= P,R <= 4, Q in 2,3,4)",
          "halfspin_d5 --q 2",
          "imbrex --from Q4|H4|Qminus5|H3 --q Q"};
}

std::pair<SesquilinearForm, int> classical_form(const std::string& name, unsigned q) {
  if (name == "W") {
    check_q(q, {2, 3, 4}, name);
    auto f = FiniteField::of_order(q);
    auto g = square(4);
    g[0][1] = 1, g[1][0] = f->neg(1), g[2][3] = 1, g[3][2] = f->neg(1);
    return {SesquilinearForm::alternating(f, g), 3};
  }
  if (name == "Q4") {
    check_q(q, {2, 3, 4}, name);
    auto f = FiniteField::of_order(q);
    auto c = square(5);
    c[0][4] = 1, c[1][3] = 1, c[2][2] = 1;
    return {SesquilinearForm::quadratic(f, c), 4};
  }
  if (name == "Qminus5") {
    check_q(q, {2, 3, 4}, name);
    auto f = FiniteField::of_order(q);
    auto c = square(6);
    c[0][5] = 1, c[1][4] = 1, c[2][2] = 1, c[2][3] = 1, c[3][3] = elliptic_constant(*f);
    return {SesquilinearForm::quadratic(f, c), 5};
  }
  if (name == "H3" || name == "H4") {
    check_q(q, {4, 9}, name);
    auto f = FiniteField::of_order(q);
    const int n = name == "H3" ? 3 : 4;
    auto g = square(n + 1);
    for (int i = 0; i <= n; ++i) g[i][n - i] = 1;
    return {SesquilinearForm::hermitian(f, g), n};
  }
  unsupported("unknown quadrangle '" + name + "'");
}

std::string entry_label(const std::string& name, const Params& p) {
  auto s = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("?"); };
  if (name == "grid") return "grid(" + s(p.m) + "," + s(p.n) + ")";
  if (name == "grassmann") return "grassmann(" + s(p.n) + "," + s(p.q) + ")";
  if (name == "segre") return "segre(" + s(p.p) + "," + s(p.r) + "," + s(p.q) + ")";
  if (name == "imbrex") return "imbrex(" + p.from + "," + s(p.q) + ")";
  return name + "(" + s(p.q) + ")";
}

IncidenceGeometry build(const std::string& name, const Params& p) {
  const auto label = entry_label(name, p);
  if (name == "grid") {
    const int m = need(p.m, "m", name), n = need(p.n, "n", name);
    if (m < 2 || n < 2 || m > 64 || n > 64) unsupported("grid: sides out of range");
    std::vector<std::vector<Point>> lines;
    for (int i = 0; i < m; ++i) {
      std::vector<Point> row;
      for (int j = 0; j < n; ++j) row.push_back(static_cast<Point>(i * n + j));
      lines.push_back(row);
    }
    for (int j = 0; j < n; ++j) {
      std::vector<Point> col;
      for (int i = 0; i < m; ++i) col.push_back(static_cast<Point>(i * n + j));
      lines.push_back(col);
    }
    return build_geometry(std::move(lines), m * n, label);
  }
  if (name == "W" || name == "Q4" || name == "Qminus5" || name == "H3" || name == "H4") {
    auto [form, n] = classical_form(name, need(p.q, "q", name));
    return polar_geometry(form, n, label);
  }
  if (name == "grassmann") {
    const int n = need(p.n, "n", name), q = need(p.q, "q", name);
    if (n < 3 || n > 6) unsupported("grassmann: n out of range");
    check_q(q, {2, 3, 4}, name);
    if (n > 4 && q > 2) unsupported("grassmann: n > 4 only for q = 2");
    return grassmann(n, q);
  }
  if (name == "segre") {
    const int a = need(p.p, "p", name), b = need(p.r, "r", name), q = need(p.q, "q", name);
    if (a < 1 || b < 1 || a > 4 || b > 4) unsupported("segre: dimensions out of range");
    check_q(q, {2, 3, 4}, name);
    return segre(a, b, q);
  }
  if (name == "halfspin_d5") {
    if (need(p.q, "q", name) != 2) unsupported("halfspin_d5 is only built for q = 2");
    return halfspin_d5();
  }
  if (name == "imbrex") {
    if (p.from.empty()) unsupported("imbrex needs --from");
    auto g = imbrex_from_embedded_quadrangle(build_embedded_quadrangle(p.from, need(p.q, "q", name)));
    g.set_name(label);
    return g;
  }
  unsupported("unknown catalog entry '" + name + "'");
}

IncidenceGeometry EmbeddedQuadrangle::geometry() const { return build_geometry(line_points, points.size(), name); }

EmbeddedQuadrangle build_embedded_quadrangle(const std::string& name, unsigned q) {
  if (name != "Q4" && name != "H4" && name != "Qminus5" && name != "H3")
    unsupported("no embedded quadrangle '" + name + "'");
  auto [form, n] = classical_form(name, q);
  EmbeddedQuadrangle e;
  e.name = name + "(" + std::to_string(q) + ")";
  e.field = form.field_ptr();
  e.ambient = n;
  ProjectiveSpace pg(e.field, n);
  std::unordered_map<std::uint64_t, Point> idx;
  for (const auto& s : isotropic_subspaces(form, n, 0)) {
    idx[pg.point_index(s.basis[0])] = static_cast<Point>(e.points.size());
    e.points.push_back(s.basis[0]);
  }
  for (auto& l : isotropic_subspaces(form, n, 1)) {
    std::vector<Point> pts;
    for (const auto& v : pg.points_of(l)) pts.push_back(idx.at(pg.point_index(v)));
    std::sort(pts.begin(), pts.end());
    e.line_points.push_back(std::move(pts));
    e.lines.push_back(std::move(l));
  }
  return e;
}

IncidenceGeometry imbrex_from_embedded_quadrangle(const EmbeddedQuadrangle& omega) {
  ProjectiveSpace pg(omega.field, omega.ambient);
  std::vector<std::vector<Point>> through(omega.points.size());
  for (std::size_t l = 0; l < omega.line_points.size(); ++l)
    for (Point p : omega.line_points[l]) through[p].push_back(static_cast<Point>(l));
  std::set<std::vector<Point>> pencils;
  for (const auto& ls : through) {
    std::map<ProjSubspace, std::set<Point>> planes;
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j) {
        const auto plane = pg.join(omega.lines[ls[i]], omega.lines[ls[j]]);
        if (plane.dim() != 2) continue;
        auto& members = planes[plane];
        if (!members.empty()) continue;
        for (Point l : ls)
          if (pg.contains(plane, omega.lines[l])) members.insert(l);
      }
    for (auto& [plane, members] : planes) pencils.emplace(members.begin(), members.end());
  }
  if (pencils.size() < 2) throw Error("construction degenerate");
  return build_geometry({pencils.begin(), pencils.end()}, omega.lines.size(), "imbrex(" + omega.name + ")");
}

IncidenceGeometry imbrex_from_planes(const EmbeddedQuadrangle& omega) {
  ProjectiveSpace pg(omega.field, omega.ambient);
  std::vector<std::vector<Point>> lines;
  for (const auto& plane : pg.enumerate(2)) {
    std::vector<Point> inside;
    for (std::size_t l = 0; l < omega.lines.size(); ++l)
      if (pg.contains(plane, omega.lines[l])) inside.push_back(static_cast<Point>(l));
    if (inside.size() >= 2) lines.push_back(std::move(inside));
  }
  if (lines.size() < 2) throw Error("construction degenerate");
  return build_geometry(std::move(lines), omega.lines.size(), "imbrex(" + omega.name + ")");
}

std::optional<ExpectedStats> expected_statistics(const std::string& name, const Params& p) {
  auto gq = [](std::size_t s, std::size_t t) {
    ExpectedStats e;
    e.points = (s + 1) * (s * t + 1);
    e.lines = (t + 1) * (s * t + 1);
    return e;
  };
  if (!p.q && name != "grid") return std::nullopt;
  const std::size_t q = p.q ? *p.q : 0;
  if (name == "grid" && p.m && p.n) {
    ExpectedStats e;
    e.points = *p.m * *p.n;
    e.lines = *p.m + *p.n;
    return e;
  }
  if (name == "W" || name == "Q4") return gq(q, q);
  if (name == "Qminus5") return gq(q, q * q);
  if (name == "H3" || name == "H4") {
    std::size_t r = 1;
    while (r * r < q) ++r;
    return name == "H3" ? gq(q, r) : gq(q, q * r);
  }
  if (name == "grassmann" && p.n) {
    const int n = *p.n;
    ExpectedStats e;
    e.points = gaussian(n + 1, 2, q);
    e.lines = gaussian(n + 1, 3, q) * gaussian(3, 1, q);
    e.symps = gaussian(n + 1, 4, q);
    e.symp_size = gaussian(4, 2, q);
    e.blocks = gaussian(n + 1, 1, q) + gaussian(n + 1, 3, q);
    return e;
  }
  if (name == "segre" && p.p && p.r) {
    const auto a = gaussian(*p.p + 1, 1, q), b = gaussian(*p.r + 1, 1, q);
    const auto la = gaussian(*p.p + 1, 2, q), lb = gaussian(*p.r + 1, 2, q);
    ExpectedStats e;
    e.points = a * b;
    e.lines = a * lb + la * b;
    e.symps = la * lb;
    e.symp_size = (q + 1) * (q + 1);
    e.blocks = a + b;
    return e;
  }
  if (name == "halfspin_d5" && q == 2) {
    ExpectedStats e;
    e.points = 2295;
    e.lines = 118575;
    e.symps = 527;
    e.symp_size = 135;
    return e;
  }
  if (name == "imbrex" && p.from == "H4" && q == 4) {
    // Points: lines of H(4,4).  Lines: 12 secant pencils per point of H(4,4).
    // Symps: nondegenerate hyperplanes.  Blocks: points of H(4,4).
    ExpectedStats e;
    e.points = 297;
    e.lines = 165 * 12;
    e.symps = 341 - 165;
    e.symp_size = 27;
    e.blocks = 165;
    return e;
  }
  return std::nullopt;
}

}  // namespace imbrex

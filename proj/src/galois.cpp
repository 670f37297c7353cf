#include "imbrex/galois.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <boost/functional/hash.hpp>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace imbrex {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<unsigned> to_digits(unsigned a, unsigned p, unsigned k) {
  std::vector<unsigned> d(k);
  for (unsigned i = 0; i < k; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

unsigned from_digits(const std::vector<unsigned>& d, unsigned p) {
  unsigned a = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
  return a;
}

// Multiply the residue `v` (k digits) by x modulo the monic polynomial
// x^k + sum tail_i x^i.
std::vector<unsigned> times_x(const std::vector<unsigned>& v, const std::vector<unsigned>& tail,
                              unsigned p) {
  const std::size_t k = v.size();
  std::vector<unsigned> out(k, 0);
  const unsigned carry = v[k - 1];
  for (std::size_t i = k - 1; i > 0; --i) out[i] = v[i - 1];
  for (std::size_t i = 0; i < k; ++i) out[i] = (out[i] + (p - (carry * tail[i]) % p)) % p;
  return out;
}

}  // namespace

FiniteField::FiniteField(unsigned p, unsigned k) : p_(p), k_(k), q_(1) {
  if (!is_prime(p)) throw Error("field characteristic must be prime, got " + std::to_string(p));
  if (k == 0) throw Error("field degree must be positive");
  for (unsigned i = 0; i < k; ++i) {
    q_ *= p;
    if (q_ > 256) throw Error("field order exceeds 256");
  }

  add_.resize(q_ * q_);
  neg_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    auto da = to_digits(a, p, k);
    std::vector<unsigned> dn(k);
    for (unsigned i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = static_cast<Elem>(from_digits(dn, p));
    for (unsigned b = 0; b < q_; ++b) {
      auto db = to_digits(b, p, k);
      std::vector<unsigned> ds(k);
      for (unsigned i = 0; i < k; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q_ + b] = static_cast<Elem>(from_digits(ds, p));
    }
  }

  // Powers of a generator of the multiplicative group.
  std::vector<unsigned> powers;
  if (k == 1) {
    modulus_ = {0, 1};
    for (unsigned g = 1; g < p && powers.empty(); ++g) {
      std::vector<unsigned> pw{1};
      unsigned cur = g % p;
      while (cur != 1) {
        pw.push_back(cur);
        cur = (cur * g) % p;
      }
      if (pw.size() == p - 1) powers = pw;
    }
  } else {
    for (unsigned code = 0; code < q_ && powers.empty(); ++code) {
      auto tail = to_digits(code, p, k);
      if (tail[0] == 0) continue;  // divisible by x
      std::vector<unsigned> pw{1};
      std::vector<unsigned> cur(k, 0);
      cur[1 % k] = 1;
      while (from_digits(cur, p) != 1 && pw.size() < q_) {
        pw.push_back(from_digits(cur, p));
        cur = times_x(cur, tail, p);
      }
      if (pw.size() == q_ - 1 && from_digits(cur, p) == 1) {
        powers = pw;
        modulus_ = tail;
        modulus_.push_back(1);
      }
    }
  }
  if (powers.size() != q_ - 1) throw Error("no primitive polynomial found");

  exp_.resize(q_ - 1);
  std::vector<unsigned> log(q_, 0);
  for (unsigned i = 0; i + 1 < q_; ++i) {
    exp_[i] = static_cast<Elem>(powers[i]);
    log[powers[i]] = i;
  }
  mul_.assign(q_ * q_, 0);
  inv_.assign(q_, 0);
  for (unsigned a = 1; a < q_; ++a) {
    for (unsigned b = 1; b < q_; ++b) mul_[a * q_ + b] = exp_[(log[a] + log[b]) % (q_ - 1)];
    inv_[a] = exp_[(q_ - 1 - log[a]) % (q_ - 1)];
  }
  frob_.resize(q_);
  conj_.resize(q_);
  unsigned half = 1;
  for (unsigned i = 0; i < k / 2; ++i) half *= p;
  for (unsigned a = 0; a < q_; ++a) {
    frob_[a] = pow(static_cast<Elem>(a), p);
    conj_[a] = pow(static_cast<Elem>(a), half);
  }
}

std::shared_ptr<const FiniteField> FiniteField::of_order(unsigned q) {
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(q); it != cache.end()) return it->second;
  for (unsigned p = 2; p <= q; ++p) {
    if (!is_prime(p) || q % p != 0) continue;
    unsigned k = 0;
    unsigned r = q;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) break;
    auto f = std::make_shared<const FiniteField>(p, k);
    cache.emplace(q, f);
    return f;
  }
  throw Error("not a prime power: " + std::to_string(q));
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw Error("zero has no inverse");
  return inv_[a];
}

Elem FiniteField::pow(Elem a, unsigned e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  Elem r = 1;
  Elem b = a;
  while (e) {
    if (e & 1u) r = mul(r, b);
    b = mul(b, b);
    e >>= 1u;
  }
  return r;
}

Elem FiniteField::conj(Elem a) const {
  if (!has_involution()) throw Error("field of odd degree has no involutory automorphism");
  return conj_[a];
}

Elem field_op(const FiniteField& f, Elem a, Elem b, FieldOp op) {
  switch (op) {
    case FieldOp::add:
      return f.add(a, b);
    case FieldOp::mul:
      return f.mul(a, b);
    case FieldOp::inv:
      return f.inv(a);
    case FieldOp::frob:
      return f.frob(a);
  }
  throw Error("unknown field operation");
}

std::size_t ProjSubspaceHash::operator()(const ProjSubspace& s) const noexcept {
  std::size_t h = static_cast<std::size_t>(s.ambient);
  for (const auto& row : s.basis) boost::hash_range(h, row.begin(), row.end());
  return h;
}

void row_reduce(const FiniteField& f, std::vector<Vec>& rows) {
  if (rows.empty()) return;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const Elem s = f.inv(rows[rank][c]);
    if (s != 1)
      for (auto& x : rows[rank]) x = f.mul(x, s);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Elem m = f.neg(rows[r][c]);
      for (std::size_t j = c; j < cols; ++j) rows[r][j] = f.add(rows[r][j], f.mul(m, rows[rank][j]));
    }
    ++rank;
  }
  rows.resize(rank);
}

ProjectiveSpace::ProjectiveSpace(FieldPtr field, int n) : field_(std::move(field)), n_(n) {
  if (n_ < 0) throw Error("projective dimension must be non-negative");
}

std::uint64_t ProjectiveSpace::point_count() const {
  std::uint64_t total = 0;
  std::uint64_t pw = 1;
  for (int i = 0; i <= n_; ++i) {
    total += pw;
    pw *= field_->order();
  }
  return total;
}

Vec ProjectiveSpace::normalized(Vec v) const {
  auto it = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
  if (it == v.end()) throw Error("zero vector is not a projective point");
  if (*it != 1) {
    const Elem s = field_->inv(*it);
    for (auto& x : v) x = field_->mul(x, s);
  }
  return v;
}

std::uint64_t ProjectiveSpace::point_index(const Vec& raw) const {
  if (static_cast<int>(raw.size()) != n_ + 1) throw Error("vector length does not match ambient space");
  const Vec v = normalized(raw);
  const std::uint64_t q = field_->order();
  std::size_t lead = 0;
  while (v[lead] == 0) ++lead;
  std::uint64_t offset = 0;
  std::uint64_t block = 1;
  for (int i = 0; i < n_; ++i) block *= q;  // q^n points with lead at 0
  for (std::size_t i = 0; i < lead; ++i) {
    offset += block;
    block /= q;
  }
  std::uint64_t tail = 0;
  for (std::size_t t = lead + 1; t < v.size(); ++t) tail = tail * q + v[t];
  return offset + tail;
}

Vec ProjectiveSpace::point_vector(std::uint64_t index) const {
  const std::uint64_t q = field_->order();
  std::uint64_t block = 1;
  for (int i = 0; i < n_; ++i) block *= q;
  Vec v(n_ + 1, 0);
  std::size_t lead = 0;
  while (index >= block) {
    if (block == 1 && lead == static_cast<std::size_t>(n_)) throw Error("point index out of range");
    index -= block;
    block /= q;
    ++lead;
  }
  v[lead] = 1;
  for (std::size_t t = v.size(); t-- > lead + 1;) {
    v[t] = static_cast<Elem>(index % q);
    index /= q;
  }
  return v;
}

ProjSubspace ProjectiveSpace::span(std::vector<Vec> rows) const {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n_ + 1) throw Error("vector length does not match ambient space");
  row_reduce(*field_, rows);
  return ProjSubspace{n_, std::move(rows)};
}

ProjSubspace ProjectiveSpace::join(const ProjSubspace& a, const ProjSubspace& b) const {
  std::vector<Vec> rows = a.basis;
  rows.insert(rows.end(), b.basis.begin(), b.basis.end());
  return span(std::move(rows));
}

std::vector<Vec> ProjectiveSpace::annihilator(const ProjSubspace& s) const {
  const std::size_t cols = static_cast<std::size_t>(n_) + 1;
  std::vector<std::size_t> pivots;
  for (const auto& row : s.basis) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    pivots.push_back(c);
  }
  std::vector<Vec> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    Vec x(cols, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = field_->neg(s.basis[i][f]);
    out.push_back(std::move(x));
  }
  return out;
}

ProjSubspace ProjectiveSpace::meet(const ProjSubspace& a, const ProjSubspace& b) const {
  auto rows = annihilator(a);
  auto rb = annihilator(b);
  rows.insert(rows.end(), rb.begin(), rb.end());
  const ProjSubspace dual = span(std::move(rows));
  return span(annihilator(dual));
}

bool ProjectiveSpace::contains(const ProjSubspace& s, const Vec& v) const {
  Vec r = v;
  for (const auto& row : s.basis) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    if (r[c] == 0) continue;
    const Elem m = field_->neg(r[c]);
    for (std::size_t j = c; j < r.size(); ++j) r[j] = field_->add(r[j], field_->mul(m, row[j]));
  }
  return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
}

bool ProjectiveSpace::contains(const ProjSubspace& outer, const ProjSubspace& inner) const {
  return std::all_of(inner.basis.begin(), inner.basis.end(),
                     [&](const Vec& v) { return contains(outer, v); });
}

Vec ProjectiveSpace::combine(const std::vector<Vec>& rows, const Vec& coeffs) const {
  Vec out(static_cast<std::size_t>(n_) + 1, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = field_->add(out[j], field_->mul(coeffs[i], rows[i][j]));
  }
  return out;
}

std::vector<Vec> ProjectiveSpace::points_of(const ProjSubspace& s) const {
  std::vector<Vec> out;
  const std::size_t k = s.basis.size();
  if (k == 0) return out;
  const FieldPtr f = field_;
  ProjectiveSpace coeff_space(f, static_cast<int>(k) - 1);
  const std::uint64_t count = coeff_space.point_count();
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(combine(s.basis, coeff_space.point_vector(i)));
  return out;
}

Vec ProjectiveSpace::coordinates_in(const ProjSubspace& s, const Vec& v) const {
  Vec c(s.basis.size(), 0);
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    std::size_t p = 0;
    while (s.basis[i][p] == 0) ++p;
    c[i] = v[p];
  }
  if (combine(s.basis, c) != v) throw Error("vector does not lie in the subspace");
  return c;
}

std::vector<ProjSubspace> ProjectiveSpace::enumerate(int dim) const {
  if (dim < 0 || dim > n_) throw Error("subspace dimension out of range");
  const std::size_t cols = static_cast<std::size_t>(n_) + 1;
  const std::size_t k = static_cast<std::size_t>(dim) + 1;
  const unsigned q = field_->order();
  std::vector<ProjSubspace> out;

  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // Free slots: (row, column) right of the row's pivot, not a pivot column.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = piv[i] + 1; c < cols; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) slots.emplace_back(i, c);
    std::vector<unsigned> digits(slots.size(), 0);
    while (true) {
      std::vector<Vec> rows(k, Vec(cols, 0));
      for (std::size_t i = 0; i < k; ++i) rows[i][piv[i]] = 1;
      for (std::size_t s = 0; s < slots.size(); ++s)
        rows[slots[s].first][slots[s].second] = static_cast<Elem>(digits[s]);
      out.push_back(ProjSubspace{n_, std::move(rows)});
      std::size_t s = 0;
      while (s < digits.size() && ++digits[s] == q) digits[s++] = 0;
      if (s == digits.size()) break;
    }
    // next combination of pivot columns
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == cols - k + (i - 1)) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjSubspace> pg_enumerate(int n, const FieldPtr& field, int dim) {
  return ProjectiveSpace(field, n).enumerate(dim);
}

SesquilinearForm::SesquilinearForm(FormKind kind, FieldPtr f, std::vector<Vec> m)
    : kind_(kind), field_(std::move(f)), matrix_(std::move(m)) {
  const std::size_t n = matrix_.size();
  if (n == 0) throw Error("empty form matrix");
  for (const auto& row : matrix_)
    if (row.size() != n) throw Error("form matrix must be square");
}

SesquilinearForm SesquilinearForm::quadratic(FieldPtr f, std::vector<Vec> coeffs) {
  SesquilinearForm form(FormKind::quadratic, std::move(f), std::move(coeffs));
  auto& m = form.matrix_;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      m[j][i] = form.field_->add(m[j][i], m[i][j]);
      m[i][j] = 0;
    }
  return form;
}

SesquilinearForm SesquilinearForm::hermitian(FieldPtr f, std::vector<Vec> gram) {
  SesquilinearForm form(FormKind::hermitian, std::move(f), std::move(gram));
  const auto& F = *form.field_;
  if (!F.has_involution()) throw Error("hermitian forms need a field of even degree");
  const auto& m = form.matrix_;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j][i] != F.conj(m[i][j])) throw Error("gram matrix is not hermitian");
  return form;
}

SesquilinearForm SesquilinearForm::alternating(FieldPtr f, std::vector<Vec> gram) {
  SesquilinearForm form(FormKind::alternating, std::move(f), std::move(gram));
  const auto& F = *form.field_;
  const auto& m = form.matrix_;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i][i] != 0) throw Error("alternating gram matrix needs a zero diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (m[j][i] != F.neg(m[i][j])) throw Error("gram matrix is not skew");
  }
  return form;
}

Elem SesquilinearForm::value(const Vec& x) const {
  const auto& F = *field_;
  const std::size_t n = matrix_.size();
  Elem acc = 0;
  switch (kind_) {
    case FormKind::quadratic:
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = i; j < n; ++j)
          if (matrix_[i][j] != 0 && x[j] != 0) acc = F.add(acc, F.mul(matrix_[i][j], F.mul(x[i], x[j])));
      }
      return acc;
    case FormKind::hermitian:
      return pair(x, x);
    case FormKind::alternating:
      return 0;
  }
  return 0;
}

Elem SesquilinearForm::pair(const Vec& x, const Vec& y) const {
  const auto& F = *field_;
  const std::size_t n = matrix_.size();
  Elem acc = 0;
  switch (kind_) {
    case FormKind::quadratic:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          const Elem c = matrix_[i][j];
          if (c == 0) continue;
          Elem t = i == j ? F.add(F.mul(x[i], y[i]), F.mul(x[i], y[i])) : F.add(F.mul(x[i], y[j]), F.mul(x[j], y[i]));
          acc = F.add(acc, F.mul(c, t));
        }
      return acc;
    case FormKind::hermitian:
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (matrix_[i][j] != 0 && y[j] != 0) acc = F.add(acc, F.mul(x[i], F.mul(matrix_[i][j], F.conj(y[j]))));
      }
      return acc;
    case FormKind::alternating:
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (matrix_[i][j] != 0 && y[j] != 0) acc = F.add(acc, F.mul(x[i], F.mul(matrix_[i][j], y[j])));
      }
      return acc;
  }
  return acc;
}

bool SesquilinearForm::totally_isotropic(const std::vector<Vec>& rows) const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (value(rows[i]) != 0) return false;
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (pair(rows[i], rows[j]) != 0) return false;
  }
  return true;
}

std::vector<Vec> SesquilinearForm::radical() const {
  const std::size_t n = matrix_.size();
  const ProjectiveSpace pg(field_, static_cast<int>(n) - 1);
  // v is in the radical iff pair(v, e_j) = 0 for every j; pair(., e_j) is
  // linear in v with coefficients given by column j of the polar matrix.
  std::vector<Vec> cols(n, Vec(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      Vec ei(n, 0);
      ei[i] = 1;
      cols[j][i] = pair(ei, e);
    }
  }
  return pg.annihilator(pg.span(std::move(cols)));
}

std::vector<Vec> SesquilinearForm::degenerate_witness() const {
  auto rad = radical();
  if (rad.empty()) return {};
  const ProjectiveSpace pg(field_, dim());
  std::vector<Vec> out;
  for (auto& v : pg.points_of(pg.span(rad)))
    if (is_singular(v)) out.push_back(std::move(v));
  return out;
}

DegenerateFormError::DegenerateFormError(std::vector<Vec> radical)
    : Error("degenerate form: radical contains singular vectors"), radical_(std::move(radical)) {}

std::vector<ProjSubspace> isotropic_subspaces(const SesquilinearForm& form, int n, int dim) {
  if (n != form.dim()) throw Error("form dimension does not match the ambient space");
  if (dim < 0 || dim > n) throw Error("subspace dimension out of range");
  if (auto w = form.degenerate_witness(); !w.empty()) throw DegenerateFormError(std::move(w));

  const ProjectiveSpace pg(form.field_ptr(), n);
  std::vector<Vec> pts;
  std::unordered_map<std::uint64_t, std::size_t> local;
  const std::uint64_t total = pg.point_count();
  for (std::uint64_t i = 0; i < total; ++i) {
    Vec v = pg.point_vector(i);
    if (form.is_singular(v)) {
      local.emplace(i, pts.size());
      pts.push_back(std::move(v));
    }
  }
  const std::size_t m = pts.size();
  std::vector<boost::dynamic_bitset<std::uint64_t>> perp(m, boost::dynamic_bitset<std::uint64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      if (form.pair(pts[i], pts[j]) == 0) {
        perp[i].set(j);
        perp[j].set(i);
      }

  std::vector<ProjSubspace> level;
  level.reserve(m);
  for (const auto& v : pts) level.push_back(ProjSubspace{n, {v}});

  for (int d = 0; d < dim; ++d) {
    std::unordered_set<ProjSubspace, ProjSubspaceHash> next;
    for (const auto& s : level) {
      boost::dynamic_bitset<std::uint64_t> cand(m);
      cand.set();
      for (const auto& row : s.basis) cand &= perp[local.at(pg.point_index(row))];
      for (const auto& v : pg.points_of(s)) cand.reset(local.at(pg.point_index(v)));
      for (auto c = cand.find_first(); c != cand.npos; c = cand.find_next(c)) {
        auto rows = s.basis;
        rows.push_back(pts[c]);
        auto t = pg.span(std::move(rows));
        // all points of t are now excluded from further candidates
        for (const auto& v : pg.points_of(t)) cand.reset(local.at(pg.point_index(v)));
        next.insert(std::move(t));
      }
    }
    level.assign(next.begin(), next.end());
  }
  std::sort(level.begin(), level.end());
  return level;
}

}  // namespace imbrex

#include <set>

#include "doctest.h"
#include "imbrex/galois.hpp"

using namespace imbrex;

namespace {

// Gaussian binomial [n choose k]_q, computed directly as the oracle.
std::uint64_t gauss(unsigned n, unsigned k, std::uint64_t q) {
  std::uint64_t num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (unsigned j = 0; j < n - i; ++j) a *= q;
    for (unsigned j = 0; j < i + 1; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

// GQ of order (s,t): (s+1)(st+1) points, (t+1)(st+1) lines.
std::uint64_t gq_points(std::uint64_t s, std::uint64_t t) { return (s + 1) * (s * t + 1); }
std::uint64_t gq_lines(std::uint64_t s, std::uint64_t t) { return (t + 1) * (s * t + 1); }

std::vector<Vec> zero(int n) { return std::vector<Vec>(n, Vec(n, 0)); }

}  // namespace

TEST_CASE("field arithmetic on small fields") {
  auto f2 = FiniteField::of_order(2);
  CHECK(field_op(*f2, 1, 1, FieldOp::add) == 0);

  auto f4 = FiniteField::of_order(4);
  CHECK(f4->modulus() == std::vector<unsigned>{1, 1, 1});
  CHECK(field_op(*f4, 2, 2, FieldOp::mul) == 3);  // x*x = x+1
  CHECK(f4->frob(2) == 3);
  CHECK(f4->frob(f4->frob(2)) == 2);
  CHECK_THROWS_WITH(f4->inv(0), "zero has no inverse");
  CHECK_THROWS(FiniteField::of_order(6));
}

TEST_CASE("field axioms hold exhaustively") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
    auto f = FiniteField::of_order(q);
    CAPTURE(q);
    for (unsigned a = 0; a < q; ++a) {
      if (a) CHECK(f->mul(a, f->inv(a)) == 1);
      CHECK(f->add(a, f->neg(a)) == 0);
      for (unsigned b = 0; b < q; ++b) {
        CHECK(f->mul(a, b) == f->mul(b, a));
        for (unsigned c = 0; c < q; c += 1 + q / 4) {
          CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
          CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
        }
      }
    }
    std::set<unsigned> powers;
    Elem g = f->primitive(), x = 1;
    for (unsigned i = 0; i + 1 < q; ++i, x = f->mul(x, g)) powers.insert(x);
    CHECK(powers.size() == q - 1);
    if (f->has_involution())
      for (unsigned a = 0; a < q; ++a) {
        CHECK(f->conj(f->conj(a)) == a);
        for (unsigned b = 0; b < q; ++b) CHECK(f->conj(f->mul(a, b)) == f->mul(f->conj(a), f->conj(b)));
      }
  }
}

TEST_CASE("pg_enumerate matches Gaussian binomials") {
  for (unsigned q : {2u, 3u, 4u}) {
    auto f = FiniteField::of_order(q);
    for (int n = 1; n <= (q == 2 ? 5 : 3); ++n)
      for (int d = 0; d <= n; ++d) {
        INFO("q=" << q << " n=" << n << " d=" << d);
        CHECK(pg_enumerate(n, f, d).size() == gauss(n + 1, d + 1, q));
      }
  }
  auto f2 = FiniteField::of_order(2);
  CHECK(pg_enumerate(4, f2, 0).size() == 31);
  CHECK(pg_enumerate(4, f2, 1).size() == 155);
  CHECK(pg_enumerate(1, f2, 0).size() == 3);
  CHECK_THROWS(pg_enumerate(2, f2, 3));
}

TEST_CASE("point indexing round-trips") {
  ProjectiveSpace pg(FiniteField::of_order(3), 3);
  CHECK(pg.point_count() == 40);
  for (std::uint64_t i = 0; i < pg.point_count(); ++i) CHECK(pg.point_index(pg.point_vector(i)) == i);
}

TEST_CASE("canonical form is idempotent and the dimension formula holds in PG(4,2)") {
  auto f = FiniteField::of_order(2);
  ProjectiveSpace pg(f, 4);
  std::vector<ProjSubspace> all;
  for (int d = 0; d <= 4; ++d)
    for (auto& s : pg.enumerate(d)) all.push_back(s);
  for (const auto& s : all) CHECK(pg.span(s.basis) == s);
  std::size_t bad = 0;
  for (const auto& a : all)
    for (const auto& b : all) {
      const auto j = pg.join(a, b);
      const auto m = pg.meet(a, b);
      if (a.dim() + b.dim() != j.dim() + m.dim()) ++bad;
      if (!pg.contains(j, a) || !pg.contains(a, m)) ++bad;
    }
  CHECK(bad == 0);
}

TEST_CASE("isotropic subspaces of the classical quadrangles") {
  auto f2 = FiniteField::of_order(2);
  auto f4 = FiniteField::of_order(4);

  SUBCASE("W(2)") {
    auto g = zero(4);
    g[0][1] = 1, g[1][0] = 1, g[2][3] = 1, g[3][2] = 1;
    auto w = SesquilinearForm::alternating(f2, g);
    CHECK(isotropic_subspaces(w, 3, 0).size() == 15);
    CHECK(isotropic_subspaces(w, 3, 1).size() == gq_lines(2, 2));
  }
  SUBCASE("Q-(5,2)") {
    auto c = zero(6);
    c[0][5] = 1, c[1][4] = 1, c[2][2] = 1, c[2][3] = 1, c[3][3] = 1;
    auto q = SesquilinearForm::quadratic(f2, c);
    CHECK(isotropic_subspaces(q, 5, 0).size() == gq_points(2, 4));
    CHECK(isotropic_subspaces(q, 5, 1).size() == gq_lines(2, 4));
    CHECK(isotropic_subspaces(q, 5, 2).empty());
  }
  SUBCASE("Q(4,2)") {
    auto c = zero(5);
    c[0][4] = 1, c[1][3] = 1, c[2][2] = 1;
    auto q = SesquilinearForm::quadratic(f2, c);
    CHECK(isotropic_subspaces(q, 4, 0).size() == gq_points(2, 2));
    CHECK(isotropic_subspaces(q, 4, 1).size() == gq_lines(2, 2));
  }
  SUBCASE("H(3,4) and H(4,4)") {
    auto h3 = zero(4);
    for (int i = 0; i < 4; ++i) h3[i][3 - i] = 1;
    auto h = SesquilinearForm::hermitian(f4, h3);
    CHECK(isotropic_subspaces(h, 3, 0).size() == gq_points(4, 2));
    CHECK(isotropic_subspaces(h, 3, 1).size() == gq_lines(4, 2));

    auto h4 = zero(5);
    for (int i = 0; i < 5; ++i) h4[i][4 - i] = 1;
    auto hh = SesquilinearForm::hermitian(f4, h4);
    CHECK(isotropic_subspaces(hh, 4, 0).size() == gq_points(4, 8));
    CHECK(isotropic_subspaces(hh, 4, 1).size() == gq_lines(4, 8));
  }
  SUBCASE("degenerate forms are rejected with the radical") {
    auto c = zero(4);
    c[0][1] = 1;  // x0 x1: radical spanned by e2, e3
    auto q = SesquilinearForm::quadratic(f2, c);
    try {
      isotropic_subspaces(q, 3, 0);
      FAIL("expected DegenerateFormError");
    } catch (const DegenerateFormError& e) {
      CHECK(!e.radical().empty());
    }
  }
}

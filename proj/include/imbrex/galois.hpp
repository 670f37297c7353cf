#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace imbrex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field element, encoded as the integer whose base-p digits are the
/// polynomial coefficients (constant term first).
using Elem = std::uint8_t;

/// Coordinate vector over a finite field.
using Vec = std::vector<Elem>;

/// GF(p^k) with full addition/multiplication tables.
///
/// The modulus is the first primitive monic polynomial of degree k in
/// lexicographic order of its coefficient encoding, so GF(4) is built over
/// x^2 + x + 1 and the element x is encoded as 2.
class FiniteField {
 public:
  FiniteField(unsigned p, unsigned k);

  /// Shared field of order q; q must be a prime power <= 256.
  static std::shared_ptr<const FiniteField> of_order(unsigned q);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  unsigned order() const { return q_; }
  /// Coefficients of the modulus over GF(p), constant term first.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, unsigned e) const;
  /// x -> x^p.
  Elem frob(Elem a) const { return frob_[a]; }
  /// The involution x -> x^(p^(k/2)); requires even degree.
  Elem conj(Elem a) const;
  bool has_involution() const { return k_ % 2 == 0; }
  /// A generator of the multiplicative group.
  Elem primitive() const { return exp_.size() > 1 ? exp_[1] : 1; }

 private:
  unsigned p_;
  unsigned k_;
  unsigned q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  std::vector<Elem> frob_;
  std::vector<Elem> conj_;
  std::vector<Elem> exp_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

enum class FieldOp { add, mul, inv, frob };

/// Single entry point for the four basic operations; `b` is ignored for
/// the unary ones.
Elem field_op(const FiniteField& f, Elem a, Elem b, FieldOp op);

/// A projective subspace stored as its reduced row echelon basis.  The
/// basis is canonical, so equal subspaces compare equal.
struct ProjSubspace {
  int ambient = 0;          ///< projective dimension n of PG(n,q)
  std::vector<Vec> basis;   ///< RREF rows, leading coefficient 1

  int dim() const { return static_cast<int>(basis.size()) - 1; }
  bool empty() const { return basis.empty(); }

  friend bool operator==(const ProjSubspace&, const ProjSubspace&) = default;
  friend auto operator<=>(const ProjSubspace&, const ProjSubspace&) = default;
};

struct ProjSubspaceHash {
  std::size_t operator()(const ProjSubspace& s) const noexcept;
};

/// PG(n,q): point indexing, subspace enumeration and linear algebra.
///
/// Points are normalized vectors (first nonzero coordinate equal to 1).
/// They are indexed by the position of the leading 1 and then by the
/// base-q value of the trailing coordinates.
class ProjectiveSpace {
 public:
  ProjectiveSpace(FieldPtr field, int n);

  const FiniteField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int dim() const { return n_; }
  std::uint64_t point_count() const;

  Vec normalized(Vec v) const;
  std::uint64_t point_index(const Vec& v) const;
  Vec point_vector(std::uint64_t index) const;

  /// Canonical span of arbitrary (possibly dependent) rows.
  ProjSubspace span(std::vector<Vec> rows) const;
  ProjSubspace join(const ProjSubspace& a, const ProjSubspace& b) const;
  ProjSubspace meet(const ProjSubspace& a, const ProjSubspace& b) const;
  bool contains(const ProjSubspace& s, const Vec& v) const;
  bool contains(const ProjSubspace& outer, const ProjSubspace& inner) const;
  /// All points of `s`, normalized, in enumeration order of the
  /// coefficient vectors.
  std::vector<Vec> points_of(const ProjSubspace& s) const;
  /// Rows spanning the annihilator {v : <v, s_i> = 0 for all i}.
  std::vector<Vec> annihilator(const ProjSubspace& s) const;
  /// Coordinates of v with respect to the RREF basis of s (v must lie in s).
  Vec coordinates_in(const ProjSubspace& s, const Vec& v) const;

  /// Every subspace of projective dimension `dim`, canonical and sorted.
  std::vector<ProjSubspace> enumerate(int dim) const;

  /// Combination sum c_i * rows_i.
  Vec combine(const std::vector<Vec>& rows, const Vec& coeffs) const;

 private:
  FieldPtr field_;
  int n_;
};

/// Free-function form of ProjectiveSpace::enumerate.
std::vector<ProjSubspace> pg_enumerate(int n, const FieldPtr& field, int dim);

/// Reduce rows to canonical RREF in place (dependent rows are dropped).
void row_reduce(const FiniteField& f, std::vector<Vec>& rows);

enum class FormKind { quadratic, hermitian, alternating };

/// A reflexive form on V(n+1,q).  For `quadratic` the matrix holds the
/// coefficients Q_ij (i <= j) of Q(x) = sum_{i<=j} Q_ij x_i x_j; for the
/// other kinds it is the Gram matrix of the (sesqui)linear form.
class SesquilinearForm {
 public:
  static SesquilinearForm quadratic(FieldPtr f, std::vector<Vec> coeffs);
  static SesquilinearForm hermitian(FieldPtr f, std::vector<Vec> gram);
  static SesquilinearForm alternating(FieldPtr f, std::vector<Vec> gram);

  FormKind kind() const { return kind_; }
  const FieldPtr& field_ptr() const { return field_; }
  const FiniteField& field() const { return *field_; }
  int dim() const { return static_cast<int>(matrix_.size()) - 1; }
  const std::vector<Vec>& matrix() const { return matrix_; }

  /// Q(x) for quadratic forms, h(x,x) for hermitian, 0 for alternating.
  Elem value(const Vec& x) const;
  /// Associated (sesqui)linear form; the polarization for quadratics.
  Elem pair(const Vec& x, const Vec& y) const;
  bool is_singular(const Vec& x) const { return value(x) == 0; }
  bool totally_isotropic(const std::vector<Vec>& rows) const;
  /// Radical of the associated form (rows of a basis).
  std::vector<Vec> radical() const;
  /// Singular vectors of the radical, i.e. the obstruction to
  /// nondegeneracy; empty iff the form is nondegenerate.
  std::vector<Vec> degenerate_witness() const;

 private:
  SesquilinearForm(FormKind kind, FieldPtr f, std::vector<Vec> m);
  FormKind kind_;
  FieldPtr field_;
  std::vector<Vec> matrix_;
};

/// Raised when a form with a singular radical is used for enumeration.
class DegenerateFormError : public Error {
 public:
  DegenerateFormError(std::vector<Vec> radical);
  const std::vector<Vec>& radical() const { return radical_; }

 private:
  std::vector<Vec> radical_;
};

/// All totally isotropic (singular) subspaces of projective dimension
/// `dim`, canonical and sorted.  Built level by level from singular points.
std::vector<ProjSubspace> isotropic_subspaces(const SesquilinearForm& form, int n, int dim);

}  // namespace imbrex

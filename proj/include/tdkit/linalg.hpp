#ifndef TDKIT_LINALG_HPP
#define TDKIT_LINALG_HPP

// Exact elimination, canonical subspaces, and the two invariant-subspace
// fixpoints (smallest invariant superspace of a seed, largest invariant
// subspace of a container) together with induced actions on quotients.

#include <vector>

#include "tdkit/matrix.hpp"
#include "tdkit/polynomial.hpp"

namespace tdkit {

template <ExactScalar S>
struct Rref {
  Matrix<S> form;
  Index rank = 0;
  std::vector<Index> pivots;  // pivot column of each nonzero row
};

/// Reduced row-echelon form. The pivot in each column is the topmost nonzero
/// entry at or below the current row, which makes the output deterministic.
template <ExactScalar S>
Rref<S> rref(Matrix<S> m) {
  Rref<S> out;
  const Index rows = m.rows();
  const Index cols = m.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index piv = row;
    while (piv < rows && m(piv, col).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != row) m.row(row).swap(m.row(piv));
    const S inv = m(row, col).inverse();
    for (Index j = col; j < cols; ++j) m(row, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const S factor = m(i, col);
      for (Index j = col; j < cols; ++j) m(i, j) -= factor * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  out.form = std::move(m);
  return out;
}

template <ExactScalar S>
Index rank(const Matrix<S>& m) {
  return rref(m).rank;
}

/// Inverse by elimination on [m | I]; throws DivisionByZero when singular.
template <ExactScalar S>
Matrix<S> inverse(const Matrix<S>& m) {
  require_square(m, "matrix to invert");
  const Index n = m.rows();
  Matrix<S> augmented(n, 2 * n);
  augmented.leftCols(n) = m;
  augmented.rightCols(n) = identity<S>(n, field_of(m));
  const Rref<S> r = rref(augmented);
  if (r.rank < n || r.pivots[static_cast<std::size_t>(n - 1)] != n - 1) {
    throw Error(ErrorKind::DivisionByZero, "matrix is singular");
  }
  return r.form.rightCols(n);
}

/// A subspace of F^n stored as its canonical RREF basis (one basis vector per
/// row), so equality of subspaces is equality of basis matrices.
template <ExactScalar S>
class Subspace {
 public:
  Subspace() : Subspace(FieldSpec::rationals(), 0) {}
  Subspace(FieldSpec f, Index ambient) : field_(f), ambient_(ambient), basis_(0, ambient) {}

  static Subspace zero(FieldSpec f, Index ambient) { return Subspace(f, ambient); }

  static Subspace full(FieldSpec f, Index ambient) {
    return span_rows(f, identity<S>(ambient, f));
  }

  /// Row space of `rows`.
  static Subspace span_rows(FieldSpec f, const Matrix<S>& rows) {
    Subspace s(f, rows.cols());
    if (rows.rows() == 0) return s;
    Rref<S> r = rref(rows);
    s.basis_ = r.form.topRows(r.rank);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  /// Column space of `m`, i.e. the image of m as a map F^cols -> F^rows.
  static Subspace span_columns(FieldSpec f, const Matrix<S>& m) {
    Subspace s(f, m.rows());
    if (m.cols() == 0) return s;
    return span_rows(f, m.transpose());
  }

  static Subspace span(FieldSpec f, Index ambient, const std::vector<Vector<S>>& vectors) {
    Matrix<S> rows = zero_matrix<S>(static_cast<Index>(vectors.size()), ambient, f);
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      if (vectors[k].size() != ambient) throw Error(ErrorKind::ShapeMismatch, "vector length differs from ambient dimension");
      rows.row(static_cast<Index>(k)) = vectors[k].transpose();
    }
    return span_rows(f, rows);
  }

  const FieldSpec& field() const { return field_; }
  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }
  /// dim x ambient, canonical RREF.
  const Matrix<S>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  Vector<S> basis_vector(Index k) const { return basis_.row(k).transpose(); }
  std::vector<Vector<S>> basis_vectors() const {
    std::vector<Vector<S>> out;
    for (Index k = 0; k < dim(); ++k) out.push_back(basis_vector(k));
    return out;
  }

  bool contains(const Vector<S>& v) const {
    if (v.size() != ambient_) throw Error(ErrorKind::ShapeMismatch, "vector length differs from ambient dimension");
    Vector<S> r = v;
    for (Index k = 0; k < dim(); ++k) {
      const S c = r(pivots_[static_cast<std::size_t>(k)]);
      if (!c.is_zero()) r -= c * basis_vector(k);
    }
    return is_zero_vector(r);
  }

  bool contains(const Subspace& other) const {
    require_compatible(other);
    for (Index k = 0; k < other.dim(); ++k)
      if (!contains(other.basis_vector(k))) return false;
    return true;
  }

  /// op(W) for a square op on the ambient space.
  Subspace image_under(const Matrix<S>& op) const {
    require_operator(op);
    if (is_zero()) return *this;
    return span_rows(field_, basis_ * op.transpose());
  }

  bool is_invariant_under(const Matrix<S>& op) const {
    require_operator(op);
    for (Index k = 0; k < dim(); ++k)
      if (!contains(Vector<S>(op * basis_vector(k)))) return false;
    return true;
  }

  /// The annihilator rows C: v is in this subspace iff C v = 0.
  Matrix<S> constraints() const;

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    a.require_compatible(b);
    Matrix<S> stacked(a.dim() + b.dim(), a.ambient_);
    stacked.topRows(a.dim()) = a.basis_;
    stacked.bottomRows(b.dim()) = b.basis_;
    return span_rows(a.field_, stacked);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() &&
           a.basis_ == b.basis_;
  }

  void require_compatible(const Subspace& other) const {
    if (other.ambient_ != ambient_) {
      throw Error(ErrorKind::ShapeMismatch, "subspaces of F^" + std::to_string(ambient_) + " and F^" +
                                                std::to_string(other.ambient_));
    }
    if (other.field_ != field_) throw Error(ErrorKind::FieldMismatch, field_.name() + " vs " + other.field_.name());
  }

  void require_operator(const Matrix<S>& op) const {
    if (op.rows() != ambient_ || op.cols() != ambient_) {
      throw Error(ErrorKind::ShapeMismatch, "operator is " + std::to_string(op.rows()) + "x" +
                                                std::to_string(op.cols()) + ", ambient dimension is " +
                                                std::to_string(ambient_));
    }
    if (ambient_ > 0 && field_of(op) != field_) {
      throw Error(ErrorKind::FieldMismatch, "operator over " + field_of(op).name() + ", subspace over " + field_.name());
    }
  }

 private:
  static bool is_zero_vector(const Vector<S>& v) {
    for (Index i = 0; i < v.size(); ++i)
      if (!v(i).is_zero()) return false;
    return true;
  }

  FieldSpec field_;
  Index ambient_;
  Matrix<S> basis_;
  std::vector<Index> pivots_;
};

/// Null space {x : m x = 0}.
template <ExactScalar S>
Subspace<S> kernel(const Matrix<S>& m, const FieldSpec& f) {
  const Index cols = m.cols();
  if (m.rows() == 0) return Subspace<S>::full(f, cols);
  const Rref<S> r = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<S> rows = zero_matrix<S>(cols - r.rank, cols, f);
  Index k = 0;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    rows(k, free) = S::one(f);
    for (Index p = 0; p < r.rank; ++p) rows(k, r.pivots[static_cast<std::size_t>(p)]) = -r.form(p, free);
    ++k;
  }
  return Subspace<S>::span_rows(f, rows);
}

template <ExactScalar S>
Subspace<S> kernel(const Matrix<S>& m) {
  return kernel(m, field_of(m));
}

/// Column space of m.
template <ExactScalar S>
Subspace<S> image(const Matrix<S>& m) {
  return Subspace<S>::span_columns(field_of(m), m);
}

template <ExactScalar S>
Matrix<S> Subspace<S>::constraints() const {
  if (is_zero()) return identity<S>(ambient_, field_);
  return kernel(basis_, field_).basis();
}

/// U ∩ W via the kernel of [U^t | -W^t]: each kernel vector (x, y) gives the
/// common vector x^t U = y^t W.
template <ExactScalar S>
Subspace<S> intersect(const Subspace<S>& u, const Subspace<S>& w) {
  u.require_compatible(w);
  if (u.is_zero() || w.is_zero()) return Subspace<S>::zero(u.field(), u.ambient_dim());
  Matrix<S> system(u.ambient_dim(), u.dim() + w.dim());
  system.leftCols(u.dim()) = u.basis().transpose();
  system.rightCols(w.dim()) = -w.basis().transpose();
  const Subspace<S> coeffs = kernel(system, u.field());
  if (coeffs.is_zero()) return Subspace<S>::zero(u.field(), u.ambient_dim());
  return Subspace<S>::span_rows(u.field(), coeffs.basis().leftCols(u.dim()) * u.basis());
}

/// Dimensions seen by a fixpoint iteration, including the starting point.
struct FixpointTrace {
  std::size_t iterations = 0;
  std::vector<Index> dims;
};

namespace detail {

template <ExactScalar S>
void require_operators(const Subspace<S>& s, const std::vector<Matrix<S>>& ops) {
  for (const auto& op : ops) s.require_operator(op);
}

}  // namespace detail

/// Smallest subspace containing `seed` and invariant under every operator.
template <ExactScalar S>
Subspace<S> generated_module(const Subspace<S>& seed, const std::vector<Matrix<S>>& ops,
                             FixpointTrace* trace = nullptr) {
  detail::require_operators(seed, ops);
  Subspace<S> current = seed;
  if (trace) trace->dims.push_back(current.dim());
  for (;;) {
    Subspace<S> next = current;
    for (const auto& op : ops) next = next + current.image_under(op);
    if (trace) {
      ++trace->iterations;
      trace->dims.push_back(next.dim());
    }
    if (next.dim() == current.dim()) return current;
    current = std::move(next);
  }
}

/// Largest subspace of `container` invariant under every operator:
/// W <- {v in W : op v in W for all op} until stable.
template <ExactScalar S>
Subspace<S> invariant_core(const Subspace<S>& container, const std::vector<Matrix<S>>& ops,
                           FixpointTrace* trace = nullptr) {
  detail::require_operators(container, ops);
  const FieldSpec f = container.field();
  Subspace<S> current = container;
  if (trace) trace->dims.push_back(current.dim());
  while (!current.is_zero() && !current.is_full()) {
    // v = x^t B lies in the next iterate iff C op B^t x = 0 for every op.
    const Matrix<S>& b = current.basis();
    const Matrix<S> c = current.constraints();
    Matrix<S> conditions(c.rows() * static_cast<Index>(ops.size()), current.dim());
    for (std::size_t k = 0; k < ops.size(); ++k)
      conditions.middleRows(static_cast<Index>(k) * c.rows(), c.rows()) = c * ops[k] * b.transpose();
    const Subspace<S> coords = kernel(conditions, f);
    Subspace<S> next = coords.is_zero() ? Subspace<S>::zero(f, container.ambient_dim())
                                        : Subspace<S>::span_rows(f, coords.basis() * b);
    if (trace) {
      ++trace->iterations;
      trace->dims.push_back(next.dim());
    }
    if (next.dim() == current.dim()) return current;
    current = std::move(next);
  }
  return current;
}

/// Greedy completion of `w` inside `container`: walk the container's RREF
/// basis in order and keep every vector not already in the running span.
/// When the container is the whole space this is the lexicographically
/// earliest set of standard basis vectors completing w.
template <ExactScalar S>
std::vector<Vector<S>> complete_basis(const Subspace<S>& w, const Subspace<S>& container) {
  w.require_compatible(container);
  std::vector<Vector<S>> chosen;
  Subspace<S> running = w;
  for (Index k = 0; k < container.dim(); ++k) {
    Vector<S> candidate = container.basis_vector(k);
    if (running.contains(candidate)) continue;
    chosen.push_back(candidate);
    running = running + Subspace<S>::span(w.field(), w.ambient_dim(), {candidate});
  }
  if (!running.contains(container)) {
    throw Error(ErrorKind::InternalInvariantViolation, "basis completion failed to reach the container");
  }
  return chosen;
}

/// Matrix of the action of `op` on span(transversal ⊕ w) / w, in the basis
/// given by the images of the transversal vectors.
template <ExactScalar S>
Matrix<S> quotient_action(const Matrix<S>& op, const Subspace<S>& w, const std::vector<Vector<S>>& transversal) {
  w.require_operator(op);
  const FieldSpec f = w.field();
  const Index n = w.ambient_dim();
  const auto k = static_cast<Index>(transversal.size());
  const Index m = w.dim();
  if (!w.is_invariant_under(op)) throw Error(ErrorKind::NotInvariant, "submodule is not invariant under the operator");

  // [t_0 .. t_{k-1} w_0 .. w_{m-1} | op t_0 .. op t_{k-1}]
  Matrix<S> augmented = zero_matrix<S>(n, k + m + k, f);
  for (Index j = 0; j < k; ++j) {
    const Vector<S>& t = transversal[static_cast<std::size_t>(j)];
    if (t.size() != n) throw Error(ErrorKind::ShapeMismatch, "transversal vector has wrong length");
    augmented.col(j) = t;
    augmented.col(k + m + j) = op * t;
  }
  for (Index j = 0; j < m; ++j) augmented.col(k + j) = w.basis_vector(j);

  const Rref<S> r = rref(augmented);
  for (Index p = 0; p < k + m; ++p) {
    if (p >= r.rank || r.pivots[static_cast<std::size_t>(p)] != p) {
      throw Error(ErrorKind::ShapeMismatch, "transversal does not extend the submodule basis independently");
    }
  }
  if (r.rank > k + m) throw Error(ErrorKind::NotInvariant, "operator maps the transversal outside the module");
  return r.form.block(0, k + m, k, k);
}

}  // namespace tdkit

#endif  // TDKIT_LINALG_HPP

#ifndef TDKIT_MATRIX_HPP
#define TDKIT_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tdkit/field.hpp"

namespace tdkit {

using Index = Eigen::Index;

template <ExactScalar S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <ExactScalar S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <ExactScalar S>
Matrix<S> zero_matrix(Index rows, Index cols, const FieldSpec& f) {
  return Matrix<S>::Constant(rows, cols, S::zero(f));
}

template <ExactScalar S>
Matrix<S> identity(Index n, const FieldSpec& f) {
  Matrix<S> m = zero_matrix<S>(n, n, f);
  for (Index i = 0; i < n; ++i) m(i, i) = S::one(f);
  return m;
}

template <ExactScalar S>
Vector<S> unit_vector(Index n, Index k, const FieldSpec& f) {
  Vector<S> v = Vector<S>::Constant(n, S::zero(f));
  v(k) = S::one(f);
  return v;
}

template <ExactScalar S>
Matrix<S> diagonal(const std::vector<S>& entries, const FieldSpec& f) {
  const auto n = static_cast<Index>(entries.size());
  Matrix<S> m = zero_matrix<S>(n, n, f);
  for (Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return m;
}

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

template <ExactScalar S>
FieldSpec field_of(const Matrix<S>& m) {
  if constexpr (std::same_as<S, ModP>) {
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i)
        if (m(i, j).is_bound()) return m(i, j).field();
    throw Error(ErrorKind::FieldMismatch, "matrix carries no bound entries");
  } else {
    return FieldSpec::rationals();
  }
}

template <ExactScalar S>
void require_square(const Matrix<S>& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + " must be square and nonempty, got " +
                                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

template <ExactScalar S>
void require_same_shape(const Matrix<S>& a, const Matrix<S>& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                              "x" + std::to_string(b.cols()));
  }
  if (a.size() > 0 && field_of(a) != field_of(b)) {
    throw Error(ErrorKind::FieldMismatch, std::string(what) + ": " + field_of(a).name() + " vs " +
                                              field_of(b).name());
  }
}

/// Checked product; Eigen's operator* asserts shapes only in debug builds.
template <ExactScalar S>
Matrix<S> multiply(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "product of " + std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                                              "x" + std::to_string(b.cols()));
  }
  if (a.size() > 0 && b.size() > 0 && field_of(a) != field_of(b)) {
    throw Error(ErrorKind::FieldMismatch, "product across " + field_of(a).name() + " and " + field_of(b).name());
  }
  return a * b;
}

template <ExactScalar S>
S trace(const Matrix<S>& m) {
  S t = S::zero(field_of(m));
  for (Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

template <ExactScalar S>
std::vector<std::vector<std::string>> render_rows(const Matrix<S>& m) {
  std::vector<std::vector<std::string>> out(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(render(m(i, j)));
  return out;
}

}  // namespace tdkit

#endif  // TDKIT_MATRIX_HPP

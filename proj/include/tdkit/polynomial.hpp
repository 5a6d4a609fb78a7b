#ifndef TDKIT_POLYNOMIAL_HPP
#define TDKIT_POLYNOMIAL_HPP

#include <span>
#include <vector>

#include "tdkit/matrix.hpp"

namespace tdkit {

/// Univariate polynomial, lowest degree first, trailing zeros trimmed.
/// The zero polynomial has no coefficients and degree -1.
template <ExactScalar S>
class Polynomial {
 public:
  explicit Polynomial(FieldSpec f) : field_(f) {}
  Polynomial(FieldSpec f, std::vector<S> coefficients) : field_(f), coeffs_(std::move(coefficients)) { trim(); }

  static Polynomial constant(const S& c, FieldSpec f) { return Polynomial(f, {c}); }
  /// lambda - root
  static Polynomial linear(const S& root, FieldSpec f) { return Polynomial(f, {-root, S::one(f)}); }
  /// (lambda - r_0)(lambda - r_1)...; the empty product is 1.
  static Polynomial from_roots(std::span<const S> roots, FieldSpec f) {
    Polynomial p = constant(S::one(f), f);
    for (const S& r : roots) p = p * linear(r, f);
    return p;
  }

  const FieldSpec& field() const { return field_; }
  const std::vector<S>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == S::one(field_); }
  S coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : S::zero(field_); }

  S operator()(const S& x) const {
    S acc = S::zero(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<S> c(std::max(a.coeffs_.size(), b.coeffs_.size()), S::zero(a.field_));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coefficient(k) + b.coefficient(k);
    return Polynomial(a.field_, std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial(a.field_);
    std::vector<S> c(a.coeffs_.size() + b.coeffs_.size() - 1, S::zero(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(a.field_, std::move(c));
  }

  friend Polynomial operator*(const S& s, const Polynomial& p) { return constant(s, p.field_) * p; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  FieldSpec field_;
  std::vector<S> coeffs_;
};

/// p(A) by Horner's rule.
template <ExactScalar S>
Matrix<S> evaluate(const Polynomial<S>& p, const Matrix<S>& a) {
  require_square(a, "polynomial argument");
  const FieldSpec f = field_of(a);
  if (p.field() != f) throw Error(ErrorKind::FieldMismatch, "polynomial over " + p.field().name() + ", matrix over " + f.name());
  const Index n = a.rows();
  Matrix<S> acc = zero_matrix<S>(n, n, f);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = (acc * a).eval();
    for (Index i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return acc;
}

}  // namespace tdkit

#endif  // TDKIT_POLYNOMIAL_HPP

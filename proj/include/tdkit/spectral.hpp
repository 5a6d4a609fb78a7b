#ifndef TDKIT_SPECTRAL_HPP
#define TDKIT_SPECTRAL_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "tdkit/linalg.hpp"

namespace tdkit {

/// A diagonalizable operator with a caller-chosen ordering of its eigenvalues
/// and the matching primitive idempotents. Invariants (checked by
/// verify_diagonalizable): eigenvalues distinct, every idempotent nonzero,
/// sum E_i = I, E_i E_j = delta_ij E_i, op = sum theta_i E_i.
template <ExactScalar S>
struct EigenSystem {
  Matrix<S> op;
  std::vector<S> eigenvalues;
  std::vector<Matrix<S>> idempotents;

  std::size_t diameter() const { return eigenvalues.size() - 1; }
  Index dim() const { return op.rows(); }
};

/// E_i = prod_{j != i} (A - theta_j I) / (theta_i - theta_j), with the
/// factors multiplied in the order given by `factor_order` (all j != i).
template <ExactScalar S>
Matrix<S> lagrange_idempotent(const Matrix<S>& a, const std::vector<S>& thetas, std::size_t i,
                              const std::vector<std::size_t>& factor_order) {
  const FieldSpec f = field_of(a);
  const Index n = a.rows();
  const Matrix<S> id = identity<S>(n, f);
  Matrix<S> e = id;
  for (std::size_t j : factor_order) {
    if (j == i) continue;
    const S scale = (thetas[i] - thetas[j]).inverse();
    e = ((e * (a - thetas[j] * id)) * scale).eval();
  }
  return e;
}

template <ExactScalar S>
Matrix<S> lagrange_idempotent(const Matrix<S>& a, const std::vector<S>& thetas, std::size_t i) {
  std::vector<std::size_t> order(thetas.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  return lagrange_idempotent(a, thetas, i, order);
}

template <ExactScalar S>
void require_distinct(const std::vector<S>& values, std::string_view what) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j]) {
        throw Error(ErrorKind::DuplicateEigenvalue, std::string(what) + "[" + std::to_string(i) + "] = " +
                                                        std::string(what) + "[" + std::to_string(j) +
                                                        "] = " + render(values[i]));
      }
}

/// Checks that `thetas` is exactly the spectrum of a diagonalizable `a` and
/// builds the primitive idempotents in that order.
template <ExactScalar S>
EigenSystem<S> verify_diagonalizable(const Matrix<S>& a, const std::vector<S>& thetas) {
  require_square(a, "operator");
  if (thetas.empty()) throw Error(ErrorKind::IndexOutOfRange, "empty eigenvalue list");
  const FieldSpec f = field_of(a);
  for (const S& t : thetas)
    if (t.field() != f) throw Error(ErrorKind::FieldMismatch, "eigenvalue over " + t.field().name() + ", operator over " + f.name());
  require_distinct(thetas, "theta");

  const Index n = a.rows();
  const Matrix<S> id = identity<S>(n, f);
  Matrix<S> product = id;
  for (const S& t : thetas) product = (product * (a - t * id)).eval();
  if (!is_zero(product)) {
    throw Error(ErrorKind::ProductNotZero,
                "prod (A - theta_i I) != 0: operator is not diagonalizable with the given eigenvalues");
  }

  EigenSystem<S> sys{a, thetas, {}};
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    Matrix<S> e = lagrange_idempotent(a, thetas, i);
    if (is_zero(e)) {
      throw Error(ErrorKind::ZeroIdempotent, render(thetas[i]) + " (index " + std::to_string(i) + ") is not an eigenvalue");
    }
    sys.idempotents.push_back(std::move(e));
  }
  return sys;
}

// --------------------------------------------------------- characteristic poly

namespace detail {

template <ExactScalar S>
Polynomial<S> charpoly_faddeev_leverrier(const Matrix<S>& a, const FieldSpec& f) {
  const Index n = a.rows();
  std::vector<S> c(static_cast<std::size_t>(n + 1), S::zero(f));
  c[static_cast<std::size_t>(n)] = S::one(f);
  Matrix<S> m = zero_matrix<S>(n, n, f);
  for (Index k = 1; k <= n; ++k) {
    m = (a * m).eval();
    for (Index i = 0; i < n; ++i) m(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    const Matrix<S> am = a * m;
    c[static_cast<std::size_t>(n - k)] = -trace(am) / S::from_int(static_cast<long>(k), f);
  }
  return Polynomial<S>(f, std::move(c));
}

// det(lambda I - A) by Laplace expansion along successive rows, memoized over
// column subsets. Division-free, so it is safe in any characteristic.
template <ExactScalar S>
Polynomial<S> charpoly_minors(const Matrix<S>& a, const FieldSpec& f) {
  const auto n = static_cast<std::size_t>(a.rows());
  if (n > 24) throw Error(ErrorKind::ShapeMismatch, "expansion by minors limited to 24x24");
  auto entry = [&](std::size_t i, std::size_t j) {
    Polynomial<S> p = Polynomial<S>::constant(-a(static_cast<Index>(i), static_cast<Index>(j)), f);
    if (i == j) p = p + Polynomial<S>(f, {S::zero(f), S::one(f)});
    return p;
  };
  std::vector<Polynomial<S>> minor(std::size_t{1} << n, Polynomial<S>(f));
  minor[0] = Polynomial<S>::constant(S::one(f), f);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto row = static_cast<std::size_t>(std::popcount(mask)) - 1;
    Polynomial<S> acc(f);
    int above = 0;  // columns in mask greater than j
    for (int j = static_cast<int>(n) - 1; j >= 0; --j) {
      if (!(mask & (1u << j))) continue;
      Polynomial<S> term = entry(row, static_cast<std::size_t>(j)) * minor[mask & ~(1u << j)];
      acc = acc + ((above % 2) ? S::from_int(-1, f) * term : term);
      ++above;
    }
    minor[mask] = std::move(acc);
  }
  return minor[(std::size_t{1} << n) - 1];
}

}  // namespace detail

/// det(lambda I - a), monic of degree n.
template <ExactScalar S>
Polynomial<S> characteristic_polynomial(const Matrix<S>& a) {
  require_square(a, "operator");
  const FieldSpec f = field_of(a);
  // Faddeev-LeVerrier divides by 1..n.
  if (f.is_prime_field() && f.modulus <= static_cast<std::uint32_t>(a.rows())) {
    return detail::charpoly_minors(a, f);
  }
  return detail::charpoly_faddeev_leverrier(a, f);
}

/// Divides p by (lambda - r); returns the quotient when r is a root.
template <ExactScalar S>
std::optional<Polynomial<S>> deflate(const Polynomial<S>& p, const S& r) {
  const auto& c = p.coefficients();
  if (c.size() < 2) return std::nullopt;
  const FieldSpec f = p.field();
  std::vector<S> q(c.size() - 1, S::zero(f));
  S carry = S::zero(f);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    carry = carry * r + c[k + 1];
    q[k] = carry;
  }
  if (!(carry * r + c[0]).is_zero()) return std::nullopt;
  return Polynomial<S>(f, std::move(q));
}

namespace detail {

std::vector<Rational> rational_root_candidates(const Polynomial<Rational>& p);

template <ExactScalar S>
std::vector<S> root_candidates(const Polynomial<S>& p) {
  if constexpr (std::same_as<S, Rational>) {
    return rational_root_candidates(p);
  } else {
    std::vector<S> out;
    const FieldSpec f = p.field();
    for (std::uint32_t r = 0; r < f.modulus; ++r) out.push_back(S::from_int(static_cast<long>(r), f));
    return out;
  }
}

}  // namespace detail

template <ExactScalar S>
struct SpectrumDiscovery {
  std::vector<S> eigenvalues;
  std::vector<int> multiplicities;  // algebraic, in the characteristic polynomial
  Polynomial<S> characteristic;
};

/// Base-field eigenvalues of a diagonalizable operator. Over Q the candidates
/// come from the rational root theorem (ascending order); over GF(p) every
/// residue is tried in increasing order. Throws DoesNotSplit when the
/// characteristic polynomial has non-base-field roots or the minimal
/// polynomial has a repeated factor.
template <ExactScalar S>
SpectrumDiscovery<S> discover_eigenvalues(const Matrix<S>& a) {
  const FieldSpec f = field_of(a);
  SpectrumDiscovery<S> out{{}, {}, characteristic_polynomial(a)};
  Polynomial<S> rest = out.characteristic;
  for (const S& r : detail::root_candidates(out.characteristic)) {
    int mult = 0;
    while (auto q = deflate(rest, r)) {
      rest = std::move(*q);
      ++mult;
    }
    if (mult > 0) {
      out.eigenvalues.push_back(r);
      out.multiplicities.push_back(mult);
    }
    if (rest.degree() == 0) break;
  }
  if (rest.degree() != 0) {
    throw Error(ErrorKind::DoesNotSplit, "characteristic polynomial has a factor of degree " +
                                             std::to_string(rest.degree()) + " without roots in " + f.name());
  }
  const Matrix<S> id = identity<S>(a.rows(), f);
  Matrix<S> product = id;
  for (const S& t : out.eigenvalues) product = (product * (a - t * id)).eval();
  if (!is_zero(product)) {
    throw Error(ErrorKind::DoesNotSplit, "minimal polynomial has a repeated factor over " + f.name());
  }
  return out;
}

}  // namespace tdkit

#endif  // TDKIT_SPECTRAL_HPP

#ifndef TDKIT_TDCORE_HPP
#define TDKIT_TDCORE_HPP

// (Mock) tridiagonal systems: the data (A; E_i; A*; E*_i), the axiom checks,
// the polynomial family tau/eta, the split sequence and parameter array.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdkit/spectral.hpp"

namespace tdkit {

/// A pair of diagonalizable operators with eigenvalue orderings of equal
/// length d+1. Construct with make_system(); diagonalizability and the
/// primitive idempotents are established there, the remaining axioms are
/// checked by the report functions below.
template <ExactScalar S>
struct MtdSystem {
  FieldSpec field;
  Index dim = 0;
  std::size_t diameter = 0;
  Matrix<S> a;
  Matrix<S> a_star;
  EigenSystem<S> eigen;
  EigenSystem<S> eigen_star;

  const std::vector<S>& thetas() const { return eigen.eigenvalues; }
  const std::vector<S>& theta_stars() const { return eigen_star.eigenvalues; }
  const Matrix<S>& e(std::size_t i) const { return eigen.idempotents[i]; }
  const Matrix<S>& e_star(std::size_t i) const { return eigen_star.idempotents[i]; }
};

template <ExactScalar S>
MtdSystem<S> make_system(const Matrix<S>& a, const std::vector<S>& thetas, const Matrix<S>& a_star,
                         const std::vector<S>& theta_stars) {
  require_square(a, "A");
  require_same_shape(a, a_star, "A vs A*");
  if (thetas.size() != theta_stars.size()) {
    throw Error(ErrorKind::DiameterMismatch, std::to_string(thetas.size()) + " eigenvalues for A, " +
                                                 std::to_string(theta_stars.size()) + " for A*");
  }
  MtdSystem<S> sys;
  sys.field = field_of(a);
  sys.dim = a.rows();
  sys.a = a;
  sys.a_star = a_star;
  sys.eigen = verify_diagonalizable(a, thetas);
  sys.eigen_star = verify_diagonalizable(a_star, theta_stars);
  sys.diameter = thetas.size() - 1;
  return sys;
}

/// Same system after the change of basis v -> P^{-1} v.
template <ExactScalar S>
MtdSystem<S> conjugate(const MtdSystem<S>& sys, const Matrix<S>& p);

// ------------------------------------------------------------------ reports

struct ClauseReport {
  ClauseReport() = default;
  ClauseReport(std::string c, std::string s) : clause(std::move(c)), statement(std::move(s)) {}

  std::string clause;
  std::string statement;
  bool passed = true;
  bool vacuous = false;
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  std::string witness;
};

struct ShapeReport {
  ClauseReport dual_on_primary;  // E_i A* E_j = 0 for |i-j| > 1
  ClauseReport primary_on_dual;  // E*_i A E*_j = 0 for |i-j| > 1
  bool passed() const { return dual_on_primary.passed && primary_on_dual.passed; }
};

template <ExactScalar S>
struct CornerReport {
  ClauseReport clause;
  Matrix<S> low;   // E*_0 E_0 E*_0
  Matrix<S> high;  // E*_0 E_d E*_0
  bool passed() const { return clause.passed; }
};

namespace detail {

template <ExactScalar S>
std::string first_nonzero_entry(const Matrix<S>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) {
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + render(m(i, j));
      }
  return "zero";
}

template <ExactScalar S>
ClauseReport tridiagonal_clause(std::string clause, std::string statement, std::string_view label,
                                const std::vector<Matrix<S>>& idempotents, const Matrix<S>& middle) {
  ClauseReport r{std::move(clause), std::move(statement)};
  const std::size_t count = idempotents.size();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if ((i > j ? i - j : j - i) <= 1) continue;
      const Matrix<S> product = idempotents[i] * middle * idempotents[j];
      if (is_zero(product)) continue;
      if (r.passed) {
        r.witness = std::string(label) + " with (i,j) = (" + std::to_string(i) + "," + std::to_string(j) +
                    ") has " + first_nonzero_entry(product);
      }
      r.passed = false;
      r.violations.emplace_back(i, j);
    }
  }
  return r;
}

}  // namespace detail

template <ExactScalar S>
ShapeReport check_tridiagonal_shape(const MtdSystem<S>& sys) {
  return {detail::tridiagonal_clause("MTD (ii)", "E_i A* E_j = 0 whenever |i-j| > 1", "E_i A* E_j",
                                     sys.eigen.idempotents, sys.a_star),
          detail::tridiagonal_clause("MTD (iii)", "E*_i A E*_j = 0 whenever |i-j| > 1", "E*_i A E*_j",
                                     sys.eigen_star.idempotents, sys.a)};
}

template <ExactScalar S>
CornerReport<S> check_mtd_corner(const MtdSystem<S>& sys) {
  const Matrix<S>& es0 = sys.e_star(0);
  CornerReport<S> r{{"MTD (iv)", "E*_0 E_0 E*_0 != 0 and E*_0 E_d E*_0 != 0"},
                    es0 * sys.e(0) * es0,
                    es0 * sys.e(sys.diameter) * es0};
  if (is_zero(r.low)) {
    r.clause.passed = false;
    r.clause.violations.emplace_back(0, 0);
    r.clause.witness = "E*_0 E_0 E*_0 = 0";
  }
  if (is_zero(r.high)) {
    r.clause.passed = false;
    r.clause.violations.emplace_back(0, sys.diameter);
    r.clause.witness += std::string(r.clause.witness.empty() ? "" : "; ") + "E*_0 E_d E*_0 = 0";
  }
  return r;
}

template <ExactScalar S>
struct MtdReport {
  ClauseReport diagonalizable;
  ShapeReport shape;
  CornerReport<S> corner;
  bool passed() const { return diagonalizable.passed && shape.passed() && corner.passed(); }
};

template <ExactScalar S>
MtdReport<S> verify_mtd(const MtdSystem<S>& sys) {
  ClauseReport diag{"MTD (i)", "A and A* are diagonalizable with the given eigenvalue orderings"};
  diag.witness = "d = " + std::to_string(sys.diameter) + ", dim V = " + std::to_string(sys.dim);
  return {std::move(diag), check_tridiagonal_shape(sys), check_mtd_corner(sys)};
}

/// dim E*_0 V = 1.
template <ExactScalar S>
bool is_sharp(const MtdSystem<S>& sys) {
  return rank(sys.e_star(0)) == 1;
}

template <ExactScalar S>
void require_sharp(const MtdSystem<S>& sys) {
  if (!is_sharp(sys)) {
    throw Error(ErrorKind::NotSharp, "dim E*_0 V = " + std::to_string(rank(sys.e_star(0))) + ", expected 1");
  }
}

// ---------------------------------------------------------- polynomial family

template <ExactScalar S>
struct TdPolynomials {
  Polynomial<S> tau;       // (x - theta_0) ... (x - theta_{i-1})
  Polynomial<S> eta;       // (x - theta_d) ... (x - theta_{d-i+1})
  Polynomial<S> tau_star;
  Polynomial<S> eta_star;
};

template <ExactScalar S>
Polynomial<S> tau_polynomial(const std::vector<S>& thetas, std::size_t i, const FieldSpec& f) {
  return Polynomial<S>::from_roots(std::span<const S>(thetas.data(), i), f);
}

template <ExactScalar S>
Polynomial<S> eta_polynomial(const std::vector<S>& thetas, std::size_t i, const FieldSpec& f) {
  std::vector<S> roots(thetas.rbegin(), thetas.rbegin() + static_cast<std::ptrdiff_t>(i));
  return Polynomial<S>::from_roots(std::span<const S>(roots), f);
}

template <ExactScalar S>
TdPolynomials<S> td_polynomials(const std::vector<S>& thetas, const std::vector<S>& theta_stars, std::size_t i) {
  if (thetas.empty() || thetas.size() != theta_stars.size()) {
    throw Error(ErrorKind::DiameterMismatch, "eigenvalue and dual eigenvalue sequences differ in length");
  }
  if (i >= thetas.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "i = " + std::to_string(i) + " exceeds d = " + std::to_string(thetas.size() - 1));
  }
  const FieldSpec f = thetas.front().field();
  return {tau_polynomial(thetas, i, f), eta_polynomial(thetas, i, f), tau_polynomial(theta_stars, i, f),
          eta_polynomial(theta_stars, i, f)};
}

// ----------------------------------------------------------- parameter array

template <ExactScalar S>
struct ParameterArray {
  std::vector<S> thetas;
  std::vector<S> theta_stars;
  std::vector<S> zetas;

  std::size_t diameter() const { return thetas.size() - 1; }
  friend bool operator==(const ParameterArray&, const ParameterArray&) = default;
};

/// zeta_i with E*_0 tau_i(A) E*_0 = zeta_i E*_0 / ((th*_0 - th*_1) ... (th*_0 - th*_i)).
/// The proportionality constant is read off the first nonzero entry of E*_0
/// (row-major) and then checked against every entry.
template <ExactScalar S>
std::vector<S> split_sequence(const MtdSystem<S>& sys) {
  require_sharp(sys);
  const Matrix<S>& es0 = sys.e_star(0);
  Index pr = 0, pc = 0;
  for (Index i = 0; i < es0.size(); ++i) {
    if (!es0(i / es0.cols(), i % es0.cols()).is_zero()) {
      pr = i / es0.cols();
      pc = i % es0.cols();
      break;
    }
  }
  const auto& ts = sys.theta_stars();
  std::vector<S> zetas;
  S denominator = S::one(sys.field);
  for (std::size_t i = 0; i <= sys.diameter; ++i) {
    if (i > 0) denominator *= ts[0] - ts[i];
    const Matrix<S> sandwich = es0 * evaluate(tau_polynomial(sys.thetas(), i, sys.field), sys.a) * es0;
    const S c = sandwich(pr, pc) / es0(pr, pc);
    if (sandwich != (c * es0).eval()) {
      throw Error(ErrorKind::NotScalarMultiple, "E*_0 tau_" + std::to_string(i) + "(A) E*_0 is not a multiple of E*_0");
    }
    zetas.push_back(c * denominator);
  }
  return zetas;
}

template <ExactScalar S>
ParameterArray<S> parameter_array(const MtdSystem<S>& sys) {
  return {sys.thetas(), sys.theta_stars(), split_sequence(sys)};
}

template <ExactScalar S>
struct ConstraintReport {
  ClauseReport distinct;  // (i)
  ClauseReport split;     // (ii)
  ClauseReport ratios;    // (iii)
  S weighted_sum;         // sum_i eta_{d-i}(theta_0) eta*_{d-i}(theta*_0) zeta_i
  std::optional<S> common_ratio;
  bool passed() const { return distinct.passed && split.passed && ratios.passed; }
};

/// sum_{i=0}^d eta_{d-i}(theta_0) eta*_{d-i}(theta*_0) zeta_i
template <ExactScalar S>
S constraint_sum(const ParameterArray<S>& pa) {
  const std::size_t d = pa.diameter();
  const FieldSpec f = pa.thetas.front().field();
  S sum = S::zero(f);
  for (std::size_t i = 0; i <= d; ++i) {
    sum += eta_polynomial(pa.thetas, d - i, f)(pa.thetas[0]) *
           eta_polynomial(pa.theta_stars, d - i, f)(pa.theta_stars[0]) * pa.zetas[i];
  }
  return sum;
}

template <ExactScalar S>
ConstraintReport<S> check_constraints(const ParameterArray<S>& pa) {
  const std::size_t d = pa.diameter();
  const FieldSpec f = pa.thetas.front().field();
  ConstraintReport<S> r{{"constraints (i)", "theta_i mutually distinct; theta*_i mutually distinct"},
                        {"constraints (ii)", "zeta_0 = 1, zeta_d != 0, sum_i eta_{d-i}(theta_0) eta*_{d-i}(theta*_0) zeta_i != 0"},
                        {"constraints (iii)", "(theta_{i-2}-theta_{i+1})/(theta_{i-1}-theta_i) and the starred version are equal and independent of i, 2 <= i <= d-1"},
                        S::zero(f),
                        std::nullopt};

  auto scan_distinct = [&](const std::vector<S>& v, std::string_view name) {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (v[i] == v[j]) {
          r.distinct.passed = false;
          r.distinct.violations.emplace_back(i, j);
          if (r.distinct.witness.empty())
            r.distinct.witness = std::string(name) + "_" + std::to_string(i) + " = " + std::string(name) + "_" +
                                 std::to_string(j) + " = " + render(v[i]);
        }
  };
  scan_distinct(pa.thetas, "theta");
  scan_distinct(pa.theta_stars, "theta*");

  r.weighted_sum = constraint_sum(pa);
  std::vector<std::string> problems;
  if (!(pa.zetas[0] == S::one(f))) problems.push_back("zeta_0 = " + render(pa.zetas[0]));
  if (pa.zetas[d].is_zero()) problems.push_back("zeta_d = 0");
  if (r.weighted_sum.is_zero()) problems.push_back("weighted sum = 0");
  r.split.passed = problems.empty();
  for (const auto& p : problems) r.split.witness += (r.split.witness.empty() ? "" : "; ") + p;
  if (problems.empty()) r.split.witness = "weighted sum = " + render(r.weighted_sum);

  if (d <= 2) {
    r.ratios.vacuous = true;
    r.ratios.witness = "vacuously true: no index with 2 <= i <= d-1";
    return r;
  }
  for (std::size_t i = 2; i + 1 <= d; ++i) {
    for (const auto* seq : {&pa.thetas, &pa.theta_stars}) {
      const S den = (*seq)[i - 1] - (*seq)[i];
      if (den.is_zero()) {
        r.ratios.passed = false;
        r.ratios.violations.emplace_back(i, i);
        continue;
      }
      const S ratio = ((*seq)[i - 2] - (*seq)[i + 1]) / den;
      if (!r.common_ratio) {
        r.common_ratio = ratio;
      } else if (!(ratio == *r.common_ratio)) {
        r.ratios.passed = false;
        r.ratios.violations.emplace_back(i, seq == &pa.thetas ? 0 : 1);
        if (r.ratios.witness.empty())
          r.ratios.witness = std::string(seq == &pa.thetas ? "theta" : "theta*") + " ratio at i = " +
                             std::to_string(i) + " is " + render(ratio) + ", expected " + render(*r.common_ratio);
      }
    }
  }
  if (r.ratios.passed && r.common_ratio) r.ratios.witness = "common value " + render(*r.common_ratio);
  return r;
}

template <ExactScalar S>
MtdSystem<S> conjugate(const MtdSystem<S>& sys, const Matrix<S>& p) {
  const Matrix<S> p_inv = inverse(p);
  return make_system(Matrix<S>(p_inv * sys.a * p), sys.thetas(), Matrix<S>(p_inv * sys.a_star * p), sys.theta_stars());
}

}  // namespace tdkit

#endif  // TDKIT_TDCORE_HPP

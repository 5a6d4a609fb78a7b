#ifndef TDKIT_QUOTIENT_HPP
#define TDKIT_QUOTIENT_HPP

// From a sharp MTD system to a TD system with the same parameter array:
// the module generated by E*_0 V under A, A*, its unique maximal proper
// submodule M (the largest invariant subspace killed by E*_0), and the
// induced action on the irreducible quotient L = T E*_0 V / M.

#include <optional>
#include <string>
#include <vector>

#include "tdkit/tdcore.hpp"

namespace tdkit {

namespace detail {

template <ExactScalar S>
Vector<S> flatten(const Matrix<S>& m) {
  Vector<S> v(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

}  // namespace detail

/// Linear basis of the unital algebra generated by a and a_star, built from
/// words in the generators. Each round left-multiplies the elements added in
/// the previous round by both generators and keeps the independent ones.
template <ExactScalar S>
std::vector<Matrix<S>> algebra_closure(const Matrix<S>& a, const Matrix<S>& a_star) {
  require_square(a, "A");
  require_same_shape(a, a_star, "A vs A*");
  const FieldSpec f = field_of(a);
  const Index n = a.rows();
  const Index cap = n * n;

  std::vector<Matrix<S>> basis;
  Subspace<S> span = Subspace<S>::zero(f, cap);
  auto adjoin = [&](const Matrix<S>& m) {
    Vector<S> v = detail::flatten(m);
    if (span.contains(v)) return false;
    span = span + Subspace<S>::span(f, cap, {v});
    basis.push_back(m);
    if (static_cast<Index>(basis.size()) > cap) {
      throw Error(ErrorKind::InternalInvariantViolation, "algebra closure exceeded n^2 basis elements");
    }
    return true;
  };

  std::vector<Matrix<S>> frontier;
  for (Matrix<S> word : {identity<S>(n, f), a, a_star}) {
    if (adjoin(word)) frontier.push_back(std::move(word));
  }
  for (Index length = 2; !frontier.empty(); ++length) {
    if (length > 2 * cap) throw Error(ErrorKind::InternalInvariantViolation, "algebra closure exceeded word length 2n^2");
    std::vector<Matrix<S>> next;
    for (const Matrix<S>& w : frontier) {
      for (const Matrix<S>* g : {&a, &a_star}) {
        Matrix<S> word = *g * w;
        if (adjoin(word)) next.push_back(std::move(word));
      }
    }
    frontier = std::move(next);
  }
  return basis;
}

/// T E*_0 V, the module generated by the image of E*_0.
template <ExactScalar S>
Subspace<S> principal_module(const MtdSystem<S>& sys) {
  return generated_module(image(sys.e_star(0)), {sys.a, sys.a_star});
}

template <ExactScalar S>
struct ModuleStructure {
  Subspace<S> principal;  // T E*_0 V
  Subspace<S> corner_kernel;  // K = {u in T E*_0 V : E*_0 u = 0}
  Subspace<S> maximal;  // M
};

/// For a sharp system every proper submodule of T E*_0 V is killed by E*_0,
/// so the unique maximal one is the largest invariant subspace of K.
template <ExactScalar S>
ModuleStructure<S> module_structure(const MtdSystem<S>& sys) {
  require_sharp(sys);
  Subspace<S> p = principal_module(sys);
  Subspace<S> k = intersect(p, kernel(sys.e_star(0)));
  Subspace<S> m = invariant_core(k, {sys.a, sys.a_star});
  return {std::move(p), std::move(k), std::move(m)};
}

template <ExactScalar S>
Subspace<S> maximal_submodule(const MtdSystem<S>& sys) {
  return module_structure(sys).maximal;
}

template <ExactScalar S>
struct TdVerdict {
  bool td = false;
  bool tridiagonal_shape = false;
  bool irreducible = false;
  Subspace<S> principal;
  Subspace<S> maximal;
  /// A nonzero proper subspace invariant under A and A*, when reducible.
  std::optional<Subspace<S>> witness;
  std::string explanation;
};

/// TD test for sharp systems: irreducible iff T E*_0 V = V and M = 0.
template <ExactScalar S>
TdVerdict<S> is_td(const MtdSystem<S>& sys) {
  ModuleStructure<S> ms = module_structure(sys);
  TdVerdict<S> v{false, check_tridiagonal_shape(sys).passed(), false, ms.principal, ms.maximal, std::nullopt, {}};
  if (!ms.principal.is_full()) {
    v.witness = ms.principal;
    v.explanation = "T E*_0 V has dimension " + std::to_string(ms.principal.dim()) + " < " + std::to_string(sys.dim);
  } else if (!ms.maximal.is_zero()) {
    v.witness = ms.maximal;
    v.explanation = "maximal proper submodule M has dimension " + std::to_string(ms.maximal.dim());
  } else {
    v.irreducible = true;
    v.explanation = "T E*_0 V = V and M = 0";
  }
  v.td = v.irreducible && v.tridiagonal_shape;
  if (!v.tridiagonal_shape) v.explanation += "; tridiagonal shape fails";
  return v;
}

template <ExactScalar S>
struct QuotientReport {
  Subspace<S> principal_module;
  Subspace<S> corner_kernel;
  Subspace<S> maximal_submodule;
  Index quotient_dim = 0;
  std::vector<Vector<S>> transversal;
  Matrix<S> induced_a;
  Matrix<S> induced_a_star;
  std::vector<Matrix<S>> induced_idempotents;
  std::vector<Matrix<S>> induced_idempotents_star;
  MtdSystem<S> induced_system;
  ParameterArray<S> parent_parameter_array;
  ParameterArray<S> induced_parameter_array;
  std::vector<std::size_t> support;       // S  = {i : E_i L != 0}
  std::vector<std::size_t> support_star;  // S* = {i : E*_i L != 0}
  std::size_t r = 0, t = 0, k = 0, k_star = 0;
};

namespace detail {

[[noreturn]] inline void violated(const std::string& what) {
  throw Error(ErrorKind::InternalInvariantViolation, what);
}

// Returns (min, max - min) of a support set after checking it is an interval.
inline std::pair<std::size_t, std::size_t> interval_bounds(const std::vector<std::size_t>& support,
                                                           std::string_view name) {
  if (support.empty()) violated(std::string(name) + " is empty");
  const std::size_t lo = support.front();
  const std::size_t hi = support.back();
  if (support.size() != hi - lo + 1) violated(std::string(name) + " is not an interval of integers");
  return {lo, hi - lo};
}

template <ExactScalar S>
void check_idempotent_relations(const std::vector<Matrix<S>>& es, const std::vector<S>& thetas,
                                const Matrix<S>& op, const FieldSpec& f, std::string_view name) {
  const Index n = op.rows();
  Matrix<S> sum = zero_matrix<S>(n, n, f);
  Matrix<S> weighted = zero_matrix<S>(n, n, f);
  for (std::size_t i = 0; i < es.size(); ++i) {
    sum += es[i];
    weighted += thetas[i] * es[i];
    for (std::size_t j = 0; j < es.size(); ++j) {
      const Matrix<S> prod = es[i] * es[j];
      if (i == j ? prod != es[i] : !is_zero(prod)) {
        violated(std::string(name) + " idempotents fail E_iE_j = delta_ij E_i on L");
      }
    }
  }
  if (sum != identity<S>(n, f)) violated(std::string(name) + " idempotents do not sum to I on L");
  if (weighted != op) violated(std::string(name) + " operator differs from sum theta_i E_i on L");
}

}  // namespace detail

/// Builds L = T E*_0 V / M with the deterministic transversal basis and the
/// induced TD system, re-verifying every property the construction
/// guarantees. Any failed check raises InternalInvariantViolation.
template <ExactScalar S>
QuotientReport<S> quotient_system(const MtdSystem<S>& sys) {
  ModuleStructure<S> ms = module_structure(sys);
  const FieldSpec f = sys.field;
  const std::size_t d = sys.diameter;

  QuotientReport<S> q;
  q.transversal = complete_basis(ms.maximal, ms.principal);
  q.quotient_dim = static_cast<Index>(q.transversal.size());
  if (q.quotient_dim != ms.principal.dim() - ms.maximal.dim()) detail::violated("dim L != dim T E*_0 V - dim M");

  auto induce = [&](const Matrix<S>& op) { return quotient_action(op, ms.maximal, q.transversal); };
  q.induced_a = induce(sys.a);
  q.induced_a_star = induce(sys.a_star);
  for (std::size_t i = 0; i <= d; ++i) {
    q.induced_idempotents.push_back(induce(sys.e(i)));
    q.induced_idempotents_star.push_back(induce(sys.e_star(i)));
    if (!is_zero(q.induced_idempotents.back())) q.support.push_back(i);
    if (!is_zero(q.induced_idempotents_star.back())) q.support_star.push_back(i);
  }
  std::tie(q.r, q.k) = detail::interval_bounds(q.support, "S");
  std::tie(q.t, q.k_star) = detail::interval_bounds(q.support_star, "S*");
  if (q.r != 0) detail::violated("E_0 vanishes on L although E*_0 E_0 E*_0 != 0 is required");
  if (q.t != 0) detail::violated("E*_0 vanishes on L");
  if (q.k != d || q.k_star != d) detail::violated("induced diameter differs from d = " + std::to_string(d));
  if (q.quotient_dim < static_cast<Index>(d + 1)) detail::violated("dim L < d + 1");

  detail::check_idempotent_relations(q.induced_idempotents, sys.thetas(), q.induced_a, f, "primary");
  detail::check_idempotent_relations(q.induced_idempotents_star, sys.theta_stars(), q.induced_a_star, f, "dual");

  q.induced_system = make_system(q.induced_a, sys.thetas(), q.induced_a_star, sys.theta_stars());
  if (q.induced_system.eigen.idempotents != q.induced_idempotents ||
      q.induced_system.eigen_star.idempotents != q.induced_idempotents_star) {
    detail::violated("induced idempotents are not the primitive idempotents of the induced operators");
  }
  if (!check_tridiagonal_shape(q.induced_system).passed()) detail::violated("induced system is not tridiagonal");
  if (!check_mtd_corner(q.induced_system).passed()) detail::violated("induced system fails the corner condition");
  const TdVerdict<S> verdict = is_td(q.induced_system);
  if (!verdict.td) detail::violated("induced system is reducible: " + verdict.explanation);

  q.parent_parameter_array = parameter_array(sys);
  q.induced_parameter_array = parameter_array(q.induced_system);
  if (!(q.induced_parameter_array == q.parent_parameter_array)) {
    detail::violated("induced parameter array differs from the parent's");
  }

  q.principal_module = std::move(ms.principal);
  q.corner_kernel = std::move(ms.corner_kernel);
  q.maximal_submodule = std::move(ms.maximal);
  return q;
}

}  // namespace tdkit

#endif  // TDKIT_QUOTIENT_HPP

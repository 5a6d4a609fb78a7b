#ifndef TDKIT_DIAMETER2_HPP
#define TDKIT_DIAMETER2_HPP

// The explicit family of sharp diameter-2 MTD systems on F^4, the closed-form
// primitive idempotents, the TD criterion zeta_1 zeta_1^x != zeta_2, and the
// closed-form induced system on the 3-dimensional quotient when that
// criterion fails.

#include <array>

#include "tdkit/quotient.hpp"

namespace tdkit {

template <ExactScalar S>
struct Diameter2Params {
  FieldSpec field;
  std::array<S, 3> thetas;
  std::array<S, 3> theta_stars;
  std::array<S, 3> zetas;
  S zeta1_times;  // zeta_1 + (th0-th1)(th*0-th*1) - (th1-th2)(th*1-th*2)

  std::vector<S> theta_list() const { return {thetas.begin(), thetas.end()}; }
  std::vector<S> theta_star_list() const { return {theta_stars.begin(), theta_stars.end()}; }
  std::vector<S> zeta_list() const { return {zetas.begin(), zetas.end()}; }
  ParameterArray<S> parameter_array() const { return {theta_list(), theta_star_list(), zeta_list()}; }
};

/// zeta_2 + zeta_1 (th0-th2)(th*0-th*2) + (th0-th1)(th0-th2)(th*0-th*1)(th*0-th*2);
/// must be nonzero for an admissible tuple.
template <ExactScalar S>
S admissibility_value(const std::array<S, 3>& th, const std::array<S, 3>& ts, const std::array<S, 3>& z) {
  return z[2] + z[1] * (th[0] - th[2]) * (ts[0] - ts[2]) +
         (th[0] - th[1]) * (th[0] - th[2]) * (ts[0] - ts[1]) * (ts[0] - ts[2]);
}

template <ExactScalar S>
S zeta1_times(const std::array<S, 3>& th, const std::array<S, 3>& ts, const std::array<S, 3>& z) {
  return z[1] + (th[0] - th[1]) * (ts[0] - ts[1]) - (th[1] - th[2]) * (ts[1] - ts[2]);
}

template <ExactScalar S>
Diameter2Params<S> validate_params(const std::array<S, 3>& thetas, const std::array<S, 3>& theta_stars,
                                   const std::array<S, 3>& zetas) {
  const FieldSpec f = thetas[0].field();
  for (const auto* seq : {&thetas, &theta_stars, &zetas})
    for (const S& x : *seq)
      if (x.field() != f) throw Error(ErrorKind::FieldMismatch, "parameters span more than one field");
  for (const auto* seq : {&thetas, &theta_stars}) {
    const auto& v = *seq;
    if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) {
      throw Error(ErrorKind::DistinctnessViolated,
                  std::string(seq == &thetas ? "theta" : "theta*") + " values must be mutually distinct");
    }
  }
  if (!(zetas[0] == S::one(f))) throw Error(ErrorKind::Zeta0NotOne, "zeta_0 = " + render(zetas[0]) + ", expected 1");
  if (zetas[2].is_zero()) throw Error(ErrorKind::Zeta2Zero, "zeta_2 must be nonzero");
  if (admissibility_value(thetas, theta_stars, zetas).is_zero()) {
    throw Error(ErrorKind::AdmissibilityViolated,
                "zeta_2 + zeta_1(th0-th2)(th*0-th*2) + (th0-th1)(th0-th2)(th*0-th*1)(th*0-th*2) = 0");
  }
  return {f, thetas, theta_stars, zetas, zeta1_times(thetas, theta_stars, zetas)};
}

/// A (lower triangular) and A* (upper triangular) on F^4.
template <ExactScalar S>
std::pair<Matrix<S>, Matrix<S>> family_matrices(const Diameter2Params<S>& p) {
  const FieldSpec f = p.field;
  const S one = S::one(f);
  Matrix<S> a = zero_matrix<S>(4, 4, f);
  a(0, 0) = p.thetas[0];
  a(1, 0) = one;
  a(1, 1) = p.thetas[1];
  a(2, 2) = p.thetas[1];
  a(3, 1) = one;
  a(3, 2) = p.zeta1_times;
  a(3, 3) = p.thetas[2];

  Matrix<S> as = zero_matrix<S>(4, 4, f);
  as(0, 0) = p.theta_stars[0];
  as(0, 1) = p.zetas[1];
  as(0, 2) = p.zetas[2];
  as(1, 1) = p.theta_stars[1];
  as(2, 2) = p.theta_stars[1];
  as(2, 3) = one;
  as(3, 3) = p.theta_stars[2];
  return {a, as};
}

template <ExactScalar S>
MtdSystem<S> build_system(const Diameter2Params<S>& p) {
  auto [a, as] = family_matrices(p);
  return make_system(a, p.theta_list(), as, p.theta_star_list());
}

template <ExactScalar S>
struct IdempotentSet {
  std::array<Matrix<S>, 3> e;
  std::array<Matrix<S>, 3> e_star;
};

/// E_i, E*_i of the family written entry by entry, independent of the
/// Lagrange product used by verify_diagonalizable.
template <ExactScalar S>
IdempotentSet<S> closed_form_idempotents(const Diameter2Params<S>& p) {
  const FieldSpec f = p.field;
  const S one = S::one(f);
  const auto& t = p.thetas;
  const auto& s = p.theta_stars;
  const S& z1 = p.zetas[1];
  const S& z2 = p.zetas[2];
  const S& zx = p.zeta1_times;

  IdempotentSet<S> out;
  for (auto& m : out.e) m = zero_matrix<S>(4, 4, f);
  for (auto& m : out.e_star) m = zero_matrix<S>(4, 4, f);

  auto& e0 = out.e[0];
  e0(0, 0) = one;
  e0(1, 0) = one / (t[0] - t[1]);
  e0(3, 0) = one / ((t[0] - t[1]) * (t[0] - t[2]));

  auto& e1 = out.e[1];
  e1(1, 0) = one / (t[1] - t[0]);
  e1(1, 1) = one;
  e1(2, 2) = one;
  e1(3, 0) = one / ((t[1] - t[0]) * (t[1] - t[2]));
  e1(3, 1) = one / (t[1] - t[2]);
  e1(3, 2) = zx / (t[1] - t[2]);

  auto& e2 = out.e[2];
  e2(3, 0) = one / ((t[2] - t[0]) * (t[2] - t[1]));
  e2(3, 1) = one / (t[2] - t[1]);
  e2(3, 2) = zx / (t[2] - t[1]);
  e2(3, 3) = one;

  auto& es0 = out.e_star[0];
  es0(0, 0) = one;
  es0(0, 1) = z1 / (s[0] - s[1]);
  es0(0, 2) = z2 / (s[0] - s[1]);
  es0(0, 3) = z2 / ((s[0] - s[1]) * (s[0] - s[2]));

  auto& es1 = out.e_star[1];
  es1(0, 1) = z1 / (s[1] - s[0]);
  es1(0, 2) = z2 / (s[1] - s[0]);
  es1(0, 3) = z2 / ((s[1] - s[0]) * (s[1] - s[2]));
  es1(1, 1) = one;
  es1(2, 2) = one;
  es1(2, 3) = one / (s[1] - s[2]);

  auto& es2 = out.e_star[2];
  es2(0, 3) = z2 / ((s[2] - s[0]) * (s[2] - s[1]));
  es2(2, 3) = one / (s[2] - s[1]);
  es2(3, 3) = one;
  return out;
}

/// The family member is a TD system iff zeta_1 zeta_1^x != zeta_2.
template <ExactScalar S>
bool vidar_is_td(const Diameter2Params<S>& p) {
  return !(p.zetas[1] * p.zeta1_times == p.zetas[2]);
}

template <ExactScalar S>
struct DegenerateGolden {
  Vector<S> m_vector;  // (0, -zeta_1^x, 1, 0)^t spans M
  Matrix<S> induced_a;
  Matrix<S> induced_a_star;
  IdempotentSet<S> induced;  // 3x3 matrices in the basis e_1 + M, e_2 + M, e_4 + M
};

template <ExactScalar S>
DegenerateGolden<S> degenerate_expected(const Diameter2Params<S>& p) {
  if (vidar_is_td(p)) throw Error(ErrorKind::NotDegenerate, "zeta_1 zeta_1^x != zeta_2");
  const FieldSpec f = p.field;
  const S one = S::one(f);
  const auto& t = p.thetas;
  const auto& s = p.theta_stars;
  const S& z1 = p.zetas[1];
  const S& z2 = p.zetas[2];
  const S& zx = p.zeta1_times;

  DegenerateGolden<S> g;
  g.m_vector = Vector<S>::Constant(4, S::zero(f));
  g.m_vector(1) = -zx;
  g.m_vector(2) = one;

  g.induced_a = zero_matrix<S>(3, 3, f);
  g.induced_a(0, 0) = t[0];
  g.induced_a(1, 0) = one;
  g.induced_a(1, 1) = t[1];
  g.induced_a(2, 1) = one;
  g.induced_a(2, 2) = t[2];

  g.induced_a_star = zero_matrix<S>(3, 3, f);
  g.induced_a_star(0, 0) = s[0];
  g.induced_a_star(0, 1) = z1;
  g.induced_a_star(1, 1) = s[1];
  g.induced_a_star(1, 2) = zx;
  g.induced_a_star(2, 2) = s[2];

  for (auto& m : g.induced.e) m = zero_matrix<S>(3, 3, f);
  for (auto& m : g.induced.e_star) m = zero_matrix<S>(3, 3, f);

  auto& e0 = g.induced.e[0];
  e0(0, 0) = one;
  e0(1, 0) = one / (t[0] - t[1]);
  e0(2, 0) = one / ((t[0] - t[1]) * (t[0] - t[2]));

  auto& e1 = g.induced.e[1];
  e1(1, 0) = one / (t[1] - t[0]);
  e1(1, 1) = one;
  e1(2, 0) = one / ((t[1] - t[0]) * (t[1] - t[2]));
  e1(2, 1) = one / (t[1] - t[2]);

  auto& e2 = g.induced.e[2];
  e2(2, 0) = one / ((t[2] - t[0]) * (t[2] - t[1]));
  e2(2, 1) = one / (t[2] - t[1]);
  e2(2, 2) = one;

  auto& es0 = g.induced.e_star[0];
  es0(0, 0) = one;
  es0(0, 1) = z1 / (s[0] - s[1]);
  es0(0, 2) = z2 / ((s[0] - s[1]) * (s[0] - s[2]));

  auto& es1 = g.induced.e_star[1];
  es1(0, 1) = z1 / (s[1] - s[0]);
  es1(0, 2) = z2 / ((s[1] - s[0]) * (s[1] - s[2]));
  es1(1, 1) = one;
  es1(1, 2) = zx / (s[1] - s[2]);

  auto& es2 = g.induced.e_star[2];
  es2(0, 2) = z2 / ((s[2] - s[0]) * (s[2] - s[1]));
  es2(1, 2) = zx / (s[2] - s[1]);
  es2(2, 2) = one;
  return g;
}

}  // namespace tdkit

#endif  // TDKIT_DIAMETER2_HPP

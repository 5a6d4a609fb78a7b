#include <gtest/gtest.h>

#include "support/sampling.hpp"

using namespace tdkit;
using tdkit::testing::Rng;
using Q = Rational;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

Q q(long x) { return Q::from_int(x, kQ); }

std::vector<Q> qs(std::initializer_list<long> xs) {
  std::vector<Q> out;
  for (long x : xs) out.push_back(q(x));
  return out;
}

Diameter2Params<Q> example(long z1, long z2) {
  return validate_params<Q>({q(0), q(1), q(2)}, {q(0), q(1), q(2)}, {q(1), q(z1), q(z2)});
}

template <ExactScalar S>
Matrix<S> block_diagonal(const Matrix<S>& x, const Matrix<S>& y, const FieldSpec& f) {
  Matrix<S> out = zero_matrix<S>(x.rows() + y.rows(), x.cols() + y.cols(), f);
  out.topLeftCorner(x.rows(), x.cols()) = x;
  out.bottomRightCorner(y.rows(), y.cols()) = y;
  return out;
}

template <ExactScalar S>
MtdSystem<S> doubled(const MtdSystem<S>& sys) {
  return make_system(block_diagonal(sys.a, sys.a, sys.field), sys.thetas(), block_diagonal(sys.a_star, sys.a_star, sys.field),
                     sys.theta_stars());
}

MtdSystem<Q> point_system() {
  Matrix<Q> a = zero_matrix<Q>(1, 1, kQ);
  Matrix<Q> as = zero_matrix<Q>(1, 1, kQ);
  a(0, 0) = q(3);
  as(0, 0) = q(-2);
  return make_system(a, qs({3}), as, qs({-2}));
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::InternalInvariantViolation;
}

}  // namespace

// ------------------------------------------------------------------ axioms

TEST(TridiagonalShape, DiameterZeroIsVacuous) {
  const ShapeReport r = check_tridiagonal_shape(point_system());
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.dual_on_primary.violations.empty());
}

TEST(TridiagonalShape, FamilyOuterBlocksVanish) {
  const MtdSystem<Q> sys = build_system(example(1, 1));
  EXPECT_TRUE(is_zero(Matrix<Q>(sys.e(0) * sys.a_star * sys.e(2))));
  EXPECT_TRUE(is_zero(Matrix<Q>(sys.e(2) * sys.a_star * sys.e(0))));
  EXPECT_TRUE(check_tridiagonal_shape(sys).passed());
}

TEST(TridiagonalShape, DiagonalPair) {
  const Matrix<Q> d = diagonal(qs({0, 1, 2}), kQ);
  const MtdSystem<Q> sys = make_system(d, qs({0, 1, 2}), d, qs({0, 1, 2}));
  EXPECT_TRUE(check_tridiagonal_shape(sys).passed());
}

TEST(TridiagonalShape, ReportsViolatingPairs) {
  const Matrix<Q> d = diagonal(qs({0, 1, 2}), kQ);
  Matrix<Q> as = d;
  as(0, 2) = q(1);  // couples E_0 and E_2
  const MtdSystem<Q> sys = make_system(d, qs({0, 1, 2}), as, qs({0, 1, 2}));
  const ShapeReport r = check_tridiagonal_shape(sys);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.dual_on_primary.passed);
  EXPECT_EQ(r.dual_on_primary.violations, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}}));
  EXPECT_FALSE(r.dual_on_primary.witness.empty());
}

TEST(MtdCorner, FamilyEntriesMatchClosedForms) {
  Rng rng(31);
  tdkit::testing::for_each_field([&](auto tag, const FieldSpec& f) {
    using S = decltype(tag);
    for (int trial = 0; trial < 30; ++trial) {
      const auto p = tdkit::testing::sample_params<S>(rng, f, trial % 3 == 0);
      const MtdSystem<S> sys = build_system(p);
      const CornerReport<S> r = check_mtd_corner(sys);
      EXPECT_TRUE(r.passed());
      const auto& t = p.thetas;
      const auto& s = p.theta_stars;
      const S dual = (s[0] - s[1]) * (s[0] - s[2]);
      EXPECT_EQ(r.low(0, 0), admissibility_value(p.thetas, p.theta_stars, p.zetas) / ((t[0] - t[1]) * (t[0] - t[2]) * dual));
      EXPECT_EQ(r.high(0, 0), p.zetas[2] / ((t[2] - t[0]) * (t[2] - t[1]) * dual));
    }
  });
}

TEST(MtdCorner, FailsWhenCornerVanishes) {
  const Matrix<Q> d = diagonal(qs({0, 1}), kQ);
  const MtdSystem<Q> sys = make_system(d, qs({0, 1}), d, qs({0, 1}));
  const CornerReport<Q> r = check_mtd_corner(sys);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(is_zero(r.high));
  EXPECT_FALSE(verify_mtd(sys).passed());
}

TEST(MakeSystem, DiameterMismatch) {
  const Matrix<Q> d = diagonal(qs({0, 1}), kQ);
  EXPECT_EQ(kind_of([&] { make_system(d, qs({0, 1}), Matrix<Q>(identity<Q>(2, kQ)), qs({1})); }), ErrorKind::DiameterMismatch);
  EXPECT_EQ(kind_of([&] { make_system(d, qs({0, 1}), d, qs({0})); }), ErrorKind::DiameterMismatch);
  Matrix<Q> n = zero_matrix<Q>(2, 2, kQ);
  n(0, 1) = q(1);
  EXPECT_NE(kind_of([&] { make_system(d, qs({0, 1}), n, qs({0, 1})); }), ErrorKind::DiameterMismatch);
}

// --------------------------------------------------------------- sharpness

TEST(Sharp, FamilyIsSharp) { EXPECT_TRUE(is_sharp(build_system(example(1, 1)))); }

TEST(Sharp, PointSystemIsSharp) { EXPECT_TRUE(is_sharp(point_system())); }

TEST(Sharp, DoubledSystemIsNot) {
  const MtdSystem<Q> twice = doubled(build_system(example(1, 1)));
  EXPECT_EQ(rank(twice.e_star(0)), 2);  // oracle: block-diagonal E*_0
  EXPECT_FALSE(is_sharp(twice));
  EXPECT_TRUE(verify_mtd(twice).passed());
  EXPECT_EQ(kind_of([&] { parameter_array(twice); }), ErrorKind::NotSharp);
  EXPECT_EQ(kind_of([&] { split_sequence(twice); }), ErrorKind::NotSharp);
}

// ------------------------------------------------------------- polynomials

TEST(TdPolynomials, IndexZeroIsOne) {
  const TdPolynomials<Q> p = td_polynomials(qs({0, 1, 2}), qs({5, 6, 7}), 0);
  const Polynomial<Q> one = Polynomial<Q>::constant(q(1), kQ);
  EXPECT_EQ(p.tau, one);
  EXPECT_EQ(p.eta, one);
  EXPECT_EQ(p.tau_star, one);
  EXPECT_EQ(p.eta_star, one);
}

TEST(TdPolynomials, TauOne) {
  EXPECT_EQ(td_polynomials(qs({0, 1, 2}), qs({5, 6, 7}), 1).tau, Polynomial<Q>(kQ, qs({0, 1})));
}

TEST(TdPolynomials, EtaTwo) {
  // (lambda - 2)(lambda - 1) = lambda^2 - 3 lambda + 2
  EXPECT_EQ(td_polynomials(qs({0, 1, 2}), qs({5, 6, 7}), 2).eta, Polynomial<Q>(kQ, qs({2, -3, 1})));
}

TEST(TdPolynomials, MonicOfDegreeIAndRange) {
  for (std::size_t i = 0; i <= 3; ++i) {
    const TdPolynomials<Q> p = td_polynomials(qs({0, 1, 2, 5}), qs({5, 6, 7, 9}), i);
    for (const auto* poly : {&p.tau, &p.eta, &p.tau_star, &p.eta_star}) {
      EXPECT_TRUE(poly->is_monic());
      EXPECT_EQ(poly->degree(), static_cast<int>(i));
    }
  }
  EXPECT_EQ(kind_of([] { td_polynomials(qs({0, 1}), qs({0, 1}), 2); }), ErrorKind::IndexOutOfRange);
}

// --------------------------------------------------------- split sequence

TEST(SplitSequence, ConcreteInstance) {
  const MtdSystem<Q> sys = build_system(example(1, 1));
  EXPECT_EQ(split_sequence(sys), qs({1, 1, 1}));
  // oracle: E*_0 tau_i(A) E*_0 = c_i E*_0 read off at entry (0, 0) via explicit products
  const Matrix<Q> id = identity<Q>(4, kQ);
  const Matrix<Q>& es0 = sys.e_star(0);
  const Matrix<Q> t1 = es0 * sys.a * es0;
  const Matrix<Q> t2 = es0 * sys.a * (sys.a - id) * es0;
  EXPECT_EQ(t1(0, 0) / es0(0, 0) * (q(0) - q(1)), q(1));
  EXPECT_EQ(t2(0, 0) / es0(0, 0) * (q(0) - q(1)) * (q(0) - q(2)), q(1));
}

TEST(SplitSequence, RoundTripsFamilyParameters) {
  for (auto [z1, z2] : {std::pair{1L, 1L}, {1L, 2L}, {-2L, 3L}, {0L, 5L}}) {
    const auto p = example(z1, z2);
    EXPECT_EQ(parameter_array(build_system(p)), p.parameter_array());
  }
}

TEST(ParameterArray, PointSystem) {
  const ParameterArray<Q> pa = parameter_array(point_system());
  EXPECT_EQ(pa.thetas, qs({3}));
  EXPECT_EQ(pa.theta_stars, qs({-2}));
  EXPECT_EQ(pa.zetas, qs({1}));
}

// ------------------------------------------------------------ constraints

TEST(Constraints, DiameterTwoExample) {
  const ParameterArray<Q> pa{qs({0, 1, 2}), qs({0, 1, 2}), qs({1, 1, 1})};
  const ConstraintReport<Q> r = check_constraints(pa);
  EXPECT_TRUE(r.passed());
  // oracle: zeta_2 + zeta_1 (th0-th2)(ts0-ts2) + (th0-th1)(th0-th2)(ts0-ts1)(ts0-ts2) = 1 + 4 + 4
  EXPECT_EQ(r.weighted_sum, q(9));
  EXPECT_TRUE(r.ratios.vacuous);
}

TEST(Constraints, ZetaDZeroFails) {
  const ConstraintReport<Q> r = check_constraints(ParameterArray<Q>{qs({0, 1, 2}), qs({0, 1, 2}), qs({1, 1, 0})});
  EXPECT_FALSE(r.split.passed);
  EXPECT_FALSE(r.passed());
}

TEST(Constraints, DistinctnessAndZetaZero) {
  const ConstraintReport<Q> r = check_constraints(ParameterArray<Q>{qs({0, 1, 0}), qs({0, 1, 2}), qs({2, 1, 1})});
  EXPECT_FALSE(r.distinct.passed);
  EXPECT_EQ(r.distinct.violations, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}}));
  EXPECT_FALSE(r.split.passed);
}

TEST(Constraints, RatioClauseAtDiameterThree) {
  // (th0-th3)/(th1-th2) for theta = (0,1,2,3) is 3; theta* = (0,2,4,6) gives 3 as well.
  const ConstraintReport<Q> good = check_constraints(ParameterArray<Q>{qs({0, 1, 2, 3}), qs({0, 2, 4, 6}), qs({1, 1, 1, 1})});
  EXPECT_TRUE(good.ratios.passed);
  EXPECT_FALSE(good.ratios.vacuous);
  ASSERT_TRUE(good.common_ratio.has_value());
  EXPECT_EQ(*good.common_ratio, q(3));
  // theta* = (0,1,3,4): (0-4)/(1-3) = 2 != 3
  const ConstraintReport<Q> bad = check_constraints(ParameterArray<Q>{qs({0, 1, 2, 3}), qs({0, 1, 3, 4}), qs({1, 1, 1, 1})});
  EXPECT_FALSE(bad.ratios.passed);
}

TEST(Constraints, SumAtDiameterThreeByHand) {
  // sum_i eta_{3-i}(th0) eta*_{3-i}(ts0) zeta_i, evaluated term by term
  const auto th = qs({0, 1, 2, 3});
  const auto ts = qs({0, 2, 4, 6});
  const auto z = qs({1, 2, -1, 3});
  auto eta = [](const std::vector<Q>& v, int k) {
    Q out = q(1);
    for (int j = 0; j < k; ++j) out *= v[0] - v[3 - j];
    return out;
  };
  Q expected = q(0);
  for (int i = 0; i <= 3; ++i) expected += eta(th, 3 - i) * eta(ts, 3 - i) * z[i];
  EXPECT_EQ(constraint_sum(ParameterArray<Q>{th, ts, z}), expected);
}

// ---------------------------------------------------------------- properties

TEST(Property, SplitProportionalityForRandomWords) {
  Rng rng(41);
  tdkit::testing::for_each_field([&](auto tag, const FieldSpec& f) {
    using S = decltype(tag);
    for (int trial = 0; trial < 25; ++trial) {
      const MtdSystem<S> sys = build_system(tdkit::testing::sample_params<S>(rng, f, trial % 2 == 0));
      const Matrix<S>& es0 = sys.e_star(0);
      for (int w = 0; w < 8; ++w) {
        Matrix<S> word = identity<S>(4, f);
        const int length = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int k = 0; k < length; ++k) word = (word * (rng() % 2 ? sys.a : sys.a_star)).eval();
        const Matrix<S> sandwich = es0 * word * es0;
        const S c = sandwich(0, 0) / es0(0, 0);
        EXPECT_EQ(sandwich, Matrix<S>(c * es0));
      }
    }
  });
}

TEST(Property, ParameterArrayInvariantUnderConjugation) {
  Rng rng(42);
  tdkit::testing::for_each_field([&](auto tag, const FieldSpec& f) {
    using S = decltype(tag);
    for (int trial = 0; trial < 20; ++trial) {
      const MtdSystem<S> sys = build_system(tdkit::testing::sample_params<S>(rng, f, trial % 2 == 0));
      const Matrix<S> p = tdkit::testing::random_invertible<S>(rng, 4, f);
      const MtdSystem<S> moved = conjugate(sys, p);
      EXPECT_EQ(moved.a, Matrix<S>(inverse(p) * sys.a * p));
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(moved.e(i), Matrix<S>(inverse(p) * sys.e(i) * p));
      EXPECT_EQ(parameter_array(moved), parameter_array(sys));
      EXPECT_TRUE(verify_mtd(moved).passed());
    }
  });
}

TEST(Property, ConstraintSumIsAdmissibilityValueAtDiameterTwo) {
  Rng rng(43);
  tdkit::testing::for_each_field([&](auto tag, const FieldSpec& f) {
    using S = decltype(tag);
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = tdkit::testing::sample_params<S>(rng, f, trial % 4 == 0);
      const ConstraintReport<S> r = check_constraints(parameter_array(build_system(p)));
      EXPECT_TRUE(r.passed());
      EXPECT_EQ(r.weighted_sum, admissibility_value(p.thetas, p.theta_stars, p.zetas));
    }
  });
}

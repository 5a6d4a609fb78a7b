#include <gtest/gtest.h>

#include "support/sampling.hpp"

using namespace tdkit;
using tdkit::testing::Rng;

namespace {

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kGF5 = FieldSpec::prime(5);
const FieldSpec kGF7 = FieldSpec::prime(7);

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

TEST(Parse, ReducesRationals) { EXPECT_EQ(Rational::parse("-4/6").str(), "-2/3"); }

TEST(Parse, ReducesResidues) { EXPECT_EQ(ModP::parse("7", kGF5).str(), "2"); }

TEST(Parse, FractionOverPrimeField) {
  // oracle: 2 * 4 = 8 = 1 mod 7
  const ModP half = ModP::parse("1/2", kGF7);
  EXPECT_EQ(half.str(), "4");
  EXPECT_EQ((half * ModP::from_int(2, kGF7)).str(), "1");
}

TEST(Parse, CanonicalForms) {
  EXPECT_EQ(Rational::parse("3/6").str(), "1/2");
  EXPECT_EQ(Rational::parse("-0").str(), "0");
  EXPECT_EQ(Rational::parse("10/5").str(), "2");
  EXPECT_EQ(ModP::parse("-1", kGF7).str(), "6");
  EXPECT_EQ(Rational::parse("123456789012345678901234567890/3").str(), "41152263004115226300411522630");
}

TEST(Parse, RejectsMalformedText) {
  for (const char* bad : {"", "-", "1//2", "1/", "/2", "+1", "1.5", " 1", "1/-2", "abc", "--1"}) {
    EXPECT_EQ(kind_of([&] { Rational::parse(bad); }), ErrorKind::Parse) << bad;
    EXPECT_EQ(kind_of([&] { ModP::parse(bad, kGF7); }), ErrorKind::Parse) << bad;
  }
}

TEST(Parse, ZeroDenominator) {
  EXPECT_EQ(kind_of([] { Rational::parse("1/0"); }), ErrorKind::DivisionByZero);
  EXPECT_EQ(kind_of([] { ModP::parse("1/7", kGF7); }), ErrorKind::DivisionByZero);
}

TEST(FieldSpec, RejectsComposite) {
  for (long p : {0L, 1L, 4L, 9L, 91L, 2147483648L}) {
    EXPECT_EQ(kind_of([&] { FieldSpec::prime(p); }), ErrorKind::NotPrime) << p;
  }
  EXPECT_EQ(FieldSpec::prime(2147483647).modulus, 2147483647u);
}

TEST(Arithmetic, Examples) {
  EXPECT_EQ((Rational::parse("1/2") + Rational::parse("1/3")).str(), "5/6");
  // oracle: scan residues for x with 3x = 1 mod 7
  int scanned = -1;
  for (int x = 0; x < 7; ++x)
    if ((3 * x) % 7 == 1) scanned = x;
  EXPECT_EQ(ModP::from_int(3, kGF7).inverse().str(), std::to_string(scanned));
}

TEST(Arithmetic, DivisionByZero) {
  EXPECT_EQ(kind_of([] { Rational::zero(kQ).inverse(); }), ErrorKind::DivisionByZero);
  EXPECT_EQ(kind_of([] { (void)(ModP::one(kGF7) / ModP::zero(kGF7)); }), ErrorKind::DivisionByZero);
}

TEST(Arithmetic, FieldMismatch) {
  EXPECT_EQ(kind_of([] { (void)(ModP::one(kGF5) + ModP::one(kGF7)); }), ErrorKind::FieldMismatch);
  EXPECT_EQ(kind_of([] { ModP::parse("1", kQ); }), ErrorKind::FieldMismatch);
  EXPECT_EQ(kind_of([] { Rational::parse("1", kGF7); }), ErrorKind::FieldMismatch);
}

TEST(Arithmetic, LargeNumeratorsStayExact) {
  Rational x = Rational::one(kQ);
  for (int k = 0; k < 200; ++k) x *= Rational(3, 2);
  for (int k = 0; k < 200; ++k) x /= Rational(3, 2);
  EXPECT_TRUE(x.is_one());
}

// ---------------------------------------------------------------- properties

TEST(Property, FieldAxioms) {
  Rng rng(20241);
  tdkit::testing::for_each_field([&](auto tag, const FieldSpec& f) {
    using S = decltype(tag);
    for (int trial = 0; trial < 300; ++trial) {
      const S a = tdkit::testing::random_fraction<S>(rng, f);
      const S b = tdkit::testing::random_fraction<S>(rng, f);
      const S c = tdkit::testing::random_fraction<S>(rng, f);
      const S zero = S::zero(f);
      const S one = S::one(f);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + zero, a);
      EXPECT_EQ(a * one, a);
      EXPECT_TRUE((a + (-a)).is_zero());
      EXPECT_EQ(a - b, a + (-b));
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inverse()).is_one()) << f.name() << " a = " << a;
        EXPECT_EQ((b / a) * a, b);
      }
    }
  });
}

TEST(Property, RenderParseRoundTrip) {
  Rng rng(77);
  tdkit::testing::for_each_field([&](auto tag, const FieldSpec& f) {
    using S = decltype(tag);
    for (int trial = 0; trial < 300; ++trial) {
      const S x = tdkit::testing::random_fraction<S>(rng, f) * tdkit::testing::random_fraction<S>(rng, f);
      const std::string text = render(x);
      EXPECT_EQ(S::parse(text, f), x);
      EXPECT_EQ(render(S::parse(text, f)), text);  // canonicalization is idempotent
    }
  });
}

TEST(Property, CanonicalRepresentation) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const long n = std::uniform_int_distribution<long>(-500, 500)(rng);
    const long d = std::uniform_int_distribution<long>(1, 500)(rng);
    const Rational x = Rational::parse(std::to_string(n) + "/" + std::to_string(d));
    const mpq_class& q = x.value();
    EXPECT_GT(q.get_den(), 0);
    EXPECT_EQ(gcd(mpz_class(abs(q.get_num())), q.get_den()), 1);
    EXPECT_EQ(q * d, n);
  }
  const FieldSpec f = FieldSpec::prime(101);
  for (int trial = 0; trial < 300; ++trial) {
    const long n = std::uniform_int_distribution<long>(-100000, 100000)(rng);
    const ModP x = ModP::parse(n < 0 ? "-" + std::to_string(-n) : std::to_string(n), f);
    EXPECT_GE(x.residue(), 0);
    EXPECT_LT(x.residue(), 101);
    EXPECT_EQ(x.residue(), ((n % 101) + 101) % 101);
  }
}

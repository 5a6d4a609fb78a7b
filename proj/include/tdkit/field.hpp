#ifndef TDKIT_FIELD_HPP
#define TDKIT_FIELD_HPP

// Exact scalars: arbitrary-precision rationals and residues modulo a prime.
//
// Both types are usable as Eigen scalars. Eigen constructs scalars from
// integer literals (Scalar(0), Scalar(1)) without knowing the modulus, so a
// ModP built that way is an "unbound" integer that adopts the modulus of the
// first bound operand it meets. Library code always builds bound values via
// zero()/one()/from_int(); unbound values only live inside Eigen kernels.

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <Eigen/Core>

#include "tdkit/error.hpp"

namespace tdkit {

enum class FieldKind { Rationals, PrimeField };

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint32_t modulus = 0;  // nonzero iff kind == PrimeField

  static FieldSpec rationals() { return {}; }
  /// Throws NotPrime unless 2 <= p < 2^31 and p is prime.
  static FieldSpec prime(std::int64_t p);

  bool is_prime_field() const { return kind == FieldKind::PrimeField; }
  std::string name() const;  // "Q" or "GF(p)"

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::int64_t n);

class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT: Eigen needs implicit Scalar(int)
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(long num, long den);

  static Rational zero(const FieldSpec& f) { return from_int(0, f); }
  static Rational one(const FieldSpec& f) { return from_int(1, f); }
  static Rational from_int(long v, const FieldSpec& f);
  /// Grammar: optional '-', digits, optional '/' digits.
  static Rational parse(std::string_view text, const FieldSpec& f = FieldSpec::rationals());

  FieldSpec field() const { return FieldSpec::rationals(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  Rational inverse() const;
  std::string str() const;
  const mpq_class& value() const { return q_; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_;
};

class ModP {
 public:
  ModP() = default;
  ModP(long v) : value_(v) {}  // NOLINT: unbound integer, see header comment

  static ModP zero(const FieldSpec& f) { return from_int(0, f); }
  static ModP one(const FieldSpec& f) { return from_int(1, f); }
  static ModP from_int(long v, const FieldSpec& f);
  /// Grammar: digits only. The value is reduced modulo p.
  static ModP parse(std::string_view text, const FieldSpec& f);

  bool is_bound() const { return modulus_ != 0; }
  std::uint32_t modulus() const { return modulus_; }
  /// Residue in [0, p) for bound values.
  std::int64_t residue() const { return value_; }
  FieldSpec field() const;

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  ModP inverse() const;
  std::string str() const;

  ModP operator-() const;
  ModP& operator+=(const ModP& o);
  ModP& operator-=(const ModP& o);
  ModP& operator*=(const ModP& o);
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b);

 private:
  ModP(std::int64_t v, std::uint32_t p) : value_(v), modulus_(p) {}
  // Brings an unbound operand onto the other's modulus; throws on mismatch.
  static std::uint32_t common_modulus(ModP& a, ModP& b);

  std::int64_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);
std::ostream& operator<<(std::ostream& os, const ModP& x);

/// The exact-field scalar interface every algorithm in the library is written against.
template <class S>
concept ExactScalar = std::regular<S> && requires(const S a, const FieldSpec& f, long v,
                                                  std::string_view text) {
  { S::zero(f) } -> std::same_as<S>;
  { S::one(f) } -> std::same_as<S>;
  { S::from_int(v, f) } -> std::same_as<S>;
  { S::parse(text, f) } -> std::same_as<S>;
  { a.field() } -> std::same_as<FieldSpec>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.inverse() } -> std::same_as<S>;
  { a.str() } -> std::same_as<std::string>;
  { a + a } -> std::same_as<S>;
  { a - a } -> std::same_as<S>;
  { a * a } -> std::same_as<S>;
  { a / a } -> std::same_as<S>;
  { -a } -> std::same_as<S>;
};

/// Canonical text of x; parse(render(x), field) == x.
template <ExactScalar S>
std::string render(const S& x) {
  return x.str();
}

/// Calls fn(S{}) with the scalar type matching the runtime field descriptor.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& f, Fn&& fn) {
  if (f.is_prime_field()) return fn(ModP{});
  return fn(Rational{});
}

}  // namespace tdkit

namespace Eigen {

template <>
struct NumTraits<tdkit::Rational> : GenericNumTraits<tdkit::Rational> {
  using Real = tdkit::Rational;
  using NonInteger = tdkit::Rational;
  using Literal = tdkit::Rational;
  using Nested = tdkit::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 32,
    MulCost = 64
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<tdkit::ModP> : GenericNumTraits<tdkit::ModP> {
  using Real = tdkit::ModP;
  using NonInteger = tdkit::ModP;
  using Literal = tdkit::ModP;
  using Nested = tdkit::ModP;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // TDKIT_FIELD_HPP

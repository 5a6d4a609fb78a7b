#include "tdkit/field.hpp"

#include <cctype>
#include <limits>
#include <ostream>

namespace tdkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DuplicateEigenvalue: return "DuplicateEigenvalue";
    case ErrorKind::ProductNotZero: return "ProductNotZero";
    case ErrorKind::ZeroIdempotent: return "ZeroIdempotent";
    case ErrorKind::DoesNotSplit: return "DoesNotSplit";
    case ErrorKind::DiameterMismatch: return "DiameterMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotSharp: return "NotSharp";
    case ErrorKind::NotScalarMultiple: return "NotScalarMultiple";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorKind::DistinctnessViolated: return "DistinctnessViolated";
    case ErrorKind::Zeta0NotOne: return "Zeta0NotOne";
    case ErrorKind::Zeta2Zero: return "Zeta2Zero";
    case ErrorKind::AdmissibilityViolated: return "AdmissibilityViolated";
    case ErrorKind::NotDegenerate: return "NotDegenerate";
  }
  return "Unknown";
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t k = 3; k * k <= n; k += 2) {
    if (n % k == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (p >= (std::int64_t{1} << 31) || !is_prime(p)) {
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not a prime below 2^31");
  }
  return {FieldKind::PrimeField, static_cast<std::uint32_t>(p)};
}

std::string FieldSpec::name() const {
  if (!is_prime_field()) return "Q";
  return "GF(" + std::to_string(modulus) + ")";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void malformed(std::string_view text, std::string_view why) {
  throw Error(ErrorKind::Parse, "malformed scalar '" + std::string(text) + "': " + std::string(why));
}

// Shared grammar: optional '-', digits, optional '/' digits.
std::pair<mpz_class, mpz_class> parse_fraction(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
    if (!all_digits(den)) malformed(text, "denominator must be digits");
  }
  if (!all_digits(num)) malformed(text, "numerator must be digits");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return {n, d};
}

}  // namespace

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_int(long v, const FieldSpec& f) {
  if (f.is_prime_field()) throw Error(ErrorKind::FieldMismatch, "Rational requested over " + f.name());
  return Rational(v);
}

Rational Rational::parse(std::string_view text, const FieldSpec& f) {
  if (f.is_prime_field()) throw Error(ErrorKind::FieldMismatch, "Rational requested over " + f.name());
  auto [n, d] = parse_fraction(text);
  return Rational(mpq_class(n, d));
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of 0");
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by 0");
  q_ /= o.q_;
  return *this;
}

std::string Rational::str() const { return q_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

// -------------------------------------------------------------------- ModP

namespace {

std::int64_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

}  // namespace

ModP ModP::from_int(long v, const FieldSpec& f) {
  if (!f.is_prime_field()) throw Error(ErrorKind::FieldMismatch, "ModP requested over Q");
  return ModP(reduce(v, f.modulus), f.modulus);
}

ModP ModP::parse(std::string_view text, const FieldSpec& f) {
  if (!f.is_prime_field()) throw Error(ErrorKind::FieldMismatch, "ModP requested over Q");
  auto [n, d] = parse_fraction(text);
  auto residue = [&](const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), f.modulus);
    return ModP(static_cast<std::int64_t>(r.get_ui()), f.modulus);
  };
  const ModP den = residue(d);
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "denominator of '" + std::string(text) + "' is 0 in " + f.name());
  return residue(n) / den;
}

FieldSpec ModP::field() const {
  if (!is_bound()) throw Error(ErrorKind::FieldMismatch, "unbound integer has no field");
  return {FieldKind::PrimeField, modulus_};
}

std::uint32_t ModP::common_modulus(ModP& a, ModP& b) {
  if (a.modulus_ == b.modulus_) return a.modulus_;
  if (a.modulus_ == 0) {
    a = ModP(reduce(a.value_, b.modulus_), b.modulus_);
    return b.modulus_;
  }
  if (b.modulus_ == 0) {
    b = ModP(reduce(b.value_, a.modulus_), a.modulus_);
    return a.modulus_;
  }
  throw Error(ErrorKind::FieldMismatch,
              "GF(" + std::to_string(a.modulus_) + ") vs GF(" + std::to_string(b.modulus_) + ")");
}

ModP ModP::operator-() const {
  if (!is_bound()) return ModP(-value_, 0);
  return ModP(value_ == 0 ? 0 : modulus_ - value_, modulus_);
}

ModP& ModP::operator+=(const ModP& o) {
  ModP rhs = o;
  std::uint32_t p = common_modulus(*this, rhs);
  value_ += rhs.value_;
  if (p != 0 && value_ >= p) value_ -= p;
  return *this;
}

ModP& ModP::operator-=(const ModP& o) { return *this += -o; }

ModP& ModP::operator*=(const ModP& o) {
  ModP rhs = o;
  std::uint32_t p = common_modulus(*this, rhs);
  value_ *= rhs.value_;
  if (p != 0) value_ %= p;
  return *this;
}

ModP ModP::inverse() const {
  if (!is_bound()) throw Error(ErrorKind::FieldMismatch, "inverse of an unbound integer");
  if (value_ == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in GF(" + std::to_string(modulus_) + ")");
  // extended Euclid on (value, p)
  std::int64_t r0 = modulus_, r1 = value_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  return ModP(reduce(s0, modulus_), modulus_);
}

bool operator==(const ModP& a, const ModP& b) {
  ModP x = a, y = b;
  ModP::common_modulus(x, y);
  return x.value_ == y.value_;
}

std::string ModP::str() const { return std::to_string(value_); }

std::ostream& operator<<(std::ostream& os, const ModP& x) { return os << x.str(); }

}  // namespace tdkit

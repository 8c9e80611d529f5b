#include "malcev/field.hpp"

namespace malcev {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((u128)a * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  // deterministic Miller-Rabin for 64-bit operands
  std::uint64_t d = p - 1;
  int s = 0;
  while (d % 2 == 0) { d /= 2; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (a % p == 0) continue;
    std::uint64_t x = powmod(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, p);
      if (x == p - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (p == 2) throw FieldError("characteristic 2 not supported");
  if (!is_odd_prime(p)) throw FieldError("modulus " + std::to_string(p) + " is not an odd prime");
  return FieldSpec(FieldKind::PrimeField, p);
}

std::string FieldSpec::str() const {
  return kind_ == FieldKind::Rationals ? "Q" : "F" + std::to_string(p_);
}

Scalar Scalar::from_int(const FieldSpec& f, long long v) {
  Scalar s(f);
  if (f.kind() == FieldKind::Rationals) {
    s.rat_ = Rat(v);
  } else {
    long long m = static_cast<long long>(f.modulus());
    long long r = v % m;
    if (r < 0) r += m;
    s.res_ = static_cast<std::uint64_t>(r);
  }
  return s;
}

Scalar Scalar::from_rat(const FieldSpec& f, const Rat& r) {
  Scalar s(f);
  if (f.kind() == FieldKind::Rationals) {
    s.rat_ = r;
  } else {
    Int p(f.modulus());
    Int num = numerator(r) % p;
    Int den = denominator(r) % p;
    if (num < 0) num += p;
    if (den == 0) throw FieldError("denominator divisible by field characteristic");
    std::uint64_t dn = den.convert_to<std::uint64_t>();
    std::uint64_t inv = powmod(dn, f.modulus() - 2, f.modulus());
    s.res_ = mulmod(num.convert_to<std::uint64_t>(), inv, f.modulus());
  }
  return s;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) throw FieldError("field mismatch");
}

bool Scalar::is_zero() const {
  return field_.kind() == FieldKind::Rationals ? rat_ == 0 : res_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind() == FieldKind::Rationals ? rat_ == 1 : res_ == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar s(field_);
  if (field_.kind() == FieldKind::Rationals) {
    s.rat_ = rat_ + o.rat_;
  } else {
    std::uint64_t r = res_ + o.res_;
    if (r >= field_.modulus()) r -= field_.modulus();
    s.res_ = r;
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar s(field_);
  if (field_.kind() == FieldKind::Rationals) {
    s.rat_ = rat_ * o.rat_;
  } else {
    s.res_ = mulmod(res_, o.res_, field_.modulus());
  }
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s(field_);
  if (field_.kind() == FieldKind::Rationals) {
    s.rat_ = -rat_;
  } else {
    s.res_ = res_ == 0 ? 0 : field_.modulus() - res_;
  }
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw FieldError("zero inverse");
  Scalar s(field_);
  if (field_.kind() == FieldKind::Rationals) {
    s.rat_ = 1 / rat_;
  } else {
    s.res_ = powmod(res_, field_.modulus() - 2, field_.modulus());
  }
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  return field_.kind() == FieldKind::Rationals ? rat_ == o.rat_ : res_ == o.res_;
}

bool Scalar::operator<(const Scalar& o) const {
  check_same_field(o);
  return field_.kind() == FieldKind::Rationals ? rat_ < o.rat_ : res_ < o.res_;
}

std::string Scalar::str() const {
  if (field_.kind() == FieldKind::PrimeField) return std::to_string(res_);
  if (denominator(rat_) == 1) return numerator(rat_).str();
  return numerator(rat_).str() + "/" + denominator(rat_).str();
}

}  // namespace malcev

#ifndef MALCEV_FIELD_HPP
#define MALCEV_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace malcev {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class FieldError : public std::runtime_error {
public:
  explicit FieldError(const std::string& what) : std::runtime_error(what) {}
};

enum class FieldKind { Rationals, PrimeField };

/// The coefficient field: either Q or F_p with p an odd prime.
/// Characteristic 2 is rejected at construction.
class FieldSpec {
public:
  static FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0); }
  static FieldSpec prime_field(std::uint64_t p);

  FieldKind kind() const { return kind_; }
  std::uint64_t modulus() const { return p_; }
  std::uint64_t characteristic() const { return kind_ == FieldKind::Rationals ? 0 : p_; }

  bool operator==(const FieldSpec& o) const = default;

  std::string str() const;  // "Q" or "F<p>"

private:
  FieldSpec(FieldKind k, std::uint64_t p) : kind_(k), p_(p) {}
  FieldKind kind_;
  std::uint64_t p_;
};

/// Immutable exact field element in canonical form: a reduced fraction with
/// positive denominator over Q, or the least nonnegative residue over F_p.
class Scalar {
public:
  explicit Scalar(const FieldSpec& f) : field_(f) {}  // zero

  static Scalar from_int(const FieldSpec& f, long long v);
  static Scalar from_rat(const FieldSpec& f, const Rat& r);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inv() const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const;  // canonical total order (for sorting)

  const Rat& rat() const { return rat_; }
  std::uint64_t residue() const { return res_; }

  std::string str() const;  // "n", "a/b", or residue

private:
  void check_same_field(const Scalar& o) const;

  FieldSpec field_ = FieldSpec::rationals();
  Rat rat_;                // Rationals only
  std::uint64_t res_ = 0;  // PrimeField only
};

bool is_odd_prime(std::uint64_t p);

}  // namespace malcev

#endif

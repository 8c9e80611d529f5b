#ifndef MALCEV_ALGEBRA_HPP
#define MALCEV_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "malcev/field.hpp"

namespace malcev {

class AlgebraError : public std::runtime_error {
public:
  explicit AlgebraError(const std::string& what) : std::runtime_error(what) {}
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Element of an algebra as a coordinate vector in the fixed basis.
class Element {
public:
  Element(AlgebraPtr alg, std::vector<Scalar> coords);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Scalar>& coords() const { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Scalar& c) const;
  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  std::string str() const;  // linear combination of basis labels

private:
  AlgebraPtr alg_;
  std::vector<Scalar> coords_;
};

/// Verdict of an identity check, with a re-checkable counterexample when false.
struct IdentityWitness {
  struct Counterexample {
    std::vector<int> indices;  // 1-based basis indices of the failing substitution
    Element lhs;
    Element rhs;
    std::string description;
  };
  bool verdict = false;
  std::optional<Counterexample> counterexample;

  explicit operator bool() const { return verdict; }
};

enum class MalcevIdentity { Id1, Id2, Id3, Id4, Id5 };

/// Finite-dimensional algebra over an exact field, defined by structure
/// constants: e_i * e_j = sum_k c_{ij}^k e_k.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
  /// table[i][j] is the coordinate vector of e_i * e_j (dim scalars each).
  static AlgebraPtr create(FieldSpec field, std::size_t dim,
                           std::vector<std::vector<std::vector<Scalar>>> table,
                           std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  const FieldSpec& field() const { return field_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Scalar>& table_entry(std::size_t i, std::size_t j) const {
    return table_[i][j];
  }

  Element zero() const;
  Element basis_element(std::size_t i) const;  // 0-based
  Element element(std::vector<Scalar> coords) const;

  Element multiply(const Element& x, const Element& y) const;
  /// J(x,y,z) = (xy)z + (yz)x + (zx)y
  Element jacobian(const Element& x, const Element& y, const Element& z) const;

  bool operator==(const Algebra& o) const;

private:
  Algebra() : field_(FieldSpec::rationals()) {}
  void check_member(const Element& x) const;

  FieldSpec field_;
  std::size_t dim_ = 0;
  std::vector<std::vector<std::vector<Scalar>>> table_;
  std::vector<std::string> labels_;
};

IdentityWitness is_anticommutative(const AlgebraPtr& a);
IdentityWitness is_malcev(const AlgebraPtr& a);
IdentityWitness is_lie(const AlgebraPtr& a);
IdentityWitness check_identity(const AlgebraPtr& a, MalcevIdentity which);

/// A^- : same space, product [x,y] = xy - yx.
AlgebraPtr minus_algebra(const AlgebraPtr& a);

}  // namespace malcev

#endif

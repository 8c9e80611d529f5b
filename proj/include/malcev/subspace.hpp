#ifndef MALCEV_SUBSPACE_HPP
#define MALCEV_SUBSPACE_HPP

#include <vector>

#include "malcev/algebra.hpp"

namespace malcev {

/// Linear subspace of an algebra in canonical form: the basis matrix is in
/// reduced row echelon form with strictly increasing pivot columns and no zero
/// rows, so two subspaces are equal iff their matrices are identical.
class Subspace {
public:
  static Subspace span(const AlgebraPtr& a, const std::vector<Element>& vectors);
  static Subspace zero(const AlgebraPtr& a);
  static Subspace full(const AlgebraPtr& a);

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t dim() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }

  /// Canonical basis vectors (rows of the RREF matrix).
  std::vector<Element> basis() const;

  bool contains(const Element& x) const;
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  std::string str() const;

private:
  Subspace(AlgebraPtr alg, std::vector<std::vector<Scalar>> rref_rows)
      : alg_(std::move(alg)), rows_(std::move(rref_rows)) {}

  AlgebraPtr alg_;
  std::vector<std::vector<Scalar>> rows_;  // RREF, no zero rows

  friend Subspace subspace_sum(const Subspace& u, const Subspace& v);
};

Subspace subspace_sum(const Subspace& u, const Subspace& v);
/// Span of pairwise products of basis vectors (exact by bilinearity).
Subspace subspace_product(const Subspace& u, const Subspace& v);
/// Span of J(u,v,w) over basis triples.
Subspace jacobian_span(const Subspace& u, const Subspace& v, const Subspace& w);
/// S*A subseteq S and A*S subseteq S.
bool is_ideal(const Subspace& s);
/// Smallest ideal containing S: fixpoint of S <- S + S*A + A*S.
Subspace ideal_closure(const Subspace& s);

}  // namespace malcev

#endif

#include "malcev/subspace.hpp"

#include <sstream>

namespace malcev {

namespace {

// In-place reduction to RREF with pivots normalized to 1; zero rows removed.
void rref(std::vector<std::vector<Scalar>>& m, std::size_t ncols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    Scalar inv = m[rank][col].inv();
    for (std::size_t c = col; c < ncols; ++c) m[rank][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      Scalar f = m[r][col];
      for (std::size_t c = col; c < ncols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  m.resize(rank, std::vector<Scalar>());
}

void check_same_algebra(const Subspace& u, const Subspace& v) {
  if (u.algebra() != v.algebra() && !(*u.algebra() == *v.algebra()))
    throw AlgebraError("subspaces belong to different algebras");
}

Subspace span_rows(const AlgebraPtr& a, std::vector<std::vector<Scalar>> rows) {
  rref(rows, a->dim());
  std::vector<Element> elems;
  elems.reserve(rows.size());
  for (auto& r : rows) elems.push_back(a->element(std::move(r)));
  return Subspace::span(a, elems);
}

}  // namespace

Subspace Subspace::span(const AlgebraPtr& a, const std::vector<Element>& vectors) {
  std::vector<std::vector<Scalar>> rows;
  rows.reserve(vectors.size());
  for (const Element& v : vectors) {
    if (v.algebra() != a && !(*v.algebra() == *a))
      throw AlgebraError("span over mixed algebras");
    rows.push_back(v.coords());
  }
  rref(rows, a->dim());
  return Subspace(a, std::move(rows));
}

Subspace Subspace::zero(const AlgebraPtr& a) { return span(a, {}); }

Subspace Subspace::full(const AlgebraPtr& a) {
  std::vector<Element> basis;
  for (std::size_t i = 0; i < a->dim(); ++i) basis.push_back(a->basis_element(i));
  return span(a, basis);
}

std::vector<Element> Subspace::basis() const {
  std::vector<Element> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(alg_->element(r));
  return out;
}

bool Subspace::contains(const Element& x) const {
  alg_->element(x.coords());  // validates membership in this algebra's space
  std::vector<Scalar> v = x.coords();
  const std::size_t n = alg_->dim();
  for (const auto& row : rows_) {
    std::size_t p = 0;
    while (p < n && row[p].is_zero()) ++p;
    if (p == n || v[p].is_zero()) continue;
    Scalar f = v[p];
    for (std::size_t c = p; c < n; ++c) v[c] -= f * row[c];
  }
  for (const Scalar& c : v)
    if (!c.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  check_same_algebra(*this, other);
  for (const auto& row : other.rows_)
    if (!contains(alg_->element(row))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  check_same_algebra(*this, o);
  return rows_ == o.rows_;
}

std::string Subspace::str() const {
  if (rows_.empty()) return "{0}";
  std::ostringstream out;
  out << "span{";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) out << ", ";
    out << alg_->element(rows_[i]).str();
  }
  out << "}";
  return out.str();
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  check_same_algebra(u, v);
  std::vector<std::vector<Scalar>> rows = u.rows_;
  rows.insert(rows.end(), v.rows_.begin(), v.rows_.end());
  return span_rows(u.algebra(), std::move(rows));
}

Subspace subspace_product(const Subspace& u, const Subspace& v) {
  check_same_algebra(u, v);
  const AlgebraPtr& a = u.algebra();
  std::vector<Element> products;
  for (const Element& x : u.basis())
    for (const Element& y : v.basis()) products.push_back(a->multiply(x, y));
  return Subspace::span(a, products);
}

Subspace jacobian_span(const Subspace& u, const Subspace& v, const Subspace& w) {
  check_same_algebra(u, v);
  check_same_algebra(u, w);
  const AlgebraPtr& a = u.algebra();
  std::vector<Element> values;
  for (const Element& x : u.basis())
    for (const Element& y : v.basis())
      for (const Element& z : w.basis()) values.push_back(a->jacobian(x, y, z));
  return Subspace::span(a, values);
}

bool is_ideal(const Subspace& s) {
  Subspace whole = Subspace::full(s.algebra());
  return s.contains(subspace_product(s, whole)) && s.contains(subspace_product(whole, s));
}

Subspace ideal_closure(const Subspace& s) {
  Subspace whole = Subspace::full(s.algebra());
  Subspace cur = s;
  for (;;) {
    Subspace next =
        subspace_sum(cur, subspace_sum(subspace_product(cur, whole), subspace_product(whole, cur)));
    if (next == cur) return cur;
    cur = next;
  }
}

}  // namespace malcev

#include "malcev/algebra.hpp"

#include <set>
#include <sstream>

namespace malcev {

Element::Element(AlgebraPtr alg, std::vector<Scalar> coords)
    : alg_(std::move(alg)), coords_(std::move(coords)) {
  if (!alg_) throw AlgebraError("element without algebra");
  if (coords_.size() != alg_->dim()) throw AlgebraError("coordinate vector has wrong dimension");
  for (const Scalar& c : coords_)
    if (!(c.field() == alg_->field())) throw FieldError("field mismatch");
}

bool Element::is_zero() const {
  for (const Scalar& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

static void check_same_algebra(const Element& a, const Element& b) {
  if (a.algebra() != b.algebra() && !(*a.algebra() == *b.algebra()))
    throw AlgebraError("elements belong to different algebras");
}

Element Element::operator+(const Element& o) const {
  check_same_algebra(*this, o);
  std::vector<Scalar> c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return Element(alg_, std::move(c));
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const {
  std::vector<Scalar> c = coords_;
  for (Scalar& x : c) x = -x;
  return Element(alg_, std::move(c));
}

Element Element::operator*(const Scalar& s) const {
  std::vector<Scalar> c = coords_;
  for (Scalar& x : c) x *= s;
  return Element(alg_, std::move(c));
}

bool Element::operator==(const Element& o) const {
  check_same_algebra(*this, o);
  return coords_ == o.coords_;
}

std::string Element::str() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].is_zero()) continue;
    std::string cs = coords_[i].str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (cs != "1") out << cs << "*";
    out << alg_->labels()[i];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

AlgebraPtr Algebra::create(FieldSpec field, std::size_t dim,
                           std::vector<std::vector<std::vector<Scalar>>> table,
                           std::vector<std::string> labels) {
  if (dim < 1) throw AlgebraError("dimension must be positive");
  if (labels.empty()) {
    for (std::size_t i = 1; i <= dim; ++i) labels.push_back("e" + std::to_string(i));
  }
  if (labels.size() != dim) throw AlgebraError("label count does not match dimension");
  std::set<std::string> distinct(labels.begin(), labels.end());
  if (distinct.size() != dim) throw AlgebraError("basis labels must be distinct");
  if (table.size() != dim) throw AlgebraError("structure table has wrong shape");
  for (const auto& row : table) {
    if (row.size() != dim) throw AlgebraError("structure table has wrong shape");
    for (const auto& entry : row) {
      if (entry.size() != dim) throw AlgebraError("structure table has wrong shape");
      for (const Scalar& c : entry)
        if (!(c.field() == field)) throw FieldError("field mismatch");
    }
  }
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->field_ = field;
  a->dim_ = dim;
  a->table_ = std::move(table);
  a->labels_ = std::move(labels);
  return a;
}

Element Algebra::zero() const {
  return Element(shared_from_this(), std::vector<Scalar>(dim_, Scalar(field_)));
}

Element Algebra::basis_element(std::size_t i) const {
  if (i >= dim_) throw AlgebraError("basis index out of range");
  std::vector<Scalar> c(dim_, Scalar(field_));
  c[i] = Scalar::from_int(field_, 1);
  return Element(shared_from_this(), std::move(c));
}

Element Algebra::element(std::vector<Scalar> coords) const {
  return Element(shared_from_this(), std::move(coords));
}

void Algebra::check_member(const Element& x) const {
  if (x.algebra().get() != this && !(*x.algebra() == *this))
    throw AlgebraError("element belongs to a different algebra");
}

Element Algebra::multiply(const Element& x, const Element& y) const {
  check_member(x);
  check_member(y);
  std::vector<Scalar> out(dim_, Scalar(field_));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar coef = x[i] * y[j];
      const std::vector<Scalar>& cij = table_[i][j];
      for (std::size_t k = 0; k < dim_; ++k) {
        if (!cij[k].is_zero()) out[k] += coef * cij[k];
      }
    }
  }
  return Element(shared_from_this(), std::move(out));
}

Element Algebra::jacobian(const Element& x, const Element& y, const Element& z) const {
  return multiply(multiply(x, y), z) + multiply(multiply(y, z), x) + multiply(multiply(z, x), y);
}

bool Algebra::operator==(const Algebra& o) const {
  return dim_ == o.dim_ && field_ == o.field_ && labels_ == o.labels_ && table_ == o.table_;
}

namespace {

IdentityWitness ok() { return IdentityWitness{true, std::nullopt}; }

IdentityWitness fail(std::vector<int> idx, Element lhs, Element rhs, std::string desc) {
  return IdentityWitness{
      false, IdentityWitness::Counterexample{std::move(idx), std::move(lhs), std::move(rhs),
                                             std::move(desc)}};
}

}  // namespace

IdentityWitness is_anticommutative(const AlgebraPtr& a) {
  const std::size_t n = a->dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Element lhs = a->multiply(a->basis_element(i), a->basis_element(j));
      Element rhs = -a->multiply(a->basis_element(j), a->basis_element(i));
      if (lhs != rhs)
        return fail({int(i) + 1, int(j) + 1}, lhs, rhs,
                    "e_i*e_j != -(e_j*e_i) at (i,j)");
    }
  }
  return ok();
}

IdentityWitness is_lie(const AlgebraPtr& a) {
  IdentityWitness anti = is_anticommutative(a);
  if (!anti.verdict) return anti;
  const std::size_t n = a->dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Element jac = a->jacobian(a->basis_element(i), a->basis_element(j), a->basis_element(k));
        if (!jac.is_zero())
          return fail({int(i) + 1, int(j) + 1, int(k) + 1}, jac, a->zero(),
                      "J(e_i,e_j,e_k) != 0");
      }
  return ok();
}

IdentityWitness is_malcev(const AlgebraPtr& a) {
  IdentityWitness anti = is_anticommutative(a);
  if (!anti.verdict) return anti;
  return check_identity(a, MalcevIdentity::Id4);
}

IdentityWitness check_identity(const AlgebraPtr& a, MalcevIdentity which) {
  const std::size_t n = a->dim();
  auto e = [&](std::size_t i) { return a->basis_element(i); };

  if (which == MalcevIdentity::Id4) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Element x = e(i) + e(j);
        Element sq = a->multiply(x, x);
        if (!sq.is_zero())
          return fail({int(i) + 1, int(j) + 1}, sq, a->zero(), "x^2 != 0 for x=e_i+e_j");
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            Element x = e(i), y = e(j), z = e(k), t = e(l);
            Element lhs = a->multiply(a->multiply(x, z), a->multiply(y, t));
            Element rhs = a->multiply(a->multiply(a->multiply(x, y), z), t) +
                          a->multiply(a->multiply(a->multiply(y, z), t), x) +
                          a->multiply(a->multiply(a->multiply(z, t), x), y) +
                          a->multiply(a->multiply(a->multiply(t, x), y), z);
            if (lhs != rhs)
              return fail({int(i) + 1, int(j) + 1, int(k) + 1, int(l) + 1}, lhs, rhs,
                          "(xz)(yt) != ((xy)z)t+((yz)t)x+((zt)x)y+((tx)y)z");
          }
    return ok();
  }

  if (which == MalcevIdentity::Id5) {
    // J(x,y,z)t = (1/2)(J(t,x,zy)+J(t,y,xz)+J(t,z,yx)); checked as
    // 2*J(x,y,z)t = sum so that F_p residues need no halving.
    Scalar two = Scalar::from_int(a->field(), 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            Element x = e(i), y = e(j), z = e(k), t = e(l);
            Element lhs = a->multiply(a->jacobian(x, y, z), t) * two;
            Element rhs = a->jacobian(t, x, a->multiply(z, y)) +
                          a->jacobian(t, y, a->multiply(x, z)) +
                          a->jacobian(t, z, a->multiply(y, x));
            if (lhs != rhs)
              return fail({int(i) + 1, int(j) + 1, int(k) + 1, int(l) + 1}, lhs, rhs,
                          "2*J(x,y,z)t != J(t,x,zy)+J(t,y,xz)+J(t,z,yx)");
          }
    return ok();
  }

  // id1-id3 have a repeated variable; substituting x = e_i + e_j over all
  // basis pairs is equivalent to polarization at characteristic != 2.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Element x = e(i) + e(j);
      Element sq = a->multiply(x, x);
      if (!sq.is_zero())
        return fail({int(i) + 1, int(j) + 1}, sq, a->zero(), "x^2 != 0 for x=e_i+e_j");
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Element y = e(k), z = e(l);
          Element lhs(a->zero()), rhs(a->zero());
          std::string desc;
          switch (which) {
            case MalcevIdentity::Id1:
              lhs = a->jacobian(x, y, a->multiply(x, z));
              rhs = a->multiply(a->jacobian(x, y, z), x);
              desc = "J(x,y,xz) != J(x,y,z)x for x=e_i+e_j";
              break;
            case MalcevIdentity::Id2:
              lhs = a->jacobian(x, a->multiply(x, y), z);
              rhs = a->multiply(a->jacobian(x, y, z), x);
              desc = "J(x,xy,z) != J(x,y,z)x for x=e_i+e_j";
              break;
            case MalcevIdentity::Id3:
              lhs = a->multiply(a->multiply(x, y), a->multiply(x, z));
              rhs = a->multiply(a->multiply(a->multiply(x, y), z), x) +
                    a->multiply(a->multiply(a->multiply(y, z), x), x) +
                    a->multiply(a->multiply(a->multiply(z, x), x), y);
              desc = "(xy)(xz) != ((xy)z)x+((yz)x)x+((zx)x)y for x=e_i+e_j";
              break;
            default:
              throw AlgebraError("unreachable");
          }
          if (lhs != rhs)
            return fail({int(i) + 1, int(j) + 1, int(k) + 1, int(l) + 1}, lhs, rhs, desc);
        }
    }
  return ok();
}

AlgebraPtr minus_algebra(const AlgebraPtr& a) {
  const std::size_t n = a->dim();
  std::vector<std::vector<std::vector<Scalar>>> table(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(a->field()))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        table[i][j][k] = a->table_entry(i, j)[k] - a->table_entry(j, i)[k];
  return Algebra::create(a->field(), n, std::move(table), a->labels());
}

}  // namespace malcev

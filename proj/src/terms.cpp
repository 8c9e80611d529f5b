#include "malcev/terms.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace malcev {

TermPtr MagmaTerm::leaf(std::string symbol) {
  auto t = std::make_shared<MagmaTerm>();
  t->kind = Kind::Leaf;
  t->symbol = std::move(symbol);
  return t;
}

TermPtr MagmaTerm::node(TermPtr left, TermPtr right) {
  auto t = std::make_shared<MagmaTerm>();
  t->kind = Kind::Node;
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

TermPtr MagmaTerm::jnode(TermPtr t1, TermPtr t2, TermPtr t3) {
  auto t = std::make_shared<MagmaTerm>();
  t->kind = Kind::JNode;
  t->j1 = std::move(t1);
  t->j2 = std::move(t2);
  t->j3 = std::move(t3);
  return t;
}

std::size_t term_length(const TermPtr& t) {
  switch (t->kind) {
    case MagmaTerm::Kind::Leaf: return 1;
    case MagmaTerm::Kind::Node: return term_length(t->left) + term_length(t->right);
    case MagmaTerm::Kind::JNode:
      return term_length(t->j1) + term_length(t->j2) + term_length(t->j3);
  }
  return 0;
}

bool contains_jnode(const TermPtr& t) {
  switch (t->kind) {
    case MagmaTerm::Kind::Leaf: return false;
    case MagmaTerm::Kind::Node: return contains_jnode(t->left) || contains_jnode(t->right);
    case MagmaTerm::Kind::JNode: return true;
  }
  return false;
}

std::string term_str(const TermPtr& t) {
  switch (t->kind) {
    case MagmaTerm::Kind::Leaf: return t->symbol;
    case MagmaTerm::Kind::Node:
      return "(" + term_str(t->left) + "*" + term_str(t->right) + ")";
    case MagmaTerm::Kind::JNode:
      return "J(" + term_str(t->j1) + "," + term_str(t->j2) + "," + term_str(t->j3) + ")";
  }
  return "";
}

namespace {

void sym_preorder(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case MagmaTerm::Kind::Leaf: out += t->symbol; out += ','; break;
    case MagmaTerm::Kind::Node:
      sym_preorder(t->left, out);
      sym_preorder(t->right, out);
      break;
    case MagmaTerm::Kind::JNode:
      sym_preorder(t->j1, out);
      sym_preorder(t->j2, out);
      sym_preorder(t->j3, out);
      break;
  }
}

void shape_preorder(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case MagmaTerm::Kind::Leaf: out += '.'; break;
    case MagmaTerm::Kind::Node:
      out += '(';
      shape_preorder(t->left, out);
      shape_preorder(t->right, out);
      out += ')';
      break;
    case MagmaTerm::Kind::JNode:
      out += "J(";
      shape_preorder(t->j1, out);
      shape_preorder(t->j2, out);
      shape_preorder(t->j3, out);
      out += ')';
      break;
  }
}

struct TermKey {
  std::size_t length;
  std::string symbols;
  std::string shape;

  bool operator<(const TermKey& o) const {
    if (length != o.length) return length < o.length;
    if (symbols != o.symbols) return symbols < o.symbols;
    return shape < o.shape;
  }
  bool operator==(const TermKey& o) const {
    return length == o.length && symbols == o.symbols && shape == o.shape;
  }
};

TermKey term_key(const TermPtr& t) {
  TermKey k;
  k.length = term_length(t);
  sym_preorder(t, k.symbols);
  shape_preorder(t, k.shape);
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// parser

namespace {

class TermParser {
public:
  explicit TermParser(const std::string& s) : s_(s) {}

  TermPtr parse() {
    TermPtr t = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

private:
  [[noreturn]] void fail(const std::string& msg) {
    throw TermError("term syntax error at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  TermPtr expr() {
    TermPtr f = factor();
    if (peek() == '*') {
      ++pos_;
      TermPtr g = factor();
      if (peek() == '*') fail("product is not fully parenthesized");
      return MagmaTerm::node(f, g);
    }
    return f;
  }

  TermPtr factor() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      TermPtr t = expr();
      expect(')');
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        id += s_[pos_++];
      if (id == "J" && peek() == '(') {
        ++pos_;
        TermPtr a = expr();
        expect(',');
        TermPtr b = expr();
        expect(',');
        TermPtr d = expr();
        expect(')');
        return MagmaTerm::jnode(a, b, d);
      }
      return MagmaTerm::leaf(id);
    }
    fail("expected identifier, '(' or 'J('");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

TermPtr parse_term(const std::string& text) { return TermParser(text).parse(); }

// ---------------------------------------------------------------------------
// stats and classification

MarkedAlphabet MarkedAlphabet::with_marks(std::set<std::string> symbols,
                                          std::set<std::string> marked) {
  for (const auto& m : marked)
    if (!symbols.count(m)) throw TermError("marked symbol not in alphabet: " + m);
  return MarkedAlphabet{std::move(symbols), std::move(marked)};
}

TermStats term_stats(const TermPtr& t, const MarkedAlphabet& marks) {
  switch (t->kind) {
    case MagmaTerm::Kind::Leaf:
      return TermStats{1, marks.marked.count(t->symbol) ? std::size_t(1) : 0};
    case MagmaTerm::Kind::Node: {
      TermStats a = term_stats(t->left, marks), b = term_stats(t->right, marks);
      return TermStats{a.length + b.length, a.weight + b.weight};
    }
    case MagmaTerm::Kind::JNode: {
      TermStats a = term_stats(t->j1, marks), b = term_stats(t->j2, marks),
                c = term_stats(t->j3, marks);
      return TermStats{a.length + b.length + c.length, a.weight + b.weight + c.weight};
    }
  }
  return {};
}

namespace {

bool is_right_product(const TermPtr& t) {
  if (t->kind == MagmaTerm::Kind::Leaf) return true;
  if (t->kind != MagmaTerm::Kind::Node) return false;
  return t->right->kind == MagmaTerm::Kind::Leaf && is_right_product(t->left);
}

bool is_left_product(const TermPtr& t) {
  if (t->kind == MagmaTerm::Kind::Leaf) return true;
  if (t->kind != MagmaTerm::Kind::Node) return false;
  return t->left->kind == MagmaTerm::Kind::Leaf && is_left_product(t->right);
}

// left-combed product of right-normed factors
bool is_normal_product(const TermPtr& t) {
  if (is_right_product(t)) return true;
  if (t->kind != MagmaTerm::Kind::Node) return false;
  return is_normal_product(t->left) && is_right_product(t->right);
}

}  // namespace

TermClass classify(const TermPtr& t) {
  if (contains_jnode(t)) throw TermError("jnode input rejected");
  if (is_right_product(t)) return TermClass::RightProduct;
  if (is_left_product(t)) return TermClass::LeftProduct;
  if (is_normal_product(t)) return TermClass::NormalProduct;
  return TermClass::General;
}

// ---------------------------------------------------------------------------
// TermCombo

TermCombo::TermCombo(const TermPtr& t) { add(Rat(1), t); }

void TermCombo::add(const Rat& coeff, const TermPtr& t) {
  if (coeff == 0) return;
  TermKey key = term_key(t);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const std::pair<Rat, TermPtr>& e, const TermKey& k) {
                               return term_key(e.second) < k;
                             });
  if (it != entries_.end() && term_key(it->second) == key) {
    it->first += coeff;
    if (it->first == 0) entries_.erase(it);
  } else {
    entries_.insert(it, {coeff, t});
  }
}

void TermCombo::add(const Rat& coeff, const TermCombo& other) {
  for (const auto& [c, t] : other.entries_) add(coeff * c, t);
}

std::string TermCombo::str() const {
  if (entries_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [c, t] : entries_) {
    Rat a = c;
    if (first) {
      if (a < 0) { out << "-"; a = -a; }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (a != 1) out << a << "*";
    out << term_str(t);
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// P-som expansion

TermCombo psom_expand(const TermPtr& q0, const TermPtr& p0) {
  if (contains_jnode(q0) || contains_jnode(p0)) throw TermError("jnode input rejected");
  if (!is_right_product(p0) || term_length(p0) < 2)
    throw TermError("P0 must be a right product of length >= 2");

  // spine leaves of P0 = ((a_m a_{m-1})...)a_1, collected as [a_m, ..., a_1]
  std::vector<TermPtr> leaves;
  std::function<void(const TermPtr&)> spine = [&](const TermPtr& t) {
    if (t->kind == MagmaTerm::Kind::Leaf) {
      leaves.push_back(t);
      return;
    }
    spine(t->left);
    leaves.push_back(t->right);
  };
  spine(p0);
  std::size_t m = leaves.size();
  auto a = [&](std::size_t i) { return leaves[m - i]; };  // a_1 ... a_m

  // Q_i = a_i Q_{i-1}; prefix right products P_i = a_m ... a_{i+1}
  std::vector<TermPtr> q(m);
  q[0] = q0;
  for (std::size_t i = 1; i < m; ++i) q[i] = MagmaTerm::node(a(i), q[i - 1]);
  std::vector<TermPtr> pref(m);
  pref[0] = leaves[0];
  for (std::size_t k = 1; k < m; ++k) pref[k] = MagmaTerm::node(pref[k - 1], leaves[k]);

  TermCombo combo;
  for (std::size_t i = 1; i <= m - 1; ++i) {
    const TermPtr& pi = pref[m - i - 1];
    combo.add(Rat(1), MagmaTerm::node(MagmaTerm::node(q[i - 1], pi), a(i)));
    combo.add(Rat(-1), MagmaTerm::jnode(q[i - 1], pi, a(i)));
  }
  combo.add(Rat(1), MagmaTerm::node(q[m - 1], a(m)));
  return combo;
}

// ---------------------------------------------------------------------------
// right-normed rewriting

namespace {

// J(x,y,z)t = 1/2 (J(t,x,zy) + J(t,y,xz) + J(t,z,yx))  [identity 5]
void add_jnode_times_right(TermCombo& out, const Rat& coeff, const TermPtr& j,
                           const TermPtr& t) {
  Rat half = coeff / 2;
  out.add(half, MagmaTerm::jnode(t, j->j1, MagmaTerm::node(j->j3, j->j2)));
  out.add(half, MagmaTerm::jnode(t, j->j2, MagmaTerm::node(j->j1, j->j3)));
  out.add(half, MagmaTerm::jnode(t, j->j3, MagmaTerm::node(j->j2, j->j1)));
}

TermCombo rn(const TermPtr& t) {
  if (t->kind == MagmaTerm::Kind::Leaf) return TermCombo(t);
  const TermPtr& l = t->left;
  const TermPtr& r = t->right;
  TermCombo out;
  if (r->kind == MagmaTerm::Kind::Leaf) {
    TermCombo lc = rn(l);
    for (const auto& [c, x] : lc.entries()) {
      if (x->kind == MagmaTerm::Kind::JNode)
        add_jnode_times_right(out, c, x, r);
      else
        out.add(c, MagmaTerm::node(x, r));
    }
    return out;
  }
  TermCombo rc = rn(r);
  for (const auto& [c, x] : rc.entries()) {
    if (x->kind == MagmaTerm::Kind::JNode) {
      // l * J = -(J * l)
      add_jnode_times_right(out, -c, x, l);
      continue;
    }
    TermCombo exp = psom_expand(l, x);
    for (const auto& [d, y] : exp.entries()) {
      if (y->kind == MagmaTerm::Kind::JNode)
        out.add(c * d, y);
      else
        out.add(c * d, rn(y));
    }
  }
  return out;
}

}  // namespace

TermCombo to_right_normed(const TermPtr& t) {
  if (contains_jnode(t)) throw TermError("jnode input rejected");
  return rn(t);
}

// ---------------------------------------------------------------------------
// normal-product rewriting
//
// A tree resists reorientation into a normal product only when some node has
// a non-right-product subtree on both sides; the smallest non-right product
// has 4 leaves, so every tree with at most 7 leaves turns into a single
// signed normal product using anticommutativity alone.  Beyond 7 leaves the
// rewriting would genuinely need the Malcev identity, hence the length cap.

namespace {

// can some signed reorientation of t be a right product / a normal product?
bool can_right(const TermPtr& t) {
  if (t->kind == MagmaTerm::Kind::Leaf) return true;
  return (t->right->kind == MagmaTerm::Kind::Leaf && can_right(t->left)) ||
         (t->left->kind == MagmaTerm::Kind::Leaf && can_right(t->right));
}

bool can_normal(const TermPtr& t) {
  if (can_right(t)) return true;
  if (t->kind != MagmaTerm::Kind::Node) return false;
  return (can_normal(t->left) && can_right(t->right)) ||
         (can_normal(t->right) && can_right(t->left));
}

std::pair<TermPtr, int> orient_right(const TermPtr& t) {
  if (t->kind == MagmaTerm::Kind::Leaf) return {t, 1};
  if (t->right->kind == MagmaTerm::Kind::Leaf && can_right(t->left)) {
    auto [a, s] = orient_right(t->left);
    return {MagmaTerm::node(a, t->right), s};
  }
  auto [a, s] = orient_right(t->right);
  return {MagmaTerm::node(a, t->left), -s};
}

std::pair<TermPtr, int> orient_normal(const TermPtr& t) {
  if (can_right(t)) return orient_right(t);
  if (can_normal(t->left) && can_right(t->right)) {
    auto [n, sn] = orient_normal(t->left);
    auto [q, sq] = orient_right(t->right);
    return {MagmaTerm::node(n, q), sn * sq};
  }
  auto [n, sn] = orient_normal(t->right);
  auto [q, sq] = orient_right(t->left);
  return {MagmaTerm::node(n, q), -sn * sq};
}

}  // namespace

TermCombo to_normal_products(const TermPtr& t) {
  if (contains_jnode(t)) throw TermError("jnode input rejected");
  std::size_t m = term_length(t);
  if (m == 1) return TermCombo(t);
  if (m > 7) throw TermError("normal-product rewriting supported up to length 7");
  if (!can_normal(t)) throw TermError("normal-product rewriting failed");  // unreachable for m <= 7
  auto [rep, sign] = orient_normal(t);
  TermCombo combo;
  combo.add(Rat(sign), rep);
  return combo;
}

// ---------------------------------------------------------------------------
// evaluation

Element evaluate(const TermPtr& t, const std::map<std::string, Element>& assignment,
                 const AlgebraPtr& a) {
  switch (t->kind) {
    case MagmaTerm::Kind::Leaf: {
      auto it = assignment.find(t->symbol);
      if (it == assignment.end()) throw TermError("unassigned symbol: " + t->symbol);
      return it->second;
    }
    case MagmaTerm::Kind::Node:
      return a->multiply(evaluate(t->left, assignment, a), evaluate(t->right, assignment, a));
    case MagmaTerm::Kind::JNode:
      return a->jacobian(evaluate(t->j1, assignment, a), evaluate(t->j2, assignment, a),
                         evaluate(t->j3, assignment, a));
  }
  throw TermError("corrupt term");
}

Element evaluate(const TermCombo& c, const std::map<std::string, Element>& assignment,
                 const AlgebraPtr& a) {
  Element acc = a->zero();
  for (const auto& [coeff, t] : c.entries())
    acc = acc + evaluate(t, assignment, a) * Scalar::from_rat(a->field(), coeff);
  return acc;
}

}  // namespace malcev

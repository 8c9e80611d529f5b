#ifndef MALCEV_TERMS_HPP
#define MALCEV_TERMS_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "malcev/algebra.hpp"

namespace malcev {

class TermError : public std::runtime_error {
public:
  explicit TermError(const std::string& what) : std::runtime_error(what) {}
};

struct MagmaTerm;
using TermPtr = std::shared_ptr<const MagmaTerm>;

/// Free-magma product term: leaf symbol, binary product node, or a symbolic
/// Jacobian node J(t1,t2,t3) kept unexpanded.
struct MagmaTerm {
  enum class Kind { Leaf, Node, JNode };

  Kind kind;
  std::string symbol;      // Leaf
  TermPtr left, right;     // Node
  TermPtr j1, j2, j3;      // JNode

  static TermPtr leaf(std::string symbol);
  static TermPtr node(TermPtr left, TermPtr right);
  static TermPtr jnode(TermPtr t1, TermPtr t2, TermPtr t3);
};

/// Number of leaves, counting leaves inside jnodes.
std::size_t term_length(const TermPtr& t);
bool contains_jnode(const TermPtr& t);
std::string term_str(const TermPtr& t);

/// Parses fully parenthesized products over identifiers, e.g. ((a*b)*c)*(d*e)
/// or J(a,b,c); whitespace insignificant.
TermPtr parse_term(const std::string& text);

struct MarkedAlphabet {
  std::set<std::string> symbols;
  std::set<std::string> marked;  // subset of symbols flagged as B-symbols

  static MarkedAlphabet with_marks(std::set<std::string> symbols, std::set<std::string> marked);
};

struct TermStats {
  std::size_t length = 0;
  std::size_t weight = 0;
};

TermStats term_stats(const TermPtr& t, const MarkedAlphabet& marks);

enum class TermClass { RightProduct, LeftProduct, NormalProduct, General };

/// Most specific class, RightProduct preferred; rejects jnodes.
TermClass classify(const TermPtr& t);

/// Formal linear combination of terms with rational coefficients, canonically
/// sorted by (length, preorder symbols, shape) with duplicates merged and
/// zero coefficients dropped.
class TermCombo {
public:
  TermCombo() = default;
  explicit TermCombo(const TermPtr& t);

  void add(const Rat& coeff, const TermPtr& t);
  void add(const Rat& coeff, const TermCombo& other);

  const std::vector<std::pair<Rat, TermPtr>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  std::string str() const;

private:
  std::vector<std::pair<Rat, TermPtr>> entries_;
};

/// P-som expansion of Q0*P0 where P0 is a right product of length m >= 2:
/// sum_{i=1}^{m-1} (Q_{i-1} P_i) a_i + Q_{m-1} a_m - sum J(Q_{i-1}, P_i, a_i)
/// with Q_i = a_i Q_{i-1}. Exact in any anticommutative algebra.
TermCombo psom_expand(const TermPtr& q0, const TermPtr& p0);

/// Linear combination of right products of the input's length plus symbolic
/// Jacobian nodes; exact evaluation equality in Malcev algebras, equality
/// modulo the Jacobian span when jnodes are dropped.
TermCombo to_right_normed(const TermPtr& t);

/// Linear combination of normal products of the input's length and weight;
/// valid in Malcev algebras (uses the 4-term rearrangement of identity 4).
TermCombo to_normal_products(const TermPtr& t);

Element evaluate(const TermPtr& t, const std::map<std::string, Element>& assignment,
                 const AlgebraPtr& a);
Element evaluate(const TermCombo& c, const std::map<std::string, Element>& assignment,
                 const AlgebraPtr& a);

}  // namespace malcev

#endif

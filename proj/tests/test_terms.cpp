#include <doctest.h>

#include "malcev/rng.hpp"
#include "malcev/subspace.hpp"
#include "malcev/terms.hpp"
#include "support/corpus.hpp"

using namespace malcev;
using testsupport::load;

namespace {

TermPtr L(const std::string& s) { return MagmaTerm::leaf(s); }
TermPtr N(const TermPtr& a, const TermPtr& b) { return MagmaTerm::node(a, b); }

TermPtr random_tree(const std::vector<std::string>& symbols, std::size_t nleaves,
                    SplitMix64& rng) {
  if (nleaves == 1) return L(symbols[rng.below(symbols.size())]);
  std::size_t k = 1 + rng.below(nleaves - 1);
  return N(random_tree(symbols, k, rng), random_tree(symbols, nleaves - k, rng));
}

std::map<std::string, Element> random_assignment(const AlgebraPtr& a,
                                                 const std::vector<std::string>& symbols,
                                                 SplitMix64& rng) {
  std::map<std::string, Element> out;
  for (const auto& s : symbols) {
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < a->dim(); ++i)
      c.push_back(Scalar::from_int(a->field(), static_cast<long long>(rng.below(7)) - 3));
    out.insert({s, a->element(c)});
  }
  return out;
}

const std::vector<std::string> kSyms = {"a", "b", "c", "d", "u", "v"};

std::vector<AlgebraPtr> malcev_corpus() {
  return {load("example_malcev4.tbl"), load("example_malcev4_f3.tbl"), load("heisenberg.tbl"),
          load("filiform4.tbl"), load("sl2.tbl"), minus_algebra(load("octonion.tbl"))};
}

}  // namespace

TEST_CASE("term parsing and printing") {
  TermPtr t = parse_term("((a*b)*c)*(d*e)");
  CHECK(term_str(t) == "(((a*b)*c)*(d*e))");
  CHECK(term_length(t) == 5);
  CHECK(term_str(parse_term(" ( a * ( b * c ) ) ")) == "(a*(b*c))");
  TermPtr j = parse_term("J(a,(b*c),d)");
  CHECK(contains_jnode(j));
  CHECK(term_length(j) == 4);
  CHECK(term_str(parse_term(term_str(j))) == term_str(j));  // round trip

  CHECK_THROWS_AS(parse_term("a*b*c"), TermError);
  CHECK_THROWS_AS(parse_term("(a*)"), TermError);
  CHECK_THROWS_AS(parse_term("J(a,b)"), TermError);
  CHECK_THROWS_AS(parse_term(""), TermError);
  CHECK_THROWS_AS(parse_term("a b"), TermError);
}

TEST_CASE("term stats") {
  MarkedAlphabet marks = MarkedAlphabet::with_marks({"a", "b", "c"}, {"b"});
  TermStats s = term_stats(parse_term("((a*b)*c)"), marks);
  CHECK(s.length == 3);
  CHECK(s.weight == 1);

  TermStats j = term_stats(parse_term("J(b,b,a)"), marks);
  CHECK(j.length == 3);
  CHECK(j.weight == 2);

  // weight additivity on nodes
  TermPtr u = parse_term("(a*b)"), v = parse_term("(b*c)");
  CHECK(term_stats(N(u, v), marks).weight ==
        term_stats(u, marks).weight + term_stats(v, marks).weight);

  CHECK_THROWS_AS(MarkedAlphabet::with_marks({"a"}, {"z"}), TermError);
}

TEST_CASE("classification") {
  CHECK(classify(parse_term("((a*b)*c)*d")) == TermClass::RightProduct);
  CHECK(classify(parse_term("a*(b*(c*d))")) == TermClass::LeftProduct);
  CHECK(classify(parse_term("(a*b)*(c*d)")) == TermClass::NormalProduct);
  CHECK(classify(parse_term("(a*(b*c))*d")) == TermClass::NormalProduct);  // factors a, bc, d
  CHECK(classify(parse_term("(a*b)*(b*(c*d))")) == TermClass::General);
  CHECK(classify(parse_term("a")) == TermClass::RightProduct);  // most specific wins
  CHECK(classify(parse_term("a*b")) == TermClass::RightProduct);
  CHECK(classify(parse_term("((a*b)*(c*d))*(u*v)")) == TermClass::NormalProduct);
  CHECK_THROWS_AS(classify(parse_term("J(a,b,c)")), TermError);
}

TEST_CASE("psom expansion base cases") {
  TermPtr q0 = L("q");
  SUBCASE("m = 2") {
    TermCombo c = psom_expand(q0, parse_term("a2*a1"));
    // q(a2 a1) = (q a2)a1 + (a1 q)a2 - J(q, a2, a1)
    CHECK(c.str() == "((a1*q)*a2) + ((q*a2)*a1) - J(q,a2,a1)");
  }
  SUBCASE("m = 3") {
    TermCombo c = psom_expand(q0, parse_term("(a3*a2)*a1"));
    std::string s = c.str();
    // Q0 P1 a1 + Q1 a3 a2 + Q2 a3 - J(Q1, a3, a2) - J(Q0, a3 a2, a1)
    CHECK(s.find("((q*(a3*a2))*a1)") != std::string::npos);
    CHECK(s.find("(((a1*q)*a3)*a2)") != std::string::npos);
    CHECK(s.find("((a2*(a1*q))*a3)") != std::string::npos);
    CHECK(s.find("J((a1*q),a3,a2)") != std::string::npos);
    CHECK(s.find("J(q,(a3*a2),a1)") != std::string::npos);
    CHECK(c.entries().size() == 5);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(psom_expand(q0, L("a")), TermError);
    CHECK_THROWS_AS(psom_expand(q0, parse_term("a*(b*c)")), TermError);
    CHECK_THROWS_AS(psom_expand(parse_term("J(a,b,c)"), parse_term("a*b")), TermError);
  }
}

TEST_CASE("psom expansion length bookkeeping") {
  TermPtr q0 = parse_term("(x*y)");
  TermCombo c = psom_expand(q0, parse_term("((a3*a2)*a1)"));
  for (const auto& [coeff, t] : c.entries()) {
    CHECK((coeff == 1 || coeff == -1));
    CHECK(term_length(t) == 5);  // #(Q0) + #(P0)
  }
}

TEST_CASE("psom expansion evaluates exactly in anticommutative algebras") {
  SplitMix64 rng(101);
  for (const AlgebraPtr& a : malcev_corpus()) {
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t mq = 1 + rng.below(3);
      std::size_t mp = 2 + rng.below(3);
      TermPtr q0 = random_tree(kSyms, mq, rng);
      TermPtr p0 = L(kSyms[rng.below(kSyms.size())]);
      for (std::size_t i = 1; i < mp; ++i) p0 = N(p0, L(kSyms[rng.below(kSyms.size())]));
      auto asg = random_assignment(a, kSyms, rng);
      Element direct = evaluate(N(q0, p0), asg, a);
      Element expanded = evaluate(psom_expand(q0, p0), asg, a);
      CHECK(direct == expanded);
    }
  }
}

TEST_CASE("to_right_normed structure") {
  TermPtr t = parse_term("a*(b*c)");
  TermCombo c = to_right_normed(t);
  std::size_t rights = 0, jnodes = 0;
  for (const auto& [coeff, term] : c.entries()) {
    if (term->kind == MagmaTerm::Kind::JNode) {
      ++jnodes;
    } else {
      ++rights;
      CHECK(classify(term) == TermClass::RightProduct);
      CHECK(term_length(term) == 3);
    }
  }
  CHECK(rights == 2);
  CHECK(jnodes == 1);

  // fixpoint on already right-normed input
  TermPtr r = parse_term("((a*b)*c)*d");
  TermCombo fix = to_right_normed(r);
  REQUIRE(fix.entries().size() == 1);
  CHECK(fix.entries()[0].first == 1);
  CHECK(term_str(fix.entries()[0].second) == term_str(r));

  CHECK_THROWS_AS(to_right_normed(parse_term("J(a,b,c)")), TermError);
}

TEST_CASE("to_right_normed preserves length and weight per non-jnode term") {
  SplitMix64 rng(202);
  MarkedAlphabet marks = MarkedAlphabet::with_marks(
      {kSyms.begin(), kSyms.end()}, {"b", "d"});
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng.below(5);
    TermPtr t = random_tree(kSyms, n, rng);
    TermStats in = term_stats(t, marks);
    TermCombo rn = to_right_normed(t);
    for (const auto& [coeff, term] : rn.entries()) {
      if (term->kind == MagmaTerm::Kind::JNode) {
        CHECK(term_length(term) == in.length);  // jnodes keep the leaves too
        continue;
      }
      CHECK(classify(term) == TermClass::RightProduct);
      TermStats out = term_stats(term, marks);
      CHECK(out.length == in.length);
      CHECK(out.weight == in.weight);
    }
  }
}

TEST_CASE("to_right_normed evaluates exactly in Malcev algebras") {
  SplitMix64 rng(303);
  for (const AlgebraPtr& a : malcev_corpus()) {
    for (int trial = 0; trial < 20; ++trial) {
      TermPtr t = random_tree(kSyms, 2 + rng.below(5), rng);
      auto asg = random_assignment(a, kSyms, rng);
      CHECK(evaluate(t, asg, a) == evaluate(to_right_normed(t), asg, a));
    }
  }
}

TEST_CASE("to_right_normed modulo jacobian span in arbitrary anticommutative algebras") {
  // dropping jnode terms leaves a residual inside the ideal generated by
  // J(A,A,A); on Malcev corpus members the residual lies in the span itself
  SplitMix64 rng(404);
  FieldSpec f7 = FieldSpec::prime_field(7);
  std::vector<AlgebraPtr> algebras;
  for (int k = 0; k < 3; ++k) {
    std::size_t n = 4;
    std::vector<std::vector<std::vector<Scalar>>> table(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(f7))));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          Scalar c = Scalar::from_int(f7, static_cast<long long>(rng.below(7)));
          table[i][j][l] = c;
          table[j][i][l] = -c;
        }
    algebras.push_back(Algebra::create(f7, n, std::move(table)));
  }
  for (const AlgebraPtr& a : algebras) {
    REQUIRE(is_anticommutative(a).verdict);
    Subspace whole = Subspace::full(a);
    Subspace jideal = ideal_closure(jacobian_span(whole, whole, whole));
    for (int trial = 0; trial < 15; ++trial) {
      TermPtr t = random_tree(kSyms, 2 + rng.below(4), rng);
      auto asg = random_assignment(a, kSyms, rng);
      Element dropped = a->zero();
      TermCombo rn = to_right_normed(t);
      for (const auto& [coeff, term] : rn.entries())
        if (term->kind != MagmaTerm::Kind::JNode)
          dropped = dropped + evaluate(term, asg, a) * Scalar::from_rat(a->field(), coeff);
      CHECK(jideal.contains(evaluate(t, asg, a) - dropped));
    }
  }
}

TEST_CASE("to_normal_products") {
  SUBCASE("right-normed input is a fixpoint") {
    TermPtr r = parse_term("((a*b)*c)*d");
    TermCombo c = to_normal_products(r);
    REQUIRE(c.entries().size() == 1);
    CHECK(c.entries()[0].first == 1);
    CHECK(term_str(c.entries()[0].second) == term_str(r));
  }
  SUBCASE("every output term is normal with conserved length and weight") {
    SplitMix64 rng(505);
    MarkedAlphabet marks = MarkedAlphabet::with_marks(
        {kSyms.begin(), kSyms.end()}, {"a", "c"});
    for (int trial = 0; trial < 40; ++trial) {
      TermPtr t = random_tree(kSyms, 2 + rng.below(4), rng);
      TermStats in = term_stats(t, marks);
      TermCombo np = to_normal_products(t);
      for (const auto& [coeff, term] : np.entries()) {
        TermClass cls = classify(term);
        CHECK((cls == TermClass::RightProduct || cls == TermClass::NormalProduct));
        TermStats out = term_stats(term, marks);
        CHECK(out.length == in.length);
        CHECK(out.weight == in.weight);
      }
    }
  }
  SUBCASE("evaluation equality in every Malcev corpus algebra") {
    SplitMix64 rng(606);
    for (const AlgebraPtr& a : malcev_corpus()) {
      for (int trial = 0; trial < 12; ++trial) {
        TermPtr t = random_tree(kSyms, 2 + rng.below(4), rng);
        auto asg = random_assignment(a, kSyms, rng);
        CHECK(evaluate(t, asg, a) == evaluate(to_normal_products(t), asg, a));
      }
    }
  }
  SUBCASE("six leaves work") {
    SplitMix64 rng(707);
    AlgebraPtr a = load("example_malcev4.tbl");
    for (int trial = 0; trial < 5; ++trial) {
      TermPtr t = random_tree(kSyms, 6, rng);
      auto asg = random_assignment(a, kSyms, rng);
      CHECK(evaluate(t, asg, a) == evaluate(to_normal_products(t), asg, a));
    }
  }
  SUBCASE("jnode rejected") {
    CHECK_THROWS_AS(to_normal_products(parse_term("J(a,b,c)")), TermError);
  }
}

TEST_CASE("evaluate") {
  AlgebraPtr a = load("example_malcev4.tbl");
  std::map<std::string, Element> asg;
  for (std::size_t i = 0; i < 4; ++i) asg.insert({a->labels()[i], a->basis_element(i)});

  CHECK(evaluate(parse_term("(e1*e2)*e3"), asg, a) == -a->basis_element(3));
  CHECK(evaluate(parse_term("J(e1,e2,e3)"), asg, a) ==
        a->basis_element(3) * Scalar::from_int(a->field(), -3));
  CHECK(evaluate(TermCombo(), asg, a).is_zero());
  CHECK_THROWS_AS(evaluate(parse_term("zz"), asg, a), TermError);

  // coefficient with denominator divisible by the characteristic
  AlgebraPtr f3 = load("example_malcev4_f3.tbl");
  std::map<std::string, Element> asg3;
  for (std::size_t i = 0; i < 4; ++i) asg3.insert({f3->labels()[i], f3->basis_element(i)});
  TermCombo bad;
  bad.add(Rat(1, 3), parse_term("e1"));
  CHECK_THROWS_AS(evaluate(bad, asg3, f3), FieldError);
}

TEST_CASE("term combo canonicalization") {
  TermCombo c;
  c.add(Rat(1), parse_term("(a*b)"));
  c.add(Rat(2), parse_term("(a*b)"));
  c.add(Rat(-3), parse_term("(a*b)"));
  CHECK(c.empty());
  c.add(Rat(1, 2), parse_term("(b*a)"));
  c.add(Rat(1), parse_term("a"));
  CHECK(c.str() == "a + 1/2*(b*a)");  // shorter terms first
}

#include <doctest.h>

#include "malcev/table_io.hpp"
#include "support/corpus.hpp"

using namespace malcev;
using testsupport::load;

TEST_CASE("corpus files parse") {
  AlgebraPtr a = load("example_malcev4.tbl");
  CHECK(a->dim() == 4);
  CHECK(a->field() == FieldSpec::rationals());
  CHECK(a->labels() == std::vector<std::string>{"e1", "e2", "e3", "e4"});

  AlgebraPtr f3 = load("example_malcev4_f3.tbl");
  CHECK(f3->field() == FieldSpec::prime_field(3));

  AlgebraPtr sl2 = load("sl2.tbl");
  CHECK(sl2->labels() == std::vector<std::string>{"e", "f", "h"});
  Element h = sl2->basis_element(2), ee = sl2->basis_element(0);
  CHECK(sl2->multiply(h, ee) == ee * Scalar::from_int(sl2->field(), 2));

  AlgebraPtr oct = load("octonion.tbl");
  CHECK(oct->dim() == 8);
}

TEST_CASE("anticommutative auto-fill") {
  AlgebraPtr h = load("heisenberg.tbl");
  // only e1 e2 = e3 is listed; the mirror is derived
  CHECK(h->multiply(h->basis_element(1), h->basis_element(0)) == -h->basis_element(2));
  CHECK(h->multiply(h->basis_element(0), h->basis_element(0)).is_zero());

  // an explicit mirror line overrides the auto-fill and may disagree
  AlgebraPtr twisted = parse_table(
      "dim 2\nfield Q\nanticommutative\ne1 e2 = e1\ne2 e1 = e2\n");
  CHECK(twisted->multiply(twisted->basis_element(1), twisted->basis_element(0)) ==
        twisted->basis_element(1));
  CHECK(!is_anticommutative(twisted).verdict);
}

TEST_CASE("unlisted products default to zero") {
  AlgebraPtr a = parse_table("dim 2\nfield Q\ne1 e1 = e2\n");
  CHECK(a->multiply(a->basis_element(0), a->basis_element(0)) == a->basis_element(1));
  CHECK(a->multiply(a->basis_element(0), a->basis_element(1)).is_zero());
}

TEST_CASE("combinations with coefficients") {
  AlgebraPtr a = parse_table("dim 3\nfield Q\ne1 e2 = 2*e1 - 1/3*e2 + e3\ne3 e3 = 0\n");
  Element p = a->multiply(a->basis_element(0), a->basis_element(1));
  CHECK(p == a->basis_element(0) * Scalar::from_int(a->field(), 2) +
                 a->basis_element(1) * Scalar::from_rat(a->field(), Rat(-1, 3)) +
                 a->basis_element(2));
}

TEST_CASE("parse errors carry line and column") {
  CHECK_THROWS_WITH_AS(parse_table("dim 2\nfield F2\n"),
                       doctest::Contains("line 2"), TableError);
  CHECK_THROWS_WITH_AS(parse_table("dim 2\nfield Q\ne1 e9 = e1\n"),
                       doctest::Contains("unknown label 'e9'"), TableError);
  CHECK_THROWS_WITH_AS(parse_table("dim 2\nfield Q\ne1 e2 = e1\ne1 e2 = e2\n"),
                       doctest::Contains("duplicate product line for e1 e2"), TableError);
  CHECK_THROWS_WITH_AS(parse_table("field Q\ndim 2\nbasis a\n"),
                       doctest::Contains("basis lists 1 labels, dim is 2"), TableError);
  CHECK_THROWS_WITH_AS(parse_table("dim 2\nfield Q\ne1 e2 = e1 e2\n"),
                       doctest::Contains("expected '+' or '-'"), TableError);
  CHECK_THROWS_WITH_AS(parse_table("dim 2\nfield Q\ne1 e2 = 2e1\n"),
                       doctest::Contains("expected '*' after coefficient"), TableError);
  CHECK_THROWS_WITH_AS(parse_table("field Q\n"), doctest::Contains("missing dim"), TableError);
  CHECK_THROWS_WITH_AS(parse_table("dim 2\n"), doctest::Contains("missing field"), TableError);
  CHECK_THROWS_WITH_AS(parse_table("dim 2\ndim 2\nfield Q\n"),
                       doctest::Contains("duplicate dim"), TableError);
  CHECK_THROWS_WITH_AS(parse_table("dim 2\nfield Q\nbasis a a\n"),
                       doctest::Contains("duplicate basis label 'a'"), TableError);
}

TEST_CASE("file errors include the path") {
  CHECK_THROWS_WITH_AS(load_table_file("/nonexistent/nope.tbl"),
                       doctest::Contains("cannot open file"), TableError);
}

TEST_CASE("comments and blank lines are ignored") {
  AlgebraPtr a = parse_table(
      "# header comment\n\ndim 2   # trailing\nfield Q\n\n# mid\ne1 e2 = e1\n\n");
  CHECK(a->dim() == 2);
  CHECK(a->multiply(a->basis_element(0), a->basis_element(1)) == a->basis_element(0));
}

TEST_CASE("print_table round trips") {
  for (const char* name : {"example_malcev4.tbl", "example_malcev4_f3.tbl", "heisenberg.tbl",
                           "filiform4.tbl", "gl2_assoc.tbl", "sl2.tbl", "octonion.tbl"}) {
    AlgebraPtr a = load(name);
    CAPTURE(name);
    AlgebraPtr again = parse_table(print_table(a));
    CHECK(*a == *again);
    CHECK(print_table(a) == print_table(again));
  }
  // fractional coefficients survive
  AlgebraPtr frac = parse_table("dim 2\nfield Q\ne1 e2 = 1/2*e1 - 3*e2\n");
  CHECK(*parse_table(print_table(frac)) == *frac);
}

TEST_CASE("parse_element") {
  AlgebraPtr a = load("example_malcev4.tbl");
  CHECK(parse_element(a, "e1") == a->basis_element(0));
  CHECK(parse_element(a, "0").is_zero());
  CHECK(parse_element(a, "e1+2*e3-1/2*e4") ==
        a->basis_element(0) + a->basis_element(2) * Scalar::from_int(a->field(), 2) -
            a->basis_element(3) * Scalar::from_rat(a->field(), Rat(1, 2)));
  CHECK(parse_element(a, "-e2") == -a->basis_element(1));
  CHECK_THROWS_WITH_AS(parse_element(a, "zz"), doctest::Contains("unknown label 'zz'"),
                       TableError);
  CHECK_THROWS_WITH_AS(parse_element(a, ""), doctest::Contains("expected combination"),
                       TableError);
}

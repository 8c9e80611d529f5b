#ifndef MALCEV_TABLE_IO_HPP
#define MALCEV_TABLE_IO_HPP

#include <string>

#include "malcev/algebra.hpp"

namespace malcev {

class TableError : public std::runtime_error {
public:
  explicit TableError(const std::string& what) : std::runtime_error(what) {}
};

/// Table file grammar (line oriented, '#' starts a comment):
///   dim <n>
///   field Q | F<p>
///   basis <l1> ... <ln>        (optional; default e1..en)
///   anticommutative            (optional; fills unlisted mirror products)
///   <li> <lj> = <combination>  (unlisted products are zero)
/// where <combination> is 0 or a signed sum of [c*]<label> with integer or
/// a/b rational coefficients.
AlgebraPtr parse_table(const std::string& text);

AlgebraPtr load_table_file(const std::string& path);

/// Canonical text form; reparses to an equal Algebra.
std::string print_table(const AlgebraPtr& a);

/// Parses an element combination like "e1+2*e3-1/2*e4" against a's labels.
Element parse_element(const AlgebraPtr& a, const std::string& text);

}  // namespace malcev

#endif

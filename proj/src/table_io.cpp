#include "malcev/table_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace malcev {

namespace {

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  throw TableError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                   msg);
}

// character-level scanner over one logical line
class LineScanner {
public:
  LineScanner(const std::string& text, int line) : s_(text), line_(line) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool done() {
    skip();
    return pos_ >= s_.size();
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void consume() { ++pos_; }

  int col() const { return int(pos_) + 1; }
  int line() const { return line_; }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           std::string("=+-*,/").find(s_[pos_]) == std::string::npos)
      ++pos_;
    if (pos_ == start) fail(line_, col(), "expected identifier");
    return s_.substr(start, pos_ - start);
  }

  Rat number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail(line_, col(), "expected number");
    Int num(s_.substr(start, pos_ - start));
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t dstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == dstart) fail(line_, col(), "expected denominator");
      Int den(s_.substr(dstart, pos_ - dstart));
      if (den == 0) fail(line_, col(), "zero denominator");
      return Rat(num, den);
    }
    return Rat(num);
  }

private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

// signed sum of [c*]<label>, or a lone 0
std::vector<Scalar> parse_combination(LineScanner& sc, const FieldSpec& field,
                                      const std::map<std::string, std::size_t>& label_index,
                                      std::size_t dim) {
  std::vector<Scalar> coords(dim, Scalar(field));
  sc.skip();
  if (sc.peek() == '0') {
    sc.consume();
    if (!sc.done()) fail(sc.line(), sc.col(), "unexpected input after 0");
    return coords;
  }
  bool first = true;
  for (;;) {
    if (sc.done()) {
      if (first) fail(sc.line(), sc.col(), "expected combination");
      break;
    }
    Rat sign(1);
    char c = sc.peek();
    if (c == '+' || c == '-') {
      sc.consume();
      if (c == '-') sign = -1;
    } else if (!first) {
      fail(sc.line(), sc.col(), "expected '+' or '-'");
    }
    Rat coeff(1);
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      coeff = sc.number();
      if (sc.peek() != '*') fail(sc.line(), sc.col(), "expected '*' after coefficient");
      sc.consume();
    }
    int col = sc.col();
    std::string label = sc.word();
    auto it = label_index.find(label);
    if (it == label_index.end()) fail(sc.line(), col, "unknown label '" + label + "'");
    coords[it->second] += Scalar::from_rat(field, sign * coeff);
    first = false;
  }
  return coords;
}

}  // namespace

AlgebraPtr parse_table(const std::string& text) {
  std::optional<std::size_t> dim;
  std::optional<FieldSpec> field;
  std::vector<std::string> labels;
  bool anticommutative = false;
  std::map<std::string, std::size_t> label_index;
  std::vector<std::vector<std::optional<std::vector<Scalar>>>> table;

  auto require_header = [&](int line) {
    if (!dim) fail(line, 1, "dim must be declared before this line");
    if (!field) fail(line, 1, "field must be declared before this line");
    if (labels.empty()) {
      for (std::size_t i = 1; i <= *dim; ++i) labels.push_back("e" + std::to_string(i));
      for (std::size_t i = 0; i < *dim; ++i) label_index[labels[i]] = i;
    }
    if (table.empty())
      table.assign(*dim, std::vector<std::optional<std::vector<Scalar>>>(*dim));
  };

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::size_t hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    LineScanner sc(line, lineno);
    if (sc.done()) continue;
    int wordcol = sc.col();
    std::string head = sc.word();
    if (head == "dim") {
      if (dim) fail(lineno, wordcol, "duplicate dim declaration");
      Rat n = sc.number();
      if (denominator(n) != 1 || n < 1) fail(lineno, sc.col(), "dim must be a positive integer");
      dim = numerator(n).convert_to<std::size_t>();
      if (!sc.done()) fail(lineno, sc.col(), "unexpected input after dim");
    } else if (head == "field") {
      if (field) fail(lineno, wordcol, "duplicate field declaration");
      int col = sc.col();
      std::string tok = sc.word();
      if (tok == "Q") {
        field = FieldSpec::rationals();
      } else if (tok.size() > 1 && tok[0] == 'F' &&
                 std::all_of(tok.begin() + 1, tok.end(),
                             [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        try {
          field = FieldSpec::prime_field(std::stoull(tok.substr(1)));
        } catch (const FieldError& e) {
          fail(lineno, col, e.what());
        }
      } else {
        fail(lineno, col, "field must be Q or F<odd prime>");
      }
      if (!sc.done()) fail(lineno, sc.col(), "unexpected input after field");
    } else if (head == "basis") {
      if (!dim) fail(lineno, wordcol, "dim must be declared before basis");
      if (!labels.empty()) fail(lineno, wordcol, "duplicate basis declaration");
      while (!sc.done()) {
        int col = sc.col();
        std::string l = sc.word();
        if (label_index.count(l)) fail(lineno, col, "duplicate basis label '" + l + "'");
        label_index[l] = labels.size();
        labels.push_back(l);
      }
      if (labels.size() != *dim)
        fail(lineno, 1, "basis lists " + std::to_string(labels.size()) + " labels, dim is " +
                            std::to_string(*dim));
    } else if (head == "anticommutative") {
      anticommutative = true;
      if (!sc.done()) fail(lineno, sc.col(), "unexpected input after anticommutative");
    } else {
      // product line: <li> <lj> = <combination>
      require_header(lineno);
      auto li = label_index.find(head);
      if (li == label_index.end()) fail(lineno, wordcol, "unknown label '" + head + "'");
      int col2 = sc.col();
      std::string second = sc.word();
      auto lj = label_index.find(second);
      if (lj == label_index.end()) fail(lineno, col2, "unknown label '" + second + "'");
      if (sc.peek() != '=') fail(lineno, sc.col(), "expected '='");
      sc.consume();
      if (table[li->second][lj->second])
        fail(lineno, wordcol, "duplicate product line for " + head + " " + second);
      table[li->second][lj->second] = parse_combination(sc, *field, label_index, *dim);
    }
  }
  if (!dim) throw TableError("missing dim declaration");
  if (!field) throw TableError("missing field declaration");
  require_header(lineno + 1);

  std::size_t n = *dim;
  if (anticommutative) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (table[i][j] || !table[j][i]) continue;
        std::vector<Scalar> neg = *table[j][i];
        for (Scalar& s : neg) s = -s;
        table[i][j] = std::move(neg);
      }
  }
  std::vector<std::vector<std::vector<Scalar>>> full(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(*field))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j]) full[i][j] = *table[i][j];
  return Algebra::create(*field, n, std::move(full), labels);
}

AlgebraPtr load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_table(buf.str());
  } catch (const TableError& e) {
    throw TableError(path + ": " + e.what());
  }
}

std::string print_table(const AlgebraPtr& a) {
  std::ostringstream out;
  out << "dim " << a->dim() << "\n";
  out << "field " << a->field().str() << "\n";
  out << "basis";
  for (const auto& l : a->labels()) out << " " << l;
  out << "\n";
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t j = 0; j < a->dim(); ++j) {
      const std::vector<Scalar>& c = a->table_entry(i, j);
      bool nonzero = false;
      for (const Scalar& s : c)
        if (!s.is_zero()) nonzero = true;
      if (!nonzero) continue;
      out << a->labels()[i] << " " << a->labels()[j] << " =";
      bool first = true;
      for (std::size_t k = 0; k < a->dim(); ++k) {
        if (c[k].is_zero()) continue;
        Scalar v = c[k];
        std::string vs = v.str();
        bool neg = !vs.empty() && vs[0] == '-';
        out << (first ? (neg ? " -" : " ") : (neg ? " - " : " + "));
        if (neg) vs = vs.substr(1);
        if (!(v.is_one() || vs == "1")) out << vs << "*";
        out << a->labels()[k];
        first = false;
      }
      out << "\n";
    }
  return out.str();
}

Element parse_element(const AlgebraPtr& a, const std::string& text) {
  std::map<std::string, std::size_t> label_index;
  for (std::size_t i = 0; i < a->dim(); ++i) label_index[a->labels()[i]] = i;
  LineScanner sc(text, 1);
  try {
    return a->element(parse_combination(sc, a->field(), label_index, a->dim()));
  } catch (const TableError& e) {
    throw TableError("element '" + text + "': " + e.what());
  }
}

}  // namespace malcev

#include "malcev/cli.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "malcev/nilpotence.hpp"
#include "malcev/rng.hpp"
#include "malcev/table_io.hpp"
#include "malcev/terms.hpp"

namespace malcev {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct ParsedArgs {
  std::vector<std::string> positional;
  std::map<std::string, std::string> options;  // --key value
  bool json = false;
};

const char* kUsage =
    "usage:\n"
    "  check {anticomm|malcev|lie|id1|id2|id3|id4|id5} <table> [--json]\n"
    "  jacobian-span <table> [--ideal SPEC] [--json]\n"
    "  powers {right|left|assoc|strong|bk} <table> [--ideal SPEC] [--max N] [--json]\n"
    "  report nilpotence <table> [--ideal SPEC] [--max N] [--json]\n"
    "  jk-nil <table> [--ideal SPEC] [--max N] [--json]\n"
    "  rewrite {right-normed|normal} <term>\n"
    "  eval <table> <term> --assign sym=elem[,sym=elem...]\n"
    "  search-malcev --dim D --field F<p> --trials N --seed S\n"
    "  minus <table>\n"
    "\n"
    "SPEC is full, zero, or span:<elem>[,<elem>...]; elements are integer\n"
    "combinations of basis labels, e.g. span:e4,e1+e3.\n"
    "MALCEV_MAX_CHAIN overrides the default filtration cap.\n";

ParsedArgs parse_args(const std::vector<std::string>& args, std::size_t skip,
                      const std::set<std::string>& flag_opts,
                      const std::set<std::string>& value_opts) {
  ParsedArgs out;
  for (std::size_t i = skip; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--json") {
      out.json = true;
    } else if (flag_opts.count(a)) {
      out.options[a] = "";
    } else if (value_opts.count(a)) {
      if (i + 1 >= args.size()) throw UsageError("missing value for " + a);
      out.options[a] = args[++i];
    } else if (a.rfind("--", 0) == 0) {
      throw UsageError("unknown option " + a);
    } else {
      out.positional.push_back(a);
    }
  }
  return out;
}

std::size_t chain_cap(const ParsedArgs& pa) {
  auto it = pa.options.find("--max");
  if (it != pa.options.end()) return std::stoul(it->second);
  if (const char* env = std::getenv("MALCEV_MAX_CHAIN")) return std::stoul(env);
  return 0;  // library default
}

Subspace resolve_ideal(const AlgebraPtr& a, const ParsedArgs& pa, std::ostream& err) {
  std::string spec = "full";
  auto it = pa.options.find("--ideal");
  if (it != pa.options.end()) spec = it->second;
  Subspace s = Subspace::zero(a);
  if (spec == "full") {
    s = Subspace::full(a);
  } else if (spec == "zero") {
    s = Subspace::zero(a);
  } else if (spec.rfind("span:", 0) == 0) {
    std::vector<Element> gens;
    std::stringstream ss(spec.substr(5));
    std::string piece;
    while (std::getline(ss, piece, ','))
      if (!piece.empty()) gens.push_back(parse_element(a, piece));
    s = Subspace::span(a, gens);
  } else {
    throw UsageError("bad --ideal value: " + spec);
  }
  if (!is_ideal(s)) {
    err << "warning: given span is not an ideal; using its ideal closure\n";
    s = ideal_closure(s);
  }
  return s;
}

json witness_json(const IdentityWitness& w) {
  json j;
  j["verdict"] = w.verdict;
  if (w.counterexample) {
    json c;
    c["indices"] = w.counterexample->indices;
    c["lhs"] = w.counterexample->lhs.str();
    c["rhs"] = w.counterexample->rhs.str();
    c["description"] = w.counterexample->description;
    j["counterexample"] = c;
  }
  return j;
}

void print_witness(std::ostream& out, const IdentityWitness& w) {
  if (w.verdict || !w.counterexample) return;
  const auto& c = *w.counterexample;
  out << "counterexample indices:";
  for (int i : c.indices) out << " " << i;
  out << "\n";
  out << "lhs: " << c.lhs.str() << "\n";
  out << "rhs: " << c.rhs.str() << "\n";
  out << "reason: " << c.description << "\n";
}

std::vector<std::string> subspace_basis_strs(const Subspace& s) {
  std::vector<std::string> out;
  for (const Element& e : s.basis()) out.push_back(e.str());
  return out;
}

std::string chain_term_name(const FiltrationChain& c, std::size_t idx) {
  switch (c.kind) {
    case FiltrationKind::RightPowers: return "B^" + std::to_string(idx);
    case FiltrationKind::LeftPowers: return "^" + std::to_string(idx) + "B";
    case FiltrationKind::AssocPowers: return "B^{{" + std::to_string(idx) + "}}";
    case FiltrationKind::StrongPowers: return "B^<" + std::to_string(idx) + ">";
    case FiltrationKind::BkChain: return "B_" + std::to_string(idx);
  }
  return "";
}

void print_chain(std::ostream& out, const FiltrationChain& c) {
  for (std::size_t i = 0; i < c.terms.size(); ++i)
    out << chain_term_name(c, c.start_index + i) << ": " << c.terms[i].str() << "\n";
  out << "stabilized: " << (c.stabilized ? "yes" : "no") << "\n";
  out << "nil_index: " << (c.nil_index ? std::to_string(*c.nil_index) : "none") << "\n";
}

json chain_json(const FiltrationChain& c) {
  json j;
  j["start_index"] = c.start_index;
  json terms = json::array();
  for (const Subspace& s : c.terms) terms.push_back(subspace_basis_strs(s));
  j["terms"] = terms;
  j["stabilized"] = c.stabilized;
  if (c.nil_index) j["nil_index"] = *c.nil_index;
  else j["nil_index"] = nullptr;
  return j;
}

int cmd_check(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParsedArgs pa = parse_args(args, 1, {}, {});
  if (pa.positional.size() != 2) throw UsageError("check needs a predicate and a table file");
  const std::string& which = pa.positional[0];
  AlgebraPtr a = load_table_file(pa.positional[1]);
  IdentityWitness w;
  std::string name;
  if (which == "anticomm") { w = is_anticommutative(a); name = "ANTICOMM"; }
  else if (which == "malcev") { w = is_malcev(a); name = "MALCEV"; }
  else if (which == "lie") { w = is_lie(a); name = "LIE"; }
  else if (which == "id1") { w = check_identity(a, MalcevIdentity::Id1); name = "ID1"; }
  else if (which == "id2") { w = check_identity(a, MalcevIdentity::Id2); name = "ID2"; }
  else if (which == "id3") { w = check_identity(a, MalcevIdentity::Id3); name = "ID3"; }
  else if (which == "id4") { w = check_identity(a, MalcevIdentity::Id4); name = "ID4"; }
  else if (which == "id5") { w = check_identity(a, MalcevIdentity::Id5); name = "ID5"; }
  else throw UsageError("unknown predicate: " + which);
  if (pa.json) {
    json j = witness_json(w);
    j["check"] = which;
    out << j.dump(2) << "\n";
  } else {
    out << name << ": " << (w.verdict ? "yes" : "no") << "\n";
    print_witness(out, w);
  }
  return w.verdict ? 0 : 1;
}

int cmd_jacobian_span(const std::vector<std::string>& args, std::ostream& out,
                      std::ostream& err) {
  ParsedArgs pa = parse_args(args, 1, {}, {"--ideal"});
  if (pa.positional.size() != 1) throw UsageError("jacobian-span needs a table file");
  AlgebraPtr a = load_table_file(pa.positional[0]);
  Subspace b = resolve_ideal(a, pa, err);
  Subspace whole = Subspace::full(a);
  Subspace j = jacobian_span(b, whole, whole);
  if (pa.json) {
    json out_j;
    out_j["dim"] = j.dim();
    out_j["basis"] = subspace_basis_strs(j);
    out << out_j.dump(2) << "\n";
  } else {
    out << "J(B,A,A) = " << j.str() << "\n";
    out << "dim: " << j.dim() << "\n";
  }
  return 0;
}

int cmd_powers(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParsedArgs pa = parse_args(args, 1, {}, {"--ideal", "--max"});
  if (pa.positional.size() != 2) throw UsageError("powers needs a kind and a table file");
  const std::string& kind = pa.positional[0];
  AlgebraPtr a = load_table_file(pa.positional[1]);
  Subspace b = resolve_ideal(a, pa, err);
  std::size_t cap = chain_cap(pa);
  if (cap == 0) cap = a->dim() + 1;
  FiltrationChain c;
  if (kind == "right") c = right_powers(b, cap);
  else if (kind == "left") c = left_powers(b, cap);
  else if (kind == "assoc") c = assoc_powers(b, cap);
  else if (kind == "strong") c = strong_powers(b, cap);
  else if (kind == "bk") c = bk_chain(b, cap);
  else throw UsageError("unknown powers kind: " + kind);
  if (pa.json) {
    json j = chain_json(c);
    j["kind"] = kind;
    out << j.dump(2) << "\n";
  } else {
    print_chain(out, c);
  }
  return 0;
}

int cmd_report(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParsedArgs pa = parse_args(args, 1, {}, {"--ideal", "--max"});
  if (pa.positional.size() != 2 || pa.positional[0] != "nilpotence")
    throw UsageError("usage: report nilpotence <table> [--ideal SPEC]");
  AlgebraPtr a = load_table_file(pa.positional[1]);
  Subspace b = resolve_ideal(a, pa, err);
  NilpotenceReport rep = nilpotence_report(a, b, chain_cap(pa));
  auto idx_str = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("none");
  };
  std::string jk = rep.jk.index ? std::to_string(*rep.jk.index)
                                : (rep.jk.definitive_never ? "never" : "unknown");
  if (pa.json) {
    json j;
    j["right_index"] = rep.right_index ? json(*rep.right_index) : json(nullptr);
    j["left_index"] = rep.left_index ? json(*rep.left_index) : json(nullptr);
    j["assoc_index"] = rep.assoc_index ? json(*rep.assoc_index) : json(nullptr);
    j["strong_index"] = rep.strong_index ? json(*rep.strong_index) : json(nullptr);
    j["jk_nil"] = jk;
    j["bound_4n2"] = rep.bound_4n2 ? json(*rep.bound_4n2) : json(nullptr);
    j["bound_satisfied"] = rep.bound_satisfied ? json(*rep.bound_satisfied) : json(nullptr);
    j["inclusions_ok"] = rep.inclusions_ok;
    j["verdicts_consistent"] = rep.verdicts_consistent;
    j["lemma_bn_ok"] = rep.lemma_bn_ok;
    j["lemma_laqt_ok"] = rep.lemma_laqt_ok;
    j["right_chain"] = chain_json(rep.right);
    j["strong_chain"] = chain_json(rep.strong);
    out << j.dump(2) << "\n";
  } else {
    out << "right_index: " << idx_str(rep.right_index) << "\n";
    out << "left_index: " << idx_str(rep.left_index) << "\n";
    out << "assoc_index: " << idx_str(rep.assoc_index) << "\n";
    out << "strong_index: " << idx_str(rep.strong_index) << "\n";
    out << "jk_nil: " << jk << "\n";
    out << "bound_4n2: " << idx_str(rep.bound_4n2) << "\n";
    out << "bound_satisfied: "
        << (rep.bound_satisfied ? (*rep.bound_satisfied ? "yes" : "no") : "n/a") << "\n";
    out << "inclusions_ok: " << (rep.inclusions_ok ? "yes" : "no") << "\n";
    out << "verdicts_consistent: " << (rep.verdicts_consistent ? "yes" : "no") << "\n";
    out << "lemma_bn: " << (rep.lemma_bn_ok ? "ok" : "FAILED") << "\n";
    out << "lemma_laqt: " << (rep.lemma_laqt_ok ? "ok" : "FAILED") << "\n";
  }
  return 0;
}

int cmd_jk_nil(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParsedArgs pa = parse_args(args, 1, {}, {"--ideal", "--max"});
  if (pa.positional.size() != 1) throw UsageError("jk-nil needs a table file");
  AlgebraPtr a = load_table_file(pa.positional[0]);
  Subspace b = resolve_ideal(a, pa, err);
  std::size_t cap = chain_cap(pa);
  if (cap == 0) cap = a->dim() + 1;
  JkNilResult r = jk_nil_index(b, cap);
  std::string v = r.index ? std::to_string(*r.index)
                          : (r.definitive_never ? "never" : "unknown");
  if (pa.json) {
    json j;
    j["jk_nil_index"] = r.index ? json(*r.index) : json(nullptr);
    j["definitive_never"] = r.definitive_never;
    out << j.dump(2) << "\n";
  } else {
    out << "jk_nil_index: " << v << "\n";
  }
  return 0;
}

int cmd_rewrite(const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  ParsedArgs pa = parse_args(args, 1, {}, {});
  if (pa.positional.size() != 2) throw UsageError("rewrite needs a mode and a term");
  TermPtr t = parse_term(pa.positional[1]);
  TermCombo combo;
  if (pa.positional[0] == "right-normed") combo = to_right_normed(t);
  else if (pa.positional[0] == "normal") combo = to_normal_products(t);
  else throw UsageError("unknown rewrite mode: " + pa.positional[0]);
  out << combo.str() << "\n";
  return 0;
}

int cmd_eval(const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  ParsedArgs pa = parse_args(args, 1, {}, {"--assign"});
  if (pa.positional.size() != 2) throw UsageError("eval needs a table file and a term");
  AlgebraPtr a = load_table_file(pa.positional[0]);
  TermPtr t = parse_term(pa.positional[1]);
  std::map<std::string, Element> assignment;
  auto it = pa.options.find("--assign");
  if (it != pa.options.end()) {
    std::stringstream ss(it->second);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
      std::size_t eq = pair.find('=');
      if (eq == std::string::npos) throw UsageError("bad --assign entry: " + pair);
      assignment.insert({pair.substr(0, eq), parse_element(a, pair.substr(eq + 1))});
    }
  }
  // symbols matching basis labels default to those basis elements
  for (std::size_t i = 0; i < a->dim(); ++i)
    assignment.insert({a->labels()[i], a->basis_element(i)});
  out << "value: " << evaluate(t, assignment, a).str() << "\n";
  return 0;
}

int cmd_search_malcev(const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  ParsedArgs pa = parse_args(args, 1, {}, {"--dim", "--field", "--trials", "--seed"});
  if (!pa.positional.empty()) throw UsageError("search-malcev takes options only");
  auto need = [&](const std::string& k) {
    auto it = pa.options.find(k);
    if (it == pa.options.end()) throw UsageError("search-malcev requires " + k);
    return it->second;
  };
  std::size_t dim = std::stoul(need("--dim"));
  std::string field_tok = need("--field");
  if (field_tok.size() < 2 || field_tok[0] != 'F')
    throw UsageError("--field must be F<odd prime>");
  FieldSpec field = FieldSpec::prime_field(std::stoull(field_tok.substr(1)));
  std::size_t trials = std::stoul(need("--trials"));
  std::uint64_t seed = std::stoull(need("--seed"));

  SplitMix64 rng(seed);
  std::uint64_t p = field.modulus();
  std::size_t hits = 0;
  for (std::size_t trial = 1; trial <= trials; ++trial) {
    std::vector<std::vector<std::vector<Scalar>>> table(
        dim, std::vector<std::vector<Scalar>>(dim, std::vector<Scalar>(dim, Scalar(field))));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) {
          Scalar c = Scalar::from_int(field, static_cast<long long>(rng.below(p)));
          table[i][j][k] = c;
          table[j][i][k] = -c;
        }
    AlgebraPtr a = Algebra::create(field, dim, std::move(table));
    if (is_malcev(a).verdict) {
      ++hits;
      out << "trial " << trial << ": malcev\n";
      out << print_table(a);
    }
  }
  out << "trials: " << trials << "\n";
  out << "hits: " << hits << "\n";
  return 0;
}

int cmd_minus(const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  ParsedArgs pa = parse_args(args, 1, {}, {});
  if (pa.positional.size() != 1) throw UsageError("minus needs a table file");
  AlgebraPtr a = load_table_file(pa.positional[0]);
  out << print_table(minus_algebra(a));
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.empty()) throw UsageError("no command given");
    const std::string& cmd = args[0];
    if (cmd == "check") return cmd_check(args, out, err);
    if (cmd == "jacobian-span") return cmd_jacobian_span(args, out, err);
    if (cmd == "powers") return cmd_powers(args, out, err);
    if (cmd == "report") return cmd_report(args, out, err);
    if (cmd == "jk-nil") return cmd_jk_nil(args, out, err);
    if (cmd == "rewrite") return cmd_rewrite(args, out, err);
    if (cmd == "eval") return cmd_eval(args, out, err);
    if (cmd == "search-malcev") return cmd_search_malcev(args, out, err);
    if (cmd == "minus") return cmd_minus(args, out, err);
    throw UsageError("unknown command: " + cmd);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << kUsage;
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace malcev

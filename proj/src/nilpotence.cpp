#include "malcev/nilpotence.hpp"

#include <algorithm>

#include "malcev/rng.hpp"

namespace malcev {

const Subspace& FiltrationChain::term(std::size_t n) const {
  if (n < start_index) throw AlgebraError("filtration index below chain start");
  std::size_t pos = n - start_index;
  if (pos < terms.size()) return terms[pos];
  if (stabilized) return terms.back();
  throw AlgebraError("filtration term beyond computed chain");
}

namespace {

// Markovian chains: next term depends on the current one only, so two equal
// consecutive terms certify a fixpoint.
FiltrationChain markov_powers(FiltrationKind kind, const Subspace& b, std::size_t max_n,
                              bool right) {
  if (max_n < 1) throw AlgebraError("max_n must be at least 1");
  FiltrationChain chain;
  chain.kind = kind;
  chain.start_index = 1;
  chain.terms.push_back(b);
  for (;;) {
    const Subspace cur = chain.terms.back();
    if (cur.is_zero()) {
      chain.nil_index = chain.terms.size();
      chain.stabilized = true;
      break;
    }
    if (chain.terms.size() >= max_n) break;
    Subspace next = right ? subspace_product(cur, b) : subspace_product(b, cur);
    bool fixed = next == cur;
    chain.terms.push_back(std::move(next));
    if (fixed) {
      chain.stabilized = true;
      break;
    }
  }
  return chain;
}

// Non-Markovian chains (each term depends on the whole prefix): a constant
// window from index k through 2k certifies the chain is constant from k on —
// every later term's defining sum splits into pieces already inside the
// window, so it reproduces the index-2k value.
void detect_window(FiltrationChain& chain) {
  std::size_t n = chain.terms.size();
  for (std::size_t k = 1; 2 * k <= n; ++k) {
    bool equal = true;
    for (std::size_t i = k; i < 2 * k && equal; ++i)
      equal = chain.terms[i - 1] == chain.terms[i];
    if (equal) {
      chain.stabilized = true;
      if (chain.terms[k - 1].is_zero() && !chain.nil_index) {
        std::size_t first = k;
        while (first > 1 && chain.terms[first - 2].is_zero()) --first;
        chain.nil_index = first;
      }
      return;
    }
  }
}

FiltrationChain split_sum_powers(FiltrationKind kind, const Subspace& b, std::size_t max_n,
                                 bool closure) {
  if (max_n < 1) throw AlgebraError("max_n must be at least 1");
  FiltrationChain chain;
  chain.kind = kind;
  chain.start_index = 1;
  chain.terms.push_back(closure ? ideal_closure(b) : b);
  if (chain.terms.back().is_zero()) {
    chain.nil_index = 1;
    chain.stabilized = true;
    return chain;
  }
  detect_window(chain);
  while (!chain.stabilized && chain.terms.size() < max_n) {
    std::size_t n = chain.terms.size() + 1;
    Subspace next = Subspace::zero(b.algebra());
    for (std::size_t i = 1; i <= n - 1; ++i)
      next = subspace_sum(next, subspace_product(chain.terms[i - 1], chain.terms[n - i - 1]));
    if (closure) next = ideal_closure(next);
    chain.terms.push_back(std::move(next));
    if (closure && chain.terms.back().is_zero()) {
      // the strong chain is descending, so a zero term is final
      std::size_t first = chain.terms.size();
      while (first > 1 && chain.terms[first - 2].is_zero()) --first;
      chain.nil_index = first;
      chain.stabilized = true;
      break;
    }
    detect_window(chain);
  }
  return chain;
}

}  // namespace

FiltrationChain right_powers(const Subspace& b, std::size_t max_n) {
  return markov_powers(FiltrationKind::RightPowers, b, max_n, true);
}

FiltrationChain left_powers(const Subspace& b, std::size_t max_n) {
  return markov_powers(FiltrationKind::LeftPowers, b, max_n, false);
}

FiltrationChain assoc_powers(const Subspace& b, std::size_t max_n) {
  return split_sum_powers(FiltrationKind::AssocPowers, b, max_n, false);
}

FiltrationChain strong_powers(const Subspace& b, std::size_t max_n) {
  if (!is_ideal(b)) throw AlgebraError("not an ideal");
  return split_sum_powers(FiltrationKind::StrongPowers, b, max_n, true);
}

FiltrationChain bk_chain(const Subspace& b, std::size_t max_k) {
  if (!is_ideal(b)) throw AlgebraError("not an ideal");
  const AlgebraPtr& a = b.algebra();
  Subspace whole = Subspace::full(a);
  Subspace jac = jacobian_span(b, whole, whole);
  FiltrationChain rp = right_powers(b, std::max<std::size_t>(max_k, 1));

  FiltrationChain chain;
  chain.kind = FiltrationKind::BkChain;
  chain.start_index = 0;
  chain.terms.push_back(whole);
  if (max_k >= 1) {
    chain.terms.push_back(b);
    if (b.is_zero()) {
      // B_k = B^k + J(B,A,A) and both vanish when B does
      chain.nil_index = 1;
      chain.stabilized = true;
      return chain;
    }
  }
  for (std::size_t k = 2; k <= max_k; ++k) {
    if (k > rp.last_index() && !rp.stabilized) break;
    Subspace bk = subspace_sum(rp.term(k), jac);
    if (!is_ideal(bk)) throw AlgebraError("bk_chain term is not an ideal");
    if (!chain.terms.back().contains(bk)) throw AlgebraError("bk_chain is not descending");
    bool fixed = bk == chain.terms.back();
    chain.terms.push_back(std::move(bk));
    if (chain.terms.back().is_zero()) {
      chain.nil_index = k;
      chain.stabilized = true;
      break;
    }
    // B_k = B^k + J with J fixed, so a fixpoint of the right powers (or a
    // repeated B_k with k >= 2) is a fixpoint here
    if (fixed || (rp.stabilized && k >= rp.last_index())) {
      chain.stabilized = true;
      break;
    }
  }
  return chain;
}

Subspace d_suffix(const Subspace& d, std::size_t k) {
  Subspace whole = Subspace::full(d.algebra());
  Subspace cur = d;
  for (std::size_t i = 0; i < k; ++i) cur = subspace_product(cur, whole);
  return cur;
}

JkNilResult jk_nil_index(const Subspace& b, std::size_t max_k) {
  if (!is_ideal(b)) throw AlgebraError("not an ideal");
  if (max_k < 1) throw AlgebraError("max_k must be at least 1");
  Subspace whole = Subspace::full(b.algebra());
  Subspace cur = jacobian_span(b, whole, whole);
  JkNilResult res;
  for (std::size_t k = 1; k <= max_k; ++k) {
    Subspace next = subspace_product(cur, whole);
    if (next.is_zero()) {
      res.index = k;
      return res;
    }
    if (next == cur) {
      res.definitive_never = true;
      return res;
    }
    cur = std::move(next);
  }
  return res;  // unknown at cap
}

namespace {

Element random_right_product(const AlgebraPtr& a, const std::vector<Element>& b_basis,
                             const std::vector<Element>& a_basis, std::size_t weight,
                             std::size_t length, SplitMix64& rng) {
  std::vector<Element> leaves;
  for (std::size_t i = 0; i < weight; ++i) leaves.push_back(b_basis[rng.below(b_basis.size())]);
  for (std::size_t i = weight; i < length; ++i)
    leaves.push_back(a_basis[rng.below(a_basis.size())]);
  for (std::size_t i = leaves.size(); i > 1; --i) std::swap(leaves[i - 1], leaves[rng.below(i)]);
  Element acc = leaves[0];
  for (std::size_t i = 1; i < leaves.size(); ++i) acc = a->multiply(acc, leaves[i]);
  return acc;
}

}  // namespace

NilpotenceReport nilpotence_report(const AlgebraPtr& a, const Subspace& b,
                                   std::size_t max_chain) {
  {
    IdentityWitness w = is_malcev(a);
    if (!w.verdict) throw AlgebraError("not Malcev");
  }
  if (!is_ideal(b)) throw AlgebraError("not an ideal");

  NilpotenceReport rep;
  std::size_t base_cap = max_chain ? max_chain : a->dim() + 1;
  rep.right = right_powers(b, base_cap);
  rep.left = left_powers(b, base_cap);
  rep.right_index = rep.right.nil_index;
  rep.left_index = rep.left.nil_index;

  std::size_t deep_cap = base_cap;
  if (!max_chain && rep.right_index) {
    std::size_t n = *rep.right_index;
    rep.bound_4n2 = 4 * n * n - 2 * n + 1;
    deep_cap = std::max(base_cap, *rep.bound_4n2 + 1);
  } else if (rep.right_index) {
    std::size_t n = *rep.right_index;
    rep.bound_4n2 = 4 * n * n - 2 * n + 1;
  }
  rep.assoc = assoc_powers(b, deep_cap);
  rep.strong = strong_powers(b, deep_cap);
  rep.assoc_index = rep.assoc.nil_index;
  rep.strong_index = rep.strong.nil_index;
  rep.bk = bk_chain(b, base_cap);
  rep.jk = jk_nil_index(b, base_cap);

  if (rep.bound_4n2)
    rep.bound_satisfied = rep.strong_index && *rep.strong_index <= *rep.bound_4n2;

  // B^k subset B^{{k}} subset B^<k> on every index all three chains cover
  rep.inclusions_ok = true;
  std::size_t common = std::min({rep.right.last_index(), rep.assoc.last_index(),
                                 rep.strong.last_index()});
  for (std::size_t k = 1; k <= common; ++k) {
    if (!rep.assoc.term(k).contains(rep.right.term(k)) ||
        !rep.strong.term(k).contains(rep.assoc.term(k)))
      rep.inclusions_ok = false;
  }

  // with all three chains resolved (nil index or certified fixpoint), the
  // three nilpotence verdicts must agree for an ideal of a Malcev algebra
  bool resolved = (rep.right.nil_index || rep.right.stabilized) &&
                  (rep.assoc.nil_index || rep.assoc.stabilized) &&
                  (rep.strong.nil_index || rep.strong.stabilized);
  if (resolved) {
    bool r = rep.right_index.has_value();
    rep.verdicts_consistent =
        (r == rep.assoc_index.has_value()) && (r == rep.strong_index.has_value());
  } else {
    rep.verdicts_consistent = true;  // not decidable at this cap; nothing to contradict
  }

  std::vector<Element> b_basis = b.basis();
  std::vector<Element> a_basis = Subspace::full(a).basis();
  SplitMix64 rng(0x6d616c636576ull);

  rep.lemma_bn_ok = true;
  if (!b_basis.empty()) {
    for (std::size_t n = 2; n <= std::min<std::size_t>(4, rep.bk.last_index()); ++n) {
      const Subspace& target = rep.bk.term(n);
      for (int trial = 0; trial < 40; ++trial) {
        std::size_t w = n + rng.below(2);
        std::size_t len = w + rng.below(3);
        Element p = random_right_product(a, b_basis, a_basis, w, len, rng);
        if (!target.contains(p)) rep.lemma_bn_ok = false;
      }
    }
  }

  rep.lemma_laqt_ok = true;
  if (rep.jk.index && !b_basis.empty()) {
    std::size_t k = *rep.jk.index;
    for (std::size_t ell = k; ell <= k + 1; ++ell) {
      if (ell > rep.right.last_index() && !rep.right.stabilized) continue;
      Subspace target = d_suffix(rep.right.term(ell), k);
      for (int trial = 0; trial < 40; ++trial) {
        std::size_t w = 2 * ell + rng.below(2);
        std::size_t len = w + rng.below(2);
        Element p = random_right_product(a, b_basis, a_basis, w, len, rng);
        if (!target.contains(p)) rep.lemma_laqt_ok = false;
      }
    }
  }
  return rep;
}

}  // namespace malcev

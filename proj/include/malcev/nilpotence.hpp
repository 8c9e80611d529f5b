#ifndef MALCEV_NILPOTENCE_HPP
#define MALCEV_NILPOTENCE_HPP

#include <optional>

#include "malcev/subspace.hpp"

namespace malcev {

enum class FiltrationKind { RightPowers, LeftPowers, AssocPowers, StrongPowers, BkChain };

/// A computed chain of subspaces B^n (or B_k). terms.front() corresponds to
/// filtration index start_index (1 for the power chains, 0 for BkChain).
struct FiltrationChain {
  FiltrationKind kind = FiltrationKind::RightPowers;
  std::size_t start_index = 1;
  std::vector<Subspace> terms;
  /// All terms past the last computed one equal the last (certified fixpoint).
  bool stabilized = false;
  /// Least n with the n-th term = {0} (then it stays {0}).
  std::optional<std::size_t> nil_index;

  /// Term by filtration index; clamps past the end when stabilized.
  const Subspace& term(std::size_t n) const;
  std::size_t last_index() const { return start_index + terms.size() - 1; }
};

/// B^1 = B, B^{n+1} = B^n * B.
FiltrationChain right_powers(const Subspace& b, std::size_t max_n);
/// {}^1 B = B, {}^{n+1} B = B * {}^n B.
FiltrationChain left_powers(const Subspace& b, std::size_t max_n);
/// B^{{n}} = sum over splits of B^{{i}} * B^{{n-i}} (all parenthesizations).
FiltrationChain assoc_powers(const Subspace& b, std::size_t max_n);
/// B^<1> = ideal_closure(B); B^<n> = ideal_closure(sum of B^<i> B^<n-i>).
/// Requires B to be an ideal.
FiltrationChain strong_powers(const Subspace& b, std::size_t max_n);
/// B_0 = A, B_1 = B, B_k = B^k + J(B,A,A); each term is checked to be an
/// ideal and the chain to be descending (violations throw: they would mean a
/// computation bug, not a property of the input).
FiltrationChain bk_chain(const Subspace& b, std::size_t max_k);

/// D_(A,k): ((D*A)*A)...*A with k factors of A.
Subspace d_suffix(const Subspace& d, std::size_t k);

struct JkNilResult {
  std::optional<std::size_t> index;   // least k with J(B,A,A)_(A,k) = {0}
  bool definitive_never = false;      // nonzero fixpoint reached: never J_k-nil
};

JkNilResult jk_nil_index(const Subspace& b, std::size_t max_k);

struct NilpotenceReport {
  FiltrationChain right, left, assoc, strong, bk;
  JkNilResult jk;
  std::optional<std::size_t> right_index, left_index, assoc_index, strong_index;
  std::optional<std::size_t> bound_4n2;     // 4n^2 - 2n + 1 for n = right_index
  std::optional<bool> bound_satisfied;      // strong_index <= bound_4n2
  bool inclusions_ok = false;       // B^k subset B^{{k}} subset B^<k>, all computed k
  bool verdicts_consistent = false; // right/assoc/strong nilpotence verdicts agree
  bool lemma_bn_ok = false;         // right products of weight >= n land in B_n
  bool lemma_laqt_ok = false;       // weight >= 2l products land in (B^l)_(A,k)
};

/// Full report for an ideal B of a Malcev algebra. max_chain = 0 picks the
/// default cap dim(A)+1, extended to the theorem bound for the non-Markovian
/// chains when a right nil index exists.
NilpotenceReport nilpotence_report(const AlgebraPtr& a, const Subspace& b,
                                   std::size_t max_chain = 0);

}  // namespace malcev

#endif

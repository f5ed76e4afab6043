#ifndef WAGNER_ACCEPTOR_HPP
#define WAGNER_ACCEPTOR_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "wagner/errors.hpp"

namespace wagner {

using State = int;
using Letter = int;
using Word = std::vector<Letter>;

/// A set of states realizable as the infinity set of some run, kept sorted ascending.
using Loop = std::vector<State>;

/// Deterministic complete automaton over the alphabet {0..alphabet_size-1}.
struct Automaton {
  int alphabet_size = 2;
  int num_states = 0;
  State initial = 0;
  std::vector<std::vector<State>> delta;  // delta[q][x]

  State step(State q, Letter x) const { return delta[q][x]; }
  void validate() const;
};

/// An ultimately periodic word prefix . period^omega; the finite handle for omega-words.
struct Lasso {
  Word prefix;
  Word period;  // nonempty

  void validate(int alphabet_size) const;
};

/// The action of a word on the state set, with a shortest witness word.
struct TransitionMap {
  std::vector<State> map;  // total on all states
  Word witness;
};

/// Muller k-acceptor: automaton plus a k-valued labeling of every reachable loop.
struct MullerAcceptor {
  Automaton automaton;
  int k = 2;
  std::map<Loop, int> labels;

  int label_of(const Loop& loop) const;
  /// Checks delta totality, k >= 2, and that labels covers exactly the reachable loops.
  void validate() const;
};

/// A component for the product construction: an automaton with its accepting loop family.
struct AcceptorComponent {
  Automaton automaton;
  std::vector<Loop> accepting;
};

State run(const Automaton& a, State q, const Word& w);

std::vector<bool> reachable_states(const Automaton& a);

Loop infinity_set(const Automaton& a, const Lasso& w);
Loop infinity_set(const MullerAcceptor& acc, const Lasso& w);

int eval_lasso(const MullerAcceptor& acc, const Lasso& w);

/// Product of k-1 disjoint Muller acceptors into one Muller k-acceptor; loops that
/// project into no accepting family get the default label k-1.
MullerAcceptor product_k(const std::vector<AcceptorComponent>& components);

inline constexpr std::size_t kDefaultMonoidCap = 1000000;

/// Closure of the letter actions under composition (actions of all nonempty words),
/// plus the identity, deduplicated by behaviour on reachable states. BFS by word
/// length with letters in increasing order, so witnesses are shortest, ties lex-least.
std::vector<TransitionMap> transition_monoid(const Automaton& a,
                                             std::size_t cap = kDefaultMonoidCap);

bool is_aperiodic(const Automaton& a, std::size_t cap = kDefaultMonoidCap);

/// True iff some reachable q, n > 1 and v with d | |v| satisfy q.v^n = q and
/// q.v^m != q for 0 < m < n.
bool has_d_counting_pattern(const Automaton& a, int d,
                            std::size_t cap = kDefaultMonoidCap);

/// True iff additionally some u with |u| = |v| fixes q.v^m for 0 <= m < n.
bool has_balanced_counting_pattern(const Automaton& a,
                                   std::size_t cap = kDefaultMonoidCap * kDefaultMonoidCap);

}  // namespace wagner

#endif

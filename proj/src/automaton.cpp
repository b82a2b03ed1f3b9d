#include "lsq/automaton.hpp"

namespace lsq {

Trajectory run(const KeyAutomaton& automaton, Symbol start, std::span<const Symbol> word) {
  Trajectory t;
  t.start = start;
  t.inputs.assign(word.begin(), word.end());
  t.states.reserve(word.size());
  Symbol state = start;
  for (Symbol x : word) {
    state = automaton.step(state, x);
    t.states.push_back(state);
  }
  return t;
}

Symbol run_last(const KeyAutomaton& automaton, Symbol start, std::span<const Symbol> word) {
  if (word.empty()) throw EmptyInput();
  Symbol state = start;
  for (Symbol x : word) state = automaton.step(state, x);
  return state;
}

KeyAutomaton invert(const KeyAutomaton& automaton) {
  // Each input row is a permutation of states; the inverse automaton's row for
  // that input is its inverse permutation.
  return KeyAutomaton(inverse_rows(automaton.table()));
}

Symbol reverse_run(const KeyAutomaton& inverse, Symbol last, std::span<const Symbol> word) {
  if (word.empty()) throw EmptyInput();
  Symbol state = last;
  for (auto it = word.rbegin(); it != word.rend(); ++it) state = inverse.step(state, *it);
  return state;
}

}  // namespace lsq

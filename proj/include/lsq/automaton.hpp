#pragma once

#include <span>
#include <vector>

#include "lsq/latin.hpp"

namespace lsq {

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("the last state of an empty input word is undefined") {}
};

// Automaton with A = Sigma whose transition table is a Latin square.
// The table is kept in the canonical orientation: rows are inputs, columns
// are states, so delta(state, input) = table(input, state).
class KeyAutomaton {
 public:
  explicit KeyAutomaton(LatinSquare transitions) : table_(std::move(transitions)) {}

  std::uint32_t order() const noexcept { return table_.order(); }
  const LatinSquare& table() const noexcept { return table_; }

  Symbol step(Symbol state, Symbol input) const noexcept { return table_.at(input, state); }

  friend bool operator==(const KeyAutomaton&, const KeyAutomaton&) = default;

 private:
  LatinSquare table_;
};

struct Trajectory {
  Symbol start = 0;
  std::vector<Symbol> inputs;
  // states[i] is the state after consuming inputs[0..i].
  std::vector<Symbol> states;
};

// Every intermediate state; an empty word gives an empty trajectory.
Trajectory run(const KeyAutomaton& automaton, Symbol start, std::span<const Symbol> word);

// Last state only. Throws EmptyInput for an empty word.
Symbol run_last(const KeyAutomaton& automaton, Symbol start, std::span<const Symbol> word);

// The unique automaton B with delta_B(delta_A(a, b), b) = a.
KeyAutomaton invert(const KeyAutomaton& automaton);

// Last state of `inverse` started at `last` and fed the mirror image of `word`.
// Throws EmptyInput for an empty word.
Symbol reverse_run(const KeyAutomaton& inverse, Symbol last, std::span<const Symbol> word);

}  // namespace lsq

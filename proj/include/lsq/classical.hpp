#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "lsq/quasigroup.hpp"

namespace lsq {

class InconsistentPairs : public Error {
 public:
  using Error::Error;
};

// The classical chained quasigroup cipher: c_1 = l * p_1, c_i = c_{i-1} * p_i.
class LeaderCipher {
 public:
  LeaderCipher(Quasigroup q, Symbol leader);

  const Quasigroup& quasigroup() const noexcept { return q_; }
  const Quasigroup& left_inverse() const noexcept { return q_li_; }
  Symbol leader() const noexcept { return leader_; }

  std::vector<Symbol> encrypt(std::span<const Symbol> plaintext) const;
  std::vector<Symbol> decrypt(std::span<const Symbol> ciphertext) const;

 private:
  Quasigroup q_;
  Quasigroup q_li_;
  Symbol leader_;
};

struct KnownPair {
  std::vector<Symbol> plaintext;
  std::vector<Symbol> ciphertext;
};

// x * y = z
struct Triple {
  Symbol x, y, z;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// What a known-plaintext observer of the leader cipher has learned about the
// secret table. Every constraint is checked against the Latin property as it
// arrives; a contradiction means the pairs cannot come from one leader cipher.
class RecoveredKnowledge {
 public:
  explicit RecoveredKnowledge(std::uint32_t order);

  // Harvests c_{i-1} * p_i = c_i for i >= 2 and the leader constraint
  // l * p_1 = c_1, then re-prunes the leader candidates.
  void learn(const KnownPair& pair);

  std::uint32_t order() const noexcept { return order_; }
  std::size_t triple_count() const noexcept { return product_.size(); }
  std::vector<Triple> triples() const;
  std::optional<Symbol> product(Symbol x, Symbol y) const;
  // The y with x * y = z, if known.
  std::optional<Symbol> quotient(Symbol x, Symbol z) const;

  const std::set<Symbol>& leader_candidates() const noexcept { return leader_candidates_; }
  std::optional<Symbol> leader() const;
  // p_1 -> c_1 observed at the start of messages.
  const std::map<Symbol, Symbol>& leader_observations() const noexcept { return leader_out_; }
  // c_1 -> p_1, the same observations keyed by ciphertext.
  const std::map<Symbol, Symbol>& leader_inputs() const noexcept { return leader_in_; }

 private:
  void add_triple(Symbol x, Symbol y, Symbol z);
  void add_leader_observation(Symbol p, Symbol c);
  bool leader_consistent(Symbol l) const;

  std::uint32_t order_;
  std::map<std::pair<Symbol, Symbol>, Symbol> product_;   // (x, y) -> z
  std::map<std::pair<Symbol, Symbol>, Symbol> quotient_;  // (x, z) -> y
  std::map<std::pair<Symbol, Symbol>, Symbol> column_;    // (y, z) -> x
  std::map<Symbol, Symbol> leader_out_;                   // p_1 -> c_1
  std::map<Symbol, Symbol> leader_in_;                    // c_1 -> p_1
  std::set<Symbol> leader_candidates_;
};

// Throws InconsistentPairs if the pairs contradict a single leader cipher.
RecoveredKnowledge known_plaintext_learn(std::uint32_t order, std::span<const KnownPair> pairs);

// Position i is recovered iff the transition (c_{i-1}, ?, c_i) is known. For
// i = 1 the leader must be unique and l * ? = c_1 known, either as a harvested
// triple or as an observed first symbol. Unrecovered positions are std::nullopt.
std::vector<std::optional<Symbol>> attack_decrypt(const RecoveredKnowledge& knowledge,
                                                  std::span<const Symbol> ciphertext);

}  // namespace lsq

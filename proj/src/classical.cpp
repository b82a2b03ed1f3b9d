#include "lsq/classical.hpp"

#include <string>

namespace lsq {

namespace {

template <typename Map, typename Key>
std::optional<Symbol> lookup(const Map& map, const Key& key) {
  const auto it = map.find(key);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

std::string triple_text(Symbol x, Symbol y, Symbol z) {
  return std::to_string(x) + "*" + std::to_string(y) + "=" + std::to_string(z);
}

}  // namespace

LeaderCipher::LeaderCipher(Quasigroup q, Symbol leader)
    : q_(std::move(q)), q_li_(left_inverse_quasigroup(q_)), leader_(leader) {
  if (leader >= q_.order()) throw std::invalid_argument("leader outside the alphabet");
}

std::vector<Symbol> LeaderCipher::encrypt(std::span<const Symbol> plaintext) const {
  std::vector<Symbol> out;
  out.reserve(plaintext.size());
  Symbol prev = leader_;
  for (Symbol p : plaintext) {
    prev = q_.mul(prev, p);
    out.push_back(prev);
  }
  return out;
}

std::vector<Symbol> LeaderCipher::decrypt(std::span<const Symbol> ciphertext) const {
  std::vector<Symbol> out;
  out.reserve(ciphertext.size());
  Symbol prev = leader_;
  for (Symbol c : ciphertext) {
    out.push_back(q_li_.mul(prev, c));
    prev = c;
  }
  return out;
}

RecoveredKnowledge::RecoveredKnowledge(std::uint32_t order) : order_(order) {
  if (!valid_order(order)) throw std::invalid_argument("alphabet order outside [2, 65536]");
  for (std::uint32_t l = 0; l < order; ++l) leader_candidates_.insert(static_cast<Symbol>(l));
}

void RecoveredKnowledge::add_triple(Symbol x, Symbol y, Symbol z) {
  if (const auto known = lookup(product_, std::pair{x, y}); known && *known != z) {
    throw InconsistentPairs("observed " + triple_text(x, y, z) + " but already learned " +
                            triple_text(x, y, *known));
  }
  if (const auto known = lookup(quotient_, std::pair{x, z}); known && *known != y) {
    throw InconsistentPairs("observed " + triple_text(x, y, z) + " but row " + std::to_string(x) +
                            " already maps " + std::to_string(*known) + " to " + std::to_string(z));
  }
  if (const auto known = lookup(column_, std::pair{y, z}); known && *known != x) {
    throw InconsistentPairs("observed " + triple_text(x, y, z) + " but column " + std::to_string(y) +
                            " already yields " + std::to_string(z) + " in row " +
                            std::to_string(*known));
  }
  product_[{x, y}] = z;
  quotient_[{x, z}] = y;
  column_[{y, z}] = x;
}

void RecoveredKnowledge::add_leader_observation(Symbol p, Symbol c) {
  // Same leader row every time: p_1 determines c_1 and vice versa.
  if (const auto known = lookup(leader_out_, p); known && *known != c) {
    throw InconsistentPairs("first symbol " + std::to_string(p) + " encrypted to both " +
                            std::to_string(*known) + " and " + std::to_string(c));
  }
  if (const auto known = lookup(leader_in_, c); known && *known != p) {
    throw InconsistentPairs("first ciphertext symbol " + std::to_string(c) + " produced by both " +
                            std::to_string(*known) + " and " + std::to_string(p));
  }
  leader_out_[p] = c;
  leader_in_[c] = p;
}

bool RecoveredKnowledge::leader_consistent(Symbol l) const {
  for (const auto& [p, c] : leader_out_) {
    if (const auto z = product(l, p); z && *z != c) return false;
    if (const auto y = quotient(l, c); y && *y != p) return false;
    if (const auto x = lookup(column_, std::pair{p, c}); x && *x != l) return false;
  }
  return true;
}

void RecoveredKnowledge::learn(const KnownPair& pair) {
  const auto& p = pair.plaintext;
  const auto& c = pair.ciphertext;
  if (p.size() != c.size()) throw std::invalid_argument("known pair lengths differ");
  for (Symbol s : p)
    if (s >= order_) throw std::invalid_argument("known plaintext symbol outside the alphabet");
  for (Symbol s : c)
    if (s >= order_) throw std::invalid_argument("known ciphertext symbol outside the alphabet");
  if (p.empty()) return;

  add_leader_observation(p[0], c[0]);
  for (std::size_t i = 1; i < p.size(); ++i) add_triple(c[i - 1], p[i], c[i]);

  std::erase_if(leader_candidates_, [this](Symbol l) { return !leader_consistent(l); });
  if (leader_candidates_.empty()) throw InconsistentPairs("no leader is consistent with the pairs");
}

std::vector<Triple> RecoveredKnowledge::triples() const {
  std::vector<Triple> out;
  out.reserve(product_.size());
  for (const auto& [xy, z] : product_) out.push_back({xy.first, xy.second, z});
  return out;
}

std::optional<Symbol> RecoveredKnowledge::product(Symbol x, Symbol y) const {
  return lookup(product_, std::pair{x, y});
}

std::optional<Symbol> RecoveredKnowledge::quotient(Symbol x, Symbol z) const {
  return lookup(quotient_, std::pair{x, z});
}

std::optional<Symbol> RecoveredKnowledge::leader() const {
  if (leader_candidates_.size() != 1) return std::nullopt;
  return *leader_candidates_.begin();
}

RecoveredKnowledge known_plaintext_learn(std::uint32_t order, std::span<const KnownPair> pairs) {
  RecoveredKnowledge knowledge(order);
  for (const auto& pair : pairs) knowledge.learn(pair);
  return knowledge;
}

std::vector<std::optional<Symbol>> attack_decrypt(const RecoveredKnowledge& knowledge,
                                                  std::span<const Symbol> ciphertext) {
  std::vector<std::optional<Symbol>> out;
  out.reserve(ciphertext.size());
  for (std::size_t i = 0; i < ciphertext.size(); ++i) {
    if (i == 0) {
      std::optional<Symbol> first;
      if (const auto l = knowledge.leader()) {
        first = knowledge.quotient(*l, ciphertext[0]);
        if (!first) first = lookup(knowledge.leader_inputs(), ciphertext[0]);
      }
      out.push_back(first);
    } else {
      out.push_back(knowledge.quotient(ciphertext[i - 1], ciphertext[i]));
    }
  }
  return out;
}

}  // namespace lsq

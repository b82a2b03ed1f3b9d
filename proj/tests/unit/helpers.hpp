#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "lsq/cipher.hpp"
#include "lsq/latin.hpp"
#include "oracles.hpp"

namespace testing {

inline lsq::LatinSquare latin(const oracle::Table& t) { return lsq::validate_latin(t); }

inline lsq::KeyAutomaton cyclic_automaton(unsigned n) { return lsq::KeyAutomaton(latin(oracle::cyclic(n))); }

inline oracle::Table to_table(const lsq::LatinSquare& sq) {
  oracle::Table t(sq.order(), std::vector<lsq::Symbol>(sq.order()));
  for (std::size_t r = 0; r < sq.order(); ++r)
    for (std::size_t c = 0; c < sq.order(); ++c) t[r][c] = sq.at(r, c);
  return t;
}

inline std::vector<std::uint8_t> seed_bytes(std::uint8_t tag) { return {tag, 0x5a, 0x17}; }

// Replays a fixed keystream, then fails loudly.
class FixedSource final : public lsq::SymbolSource {
 public:
  explicit FixedSource(std::vector<lsq::Symbol> symbols) : symbols_(std::move(symbols)) {}
  void read(std::span<lsq::Symbol> out) override {
    if (out.size() > symbols_.size() - pos_) throw std::out_of_range("fixed keystream exhausted");
    for (auto& s : out) s = symbols_[pos_++];
  }

 private:
  std::vector<lsq::Symbol> symbols_;
  std::size_t pos_ = 0;
};

}  // namespace testing

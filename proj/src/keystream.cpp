#include "lsq/keystream.hpp"

#include <string>

namespace lsq {

void KeystreamSpec::validate() const {
  if (block_length == 0) throw InvalidSpec("keystream block length must be at least 1");
  if (!valid_order(order)) {
    throw InvalidSpec("alphabet order " + std::to_string(order) + " outside [2, 65536]");
  }
}

KeystreamReader::KeystreamReader(const KeystreamSpec& spec)
    : spec_((spec.validate(), spec)), bytes_(spec.seed, spec.nonce) {
  wide_ = symbol_width(spec_.order) == 2;
  power_of_two_ = (spec_.order & (spec_.order - 1)) == 0;
  const std::uint32_t range = wide_ ? 65536u : 256u;
  accept_below_ = range - range % spec_.order;
}

std::uint32_t KeystreamReader::next_raw() {
  std::uint32_t v = bytes_.next_byte();
  if (wide_) v = (v << 8) | bytes_.next_byte();
  return v;
}

void KeystreamReader::read(std::span<Symbol> out) {
  if (out.size() > kMaxSymbolsPerNonce - position_) {
    throw Error("keystream exhausted: more than 2^38 symbols requested under one nonce");
  }
  const std::uint32_t n = spec_.order;
  if (power_of_two_) {
    const std::uint32_t mask = n - 1;
    for (Symbol& s : out) s = static_cast<Symbol>(next_raw() & mask);
  } else {
    for (Symbol& s : out) {
      std::uint32_t v;
      do {
        v = next_raw();
      } while (v >= accept_below_);
      s = static_cast<Symbol>(v % n);
    }
  }
  position_ += out.size();
}

std::vector<Symbol> KeystreamReader::next_block() {
  std::vector<Symbol> block(spec_.block_length);
  read(block);
  return block;
}

void KeystreamReader::next_block(std::span<Symbol> out) {
  if (out.size() != spec_.block_length) {
    throw std::invalid_argument("next_block: output span must hold exactly m symbols");
  }
  read(out);
}

KeystreamReader open_stream(const KeystreamSpec& spec) { return KeystreamReader(spec); }

}  // namespace lsq

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsq/chacha.hpp"

namespace lsq {

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// Per-nonce cap on emitted symbols.
inline constexpr std::uint64_t kMaxSymbolsPerNonce = std::uint64_t{1} << 38;

// Determines the pseudorandom blocks r_1, r_2, ... completely. A (seed, nonce)
// pair must never be used for two different messages.
struct KeystreamSpec {
  Seed seed{};
  Nonce nonce{};
  std::uint32_t block_length = 4;
  std::uint32_t order = 256;

  // Throws InvalidSpec for m = 0 or an order outside [2, 65536].
  void validate() const;
};

// Anything that can hand out keystream symbols in order.
class SymbolSource {
 public:
  virtual ~SymbolSource() = default;
  virtual void read(std::span<Symbol> out) = 0;
};

// Uniform symbols over [0, n) drawn from ChaCha20(seed, nonce).
//
// Each symbol consumes one generator byte (n <= 256) or two big-endian bytes
// (n > 256). Power-of-two orders mask the raw value; other orders reject raw
// values in the top partial zone and reduce the rest, which is exact.
class KeystreamReader final : public SymbolSource {
 public:
  explicit KeystreamReader(const KeystreamSpec& spec);

  void read(std::span<Symbol> out) override;

  // The next m symbols.
  std::vector<Symbol> next_block();
  void next_block(std::span<Symbol> out);

  std::uint64_t position() const noexcept { return position_; }
  const KeystreamSpec& spec() const noexcept { return spec_; }

 private:
  std::uint32_t next_raw();

  KeystreamSpec spec_;
  ChaChaStream bytes_;
  std::uint64_t position_ = 0;
  bool wide_;
  bool power_of_two_;
  std::uint32_t accept_below_;
};

KeystreamReader open_stream(const KeystreamSpec& spec);

}  // namespace lsq

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "lsq/common.hpp"

namespace lsq {

using Seed = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, 12>;

// Raw ChaCha20 (RFC 8439) keystream bytes, starting at block counter 0.
// Refills 64 blocks at a time; throws once the 32-bit block counter is spent.
class ChaChaStream {
 public:
  ChaChaStream(const Seed& key, const Nonce& nonce);

  void fill(std::span<std::uint8_t> out);
  std::uint8_t next_byte() {
    if (cursor_ == buffer_.size()) refill();
    return buffer_[cursor_++];
  }
  std::uint32_t next_u32();

  // Unbiased integer in [0, bound), bound > 0.
  std::uint32_t uniform_below(std::uint32_t bound);

 private:
  void refill();

  Seed key_;
  Nonce nonce_;
  std::uint64_t next_block_ = 0;
  std::array<std::uint8_t, 64 * 64> buffer_{};
  std::size_t cursor_;
};

// BLAKE2b-256 of (domain || data); used to turn arbitrary seed bytes into a key.
Seed derive_key(std::string_view domain, std::span<const std::uint8_t> data);

}  // namespace lsq

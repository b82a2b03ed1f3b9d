#include "lsq/chacha.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <limits>

namespace lsq {

namespace {

void ensure_sodium() {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw Error("libsodium initialisation failed");
}

constexpr std::uint64_t kBlocksPerRefill = 64;
constexpr std::uint64_t kCounterLimit = std::uint64_t{1} << 32;

}  // namespace

ChaChaStream::ChaChaStream(const Seed& key, const Nonce& nonce)
    : key_(key), nonce_(nonce), cursor_(buffer_.size()) {
  ensure_sodium();
}

void ChaChaStream::refill() {
  if (next_block_ + kBlocksPerRefill > kCounterLimit) {
    throw Error("ChaCha20 block counter exhausted for this nonce");
  }
  static const std::array<std::uint8_t, 64 * 64> zeros{};
  crypto_stream_chacha20_ietf_xor_ic(buffer_.data(), zeros.data(), zeros.size(), nonce_.data(),
                                     static_cast<std::uint32_t>(next_block_), key_.data());
  next_block_ += kBlocksPerRefill;
  cursor_ = 0;
}

void ChaChaStream::fill(std::span<std::uint8_t> out) {
  while (!out.empty()) {
    if (cursor_ == buffer_.size()) refill();
    const std::size_t take = std::min(out.size(), buffer_.size() - cursor_);
    std::memcpy(out.data(), buffer_.data() + cursor_, take);
    cursor_ += take;
    out = out.subspan(take);
  }
}

std::uint32_t ChaChaStream::next_u32() {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | next_byte();
  return v;
}

std::uint32_t ChaChaStream::uniform_below(std::uint32_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Reject the top partial zone so every residue is equally likely.
  const std::uint64_t range = std::uint64_t{1} << 32;
  const std::uint64_t limit = range - range % bound;
  for (;;) {
    const std::uint32_t v = next_u32();
    if (v < limit) return v % bound;
  }
}

Seed derive_key(std::string_view domain, std::span<const std::uint8_t> data) {
  ensure_sodium();
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, 32);
  crypto_generichash_update(&st, reinterpret_cast<const unsigned char*>(domain.data()),
                            domain.size());
  crypto_generichash_update(&st, data.data(), data.size());
  Seed out{};
  crypto_generichash_final(&st, out.data(), out.size());
  return out;
}

}  // namespace lsq

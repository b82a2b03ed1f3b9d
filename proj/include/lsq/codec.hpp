#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "lsq/automaton.hpp"
#include "lsq/chacha.hpp"

namespace lsq {

enum class FormatErrc {
  BadMagic,
  BadChecksum,
  NotLatin,
  TruncatedFile,
  UnsupportedVersion,
  LengthMismatch,
  BadOrder,
  BadBlockLength,
  SymbolOutOfRange,
};

std::string_view to_string(FormatErrc code) noexcept;

class FormatError : public Error {
 public:
  FormatError(FormatErrc code, const std::string& detail);
  FormatErrc code() const noexcept { return code_; }

 private:
  FormatErrc code_;
};

// Key file, all integers big-endian:
//   "LSQKEY\0\1" | order u32 | seed[32] | table n*n symbols | crc32 u32
// The table is in canonical orientation (row = input, column = state),
// row-major, one byte per symbol for n <= 256 and two bytes otherwise. The
// CRC covers every preceding byte.
struct KeyFile {
  KeyAutomaton automaton;
  Seed seed{};

  friend bool operator==(const KeyFile&, const KeyFile&) = default;
};

inline constexpr std::uint8_t kContainerVersion = 1;

// Ciphertext container, all integers big-endian:
//   "LSQCT\0\0\1" | version u8 | order u32 | m u8 | nonce[12] | length u64 |
//   payload (length symbols) | crc32 u32 of the plaintext symbols
// The trailing CRC is a test diagnostic only; it offers no integrity.
struct CipherContainer {
  std::uint8_t version = kContainerVersion;
  std::uint32_t order = 256;
  std::uint8_t block_length = 4;
  Nonce nonce{};
  std::vector<Symbol> payload;
  std::uint32_t plaintext_crc = 0;

  friend bool operator==(const CipherContainer&, const CipherContainer&) = default;
};

std::uint32_t crc32(std::span<const std::uint8_t> bytes) noexcept;

// Symbols at the order's width (1 byte, or 2 bytes big-endian).
std::vector<std::uint8_t> encode_symbols(std::span<const Symbol> symbols, std::uint32_t order);
// Throws FormatError(SymbolOutOfRange) for values >= order and
// FormatError(LengthMismatch) for a ragged byte count.
std::vector<Symbol> decode_symbols(std::span<const std::uint8_t> bytes, std::uint32_t order);

std::uint32_t plaintext_checksum(std::span<const Symbol> plaintext, std::uint32_t order);

std::vector<std::uint8_t> write_key(const KeyFile& key);
KeyFile read_key(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> write_container(const CipherContainer& container);
CipherContainer read_container(std::span<const std::uint8_t> bytes);

inline constexpr std::size_t key_file_size(std::uint32_t order) {
  return 8 + 4 + 32 + std::size_t{order} * order * symbol_width(order) + 4;
}

}  // namespace lsq

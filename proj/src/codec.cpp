#include "lsq/codec.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <string>

namespace lsq {

namespace {

constexpr std::array<std::uint8_t, 8> kKeyMagic{'L', 'S', 'Q', 'K', 'E', 'Y', 0, 1};
constexpr std::array<std::uint8_t, 8> kContainerMagic{'L', 'S', 'Q', 'C', 'T', 0, 0, 1};
constexpr std::size_t kContainerHeader = 8 + 1 + 4 + 1 + 12 + 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < 4; ++i) v = (v << 8) | in[i];
  return v;
}

std::uint64_t get_u64(std::span<const std::uint8_t> in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | in[i];
  return v;
}

void check_magic(std::span<const std::uint8_t> bytes, std::span<const std::uint8_t, 8> magic,
                 const char* what) {
  const std::size_t avail = std::min(bytes.size(), magic.size());
  if (!std::equal(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(avail), magic.begin())) {
    throw FormatError(FormatErrc::BadMagic, std::string("not a ") + what);
  }
  if (avail < magic.size()) throw FormatError(FormatErrc::TruncatedFile, "file ends inside the magic");
}

void check_order(std::uint32_t order) {
  if (!valid_order(order)) {
    throw FormatError(FormatErrc::BadOrder, "order " + std::to_string(order) + " outside [2, 65536]");
  }
}

}  // namespace

std::string_view to_string(FormatErrc code) noexcept {
  switch (code) {
    case FormatErrc::BadMagic: return "BadMagic";
    case FormatErrc::BadChecksum: return "BadChecksum";
    case FormatErrc::NotLatin: return "NotLatin";
    case FormatErrc::TruncatedFile: return "TruncatedFile";
    case FormatErrc::UnsupportedVersion: return "UnsupportedVersion";
    case FormatErrc::LengthMismatch: return "LengthMismatch";
    case FormatErrc::BadOrder: return "BadOrder";
    case FormatErrc::BadBlockLength: return "BadBlockLength";
    case FormatErrc::SymbolOutOfRange: return "SymbolOutOfRange";
  }
  return "Unknown";
}

FormatError::FormatError(FormatErrc code, const std::string& detail)
    : Error(std::string(to_string(code)) + ": " + detail), code_(code) {}

std::uint32_t crc32(std::span<const std::uint8_t> bytes) noexcept {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large inputs in slices.
  while (!bytes.empty()) {
    const std::size_t take = std::min<std::size_t>(bytes.size(), 1u << 30);
    crc = ::crc32(crc, bytes.data(), static_cast<uInt>(take));
    bytes = bytes.subspan(take);
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> encode_symbols(std::span<const Symbol> symbols, std::uint32_t order) {
  std::vector<std::uint8_t> out;
  if (symbol_width(order) == 1) {
    out.assign(symbols.begin(), symbols.end());
  } else {
    out.reserve(symbols.size() * 2);
    for (Symbol s : symbols) {
      out.push_back(static_cast<std::uint8_t>(s >> 8));
      out.push_back(static_cast<std::uint8_t>(s));
    }
  }
  return out;
}

std::vector<Symbol> decode_symbols(std::span<const std::uint8_t> bytes, std::uint32_t order) {
  const std::size_t width = symbol_width(order);
  if (bytes.size() % width != 0) {
    throw FormatError(FormatErrc::LengthMismatch, "odd byte count for 2-byte symbols");
  }
  std::vector<Symbol> out(bytes.size() / width);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t v = width == 1 ? bytes[i] : (std::uint32_t{bytes[2 * i]} << 8) | bytes[2 * i + 1];
    if (v >= order) {
      throw FormatError(FormatErrc::SymbolOutOfRange,
                        "symbol " + std::to_string(v) + " at index " + std::to_string(i) +
                            " is outside an alphabet of order " + std::to_string(order));
    }
    out[i] = static_cast<Symbol>(v);
  }
  return out;
}

std::uint32_t plaintext_checksum(std::span<const Symbol> plaintext, std::uint32_t order) {
  return crc32(encode_symbols(plaintext, order));
}

std::vector<std::uint8_t> write_key(const KeyFile& key) {
  const std::uint32_t order = key.automaton.order();
  std::vector<std::uint8_t> out;
  out.reserve(key_file_size(order));
  out.insert(out.end(), kKeyMagic.begin(), kKeyMagic.end());
  put_u32(out, order);
  out.insert(out.end(), key.seed.begin(), key.seed.end());
  const auto table = encode_symbols(key.automaton.table().entries(), order);
  out.insert(out.end(), table.begin(), table.end());
  put_u32(out, crc32(out));
  return out;
}

KeyFile read_key(std::span<const std::uint8_t> bytes) {
  check_magic(bytes, kKeyMagic, "key file");
  if (bytes.size() < 12) throw FormatError(FormatErrc::TruncatedFile, "key file ends inside the header");
  const std::uint32_t order = get_u32(bytes.subspan(8));
  check_order(order);
  const std::size_t expected = key_file_size(order);
  if (bytes.size() < expected) {
    throw FormatError(FormatErrc::TruncatedFile, "key file has " + std::to_string(bytes.size()) +
                                                     " bytes, expected " + std::to_string(expected));
  }
  if (bytes.size() > expected) {
    throw FormatError(FormatErrc::LengthMismatch, "key file has " + std::to_string(bytes.size() - expected) +
                                                      " trailing bytes");
  }
  const std::size_t body = expected - 4;
  if (crc32(bytes.first(body)) != get_u32(bytes.subspan(body))) {
    throw FormatError(FormatErrc::BadChecksum, "key file CRC mismatch");
  }

  Seed seed{};
  std::copy_n(bytes.begin() + 12, seed.size(), seed.begin());
  const auto table_bytes = bytes.subspan(12 + seed.size(), body - 12 - seed.size());
  try {
    return KeyFile{KeyAutomaton(validate_latin(order, decode_symbols(table_bytes, order))), seed};
  } catch (const FormatError& e) {
    throw FormatError(FormatErrc::NotLatin, e.what());
  } catch (const LatinError& e) {
    throw FormatError(FormatErrc::NotLatin, e.what());
  }
}

std::vector<std::uint8_t> write_container(const CipherContainer& c) {
  if (c.block_length == 0) throw std::invalid_argument("container block length must be at least 1");
  std::vector<std::uint8_t> out;
  out.reserve(kContainerHeader + c.payload.size() * symbol_width(c.order) + 4);
  out.insert(out.end(), kContainerMagic.begin(), kContainerMagic.end());
  out.push_back(c.version);
  put_u32(out, c.order);
  out.push_back(c.block_length);
  out.insert(out.end(), c.nonce.begin(), c.nonce.end());
  put_u64(out, c.payload.size());
  const auto payload = encode_symbols(c.payload, c.order);
  out.insert(out.end(), payload.begin(), payload.end());
  put_u32(out, c.plaintext_crc);
  return out;
}

CipherContainer read_container(std::span<const std::uint8_t> bytes) {
  check_magic(bytes, kContainerMagic, "ciphertext container");
  if (bytes.size() < 9) throw FormatError(FormatErrc::TruncatedFile, "container ends before the version");
  CipherContainer c;
  c.version = bytes[8];
  if (c.version != kContainerVersion) {
    throw FormatError(FormatErrc::UnsupportedVersion, "container version " + std::to_string(c.version));
  }
  if (bytes.size() < kContainerHeader + 4) {
    throw FormatError(FormatErrc::TruncatedFile, "container ends inside the header");
  }
  c.order = get_u32(bytes.subspan(9));
  check_order(c.order);
  c.block_length = bytes[13];
  if (c.block_length == 0) throw FormatError(FormatErrc::BadBlockLength, "block length 0");
  std::copy_n(bytes.begin() + 14, c.nonce.size(), c.nonce.begin());
  const std::uint64_t length = get_u64(bytes.subspan(26));

  const std::size_t width = symbol_width(c.order);
  const std::size_t available = bytes.size() - kContainerHeader - 4;
  if (length > available / width) {
    throw FormatError(FormatErrc::TruncatedFile, "payload declares " + std::to_string(length) +
                                                     " symbols, file holds fewer");
  }
  if (length * width != available) {
    throw FormatError(FormatErrc::LengthMismatch, "payload length field does not match payload size");
  }
  c.payload = decode_symbols(bytes.subspan(kContainerHeader, available), c.order);
  c.plaintext_crc = get_u32(bytes.subspan(kContainerHeader + available));
  return c;
}

}  // namespace lsq

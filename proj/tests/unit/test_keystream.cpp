#include <doctest.h>

#include <sodium.h>

#include <cmath>
#include <cstring>
#include <random>

#include "helpers.hpp"
#include "lsq/keystream.hpp"

using lsq::KeystreamReader;
using lsq::KeystreamSpec;
using lsq::Symbol;

namespace {

KeystreamSpec spec_for(std::uint32_t n, std::uint32_t m, std::uint8_t nonce_tag = 0) {
  KeystreamSpec s;
  for (std::size_t i = 0; i < s.seed.size(); ++i) s.seed[i] = static_cast<std::uint8_t>(i * 7 + 1);
  s.nonce[0] = nonce_tag;
  s.block_length = m;
  s.order = n;
  return s;
}

std::vector<Symbol> take(KeystreamReader& r, std::size_t count) {
  std::vector<Symbol> out(count);
  r.read(out);
  return out;
}

}  // namespace

TEST_CASE("ChaCha20 byte source matches the RFC 8439 encryption vector") {
  lsq::Seed key{};
  for (std::size_t i = 0; i < key.size(); ++i) key[i] = static_cast<std::uint8_t>(i);
  const lsq::Nonce nonce{0, 0, 0, 0, 0, 0, 0, 0x4a, 0, 0, 0, 0};
  const std::string plaintext =
      "Ladies and Gentlemen of the class of '99: If I could offer you only one tip for the future, "
      "sunscreen would be it.";
  const std::vector<std::uint8_t> expected{
      0x6e, 0x2e, 0x35, 0x9a, 0x25, 0x68, 0xf9, 0x80, 0x41, 0xba, 0x07, 0x28, 0xdd, 0x0d, 0x69, 0x81, 0xe9,
      0x7e, 0x7a, 0xec, 0x1d, 0x43, 0x60, 0xc2, 0x0a, 0x27, 0xaf, 0xcc, 0xfd, 0x9f, 0xae, 0x0b, 0xf9, 0x1b,
      0x65, 0xc5, 0x52, 0x47, 0x33, 0xab, 0x8f, 0x59, 0x3d, 0xab, 0xcd, 0x62, 0xb3, 0x57, 0x16, 0x39, 0xd6,
      0x24, 0xe6, 0x51, 0x52, 0xab, 0x8f, 0x53, 0x0c, 0x35, 0x9f, 0x08, 0x61, 0xd8, 0x07, 0xca, 0x0d, 0xbf,
      0x50, 0x0d, 0x6a, 0x61, 0x56, 0xa3, 0x8e, 0x08, 0x8a, 0x22, 0xb6, 0x5e, 0x52, 0xbc, 0x51, 0x4d, 0x16,
      0xcc, 0xf8, 0x06, 0x81, 0x8c, 0xe9, 0x1a, 0xb7, 0x79, 0x37, 0x36, 0x5a, 0xf9, 0x0b, 0xbf, 0x74, 0xa3,
      0x5b, 0xe6, 0xb4, 0x0b, 0x8e, 0xed, 0xf2, 0x78, 0x5e, 0x42, 0x87, 0x4d};
  REQUIRE(plaintext.size() == expected.size());

  // The vector starts at block counter 1; the stream starts at 0.
  lsq::ChaChaStream stream(key, nonce);
  std::vector<std::uint8_t> skip(64), ks(expected.size());
  stream.fill(skip);
  stream.fill(ks);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CHECK((ks[i] ^ static_cast<std::uint8_t>(plaintext[i])) == expected[i]);
  }
}

TEST_CASE("uniform_below stays in range and covers it") {
  lsq::ChaChaStream rng(lsq::Seed{}, lsq::Nonce{});
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.uniform_below(7);
    REQUIRE(v < 7);
    ++hits[v];
  }
  for (int h : hits) CHECK(h > 800);
  CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("open_stream validates the spec") {
  CHECK_THROWS_AS(lsq::open_stream(spec_for(256, 0)), lsq::InvalidSpec);
  CHECK_THROWS_AS(lsq::open_stream(spec_for(1, 4)), lsq::InvalidSpec);
  CHECK_THROWS_AS(lsq::open_stream(spec_for(65537, 4)), lsq::InvalidSpec);
  CHECK_NOTHROW(lsq::open_stream(spec_for(65536, 4)));
}

TEST_CASE("determinism and blocking neutrality") {
  for (std::uint32_t n : {2u, 3u, 200u, 256u, 1000u, 65536u}) {
    auto a = lsq::open_stream(spec_for(n, 1));
    auto b = lsq::open_stream(spec_for(n, 1));
    const auto flat = take(a, 4096);
    CHECK(flat == take(b, 4096));
    for (Symbol s : flat) REQUIRE(s < n);

    // Block i under m = 4 is flat[4i, 4i+4).
    auto blocked = lsq::open_stream(spec_for(n, 4));
    for (std::size_t i = 0; i < 1024; ++i) {
      const auto block = blocked.next_block();
      REQUIRE(block.size() == 4);
      REQUIRE(std::equal(block.begin(), block.end(), flat.begin() + static_cast<std::ptrdiff_t>(4 * i)));
    }
    CHECK(blocked.position() == 4096);
  }
}

TEST_CASE("interleaved reads equal one read") {
  std::mt19937_64 rng(3);
  for (std::uint32_t n : {5u, 256u, 777u}) {
    auto whole = lsq::open_stream(spec_for(n, 16));
    auto pieces = lsq::open_stream(spec_for(n, 16));
    const auto expected = take(whole, 20000);
    std::vector<Symbol> got;
    while (got.size() < expected.size()) {
      const std::size_t len = std::min<std::size_t>(1 + rng() % 300, expected.size() - got.size());
      const auto part = take(pieces, len);
      got.insert(got.end(), part.begin(), part.end());
    }
    CHECK(got == expected);

    auto one_then_rest = lsq::open_stream(spec_for(n, 16));
    auto first = take(one_then_rest, 1);
    const auto rest = take(one_then_rest, 15);
    first.insert(first.end(), rest.begin(), rest.end());
    CHECK(first == std::vector<Symbol>(expected.begin(), expected.begin() + 16));
  }
}

TEST_CASE("n = 256 emits the raw generator bytes") {
  const auto spec = spec_for(256, 4);
  auto reader = lsq::open_stream(spec);
  const auto symbols = take(reader, 10000);
  REQUIRE(sodium_init() >= 0);
  std::vector<std::uint8_t> raw(10000);
  crypto_stream_chacha20_ietf(raw.data(), raw.size(), spec.nonce.data(), spec.seed.data());
  for (std::size_t i = 0; i < raw.size(); ++i) REQUIRE(symbols[i] == raw[i]);
}

TEST_CASE("n = 65536 emits big-endian byte pairs") {
  const auto spec = spec_for(65536, 1);
  auto reader = lsq::open_stream(spec);
  const auto symbols = take(reader, 1000);
  REQUIRE(sodium_init() >= 0);
  std::vector<std::uint8_t> raw(2000);
  crypto_stream_chacha20_ietf(raw.data(), raw.size(), spec.nonce.data(), spec.seed.data());
  for (std::size_t i = 0; i < symbols.size(); ++i) REQUIRE(symbols[i] == ((raw[2 * i] << 8) | raw[2 * i + 1]));
}

TEST_CASE("n = 200 rejection sampling is uniform within 5 sigma") {
  auto reader = lsq::open_stream(spec_for(200, 1));
  const std::size_t total = 1'000'000;
  const auto symbols = take(reader, total);
  std::vector<std::size_t> counts(200, 0);
  for (Symbol s : symbols) ++counts[s];
  const double p = 1.0 / 200;
  const double mean = total * p;
  const double sigma = std::sqrt(total * p * (1 - p));
  for (std::size_t c : counts) CHECK(std::abs(static_cast<double>(c) - mean) <= 5 * sigma);
}

TEST_CASE("distinct nonces give distinct 64-symbol prefixes") {
  std::mt19937_64 rng(21);
  for (int pair = 0; pair < 100; ++pair) {
    auto a = spec_for(256, 4);
    auto b = spec_for(256, 4);
    for (auto& x : a.nonce) x = static_cast<std::uint8_t>(rng());
    do {
      for (auto& x : b.nonce) x = static_cast<std::uint8_t>(rng());
    } while (b.nonce == a.nonce);
    auto ra = lsq::open_stream(a);
    auto rb = lsq::open_stream(b);
    CHECK(take(ra, 64) != take(rb, 64));
  }
}

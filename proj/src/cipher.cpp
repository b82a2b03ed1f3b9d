#include "lsq/cipher.hpp"

#include <algorithm>
#include <string>

namespace lsq {

CipherKey::CipherKey(KeyAutomaton automaton)
    : automaton_(std::move(automaton)),
      inverse_(invert(automaton_)),
      quasigroup_(automaton_.table()),
      left_inverse_(left_inverse_quasigroup(quasigroup_)) {}

Symbol encrypt_symbol_fa(const CipherKey& key, std::span<const Symbol> block, Symbol p) {
  return run_last(key.automaton(), p, block);
}

Symbol decrypt_symbol_fa(const CipherKey& key, std::span<const Symbol> block, Symbol c) {
  return reverse_run(key.inverse_automaton(), c, block);
}

Symbol encrypt_symbol_qg(const CipherKey& key, std::span<const Symbol> block, Symbol p) {
  return fold_mul(key.quasigroup(), block, p);
}

Symbol decrypt_symbol_qg(const CipherKey& key, std::span<const Symbol> block, Symbol c) {
  return fold_left_div(key.quasigroup(), block, c);
}

namespace detail {

namespace {

void check_run(std::size_t m, std::span<const Symbol> keystream, std::span<const Symbol> in,
               std::span<Symbol> out) {
  if (m == 0) throw EmptyKeyBlock();
  if (out.size() != in.size() || keystream.size() != in.size() * m) {
    throw std::invalid_argument("cipher run: mismatched buffer sizes");
  }
}

}  // namespace

void encrypt_run(const CipherKey& key, Engine engine, std::size_t m, std::span<const Symbol> keystream,
                 std::span<const Symbol> in, std::span<Symbol> out) {
  check_run(m, keystream, in, out);
  if (engine == Engine::Automaton) {
    const Symbol* table = key.automaton().table().entries().data();
    const std::size_t n = key.order();
    for (std::size_t i = 0; i < in.size(); ++i) {
      Symbol state = in[i];
      for (Symbol k : keystream.subspan(i * m, m)) state = table[k * n + state];
      out[i] = state;
    }
  } else {
    for (std::size_t i = 0; i < in.size(); ++i)
      out[i] = fold_mul(key.quasigroup(), keystream.subspan(i * m, m), in[i]);
  }
}

void decrypt_run(const CipherKey& key, Engine engine, std::size_t m, std::span<const Symbol> keystream,
                 std::span<const Symbol> in, std::span<Symbol> out) {
  check_run(m, keystream, in, out);
  if (engine == Engine::Automaton) {
    const Symbol* table = key.inverse_automaton().table().entries().data();
    const std::size_t n = key.order();
    for (std::size_t i = 0; i < in.size(); ++i) {
      Symbol state = in[i];
      const Symbol* block = keystream.data() + i * m;
      for (std::size_t j = m; j-- > 0;) state = table[block[j] * n + state];
      out[i] = state;
    }
  } else {
    for (std::size_t i = 0; i < in.size(); ++i)
      out[i] = fold_left_div(key.quasigroup(), keystream.subspan(i * m, m), in[i]);
  }
}

void encrypt_run_single(const CipherKey& key, std::span<const Symbol> keystream,
                        std::span<const Symbol> in, std::span<Symbol> out) {
  check_run(1, keystream, in, out);
  const Symbol* table = key.automaton().table().entries().data();
  const std::size_t n = key.order();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = table[keystream[i] * n + in[i]];
}

void decrypt_run_single(const CipherKey& key, std::span<const Symbol> keystream,
                        std::span<const Symbol> in, std::span<Symbol> out) {
  check_run(1, keystream, in, out);
  const Symbol* table = key.inverse_automaton().table().entries().data();
  const std::size_t n = key.order();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = table[keystream[i] * n + in[i]];
}

}  // namespace detail

CipherSession::CipherSession(std::shared_ptr<const CipherKey> key, std::unique_ptr<SymbolSource> stream,
                             std::uint32_t block_length, Engine engine)
    : key_(std::move(key)),
      stream_(std::move(stream)),
      block_length_(block_length),
      engine_(engine),
      block_(block_length) {
  if (!key_ || !stream_) throw std::invalid_argument("cipher session needs a key and a keystream");
  if (block_length == 0) throw EmptyKeyBlock();
  if (block_length > kMaxBlockLength) {
    throw std::invalid_argument("block length " + std::to_string(block_length) + " exceeds 255");
  }
}

CipherSession CipherSession::open(std::shared_ptr<const CipherKey> key, const KeystreamSpec& spec,
                                  Engine engine) {
  if (key && key->order() != spec.order) {
    throw InvalidSpec("keystream order does not match the key's alphabet");
  }
  return CipherSession(std::move(key), std::make_unique<KeystreamReader>(spec), spec.block_length,
                       engine);
}

std::span<const Symbol> CipherSession::draw_block() {
  touched_ = true;
  stream_->read(block_);
  return block_;
}

Symbol CipherSession::encrypt_symbol_fa(Symbol p) { return lsq::encrypt_symbol_fa(*key_, draw_block(), p); }
Symbol CipherSession::decrypt_symbol_fa(Symbol c) { return lsq::decrypt_symbol_fa(*key_, draw_block(), c); }
Symbol CipherSession::encrypt_symbol_qg(Symbol p) { return lsq::encrypt_symbol_qg(*key_, draw_block(), p); }
Symbol CipherSession::decrypt_symbol_qg(Symbol c) { return lsq::decrypt_symbol_qg(*key_, draw_block(), c); }

template <bool Encrypt>
std::vector<Symbol> CipherSession::transform_message(std::span<const Symbol> in) {
  if (touched_) throw NonceReuse();
  touched_ = true;
  const std::uint32_t n = key_->order();
  if (std::any_of(in.begin(), in.end(), [n](Symbol s) { return s >= n; })) {
    throw std::invalid_argument("message symbol outside the key's alphabet");
  }

  constexpr std::size_t kChunk = 4096;
  const std::size_t m = block_length_;
  std::vector<Symbol> out(in.size());
  std::vector<Symbol> keystream(std::min(in.size(), kChunk) * m);
  for (std::size_t done = 0; done < in.size();) {
    const std::size_t len = std::min(kChunk, in.size() - done);
    const std::span<Symbol> ks(keystream.data(), len * m);
    stream_->read(ks);
    const auto src = in.subspan(done, len);
    const auto dst = std::span<Symbol>(out).subspan(done, len);
    if (m == 1 && engine_ == Engine::Automaton) {
      Encrypt ? detail::encrypt_run_single(*key_, ks, src, dst)
              : detail::decrypt_run_single(*key_, ks, src, dst);
    } else {
      Encrypt ? detail::encrypt_run(*key_, engine_, m, ks, src, dst)
              : detail::decrypt_run(*key_, engine_, m, ks, src, dst);
    }
    done += len;
  }
  return out;
}

std::vector<Symbol> CipherSession::encrypt_message(std::span<const Symbol> plaintext) {
  return transform_message<true>(plaintext);
}

std::vector<Symbol> CipherSession::decrypt_message(std::span<const Symbol> ciphertext) {
  return transform_message<false>(ciphertext);
}

}  // namespace lsq

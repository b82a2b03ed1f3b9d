#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lsq/automaton.hpp"
#include "lsq/keystream.hpp"
#include "lsq/quasigroup.hpp"

namespace lsq {

class NonceReuse : public Error {
 public:
  NonceReuse() : Error("cipher session already consumed keystream; open a new session with a fresh nonce") {}
};

enum class Engine {
  Automaton,   // last state of the key automaton driven by the block
  Quasigroup,  // left fold of the block over the corresponding quasigroup
};

inline constexpr std::uint32_t kDefaultBlockLength = 4;
inline constexpr std::uint32_t kMaxBlockLength = 255;

// Key automaton with every derived view the two engines need, computed once.
// The quasigroup view uses x * y = delta(y, x), which makes its Cayley table
// the automaton's table read in canonical orientation.
class CipherKey {
 public:
  explicit CipherKey(KeyAutomaton automaton);

  std::uint32_t order() const noexcept { return automaton_.order(); }
  const KeyAutomaton& automaton() const noexcept { return automaton_; }
  const KeyAutomaton& inverse_automaton() const noexcept { return inverse_; }
  const Quasigroup& quasigroup() const noexcept { return quasigroup_; }
  const Quasigroup& left_inverse() const noexcept { return left_inverse_; }

 private:
  KeyAutomaton automaton_;
  KeyAutomaton inverse_;
  Quasigroup quasigroup_;
  Quasigroup left_inverse_;
};

// Single-symbol kernels over an explicit keystream block.
Symbol encrypt_symbol_fa(const CipherKey& key, std::span<const Symbol> block, Symbol p);
Symbol decrypt_symbol_fa(const CipherKey& key, std::span<const Symbol> block, Symbol c);
Symbol encrypt_symbol_qg(const CipherKey& key, std::span<const Symbol> block, Symbol p);
Symbol decrypt_symbol_qg(const CipherKey& key, std::span<const Symbol> block, Symbol c);

namespace detail {

// Symbol i of `in` uses keystream[i*m, (i+1)*m).
void encrypt_run(const CipherKey& key, Engine engine, std::size_t m, std::span<const Symbol> keystream,
                 std::span<const Symbol> in, std::span<Symbol> out);
void decrypt_run(const CipherKey& key, Engine engine, std::size_t m, std::span<const Symbol> keystream,
                 std::span<const Symbol> in, std::span<Symbol> out);
// One table lookup per symbol; m = 1 only.
void encrypt_run_single(const CipherKey& key, std::span<const Symbol> keystream,
                        std::span<const Symbol> in, std::span<Symbol> out);
void decrypt_run_single(const CipherKey& key, std::span<const Symbol> keystream,
                        std::span<const Symbol> in, std::span<Symbol> out);

}  // namespace detail

// One message's worth of keystream bound to a key. Single-owner: the stream
// position advances with every symbol processed.
class CipherSession {
 public:
  CipherSession(std::shared_ptr<const CipherKey> key, std::unique_ptr<SymbolSource> stream,
                std::uint32_t block_length, Engine engine = Engine::Automaton);

  // Convenience: ChaCha20 keystream for `spec` (whose order must match the key).
  static CipherSession open(std::shared_ptr<const CipherKey> key, const KeystreamSpec& spec,
                            Engine engine = Engine::Automaton);

  std::uint32_t block_length() const noexcept { return block_length_; }
  Engine engine() const noexcept { return engine_; }
  const CipherKey& key() const noexcept { return *key_; }

  // Each call draws the next block.
  Symbol encrypt_symbol_fa(Symbol p);
  Symbol decrypt_symbol_fa(Symbol c);
  Symbol encrypt_symbol_qg(Symbol p);
  Symbol decrypt_symbol_qg(Symbol c);

  // Whole-message transforms. The session must be fresh; a second message
  // (or a message after per-symbol calls) throws NonceReuse.
  std::vector<Symbol> encrypt_message(std::span<const Symbol> plaintext);
  std::vector<Symbol> decrypt_message(std::span<const Symbol> ciphertext);

 private:
  std::span<const Symbol> draw_block();
  template <bool Encrypt>
  std::vector<Symbol> transform_message(std::span<const Symbol> in);

  std::shared_ptr<const CipherKey> key_;
  std::unique_ptr<SymbolSource> stream_;
  std::uint32_t block_length_;
  Engine engine_;
  std::vector<Symbol> block_;
  bool touched_ = false;
};

}  // namespace lsq

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lsq/cipher.hpp"

namespace lsq::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kKeyError = 3,
  kContainerError = 4,
  kChecksumMismatch = 5,
  kInputError = 6,
};

// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRow {
  std::uint32_t block_length;
  std::uint64_t bytes;
  double seconds;  // median over runs
  double mb_per_s;
};

// Encryption throughput with the default engine, one row per (m, size).
std::vector<BenchRow> bench(const CipherKey& key, std::span<const std::uint64_t> sizes,
                            std::span<const std::uint32_t> block_lengths, std::size_t runs);

struct AttackReport {
  std::size_t learned_triples = 0;
  std::vector<Symbol> leader_candidates;
  Symbol true_leader = 0;
  std::size_t held_out_length = 0;
  std::size_t recovered = 0;  // decoded and correct
  std::size_t wrong = 0;      // decoded but incorrect
  std::size_t unknown = 0;
  bool inconsistent = false;
  std::string inconsistency;

  double accuracy() const {
    return held_out_length == 0 ? 0.0 : static_cast<double>(recovered) / static_cast<double>(held_out_length);
  }
};

// Known-plaintext transition harvesting against the leader cipher, or, with
// `keystream_transcripts`, the same learner fed keystream-cipher pairs.
AttackReport attack_demo(std::uint32_t order, std::size_t messages, std::size_t length,
                         std::span<const std::uint8_t> seed, bool keystream_transcripts);

}  // namespace lsq::cli

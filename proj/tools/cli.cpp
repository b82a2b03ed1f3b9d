#include "cli.hpp"

#include <sodium.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "lsq/classical.hpp"
#include "lsq/codec.hpp"

namespace lsq::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

// A FormatError attributed to the file it came from.
class KeyFileError : public Error {
 public:
  using Error::Error;
};

class ContainerFileError : public Error {
 public:
  using Error::Error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path);
  return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::uint8_t> parse_hex(const std::string& text, const char* what) {
  std::vector<std::uint8_t> out(text.size() / 2 + 1);
  std::size_t len = 0;
  if (text.size() % 2 != 0 ||
      sodium_hex2bin(out.data(), out.size(), text.c_str(), text.size(), nullptr, &len, nullptr) != 0 ||
      len * 2 != text.size()) {
    throw CLI::ValidationError(what, "expected an even number of hex digits");
  }
  out.resize(len);
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out(bytes.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), bytes.data(), bytes.size());
  out.pop_back();
  return out;
}

void random_bytes(std::span<std::uint8_t> out) {
  if (sodium_init() < 0) throw Error("libsodium initialisation failed");
  randombytes_buf(out.data(), out.size());
}

Nonce message_nonce() {
  Nonce nonce{};
  if (const char* forced = std::getenv("LSQ_FORCE_NONCE"); forced && *forced) {
    const auto bytes = parse_hex(forced, "LSQ_FORCE_NONCE");
    if (bytes.size() != nonce.size()) {
      throw CLI::ValidationError("LSQ_FORCE_NONCE", "must be exactly 24 hex digits");
    }
    std::copy(bytes.begin(), bytes.end(), nonce.begin());
  } else {
    random_bytes(nonce);
  }
  return nonce;
}

KeyFile load_key(const std::string& path) {
  const auto bytes = read_file(path);
  try {
    return read_key(bytes);
  } catch (const FormatError& e) {
    throw KeyFileError(path + ": " + e.what());
  }
}

CipherContainer load_container(const std::string& path) {
  const auto bytes = read_file(path);
  try {
    return read_container(bytes);
  } catch (const FormatError& e) {
    throw ContainerFileError(path + ": " + e.what());
  }
}

std::uint64_t parse_size(const std::string& text) {
  if (text.empty()) throw CLI::ValidationError("--size", "empty size");
  std::uint64_t scale = 1;
  std::string digits = text;
  switch (std::toupper(static_cast<unsigned char>(text.back()))) {
    case 'K': scale = 1ull << 10; digits.pop_back(); break;
    case 'M': scale = 1ull << 20; digits.pop_back(); break;
    case 'G': scale = 1ull << 30; digits.pop_back(); break;
    default: break;
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    throw CLI::ValidationError("--size", "not a size: " + text);
  }
  const std::uint64_t value = std::stoull(digits) * scale;
  if (value == 0) throw CLI::ValidationError("--size", "size must be positive");
  return value;
}

Engine parse_engine(const std::string& name) { return name == "qg" ? Engine::Quasigroup : Engine::Automaton; }

struct Options {
  std::uint32_t order = 256;
  std::uint32_t attack_order = 16;
  std::uint32_t block = kDefaultBlockLength;
  std::vector<std::uint32_t> blocks{1, 4, 16};
  std::string key_path;
  std::string in_path;
  std::string out_path;
  std::string engine = "fa";
  std::size_t walk_steps = 0;
  std::string seed_hex;
  std::string table_seed_hex;
  std::vector<std::string> sizes{"16M"};
  std::size_t runs = 5;
  bool csv = false;
  std::size_t messages = 200;
  std::size_t length = 64;
  bool against_keystream = false;
};

int cmd_keygen(const Options& o, std::ostream& out) {
  std::vector<std::uint8_t> table_seed;
  Seed stream_seed{};
  if (!o.seed_hex.empty()) {
    table_seed = parse_hex(o.seed_hex, "--seed");
    stream_seed = derive_key("lsq/keystream-seed/v1", table_seed);
  } else {
    if (!o.table_seed_hex.empty()) {
      table_seed = parse_hex(o.table_seed_hex, "--table-seed");
    } else {
      table_seed.resize(32);
      random_bytes(table_seed);
    }
    random_bytes(stream_seed);
  }
  const KeyFile key{KeyAutomaton(generate_latin(o.order, table_seed, o.walk_steps)), stream_seed};
  const auto bytes = write_key(key);
  write_file(o.out_path, bytes);
  out << "wrote key: order " << o.order << ", " << bytes.size() << " bytes -> " << o.out_path << '\n';
  return kOk;
}

int cmd_encrypt(const Options& o, std::ostream& out) {
  const KeyFile key = load_key(o.key_path);
  const std::uint32_t n = key.automaton.order();
  const auto raw = read_file(o.in_path);
  std::vector<Symbol> plaintext;
  try {
    plaintext = decode_symbols(raw, n);
  } catch (const FormatError& e) {
    throw InputError(std::string("plaintext is not a symbol stream for this key: ") + e.what());
  }

  CipherContainer container;
  container.order = n;
  container.block_length = static_cast<std::uint8_t>(o.block);
  container.nonce = message_nonce();
  container.plaintext_crc = plaintext_checksum(plaintext, n);

  auto cipher_key = std::make_shared<const CipherKey>(key.automaton);
  auto session = CipherSession::open(cipher_key, KeystreamSpec{key.seed, container.nonce, o.block, n},
                                     parse_engine(o.engine));
  container.payload = session.encrypt_message(plaintext);
  write_file(o.out_path, write_container(container));
  out << "encrypted " << plaintext.size() << " symbols (m=" << o.block << ", engine " << o.engine
      << ") -> " << o.out_path << '\n';
  return kOk;
}

int cmd_decrypt(const Options& o, std::ostream& out, std::ostream& err) {
  const KeyFile key = load_key(o.key_path);
  const CipherContainer container = load_container(o.in_path);
  const std::uint32_t n = key.automaton.order();
  if (container.order != n) {
    err << "error: KeyMismatch: container order " << container.order << " but key order " << n << '\n';
    return kKeyError;
  }
  auto cipher_key = std::make_shared<const CipherKey>(key.automaton);
  auto session = CipherSession::open(
      cipher_key, KeystreamSpec{key.seed, container.nonce, container.block_length, n}, parse_engine(o.engine));
  const auto plaintext = session.decrypt_message(container.payload);
  write_file(o.out_path, encode_symbols(plaintext, n));
  if (plaintext_checksum(plaintext, n) != container.plaintext_crc) {
    err << "warning: diagnostic checksum mismatch (wrong key or corrupted ciphertext); "
           "output written to "
        << o.out_path << '\n';
    return kChecksumMismatch;
  }
  out << "decrypted " << plaintext.size() << " symbols -> " << o.out_path << '\n';
  return kOk;
}

int cmd_inspect(const Options& o, std::ostream& out, std::ostream& err) {
  const auto bytes = read_file(o.in_path);
  const bool is_key = bytes.size() >= 6 && std::equal(bytes.begin(), bytes.begin() + 6, "LSQKEY");
  out << o.in_path << '\n';
  if (is_key) {
    out << "  kind: key file\n";
    try {
      const KeyFile key = read_key(bytes);
      out << "  order: " << key.automaton.order() << '\n'
          << "  symbol width: " << symbol_width(key.automaton.order()) << " byte(s)\n"
          << "  checksum: ok\n"
          << "  latin: ok\n";
    } catch (const FormatError& e) {
      if (e.code() == FormatErrc::NotLatin) out << "  checksum: ok\n  latin: FAILED\n";
      err << "error: " << e.what() << '\n';
      return kKeyError;
    }
    return kOk;
  }
  out << "  kind: ciphertext container\n";
  try {
    const CipherContainer c = read_container(bytes);
    out << "  version: " << int{c.version} << '\n'
        << "  order: " << c.order << '\n'
        << "  block length (m): " << int{c.block_length} << '\n'
        << "  nonce: " << to_hex(c.nonce) << '\n'
        << "  payload length: " << c.payload.size() << " symbols\n"
        << "  plaintext crc32 (diagnostic): " << std::hex << std::setw(8) << std::setfill('0')
        << c.plaintext_crc << std::dec << std::setfill(' ') << '\n';
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kContainerError;
  }
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const KeyFile key = load_key(o.key_path);
  std::vector<std::uint64_t> sizes;
  for (const auto& s : o.sizes) sizes.push_back(parse_size(s));
  const CipherKey cipher_key(key.automaton);
  const auto rows = bench(cipher_key, sizes, o.blocks, o.runs);

  if (o.csv) {
    out << "m,bytes,seconds,mb_per_s\n";
    for (const auto& r : rows) out << r.block_length << ',' << r.bytes << ',' << r.seconds << ',' << r.mb_per_s << '\n';
  } else {
    out << "order " << cipher_key.order() << ", median of " << o.runs << " runs\n";
    out << std::setw(6) << "m" << std::setw(14) << "bytes" << std::setw(12) << "seconds" << std::setw(12)
        << "MB/s" << '\n';
    for (const auto& r : rows) {
      out << std::setw(6) << r.block_length << std::setw(14) << r.bytes << std::setw(12) << std::fixed
          << std::setprecision(4) << r.seconds << std::setw(12) << std::setprecision(1) << r.mb_per_s << '\n';
    }
    out.unsetf(std::ios::fixed);
  }
  // Longer blocks cost more lookups and keystream per symbol; flag machines
  // where that does not show.
  for (std::uint64_t size : sizes) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows.size(); ++j) {
        const auto& a = rows[i];
        const auto& b = rows[j];
        if (a.bytes == size && b.bytes == size && a.block_length < b.block_length && a.mb_per_s < b.mb_per_s) {
          out << "inversion: m=" << a.block_length << " slower than m=" << b.block_length << " at " << size
              << " bytes\n";
        }
      }
    }
  }
  return kOk;
}

int cmd_attack_demo(const Options& o, std::ostream& out) {
  std::vector<std::uint8_t> seed{0};
  if (!o.seed_hex.empty()) seed = parse_hex(o.seed_hex, "--seed");
  const auto report = attack_demo(o.attack_order, o.messages, o.length, seed, o.against_keystream);
  out << (o.against_keystream ? "keystream-cipher transcripts" : "leader cipher") << ": order " << o.attack_order
      << ", " << o.messages << " known pairs of length " << o.length << '\n';
  if (report.inconsistent) {
    out << "InconsistentPairs: " << report.inconsistency << '\n'
        << "the transition-harvesting attack does not apply\n";
    return kOk;
  }
  out << "learned triples: " << report.learned_triples << " of " << std::uint64_t{o.attack_order} * o.attack_order << '\n';
  out << "leader candidates (" << report.leader_candidates.size() << "):";
  const std::size_t shown = std::min<std::size_t>(report.leader_candidates.size(), 16);
  for (std::size_t i = 0; i < shown; ++i) out << ' ' << report.leader_candidates[i];
  if (shown < report.leader_candidates.size()) out << " ...";
  out << "\ntrue leader: " << report.true_leader << '\n';
  out << "held-out ciphertext: " << report.held_out_length << " symbols, " << report.recovered << " recovered, "
      << report.wrong << " wrong, " << report.unknown << " unknown\n";
  out << "recovery accuracy: " << std::fixed << std::setprecision(2) << 100.0 * report.accuracy() << "%\n";
  out.unsetf(std::ios::fixed);
  return kOk;
}

}  // namespace

std::vector<BenchRow> bench(const CipherKey& key, std::span<const std::uint64_t> sizes,
                            std::span<const std::uint32_t> block_lengths, std::size_t runs) {
  if (runs == 0) throw std::invalid_argument("bench needs at least one run");
  auto shared = std::make_shared<const CipherKey>(key);
  const std::uint32_t n = key.order();
  const std::size_t width = symbol_width(n);
  ChaChaStream rng(derive_key("lsq/bench/v1", {}), Nonce{});
  std::vector<BenchRow> rows;
  for (std::uint64_t size : sizes) {
    if (size == 0) throw std::invalid_argument("bench size must be positive");
    std::vector<Symbol> plaintext(size / width);
    for (auto& s : plaintext) s = static_cast<Symbol>(rng.uniform_below(n));
    for (std::uint32_t m : block_lengths) {
      std::vector<double> times;
      for (std::size_t run = 0; run < runs; ++run) {
        Nonce nonce{};
        nonce[0] = static_cast<std::uint8_t>(run);
        auto session = CipherSession::open(shared, KeystreamSpec{Seed{}, nonce, m, n});
        const auto start = std::chrono::steady_clock::now();
        const auto ct = session.encrypt_message(plaintext);
        const auto stop = std::chrono::steady_clock::now();
        if (ct.size() != plaintext.size()) throw Error("bench: length not preserved");
        times.push_back(std::chrono::duration<double>(stop - start).count());
      }
      std::sort(times.begin(), times.end());
      const double median = times[times.size() / 2];
      const std::uint64_t bytes = plaintext.size() * width;
      rows.push_back({m, bytes, median, static_cast<double>(bytes) / 1e6 / std::max(median, 1e-12)});
    }
  }
  return rows;
}

AttackReport attack_demo(std::uint32_t order, std::size_t messages, std::size_t length,
                         std::span<const std::uint8_t> seed, bool keystream_transcripts) {
  ChaChaStream rng(derive_key("lsq/attack-demo/v1", seed), Nonce{});
  Seed table_seed{};
  rng.fill(table_seed);
  const Quasigroup q(generate_latin(order, table_seed));
  const auto leader = static_cast<Symbol>(rng.uniform_below(order));
  const LeaderCipher leader_cipher(q, leader);
  auto stream_key = std::make_shared<const CipherKey>(KeyAutomaton(q.cayley()));
  Seed stream_seed{};
  rng.fill(stream_seed);

  auto random_message = [&] {
    std::vector<Symbol> m(length);
    for (auto& s : m) s = static_cast<Symbol>(rng.uniform_below(order));
    return m;
  };
  std::uint64_t nonce_counter = 0;
  auto encrypt = [&](const std::vector<Symbol>& p) {
    if (!keystream_transcripts) return leader_cipher.encrypt(p);
    Nonce nonce{};
    const std::uint64_t id = nonce_counter++;
    for (int i = 0; i < 8; ++i) nonce[i] = static_cast<std::uint8_t>(id >> (8 * i));
    auto session = CipherSession::open(stream_key, KeystreamSpec{stream_seed, nonce, kDefaultBlockLength, order});
    return session.encrypt_message(p);
  };

  AttackReport report;
  report.true_leader = leader;
  RecoveredKnowledge knowledge(order);
  try {
    for (std::size_t i = 0; i < messages; ++i) {
      KnownPair pair;
      pair.plaintext = random_message();
      pair.ciphertext = encrypt(pair.plaintext);
      knowledge.learn(pair);
    }
  } catch (const InconsistentPairs& e) {
    report.inconsistent = true;
    report.inconsistency = e.what();
    return report;
  }
  report.learned_triples = knowledge.triple_count();
  report.leader_candidates.assign(knowledge.leader_candidates().begin(), knowledge.leader_candidates().end());

  const auto held_out = random_message();
  const auto guess = attack_decrypt(knowledge, encrypt(held_out));
  report.held_out_length = held_out.size();
  for (std::size_t i = 0; i < held_out.size(); ++i) {
    if (!guess[i]) {
      ++report.unknown;
    } else if (*guess[i] == held_out[i]) {
      ++report.recovered;
    } else {
      ++report.wrong;
    }
  }
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Latin-square keyed stream cipher toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* keygen = app.add_subcommand("keygen", "Generate a key file (Latin-square table + keystream seed)");
  keygen->add_option("-n,--order", o.order, "Alphabet size")->check(CLI::Range(2u, kMaxOrder));
  keygen->add_option("--walk-steps", o.walk_steps, "Jacobson-Matthews moves after the isotopy");
  auto* seed_opt = keygen->add_option("--seed", o.seed_hex, "Hex seed for table and keystream seed");
  keygen->add_option("--table-seed", o.table_seed_hex, "Hex seed for the table only")->excludes(seed_opt);
  keygen->add_option("--out", o.out_path, "Key file to write")->required();

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a symbol stream into a container");
  encrypt->add_option("--key", o.key_path)->required();
  encrypt->add_option("--in", o.in_path)->required();
  encrypt->add_option("--out", o.out_path)->required();
  encrypt->add_option("-m,--block", o.block, "Keystream block length")->check(CLI::Range(1u, kMaxBlockLength));
  encrypt->add_option("--engine", o.engine)->check(CLI::IsMember({"fa", "qg"}));

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a container");
  decrypt->add_option("--key", o.key_path)->required();
  decrypt->add_option("--in", o.in_path)->required();
  decrypt->add_option("--out", o.out_path)->required();
  decrypt->add_option("--engine", o.engine)->check(CLI::IsMember({"fa", "qg"}));

  auto* inspect = app.add_subcommand("inspect", "Describe a key file or container");
  inspect->add_option("path,--in", o.in_path, "Key file or container")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Encryption throughput per block length");
  bench_cmd->add_option("--key", o.key_path)->required();
  bench_cmd->add_option("--size", o.sizes, "Message sizes, e.g. 64M")->delimiter(',');
  bench_cmd->add_option("-m,--block", o.blocks, "Block lengths to compare")
      ->delimiter(',')
      ->check(CLI::Range(1u, kMaxBlockLength));
  bench_cmd->add_option("--runs", o.runs, "Timed runs per cell (median reported)")->check(CLI::Range(5, 1000));
  bench_cmd->add_flag("--csv", o.csv, "CSV output");

  auto* attack = app.add_subcommand("attack-demo", "Known-plaintext attack on the leader cipher");
  attack->add_option("-n,--order", o.attack_order)->check(CLI::Range(2u, kMaxOrder));
  attack->add_option("--messages", o.messages, "Known plaintext/ciphertext pairs");
  attack->add_option("--length", o.length, "Symbols per message")->check(CLI::Range(1, 1 << 24));
  attack->add_option("--seed", o.seed_hex, "Hex seed for the simulation");
  attack->add_flag("--against-keystream", o.against_keystream, "Feed keystream-cipher transcripts instead");

  std::vector<const char*> argv{"lsq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (bench_cmd->parsed()) {
      if (o.sizes.empty()) throw CLI::ValidationError("--size", "at least one size required");
      for (const auto& s : o.sizes) parse_size(s);
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (keygen->parsed()) return cmd_keygen(o, out);
    if (encrypt->parsed()) return cmd_encrypt(o, out);
    if (decrypt->parsed()) return cmd_decrypt(o, out, err);
    if (inspect->parsed()) return cmd_inspect(o, out, err);
    if (bench_cmd->parsed()) return cmd_bench(o, out);
    if (attack->parsed()) return cmd_attack_demo(o, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIoError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const KeyFileError& e) {
    err << "key error: " << e.what() << '\n';
    return kKeyError;
  } catch (const ContainerFileError& e) {
    err << "container error: " << e.what() << '\n';
    return kContainerError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kUsage;
}

}  // namespace lsq::cli

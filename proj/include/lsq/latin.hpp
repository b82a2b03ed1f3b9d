#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsq/common.hpp"

namespace lsq {

class ChaChaStream;

class LatinError : public Error {
 public:
  enum class Kind {
    DimensionMismatch,
    SymbolOutOfRange,
    RowViolation,
    ColViolation,
    OrderTooSmall,
    OrderTooLarge,
  };

  LatinError(Kind kind, std::size_t line, Symbol symbol, const std::string& what)
      : Error(what), kind_(kind), line_(line), symbol_(symbol) {}

  Kind kind() const noexcept { return kind_; }
  // Offending row/column index (RowViolation, ColViolation, SymbolOutOfRange).
  std::size_t line() const noexcept { return line_; }
  Symbol symbol() const noexcept { return symbol_; }

 private:
  Kind kind_;
  std::size_t line_;
  Symbol symbol_;
};

// An n x n table whose rows and columns are all permutations of [0, n).
// Only obtainable through validation or a construction that is Latin by design.
class LatinSquare {
 public:
  std::uint32_t order() const noexcept { return order_; }
  Symbol at(std::size_t row, std::size_t col) const noexcept { return entries_[row * order_ + col]; }
  std::span<const Symbol> row(std::size_t r) const noexcept {
    return {entries_.data() + r * order_, order_};
  }
  // Row-major, order() * order() entries.
  std::span<const Symbol> entries() const noexcept { return entries_; }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  LatinSquare(std::uint32_t order, std::vector<Symbol> entries)
      : order_(order), entries_(std::move(entries)) {}

  friend LatinSquare validate_latin(std::uint32_t, std::vector<Symbol>);
  friend LatinSquare latin_from_isotopy(std::span<const Symbol>, std::span<const Symbol>,
                                        std::span<const Symbol>);
  friend LatinSquare inverse_rows(const LatinSquare&);
  friend LatinSquare inverse_columns(const LatinSquare&);
  friend LatinSquare jacobson_matthews_walk(const LatinSquare&, ChaChaStream&, std::size_t);

  std::uint32_t order_;
  std::vector<Symbol> entries_;
};

// Certifies all 2n lines. Rows are scanned before columns; the error names the
// first repeated symbol found.
LatinSquare validate_latin(std::uint32_t order, std::vector<Symbol> row_major);
LatinSquare validate_latin(const std::vector<std::vector<Symbol>>& rows);

// Cayley table of Z_n: entry (r, c) = (r + c) mod n.
LatinSquare cyclic_latin(std::uint32_t order);

// entry (r, c) = symbol_perm[(row_perm[r] + col_perm[c]) mod n]. All three
// arguments must be permutations of [0, n).
LatinSquare latin_from_isotopy(std::span<const Symbol> row_perm, std::span<const Symbol> col_perm,
                               std::span<const Symbol> symbol_perm);

// Row r of the result is the inverse permutation of row r of `square`:
// result(r, square(r, c)) = c.
LatinSquare inverse_rows(const LatinSquare& square);
// Column c of the result is the inverse permutation of column c:
// result(square(r, c), c) = r.
LatinSquare inverse_columns(const LatinSquare& square);

// Deterministic key material: a seeded isotope of Z_n, optionally followed by
// `walk_steps` Jacobson-Matthews moves. Not a uniform sampler.
LatinSquare generate_latin(std::uint32_t order, std::span<const std::uint8_t> seed,
                           std::size_t walk_steps = 0);

// Applies `steps` full Jacobson-Matthews moves (each ends on a proper square).
LatinSquare jacobson_matthews_walk(const LatinSquare& start, ChaChaStream& rng, std::size_t steps);

}  // namespace lsq

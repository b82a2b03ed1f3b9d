#include "lsq/latin.hpp"

#include <array>
#include <numeric>
#include <string>

#include "lsq/chacha.hpp"

namespace lsq {

namespace {

void check_order(std::uint32_t order) {
  if (order < kMinOrder) {
    throw LatinError(LatinError::Kind::OrderTooSmall, 0, 0,
                     "Latin square order " + std::to_string(order) + " is below 2");
  }
  if (order > kMaxOrder) {
    throw LatinError(LatinError::Kind::OrderTooLarge, 0, 0,
                     "Latin square order " + std::to_string(order) + " exceeds 65536");
  }
}

void check_permutation(std::span<const Symbol> perm, std::size_t n, const char* name) {
  if (perm.size() != n) throw std::invalid_argument(std::string(name) + ": wrong length");
  std::vector<bool> seen(n, false);
  for (Symbol v : perm) {
    if (v >= n || seen[v]) throw std::invalid_argument(std::string(name) + ": not a permutation");
    seen[v] = true;
  }
}

std::vector<Symbol> random_permutation(std::uint32_t n, ChaChaStream& rng) {
  std::vector<Symbol> perm(n);
  std::iota(perm.begin(), perm.end(), Symbol{0});
  for (std::uint32_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.uniform_below(i + 1)]);
  }
  return perm;
}

}  // namespace

LatinSquare validate_latin(std::uint32_t order, std::vector<Symbol> row_major) {
  check_order(order);
  const std::size_t n = order;
  if (row_major.size() != n * n) {
    throw LatinError(LatinError::Kind::DimensionMismatch, 0, 0,
                     "table has " + std::to_string(row_major.size()) + " entries, expected " +
                         std::to_string(n * n));
  }
  // Stamps avoid clearing the seen-array for each of the 2n lines.
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t line_id = 0;
  for (std::size_t r = 0; r < n; ++r) {
    ++line_id;
    for (std::size_t c = 0; c < n; ++c) {
      const Symbol v = row_major[r * n + c];
      if (v >= n) {
        throw LatinError(LatinError::Kind::SymbolOutOfRange, r, v,
                         "symbol " + std::to_string(v) + " out of range in row " +
                             std::to_string(r));
      }
      if (stamp[v] == line_id) {
        throw LatinError(LatinError::Kind::RowViolation, r, v,
                         "row " + std::to_string(r) + " repeats symbol " + std::to_string(v));
      }
      stamp[v] = line_id;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    ++line_id;
    for (std::size_t r = 0; r < n; ++r) {
      const Symbol v = row_major[r * n + c];
      if (stamp[v] == line_id) {
        throw LatinError(LatinError::Kind::ColViolation, c, v,
                         "column " + std::to_string(c) + " repeats symbol " + std::to_string(v));
      }
      stamp[v] = line_id;
    }
  }
  return LatinSquare(order, std::move(row_major));
}

LatinSquare validate_latin(const std::vector<std::vector<Symbol>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Symbol> flat;
  flat.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw LatinError(LatinError::Kind::DimensionMismatch, r, 0,
                       "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                           " entries, expected " + std::to_string(n));
    }
    flat.insert(flat.end(), rows[r].begin(), rows[r].end());
  }
  return validate_latin(static_cast<std::uint32_t>(n), std::move(flat));
}

LatinSquare cyclic_latin(std::uint32_t order) {
  check_order(order);
  std::vector<Symbol> identity(order);
  std::iota(identity.begin(), identity.end(), Symbol{0});
  return latin_from_isotopy(identity, identity, identity);
}

LatinSquare latin_from_isotopy(std::span<const Symbol> row_perm, std::span<const Symbol> col_perm,
                               std::span<const Symbol> symbol_perm) {
  const auto order = static_cast<std::uint32_t>(row_perm.size());
  check_order(order);
  check_permutation(row_perm, order, "row permutation");
  check_permutation(col_perm, order, "column permutation");
  check_permutation(symbol_perm, order, "symbol permutation");
  const std::size_t n = order;
  std::vector<Symbol> entries(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      entries[r * n + c] = symbol_perm[(std::size_t{row_perm[r]} + col_perm[c]) % n];
    }
  }
  return LatinSquare(order, std::move(entries));
}

LatinSquare inverse_rows(const LatinSquare& square) {
  const std::size_t n = square.order();
  std::vector<Symbol> out(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out[r * n + square.at(r, c)] = static_cast<Symbol>(c);
  }
  return LatinSquare(square.order(), std::move(out));
}

LatinSquare inverse_columns(const LatinSquare& square) {
  const std::size_t n = square.order();
  std::vector<Symbol> out(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out[std::size_t{square.at(r, c)} * n + c] = static_cast<Symbol>(r);
  }
  return LatinSquare(square.order(), std::move(out));
}

LatinSquare generate_latin(std::uint32_t order, std::span<const std::uint8_t> seed,
                           std::size_t walk_steps) {
  check_order(order);
  ChaChaStream rng(derive_key("lsq/latin/v1", seed), Nonce{});
  const auto rows = random_permutation(order, rng);
  const auto cols = random_permutation(order, rng);
  const auto syms = random_permutation(order, rng);
  auto square = latin_from_isotopy(rows, cols, syms);
  if (walk_steps == 0) return square;
  return jacobson_matthews_walk(square, rng, walk_steps);
}

namespace {

// Incidence cube restricted to its nonzero cells. A proper square has one +1
// per (row, col); an improper one has a single -1 cell whose three lines each
// carry two +1 entries, so no (row, col) ever holds more than three entries.
class IncidenceCube {
 public:
  explicit IncidenceCube(const LatinSquare& square) : n_(square.order()), cells_(n_ * n_) {
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) add(r, c, square.at(r, c), 1);
  }

  int value(std::size_t r, std::size_t c, Symbol s) const {
    const Cell& cell = cells_[r * n_ + c];
    for (std::uint8_t i = 0; i < cell.count; ++i)
      if (cell.sym[i] == s) return cell.val[i];
    return 0;
  }

  void add(std::size_t r, std::size_t c, Symbol s, int delta) {
    Cell& cell = cells_[r * n_ + c];
    for (std::uint8_t i = 0; i < cell.count; ++i) {
      if (cell.sym[i] != s) continue;
      cell.val[i] = static_cast<std::int8_t>(cell.val[i] + delta);
      if (cell.val[i] == 0) {
        --cell.count;
        cell.sym[i] = cell.sym[cell.count];
        cell.val[i] = cell.val[cell.count];
      }
      return;
    }
    if (cell.count == cell.sym.size()) throw Error("incidence cube cell overflow");
    cell.sym[cell.count] = s;
    cell.val[cell.count] = static_cast<std::int8_t>(delta);
    ++cell.count;
  }

  Symbol positive_symbol(std::size_t r, std::size_t c, std::size_t which) const {
    const Cell& cell = cells_[r * n_ + c];
    std::size_t seen = 0;
    for (std::uint8_t i = 0; i < cell.count; ++i)
      if (cell.val[i] == 1 && seen++ == which) return cell.sym[i];
    throw Error("incidence cube: missing positive symbol");
  }

  std::size_t positive_row(std::size_t c, Symbol s, std::size_t which) const {
    std::size_t seen = 0;
    for (std::size_t r = 0; r < n_; ++r)
      if (value(r, c, s) == 1 && seen++ == which) return r;
    throw Error("incidence cube: missing positive row");
  }

  std::size_t positive_col(std::size_t r, Symbol s, std::size_t which) const {
    std::size_t seen = 0;
    for (std::size_t c = 0; c < n_; ++c)
      if (value(r, c, s) == 1 && seen++ == which) return c;
    throw Error("incidence cube: missing positive column");
  }

  // The +-1 move on the 2x2x2 sub-cube spanned by (r, c, s) and (r2, c2, s2).
  void pivot(std::size_t r, std::size_t c, Symbol s, std::size_t r2, std::size_t c2, Symbol s2) {
    add(r, c, s, 1);
    add(r, c2, s2, 1);
    add(r2, c, s2, 1);
    add(r2, c2, s, 1);
    add(r, c, s2, -1);
    add(r, c2, s, -1);
    add(r2, c, s, -1);
    add(r2, c2, s2, -1);
  }

  std::vector<Symbol> to_entries() const {
    std::vector<Symbol> out(n_ * n_);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cells_[i].count != 1 || cells_[i].val[0] != 1) throw Error("incidence cube is improper");
      out[i] = cells_[i].sym[0];
    }
    return out;
  }

 private:
  struct Cell {
    std::array<Symbol, 3> sym{};
    std::array<std::int8_t, 3> val{};
    std::uint8_t count = 0;
  };

  std::size_t n_;
  std::vector<Cell> cells_;
};

}  // namespace

LatinSquare jacobson_matthews_walk(const LatinSquare& start, ChaChaStream& rng, std::size_t steps) {
  const std::uint32_t n = start.order();
  IncidenceCube cube(start);
  for (std::size_t step = 0; step < steps; ++step) {
    std::size_t r = rng.uniform_below(n);
    std::size_t c = rng.uniform_below(n);
    const Symbol current = cube.positive_symbol(r, c, 0);
    auto s = static_cast<Symbol>(rng.uniform_below(n - 1));
    if (s >= current) ++s;

    std::size_t r2 = cube.positive_row(c, s, 0);
    std::size_t c2 = cube.positive_col(r, s, 0);
    Symbol s2 = current;
    cube.pivot(r, c, s, r2, c2, s2);

    while (cube.value(r2, c2, s2) == -1) {
      r = r2;
      c = c2;
      s = s2;
      r2 = cube.positive_row(c, s, rng.uniform_below(2));
      c2 = cube.positive_col(r, s, rng.uniform_below(2));
      s2 = cube.positive_symbol(r, c, rng.uniform_below(2));
      cube.pivot(r, c, s, r2, c2, s2);
    }
  }
  return LatinSquare(n, cube.to_entries());
}

}  // namespace lsq

#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's algebra; tables are plain nested vectors and every
// quantity is recomputed by modular arithmetic, scanning, or enumeration.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "lsq/common.hpp"

namespace oracle {

using Table = std::vector<std::vector<lsq::Symbol>>;

inline lsq::Symbol mod_add(unsigned a, unsigned b, unsigned n) { return static_cast<lsq::Symbol>((a + b) % n); }
inline lsq::Symbol mod_sub(unsigned a, unsigned b, unsigned n) { return static_cast<lsq::Symbol>((a + n - b % n) % n); }

// Z_n Cayley table, which is also the transition table of delta(a, x) = a + x
// in canonical orientation (row x, column a).
inline Table cyclic(unsigned n) {
  Table t(n, std::vector<lsq::Symbol>(n));
  for (unsigned r = 0; r < n; ++r)
    for (unsigned c = 0; c < n; ++c) t[r][c] = mod_add(r, c, n);
  return t;
}

inline std::vector<lsq::Symbol> flatten(const Table& t) {
  std::vector<lsq::Symbol> flat;
  for (const auto& row : t) flat.insert(flat.end(), row.begin(), row.end());
  return flat;
}

inline bool is_latin(const Table& t) {
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> row(n, 0), col(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (t[i][j] >= n || t[j][i] >= n) return false;
      if (row[t[i][j]]++ || col[t[j][i]]++) return false;
    }
  }
  return true;
}

// The b with t[a][b] == c, by scanning the row.
inline lsq::Symbol scan_left_div(const Table& t, lsq::Symbol a, lsq::Symbol c) {
  for (std::size_t b = 0; b < t.size(); ++b)
    if (t[a][b] == c) return static_cast<lsq::Symbol>(b);
  return 0xFFFF;
}

// The b with t[b][a] == c, by scanning the column.
inline lsq::Symbol scan_right_div(const Table& t, lsq::Symbol c, lsq::Symbol a) {
  for (std::size_t b = 0; b < t.size(); ++b)
    if (t[b][a] == c) return static_cast<lsq::Symbol>(b);
  return 0xFFFF;
}

// delta(state, input) for a canonical-orientation table.
inline lsq::Symbol step(const Table& t, lsq::Symbol state, lsq::Symbol input) { return t[input][state]; }

// Calls `visit` for every Latin square of order n (backtracking, row-major).
inline void for_each_latin(unsigned n, const std::function<void(const Table&)>& visit) {
  Table t(n, std::vector<lsq::Symbol>(n, 0));
  std::vector<std::vector<bool>> row_used(n, std::vector<bool>(n, false));
  std::vector<std::vector<bool>> col_used(n, std::vector<bool>(n, false));
  std::function<void(unsigned)> fill = [&](unsigned cell) {
    if (cell == n * n) {
      visit(t);
      return;
    }
    const unsigned r = cell / n, c = cell % n;
    for (unsigned s = 0; s < n; ++s) {
      if (row_used[r][s] || col_used[c][s]) continue;
      row_used[r][s] = col_used[c][s] = true;
      t[r][c] = static_cast<lsq::Symbol>(s);
      fill(cell + 1);
      row_used[r][s] = col_used[c][s] = false;
    }
  };
  fill(0);
}

// Number of 2x2 sub-squares (r1, r2, c1, c2) with t[r1][c1] = t[r2][c2] and
// t[r1][c2] = t[r2][c1]; invariant under isotopy.
inline std::size_t intercalates(const Table& t) {
  const std::size_t n = t.size();
  std::size_t count = 0;
  for (std::size_t r1 = 0; r1 < n; ++r1)
    for (std::size_t r2 = r1 + 1; r2 < n; ++r2)
      for (std::size_t c1 = 0; c1 < n; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < n; ++c2)
          if (t[r1][c1] == t[r2][c2] && t[r1][c2] == t[r2][c1]) ++count;
  return count;
}

inline std::vector<lsq::Symbol> random_word(std::mt19937_64& rng, unsigned n, std::size_t len) {
  std::vector<lsq::Symbol> w(len);
  for (auto& s : w) s = static_cast<lsq::Symbol>(rng() % n);
  return w;
}

}  // namespace oracle

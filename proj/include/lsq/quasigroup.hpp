#pragma once

#include <span>

#include "lsq/latin.hpp"

namespace lsq {

class EmptyKeyBlock : public Error {
 public:
  EmptyKeyBlock() : Error("keystream block must contain at least one symbol") {}
};

// A finite quasigroup given by its Cayley table: x * y = cayley(x, y).
//
// Both divisions are answered from inverse-permutation tables built once at
// construction, so every operation is a single lookup.
class Quasigroup {
 public:
  explicit Quasigroup(LatinSquare cayley)
      : cayley_(std::move(cayley)),
        row_inverse_(inverse_rows(cayley_)),
        col_inverse_(inverse_columns(cayley_)) {}

  std::uint32_t order() const noexcept { return cayley_.order(); }
  const LatinSquare& cayley() const noexcept { return cayley_; }

  Symbol mul(Symbol x, Symbol y) const noexcept { return cayley_.at(x, y); }
  // The unique b with a * b = c.
  Symbol left_div(Symbol a, Symbol c) const noexcept { return row_inverse_.at(a, c); }
  // The unique b with b * a = c.
  Symbol right_div(Symbol c, Symbol a) const noexcept { return col_inverse_.at(c, a); }

  // (a, c) -> a \ c, as a table.
  const LatinSquare& left_division_table() const noexcept { return row_inverse_; }

 private:
  LatinSquare cayley_;
  LatinSquare row_inverse_;
  // col_inverse_(c, a) = c / a
  LatinSquare col_inverse_;
};

// (A, \): the quasigroup whose product is the left division of `q`.
Quasigroup left_inverse_quasigroup(const Quasigroup& q);

// k_m * (... * (k_2 * (k_1 * p))...)
Symbol fold_mul(const Quasigroup& q, std::span<const Symbol> block, Symbol p);

// k_1 \ (... \ (k_{m-1} \ (k_m \ c))...); undoes fold_mul with the same block.
Symbol fold_left_div(const Quasigroup& q, std::span<const Symbol> block, Symbol c);

}  // namespace lsq

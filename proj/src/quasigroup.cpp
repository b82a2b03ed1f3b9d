#include "lsq/quasigroup.hpp"

namespace lsq {

Quasigroup left_inverse_quasigroup(const Quasigroup& q) {
  return Quasigroup(q.left_division_table());
}

Symbol fold_mul(const Quasigroup& q, std::span<const Symbol> block, Symbol p) {
  if (block.empty()) throw EmptyKeyBlock();
  Symbol acc = p;
  for (Symbol k : block) acc = q.mul(k, acc);
  return acc;
}

Symbol fold_left_div(const Quasigroup& q, std::span<const Symbol> block, Symbol c) {
  if (block.empty()) throw EmptyKeyBlock();
  Symbol acc = c;
  for (auto it = block.rbegin(); it != block.rend(); ++it) acc = q.left_div(*it, acc);
  return acc;
}

}  // namespace lsq

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lsq {

// An element of the shared state/input alphabet [0, n).
using Symbol = std::uint16_t;

inline constexpr std::uint32_t kMinOrder = 2;
inline constexpr std::uint32_t kMaxOrder = 65536;

// Bytes per symbol in every serialized form.
constexpr std::size_t symbol_width(std::uint32_t order) noexcept {
  return order <= 256 ? 1 : 2;
}

constexpr bool valid_order(std::uint32_t order) noexcept {
  return order >= kMinOrder && order <= kMaxOrder;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lsq

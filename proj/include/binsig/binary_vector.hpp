#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "binsig/errors.hpp"

namespace binsig {

// A point of B^n, 1 <= n <= 64. Component i is bit(i); the textual form
// lists components left to right, so "10" has bit(0) = 1, bit(1) = 0.
class BinaryVector {
 public:
  static constexpr int kMaxWidth = 64;

  BinaryVector(int width, std::uint64_t bits) : width_(width), bits_(bits) {
    if (width < 1 || width > kMaxWidth) {
      throw std::invalid_argument("BinaryVector: width out of range");
    }
    bits_ &= mask(width);
  }

  static BinaryVector zeros(int width) { return BinaryVector(width, 0); }
  static BinaryVector ones(int width) { return BinaryVector(width, ~0ULL); }

  static std::optional<BinaryVector> parse(std::string_view s) {
    if (s.empty() || s.size() > kMaxWidth) return std::nullopt;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        bits |= 1ULL << i;
      } else if (s[i] != '0') {
        return std::nullopt;
      }
    }
    return BinaryVector(static_cast<int>(s.size()), bits);
  }

  int width() const { return width_; }
  bool bit(int i) const { return (bits_ >> i) & 1u; }

  BinaryVector operator^(const BinaryVector& o) const {
    require_same_width(o, "xor");
    return BinaryVector(width_, bits_ ^ o.bits_);
  }
  BinaryVector operator&(const BinaryVector& o) const {
    require_same_width(o, "and");
    return BinaryVector(width_, bits_ & o.bits_);
  }

  bool operator==(const BinaryVector&) const = default;

  // Lexicographic on components, component 0 first.
  bool operator<(const BinaryVector& o) const {
    if (width_ != o.width_) return width_ < o.width_;
    for (int i = 0; i < width_; ++i) {
      if (bit(i) != o.bit(i)) return !bit(i);
    }
    return false;
  }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(width_), '0');
    for (int i = 0; i < width_; ++i) {
      if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
  }

 private:
  static std::uint64_t mask(int width) {
    return width == kMaxWidth ? ~0ULL : (1ULL << width) - 1;
  }

  void require_same_width(const BinaryVector& o, const char* op) const {
    if (width_ != o.width_) {
      throw WidthMismatch(std::string("BinaryVector ") + op + ": width " +
                          std::to_string(width_) + " vs " +
                          std::to_string(o.width_));
    }
  }

  int width_;
  std::uint64_t bits_;
};

}  // namespace binsig

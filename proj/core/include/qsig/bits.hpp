#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qsig {

// Fixed-width binary string. Outcome labels, complexity-model queries and
// tiny-machine outputs are all Bits. Storage is the ascii rendering
// ('0'/'1', most significant bit first) because every consumer — the codec,
// table keys, report files — wants that form anyway, and the widths involved
// are small. The empty string is a valid zero-width value (the label of the
// single outcome of a one-projector measurement).
class Bits {
public:
  Bits() = default;

  // Parse an ascii rendering; any character other than '0'/'1' is rejected.
  static Bits from_string(std::string_view s);
  // Big-endian fixed-width encoding of an index; requires width in [0, 64)
  // and k < 2^width.
  static Bits from_index(std::uint64_t k, int width);
  // Raw bytes, 8 bits per byte, most significant bit first.
  static Bits from_bytes(std::string_view bytes);

  int size() const { return static_cast<int>(s_.size()); }
  bool empty() const { return s_.empty(); }
  bool bit(int i) const { return s_[static_cast<std::size_t>(i)] == '1'; }

  // Numeric value of the big-endian rendering; requires size() < 64.
  std::uint64_t index() const;

  const std::string& str() const { return s_; }

  Bits concat(const Bits& other) const;

  friend bool operator==(const Bits&, const Bits&) = default;
  // Lexicographic on the rendering: a strict total order, used to put outcome
  // labels into canonical order before estimator accumulation.
  friend auto operator<=>(const Bits&, const Bits&) = default;

private:
  explicit Bits(std::string s) : s_(std::move(s)) {}
  std::string s_;
};

// Maps outcome indices to fixed-width big-endian bit strings. Width 0 is the
// degenerate single-outcome encoding (index 0 -> empty string).
class OutcomeEncoding {
public:
  explicit OutcomeEncoding(int width);
  int width() const { return width_; }
  Bits encode(std::uint64_t k) const;

private:
  int width_;
};

}  // namespace qsig

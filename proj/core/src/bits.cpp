#include "qsig/bits.hpp"

#include <stdexcept>

namespace qsig {

Bits Bits::from_string(std::string_view s) {
  for (char ch : s) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
  }
  return Bits(std::string(s));
}

Bits Bits::from_index(std::uint64_t k, int width) {
  if (width < 0 || width >= 64) {
    throw std::invalid_argument("bit width must lie in [0, 64)");
  }
  if (width < 64 && (k >> width) != 0) {
    throw std::invalid_argument("index does not fit in the requested bit width");
  }
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((k >> (width - 1 - i)) & 1ULL) s[static_cast<std::size_t>(i)] = '1';
  }
  return Bits(std::move(s));
}

Bits Bits::from_bytes(std::string_view bytes) {
  std::string s;
  s.reserve(bytes.size() * 8);
  for (unsigned char b : bytes) {
    for (int i = 7; i >= 0; --i) {
      s.push_back(((b >> i) & 1) ? '1' : '0');
    }
  }
  return Bits(std::move(s));
}

std::uint64_t Bits::index() const {
  if (s_.size() >= 64) {
    throw std::logic_error("bit string too wide to convert to an index");
  }
  std::uint64_t k = 0;
  for (char ch : s_) k = (k << 1) | static_cast<std::uint64_t>(ch == '1');
  return k;
}

Bits Bits::concat(const Bits& other) const { return Bits(s_ + other.s_); }

OutcomeEncoding::OutcomeEncoding(int width) : width_(width) {
  if (width < 0 || width >= 64) {
    throw std::invalid_argument("outcome encoding width must lie in [0, 64)");
  }
}

Bits OutcomeEncoding::encode(std::uint64_t k) const {
  return Bits::from_index(k, width_);
}

}  // namespace qsig

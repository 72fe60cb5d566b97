#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace frogsim {

// Lattice points are small integer vectors; dimension is runtime but the
// simulator fast paths assume d <= kMaxDim.
inline constexpr int kMaxDim = 8;

using Point = std::vector<int64_t>;
using Coords = std::array<int64_t, kMaxDim>;

inline Point origin_point(int d) { return Point(static_cast<size_t>(d), 0); }

inline bool is_origin(const Point& x) {
  for (int64_t c : x)
    if (c != 0) return false;
  return true;
}

inline int64_t linf_norm(const Point& x) {
  int64_t m = 0;
  for (int64_t c : x) m = std::max(m, std::abs(c));
  return m;
}

inline int64_t linf_dist(const Point& a, const Point& b) {
  int64_t m = 0;
  for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

inline int64_t l1_dist(const Point& a, const Point& b) {
  int64_t s = 0;
  for (size_t j = 0; j < a.size(); ++j) s += std::abs(a[j] - b[j]);
  return s;
}

inline std::string point_to_string(const Point& x) {
  std::ostringstream ss;
  for (size_t j = 0; j < x.size(); ++j) {
    if (j) ss << ';';
    ss << x[j];
  }
  return ss.str();
}

// sign-fold Z -> Z+ : 0,-1,1,-2,2,... -> 0,1,2,3,4,...
inline uint64_t zigzag(int64_t v) {
  return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}

// Injective encoding of a lattice point into one 64-bit word: sign-fold each
// coordinate, then interleave the bits round-robin. Each folded coordinate
// must fit in floor(64/d) bits, which gives |x_j| < 2^31 for d=2 and
// |x_j| < 2^20 for d=3 -- far beyond any desk-scale window.
inline uint64_t encode_site(const Point& x) {
  const int d = static_cast<int>(x.size());
  if (d == 1) return zigzag(x[0]);
  const int bits = 64 / d;
  uint64_t out = 0;
  for (int j = 0; j < d; ++j) {
    const uint64_t z = zigzag(x[j]);
    if (z >> bits)
      throw std::invalid_argument("encode_site: coordinate out of encodable range");
    for (int b = 0; b < bits; ++b)
      out |= ((z >> b) & 1ULL) << (static_cast<unsigned>(b * d + j));
  }
  return out;
}

// Axis-aligned lattice box with inclusive per-axis bounds.
struct BoxWindow {
  std::vector<int64_t> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(const Point& x) const {
    for (size_t j = 0; j < lo.size(); ++j)
      if (x[j] < lo[j] || x[j] > hi[j]) return false;
    return true;
  }

  bool contains_box(const BoxWindow& inner) const {
    for (size_t j = 0; j < lo.size(); ++j)
      if (inner.lo[j] < lo[j] || inner.hi[j] > hi[j]) return false;
    return true;
  }

  int64_t cell_count() const {
    int64_t n = 1;
    for (size_t j = 0; j < lo.size(); ++j) n *= hi[j] - lo[j] + 1;
    return n;
  }

  // row-major flattening; caller guarantees containment
  int64_t index_of(const Point& x) const {
    int64_t idx = 0;
    for (size_t j = 0; j < lo.size(); ++j) idx = idx * (hi[j] - lo[j] + 1) + (x[j] - lo[j]);
    return idx;
  }

  Point point_at(int64_t idx) const {
    Point x(lo.size(), 0);
    for (size_t jj = lo.size(); jj-- > 0;) {
      const int64_t w = hi[jj] - lo[jj] + 1;
      x[jj] = lo[jj] + (idx % w);
      idx /= w;
    }
    return x;
  }

  static BoxWindow centered(int d, int64_t half_width) {
    BoxWindow b;
    b.lo.assign(static_cast<size_t>(d), -half_width);
    b.hi.assign(static_cast<size_t>(d), half_width);
    return b;
  }

  static BoxWindow of(std::vector<int64_t> lo, std::vector<int64_t> hi) {
    if (lo.size() != hi.size()) throw std::invalid_argument("BoxWindow: rank mismatch");
    for (size_t j = 0; j < lo.size(); ++j)
      if (lo[j] > hi[j]) throw std::invalid_argument("BoxWindow: lo > hi");
    BoxWindow b;
    b.lo = std::move(lo);
    b.hi = std::move(hi);
    return b;
  }

  std::string to_string() const {
    std::ostringstream ss;
    for (size_t j = 0; j < lo.size(); ++j) {
      if (j) ss << ' ';
      ss << '[' << lo[j] << ',' << hi[j] << ']';
    }
    return ss.str();
  }
};

}  // namespace frogsim

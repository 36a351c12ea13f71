#pragma once

#include "cubecurve/rational.hpp"

#include <array>
#include <cstdint>

namespace cubecurve {

// Corner selector of a cube: one bit per axis.
using Bits3 = std::array<int, 3>;

inline int bits_index(const Bits3& h) { return h[0] + 2 * h[1] + 4 * h[2]; }
inline Bits3 index_bits(int i) { return {i & 1, (i >> 1) & 1, (i >> 2) & 1}; }
inline int hamming(const Bits3& a, const Bits3& b) {
  return (a[0] != b[0]) + (a[1] != b[1]) + (a[2] != b[2]);
}

struct Vec3r {
  Rat x, y, z;

  Rat& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const Rat& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  friend Vec3r operator+(const Vec3r& a, const Vec3r& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3r operator-(const Vec3r& a, const Vec3r& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3r operator*(const Rat& s, const Vec3r& v) { return {s * v.x, s * v.y, s * v.z}; }
  friend bool operator==(const Vec3r& a, const Vec3r& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
  friend bool operator!=(const Vec3r& a, const Vec3r& b) { return !(a == b); }
  friend bool operator<(const Vec3r& a, const Vec3r& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
};

inline Rat dot(const Vec3r& a, const Vec3r& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3r cross(const Vec3r& a, const Vec3r& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline bool is_zero(const Vec3r& v) { return v.x == 0 && v.y == 0 && v.z == 0; }
inline Rat dist_sq(const Vec3r& a, const Vec3r& b) { return dot(a - b, a - b); }

// Axis-aligned closed cube. In the recursion tree side == 3^(-depth).
struct Box3 {
  Vec3r corner;
  Rat side;
  int depth = 0;

  Vec3r vertex(const Bits3& v) const {
    return {corner.x + side * v[0], corner.y + side * v[1], corner.z + side * v[2]};
  }
  Vec3r max_corner() const { return {corner.x + side, corner.y + side, corner.z + side}; }
  bool contains(const Vec3r& p) const;  // closed
};

// The 8 corner cubes of side/3, indexed by bits_index of the corner selector.
std::array<Box3, 8> subdivide(const Box3& box);

// Line segment; treated as open (endpoints excluded) by the disjointness
// predicates below unless stated otherwise.
struct Segment3 {
  Vec3r a, b;
};

bool boxes_disjoint(const Box3& p, const Box3& q);

// Open segment vs closed box, by exact slab clipping. Endpoint-only contact
// does not count as intersection.
bool segment_box_disjoint(const Segment3& seg, const Box3& box);

// Open segment vs open segment. Shared excluded endpoints do not count.
bool segments_disjoint(const Segment3& s1, const Segment3& s2);

// Closed segment vs closed segment.
bool closed_segments_intersect(const Segment3& s1, const Segment3& s2);

bool point_on_open_segment(const Vec3r& p, const Segment3& seg);

}  // namespace cubecurve

#include "cubecurve/geometry.hpp"

#include <algorithm>

namespace cubecurve {

bool Box3::contains(const Vec3r& p) const {
  for (int l = 0; l < 3; ++l) {
    if (p[l] < corner[l] || p[l] > corner[l] + side) return false;
  }
  return true;
}

std::array<Box3, 8> subdivide(const Box3& box) {
  std::array<Box3, 8> out;
  Rat third = box.side / 3;
  Rat two_thirds = 2 * third;
  for (int i = 0; i < 8; ++i) {
    Bits3 h = index_bits(i);
    out[i].corner = {box.corner.x + two_thirds * h[0], box.corner.y + two_thirds * h[1],
                     box.corner.z + two_thirds * h[2]};
    out[i].side = third;
    out[i].depth = box.depth + 1;
  }
  return out;
}

bool boxes_disjoint(const Box3& p, const Box3& q) {
  for (int l = 0; l < 3; ++l) {
    if (p.corner[l] + p.side < q.corner[l]) return true;
    if (q.corner[l] + q.side < p.corner[l]) return true;
  }
  return false;
}

bool segment_box_disjoint(const Segment3& seg, const Box3& box) {
  // Clip the closed segment to the closed box: parameter window [t0, t1].
  Rat t0 = 0, t1 = 1;
  for (int l = 0; l < 3; ++l) {
    Rat d = seg.b[l] - seg.a[l];
    Rat lo = box.corner[l];
    Rat hi = box.corner[l] + box.side;
    if (d == 0) {
      if (seg.a[l] < lo || seg.a[l] > hi) return true;
      continue;
    }
    Rat ta = (lo - seg.a[l]) / d;
    Rat tb = (hi - seg.a[l]) / d;
    if (ta > tb) std::swap(ta, tb);
    if (ta > t0) t0 = ta;
    if (tb < t1) t1 = tb;
    if (t0 > t1) return true;
  }
  // Nonempty window: the open segment misses the box only when the window is
  // a single excluded endpoint.
  return t0 == t1 && (t0 == 0 || t0 == 1);
}

bool segments_disjoint(const Segment3& s1, const Segment3& s2) {
  Vec3r d1 = s1.b - s1.a;
  Vec3r d2 = s2.b - s2.a;
  Vec3r r = s2.a - s1.a;
  Vec3r n = cross(d1, d2);
  if (!is_zero(n)) {
    if (dot(r, n) != 0) return true;  // skew lines
    // Coplanar, non-parallel: single line intersection point.
    Rat nn = dot(n, n);
    Rat t1 = dot(cross(r, d2), n) / nn;
    Rat t2 = dot(cross(r, d1), n) / nn;
    return !(t1 > 0 && t1 < 1 && t2 > 0 && t2 < 1);
  }
  if (!is_zero(cross(r, d1))) return true;  // distinct parallel lines
  // Collinear: compare open parameter intervals along s1.
  Rat dd = dot(d1, d1);
  Rat u0 = dot(s2.a - s1.a, d1) / dd;
  Rat u1 = dot(s2.b - s1.a, d1) / dd;
  if (u0 > u1) std::swap(u0, u1);
  Rat lo = u0 > 0 ? u0 : Rat(0);
  Rat hi = u1 < 1 ? u1 : Rat(1);
  return !(lo < hi);
}

bool closed_segments_intersect(const Segment3& s1, const Segment3& s2) {
  Vec3r d1 = s1.b - s1.a;
  Vec3r d2 = s2.b - s2.a;
  Vec3r r = s2.a - s1.a;
  Vec3r n = cross(d1, d2);
  if (!is_zero(n)) {
    if (dot(r, n) != 0) return false;
    Rat nn = dot(n, n);
    Rat t1 = dot(cross(r, d2), n) / nn;
    Rat t2 = dot(cross(r, d1), n) / nn;
    return t1 >= 0 && t1 <= 1 && t2 >= 0 && t2 <= 1;
  }
  if (!is_zero(cross(r, d1))) return false;
  Rat dd = dot(d1, d1);
  Rat u0 = dot(s2.a - s1.a, d1) / dd;
  Rat u1 = dot(s2.b - s1.a, d1) / dd;
  if (u0 > u1) std::swap(u0, u1);
  Rat lo = u0 > 0 ? u0 : Rat(0);
  Rat hi = u1 < 1 ? u1 : Rat(1);
  return lo <= hi;
}

bool point_on_open_segment(const Vec3r& p, const Segment3& seg) {
  Vec3r d = seg.b - seg.a;
  if (!is_zero(cross(p - seg.a, d))) return false;
  Rat t = dot(p - seg.a, d) / dot(d, d);
  return t > 0 && t < 1;
}

}  // namespace cubecurve

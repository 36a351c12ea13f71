#pragma once

#include "cubecurve/cantor.hpp"
#include "cubecurve/param.hpp"
#include "cubecurve/pattern.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cubecurve {

// Position on the circle [0, 2pi): the fractal side carries t in [0,1], the
// return segment carries a normalized u in (0,1) standing for 1 + u(2pi - 1).
// Keeping u normalized keeps pi out of the exact arithmetic.
struct CirclePos {
  enum class Kind { Fractal, Return };
  Kind kind;
  Rat value;

  static CirclePos fractal(Rat t) { return {Kind::Fractal, std::move(t)}; }
  static CirclePos ret(Rat u) { return {Kind::Return, std::move(u)}; }
};

double circle_angle(const CirclePos& p);                          // binary64, reporting only
double circle_metric(const CirclePos& a, const CirclePos& b);     // rho_S, binary64

struct CurvePoint {
  Vec3r point;
  Rat error_sq;  // squared l2 error radius; 0 for gap/return evaluations
};

struct PolyVertex {
  CirclePos pos;
  Vec3r point;
};

struct PolyCurve {
  std::vector<PolyVertex> vertices;
  bool closed = true;
};

struct LengthStats {
  int depth = 0;
  std::size_t vertex_count = 0;
  double polyline_length = 0;
  Rat lower_bound;  // sum over levels k < depth of 7 * 8^k * 3^-(k+1)
};

struct ModulusReport {
  int depth = 0;
  int samples_per_gap = 0;
  std::size_t sample_count = 0;
  double max_adjacent = 0;
  double bound = 0;  // sqrt(3) * 3^-(depth/2) + largest sampled chunk
  bool within_bound = false;
};

// Exact lower bound on the curve length from the connecting links alone: each
// level-k link joins disjoint sibling cubes at distance >= 3^-(k+1).
Rat length_lower_bound(int depth);

// Evaluation of the curve map against a fixed pattern table.
class CurveModel {
 public:
  explicit CurveModel(PatternTable table) : table_(std::move(table)) {}

  const PatternTable& table() const { return table_; }

  // Walks the tree to the node at address s.
  TreeNode resolve(const Address& s) const;

  // Gap and return positions evaluate exactly; limit positions evaluate to
  // the entry vertex of their depth-`depth` cube with the cube diameter as
  // error bound.
  CurvePoint eval(const CirclePos& pos, int depth) const;

  // Closed polyline through the depth-n entry/exit vertices in traversal
  // order (plus any chain waypoints of shallower links). Hausdorff distance
  // to the limit curve is at most sqrt(3) * 3^-n.
  PolyCurve build_polyline(int depth) const;

  // Two circle positions whose depth-`depth` evaluations average to y within
  // 2*sqrt(3)*3^-depth in l2.
  std::pair<CirclePos, CirclePos> witness_pair(const std::array<Rat, 3>& y, int depth) const;

  LengthStats length_stats(int depth) const;

  // Samples the circle on the depth-(n/2) leaf grid with m points per gap and
  // reports the largest adjacent image distance; an empirical modulus of
  // continuity, not a proof.
  ModulusReport modulus_check(int depth, int samples_per_gap) const;

 private:
  PatternTable table_;
};

// First pair of non-adjacent edges that intersect (or adjacent edges that
// overlap beyond their shared vertex), if any; exact. Curves with fewer than
// 3 vertices are vacuously simple.
std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(const PolyCurve& c);

// CSV rows t_num,t_denom_exp15,x,y,z (binary64 coordinates, LF endings).
std::string polyline_csv(const PolyCurve& c);
// OBJ: v records plus one closed l record.
std::string polyline_obj(const PolyCurve& c);

}  // namespace cubecurve

#pragma once

#include "cubecurve/curve.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cubecurve {

using Point3d = std::array<double, 3>;

struct PointSet3 {
  std::vector<Point3d> points;
  std::string provenance;
};

// Uniform cubical occupancy grid. Cell (i,j,k) covers the half-open box
// origin + [i*h, (i+1)*h) x ...; points on the far boundary land in the last
// cell.
class VoxelGrid {
 public:
  VoxelGrid(Point3d origin, std::array<int, 3> dims, double h);

  // m^3 cells over [0,1]^3 with h = 1/m; supports exact marking.
  static VoxelGrid unit(int m);

  void mark(const Point3d& p);
  void mark_exact(const std::array<Rat, 3>& p);  // unit grids only

  bool occupied(int i, int j, int k) const;
  std::size_t occupied_count() const;
  std::size_t cell_count() const;
  double volume() const { return double(occupied_count()) * h_ * h_ * h_; }
  double h() const { return h_; }
  const std::array<int, 3>& dims() const { return dims_; }

  // 27-neighborhood upper cover, grown by one cell ring on each side.
  VoxelGrid dilated() const;

  // Run-length encoding of the occupancy bits in x-fastest scan order.
  std::string rle() const;

 private:
  std::size_t index(int i, int j, int k) const;

  Point3d origin_;
  std::array<int, 3> dims_;
  double h_;
  int unit_m_ = 0;  // nonzero when constructed via unit()
  std::vector<std::uint64_t> bits_;
};

struct Piece {
  double t0 = 0, t1 = 0;
  Point3d bbox_lo{}, bbox_hi{};
  double diameter = 0;
};

// Greedy sup-recursion cut of a polyline path into consecutive pieces of
// diameter epsilon (the last piece possibly smaller). Parameterized by arc
// length; cut parameters found by monotone bisection.
struct PieceDecomposition {
  std::vector<double> breakpoints;  // 0 = t_0 < ... < t_{n+1} = length
  std::vector<Piece> pieces;
  double epsilon = 0;
  double path_length = 0;

  int n() const { return static_cast<int>(pieces.size()) - 1; }
};

PieceDecomposition greedy_partition(const std::vector<Point3d>& path, double epsilon);

struct MeasureBound {
  double paper_bound = 0;  // 64 eps^3 (n+1)^2
  double refined = 0;      // sum_{i,j} vol(bbox_i (+) bbox_j) / 8
  double final_form = 0;   // 64 eps (L^2 + 2 eps L + eps^2)
  bool refined_within_paper = false;
  bool paper_within_final = false;
};

MeasureBound measure_bound(const PieceDecomposition& dec);

// Marks the voxel of (a+b)/2 for every pair; a sampling lower estimate of the
// midpoint set's outer measure (use .dilated() for the upper cover).
VoxelGrid midpoint_voxel_cover(const PointSet3& a, const PointSet3& b, double h);

struct CoverageCertificate {
  int depth = 0;
  int grid = 0;
  double max_dev = 0;
  Rat max_dev_sq;
  Rat bound_sq;  // (2 sqrt(3) 3^-depth)^2 = 12 * 9^-depth
  bool certified = false;
  std::array<Rat, 3> worst_center;
};

// For every voxel center of the m^3 grid over [0,1]^3, the exact deviation of
// the witness-pair midpoint; certifies a net of the cube without any pairwise
// enumeration.
CoverageCertificate coverage_certificate(const CurveModel& model, int depth, int m);

double hausdorff(const PointSet3& a, const PointSet3& b);

struct SfEntry {
  int k = 0;
  double dh = 0;
  std::size_t set_size = 0;
};

// Hausdorff distances of the Minkowski averages (1/k)(G + ... + G) from the
// sampled convex hull of G, for k = 1..k_max. Sum sets are deduplicated on a
// 1/200 grid; the hull is sampled with seeded random 4-point combinations.
std::vector<SfEntry> sf_sequence(const PointSet3& gamma, int k_max, std::uint64_t seed);

struct LineFit {
  double slope = 0, intercept = 0, r2 = 0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace cubecurve

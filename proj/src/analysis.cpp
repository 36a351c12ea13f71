#include "cubecurve/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cubecurve {

// ---------------------------------------------------------------------------
// VoxelGrid
// ---------------------------------------------------------------------------

VoxelGrid::VoxelGrid(Point3d origin, std::array<int, 3> dims, double h)
    : origin_(origin), dims_(dims), h_(h) {
  if (h <= 0) throw std::invalid_argument("voxel size must be positive");
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("voxel grid dims must be positive");
  }
  std::size_t cells = std::size_t(dims[0]) * dims[1] * dims[2];
  bits_.assign((cells + 63) / 64, 0);
}

VoxelGrid VoxelGrid::unit(int m) {
  if (m < 1) throw std::invalid_argument("grid resolution must be >= 1");
  VoxelGrid g({0.0, 0.0, 0.0}, {m, m, m}, 1.0 / m);
  g.unit_m_ = m;
  return g;
}

std::size_t VoxelGrid::index(int i, int j, int k) const {
  return (std::size_t(k) * dims_[1] + j) * dims_[0] + i;
}

void VoxelGrid::mark(const Point3d& p) {
  int c[3];
  for (int l = 0; l < 3; ++l) {
    int i = static_cast<int>(std::floor((p[l] - origin_[l]) / h_));
    c[l] = std::clamp(i, 0, dims_[l] - 1);
  }
  std::size_t idx = index(c[0], c[1], c[2]);
  bits_[idx >> 6] |= std::uint64_t(1) << (idx & 63);
}

void VoxelGrid::mark_exact(const std::array<Rat, 3>& p) {
  if (unit_m_ == 0) throw std::logic_error("mark_exact requires a unit grid");
  int c[3];
  for (int l = 0; l < 3; ++l) {
    if (p[l] < 0 || p[l] > 1) throw std::domain_error("point outside [0,1]^3");
    int i = static_cast<int>(rat_floor(p[l] * unit_m_));
    c[l] = std::min(i, unit_m_ - 1);  // far face belongs to the last cell
  }
  std::size_t idx = index(c[0], c[1], c[2]);
  bits_[idx >> 6] |= std::uint64_t(1) << (idx & 63);
}

bool VoxelGrid::occupied(int i, int j, int k) const {
  std::size_t idx = index(i, j, k);
  return (bits_[idx >> 6] >> (idx & 63)) & 1;
}

std::size_t VoxelGrid::occupied_count() const {
  std::size_t n = 0;
  for (std::uint64_t w : bits_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

std::size_t VoxelGrid::cell_count() const {
  return std::size_t(dims_[0]) * dims_[1] * dims_[2];
}

VoxelGrid VoxelGrid::dilated() const {
  VoxelGrid out({origin_[0] - h_, origin_[1] - h_, origin_[2] - h_},
                {dims_[0] + 2, dims_[1] + 2, dims_[2] + 2}, h_);
  for (int k = 0; k < dims_[2]; ++k) {
    for (int j = 0; j < dims_[1]; ++j) {
      for (int i = 0; i < dims_[0]; ++i) {
        if (!occupied(i, j, k)) continue;
        for (int dk = 0; dk <= 2; ++dk) {
          for (int dj = 0; dj <= 2; ++dj) {
            for (int di = 0; di <= 2; ++di) {
              std::size_t idx = out.index(i + di, j + dj, k + dk);
              out.bits_[idx >> 6] |= std::uint64_t(1) << (idx & 63);
            }
          }
        }
      }
    }
  }
  return out;
}

std::string VoxelGrid::rle() const {
  std::ostringstream os;
  os << dims_[0] << ' ' << dims_[1] << ' ' << dims_[2] << '\n';
  std::size_t total = cell_count();
  bool current = false;
  std::size_t run = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    bool bit = (bits_[idx >> 6] >> (idx & 63)) & 1;
    if (bit == current) {
      ++run;
    } else {
      os << run << ' ';
      current = bit;
      run = 1;
    }
  }
  os << run << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Greedy partition
// ---------------------------------------------------------------------------

namespace {

double dist(const Point3d& a, const Point3d& b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct ArcPath {
  const std::vector<Point3d>& pts;
  std::vector<double> cum;  // cumulative arc length per vertex

  explicit ArcPath(const std::vector<Point3d>& p) : pts(p) {
    cum.resize(p.size());
    cum[0] = 0;
    for (std::size_t i = 1; i < p.size(); ++i) cum[i] = cum[i - 1] + dist(p[i - 1], p[i]);
  }

  double length() const { return cum.back(); }

  Point3d at(double u) const {
    if (u <= 0) return pts.front();
    if (u >= cum.back()) return pts.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cum.begin());  // cum[i-1] <= u < cum[i]
    double seg = cum[i] - cum[i - 1];
    double f = seg > 0 ? (u - cum[i - 1]) / seg : 0.0;
    Point3d out;
    for (int l = 0; l < 3; ++l) out[l] = pts[i - 1][l] + f * (pts[i][l] - pts[i - 1][l]);
    return out;
  }

  // Vertices with parameter strictly inside (t0, t1) plus both cut points.
  std::vector<Point3d> window(double t0, double t1) const {
    std::vector<Point3d> w;
    w.push_back(at(t0));
    auto lo = std::upper_bound(cum.begin(), cum.end(), t0);
    auto hi = std::lower_bound(cum.begin(), cum.end(), t1);
    for (auto it = lo; it != hi; ++it) {
      w.push_back(pts[static_cast<std::size_t>(it - cum.begin())]);
    }
    w.push_back(at(t1));
    return w;
  }

  // Diameter of the sub-path image; max pairwise distance over window points.
  // Monotone nondecreasing in t1.
  double diam(double t0, double t1) const {
    std::vector<Point3d> w = window(t0, t1);
    double best = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) best = std::max(best, dist(w[i], w[j]));
    }
    return best;
  }
};

}  // namespace

PieceDecomposition greedy_partition(const std::vector<Point3d>& path, double epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (path.size() < 2) throw std::invalid_argument("path needs at least 2 vertices");
  ArcPath arc(path);
  double L = arc.length();
  if (L <= 0) throw std::invalid_argument("degenerate single-point path");

  PieceDecomposition dec;
  dec.epsilon = epsilon;
  dec.path_length = L;
  dec.breakpoints.push_back(0);

  double t = 0;
  while (t < L) {
    double next;
    if (arc.diam(t, L) < epsilon) {
      next = L;
    } else {
      // sup{u : diam(t,u) < eps} by bisection; diam is monotone in u.
      double lo = t, hi = L;
      for (int it = 0; it < 60 && hi - lo > 1e-13 * std::max(L, 1.0); ++it) {
        double mid = 0.5 * (lo + hi);
        if (arc.diam(t, mid) < epsilon) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      next = lo;
    }
    Piece piece;
    piece.t0 = t;
    piece.t1 = next;
    auto w = arc.window(t, next);
    for (int l = 0; l < 3; ++l) {
      piece.bbox_lo[l] = std::numeric_limits<double>::infinity();
      piece.bbox_hi[l] = -std::numeric_limits<double>::infinity();
    }
    for (const Point3d& p : w) {
      for (int l = 0; l < 3; ++l) {
        piece.bbox_lo[l] = std::min(piece.bbox_lo[l], p[l]);
        piece.bbox_hi[l] = std::max(piece.bbox_hi[l], p[l]);
      }
    }
    piece.diameter = arc.diam(t, next);
    dec.pieces.push_back(piece);
    dec.breakpoints.push_back(next);
    t = next;
  }
  return dec;
}

MeasureBound measure_bound(const PieceDecomposition& dec) {
  MeasureBound mb;
  double eps = dec.epsilon;
  double n1 = static_cast<double>(dec.pieces.size());
  mb.paper_bound = 64.0 * eps * eps * eps * n1 * n1;

  double refined = 0;
  for (const Piece& a : dec.pieces) {
    for (const Piece& b : dec.pieces) {
      double vol = 1;
      for (int l = 0; l < 3; ++l) {
        vol *= (a.bbox_hi[l] - a.bbox_lo[l]) + (b.bbox_hi[l] - b.bbox_lo[l]);
      }
      refined += vol / 8.0;  // the 1/2 scaling halves each axis
    }
  }
  mb.refined = refined;

  double L = dec.path_length;
  mb.final_form = 64.0 * eps * (L * L + 2.0 * eps * L + eps * eps);

  mb.refined_within_paper = refined <= mb.paper_bound / 8.0 + 1e-9 * (1.0 + mb.paper_bound);
  if (n1 <= L / eps + 1.0 + 1e-9) {
    mb.paper_within_final = mb.paper_bound <= mb.final_form + 1e-9 * (1.0 + mb.final_form);
  } else {
    mb.paper_within_final = true;  // premise of the comparison not met
  }
  return mb;
}

// ---------------------------------------------------------------------------
// Voxel cover and coverage certificate
// ---------------------------------------------------------------------------

VoxelGrid midpoint_voxel_cover(const PointSet3& a, const PointSet3& b, double h) {
  if (a.points.empty() || b.points.empty()) throw std::invalid_argument("empty point set");
  Point3d lo{}, hi{};
  for (int l = 0; l < 3; ++l) {
    double la = std::numeric_limits<double>::infinity(), ha = -la;
    double lb = la, hb = -la;
    for (const Point3d& p : a.points) {
      la = std::min(la, p[l]);
      ha = std::max(ha, p[l]);
    }
    for (const Point3d& p : b.points) {
      lb = std::min(lb, p[l]);
      hb = std::max(hb, p[l]);
    }
    lo[l] = (la + lb) / 2;
    hi[l] = (ha + hb) / 2;
  }
  std::array<int, 3> dims;
  Point3d origin;
  for (int l = 0; l < 3; ++l) {
    long base = static_cast<long>(std::floor(lo[l] / h));
    long top = static_cast<long>(std::floor(hi[l] / h));
    origin[l] = double(base) * h;
    dims[l] = static_cast<int>(top - base) + 1;
  }
  VoxelGrid grid(origin, dims, h);
  for (const Point3d& p : a.points) {
    for (const Point3d& q : b.points) {
      grid.mark({(p[0] + q[0]) / 2, (p[1] + q[1]) / 2, (p[2] + q[2]) / 2});
    }
  }
  return grid;
}

CoverageCertificate coverage_certificate(const CurveModel& model, int depth, int m) {
  if (m < 1) throw std::invalid_argument("grid resolution must be >= 1");
  CoverageCertificate cert;
  cert.depth = depth;
  cert.grid = m;
  cert.bound_sq = Rat(12) * pow3(-2 * depth);  // (2 sqrt(3) 3^-depth)^2
  cert.max_dev_sq = 0;
  Rat half(1, 2);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        std::array<Rat, 3> y = {Rat(2 * i + 1, 2 * m), Rat(2 * j + 1, 2 * m),
                                Rat(2 * k + 1, 2 * m)};
        auto [p1, p2] = model.witness_pair(y, depth);
        Vec3r a = model.eval(p1, depth).point;
        Vec3r b = model.eval(p2, depth).point;
        Vec3r mid = half * (a + b);
        Rat dev = dist_sq(mid, Vec3r{y[0], y[1], y[2]});
        if (dev > cert.max_dev_sq) {
          cert.max_dev_sq = dev;
          cert.worst_center = y;
        }
      }
    }
  }
  cert.max_dev = std::sqrt(cert.max_dev_sq.convert_to<double>());
  cert.certified = cert.max_dev_sq <= cert.bound_sq;
  return cert;
}

// ---------------------------------------------------------------------------
// Hausdorff distance
// ---------------------------------------------------------------------------

namespace {

double dist_sq_d(const Point3d& a, const Point3d& b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

// Uniform hash grid over a point set for nearest-neighbor queries.
struct HashGrid {
  double cell;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;
  const std::vector<Point3d>& pts;

  static std::uint64_t key(long i, long j, long k) {
    auto u = [](long v) { return static_cast<std::uint64_t>(v + (1L << 20)) & 0x1FFFFF; };
    return (u(i) << 42) | (u(j) << 21) | u(k);
  }

  HashGrid(const std::vector<Point3d>& points, double cell_size) : cell(cell_size), pts(points) {
    for (std::uint32_t n = 0; n < points.size(); ++n) {
      const Point3d& p = points[n];
      cells[key(lround_cell(p[0]), lround_cell(p[1]), lround_cell(p[2]))].push_back(n);
    }
  }

  long lround_cell(double v) const { return static_cast<long>(std::floor(v / cell)); }

  double nn_dist_sq(const Point3d& q, double stop_below_sq) const {
    long ci = lround_cell(q[0]), cj = lround_cell(q[1]), ck = lround_cell(q[2]);
    double best = std::numeric_limits<double>::infinity();
    for (long r = 0;; ++r) {
      double ring_min = (r - 1) > 0 ? double(r - 1) * cell : 0.0;
      if (ring_min * ring_min > best) break;
      bool any_cell = false;
      for (long di = -r; di <= r; ++di) {
        for (long dj = -r; dj <= r; ++dj) {
          for (long dk = -r; dk <= r; ++dk) {
            if (std::max({std::labs(di), std::labs(dj), std::labs(dk)}) != r) continue;
            auto it = cells.find(key(ci + di, cj + dj, ck + dk));
            if (it == cells.end()) continue;
            any_cell = true;
            for (std::uint32_t n : it->second) {
              best = std::min(best, dist_sq_d(q, pts[n]));
              if (best < stop_below_sq) return best;
            }
          }
        }
      }
      if (!any_cell && r > (1L << 20)) break;  // off-grid guard
    }
    return best;
  }
};

double directed_hausdorff(const std::vector<Point3d>& a, const std::vector<Point3d>& b) {
  double sup_sq = 0;
  if (b.size() > 10000) {
    // Cell size targeting a few points per cell.
    Point3d lo = b[0], hi = b[0];
    for (const Point3d& p : b) {
      for (int l = 0; l < 3; ++l) {
        lo[l] = std::min(lo[l], p[l]);
        hi[l] = std::max(hi[l], p[l]);
      }
    }
    double extent = std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2], 1e-12});
    double cell = extent / std::cbrt(double(b.size()));
    HashGrid grid(b, cell);
    for (const Point3d& p : a) {
      double d = grid.nn_dist_sq(p, sup_sq);
      sup_sq = std::max(sup_sq, d);
    }
  } else {
    for (const Point3d& p : a) {
      double min_sq = std::numeric_limits<double>::infinity();
      for (const Point3d& q : b) {
        min_sq = std::min(min_sq, dist_sq_d(p, q));
        if (min_sq <= sup_sq) break;  // cannot raise the sup
      }
      sup_sq = std::max(sup_sq, min_sq);
    }
  }
  return sup_sq;
}

}  // namespace

double hausdorff(const PointSet3& a, const PointSet3& b) {
  if (a.points.empty() || b.points.empty()) throw std::invalid_argument("empty point set");
  double d1 = directed_hausdorff(a.points, b.points);
  double d2 = directed_hausdorff(b.points, a.points);
  return std::sqrt(std::max(d1, d2));
}

// ---------------------------------------------------------------------------
// Minkowski averaging
// ---------------------------------------------------------------------------

namespace {

std::vector<Point3d> dedup_grid(const std::vector<Point3d>& pts, double cell) {
  std::unordered_map<std::uint64_t, bool> seen;
  seen.reserve(pts.size() * 2);
  std::vector<Point3d> out;
  out.reserve(pts.size());
  for (const Point3d& p : pts) {
    long i = std::lround(p[0] / cell), j = std::lround(p[1] / cell), k = std::lround(p[2] / cell);
    std::uint64_t key = HashGrid::key(i, j, k);
    if (!seen.emplace(key, true).second) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<SfEntry> sf_sequence(const PointSet3& gamma, int k_max, std::uint64_t seed) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (gamma.points.empty()) throw std::invalid_argument("empty point set");
  const double cell = 1.0 / 200.0;

  // Sampled solid hull: seeded random 4-point convex combinations.
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point3d> hull;
  const std::size_t hull_samples = 20000;
  hull.reserve(hull_samples + gamma.points.size());
  for (const Point3d& p : gamma.points) hull.push_back(p);  // hull contains the set itself
  for (std::size_t s = 0; s < hull_samples; ++s) {
    double w[4];
    double total = 0;
    Point3d q{0, 0, 0};
    for (double& wl : w) {
      wl = -std::log(uniform01() + 1e-300);
      total += wl;
    }
    for (int c = 0; c < 4; ++c) {
      const Point3d& p = gamma.points[rng() % gamma.points.size()];
      for (int l = 0; l < 3; ++l) q[l] += p[l] * (w[c] / total);
    }
    hull.push_back(q);
  }
  PointSet3 hull_set{std::move(hull), "sampled hull"};

  std::vector<SfEntry> out;
  std::vector<Point3d> avg = dedup_grid(gamma.points, cell);  // k = 1 average
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) {
      // (1/k)(k-fold sum) = ((k-1)/k) * previous average + (1/k) * gamma
      std::vector<Point3d> next;
      next.reserve(avg.size() * 4);
      double wprev = double(k - 1) / double(k);
      double wnew = 1.0 / double(k);
      std::unordered_map<std::uint64_t, bool> seen;
      for (const Point3d& p : avg) {
        for (const Point3d& g : gamma.points) {
          Point3d q{wprev * p[0] + wnew * g[0], wprev * p[1] + wnew * g[1],
                    wprev * p[2] + wnew * g[2]};
          long i = std::lround(q[0] / cell), j = std::lround(q[1] / cell),
               kk = std::lround(q[2] / cell);
          if (!seen.emplace(HashGrid::key(i, j, kk), true).second) continue;
          next.push_back(q);
        }
      }
      avg = std::move(next);
    }
    PointSet3 avg_set{avg, "minkowski average"};
    out.push_back({k, hausdorff(avg_set, hull_set), avg.size()});
  }
  return out;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("need >= 2 samples");
  double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  LineFit fit;
  double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, mean = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double pred = fit.slope * xs[i] + fit.intercept;
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace cubecurve

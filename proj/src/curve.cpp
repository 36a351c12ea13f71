#include "cubecurve/curve.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cubecurve {

namespace {

// Chain links are parameterized with their joint at local 7/15 so that every
// emitted parameter stays on the 15-adic grid.
const Rat kChainBreak(7, 15);

Vec3r link_point(const Link& link, const Rat& local) {
  if (link.pts.size() == 2) {
    return link.pts[0] + local * (link.pts[1] - link.pts[0]);
  }
  if (local < kChainBreak) {
    return link.pts[0] + (local / kChainBreak) * (link.pts[1] - link.pts[0]);
  }
  if (local == kChainBreak) return link.pts[1];
  return link.pts[1] + ((local - kChainBreak) / (1 - kChainBreak)) * (link.pts[2] - link.pts[1]);
}

double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

double vec_dist(const Vec3r& a, const Vec3r& b) { return std::sqrt(rat_to_double(dist_sq(a, b))); }

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

double circle_angle(const CirclePos& p) {
  if (p.kind == CirclePos::Kind::Fractal) return rat_to_double(p.value);
  return 1.0 + rat_to_double(p.value) * (2.0 * std::numbers::pi - 1.0);
}

double circle_metric(const CirclePos& a, const CirclePos& b) {
  double d = std::fabs(circle_angle(a) - circle_angle(b));
  return std::min(d, 2.0 * std::numbers::pi - d);
}

Rat length_lower_bound(int depth) {
  Rat sum = 0;
  for (int k = 0; k < depth; ++k) {
    sum += Rat(7) * Rat(ipow(8, static_cast<unsigned>(k))) * pow3(-(k + 1));
  }
  return sum;
}

TreeNode CurveModel::resolve(const Address& s) const {
  TreeNode node = root_node(table_);
  for (auto digit : s) node = child_node(table_, node, digit);
  return node;
}

CurvePoint CurveModel::eval(const CirclePos& pos, int depth) const {
  if (pos.kind == CirclePos::Kind::Return) {
    if (pos.value <= 0 || pos.value >= 1) {
      throw std::domain_error("return position must lie strictly inside (0,1)");
    }
    Vec3r p = table_.root_exit + pos.value * (table_.root_entry - table_.root_exit);
    return {p, Rat(0)};
  }
  ParamClass cls = classify_param(pos.value, depth);
  if (const auto* gap = std::get_if<GapLocation>(&cls)) {
    TreeNode node = resolve(gap->node);
    auto links = node_links(node);
    return {link_point(links[gap->gap_index], gap->local), Rat(0)};
  }
  const auto& prefix = std::get<LimitPrefix>(cls).prefix;
  TreeNode node = resolve(prefix);
  return {node.entry, pow3(1 - 2 * depth)};  // (sqrt(3) * 3^-depth)^2
}

namespace {

struct PolyBuilder {
  const PatternTable& table;
  int target_depth;
  PolyCurve out;

  void walk(const TreeNode& node, const Rat& in, const Rat& len, int depth) {
    if (depth == target_depth) {
      out.vertices.push_back({CirclePos::fractal(in), node.entry});
      out.vertices.push_back({CirclePos::fractal(in + len), node.exit});
      return;
    }
    Rat u = len / 15;
    auto links = node_links(node);
    for (int slot = 0; slot < 8; ++slot) {
      walk(child_node(table, node, slot), in + Rat(2 * slot) * u, u, depth + 1);
      // Chain joints are curve points; keep the emitted polyline faithful.
      if (slot < 7 && links[slot].pts.size() == 3) {
        Rat lo = in + Rat(2 * slot + 1) * u;
        out.vertices.push_back({CirclePos::fractal(lo + kChainBreak * u), links[slot].pts[1]});
      }
    }
  }
};

}  // namespace

PolyCurve CurveModel::build_polyline(int depth) const {
  if (depth < 0) throw std::domain_error("negative depth");
  PolyBuilder b{table_, depth, {}};
  b.out.closed = true;
  b.walk(root_node(table_), Rat(0), Rat(1), 0);
  return std::move(b.out);
}

std::pair<CirclePos, CirclePos> CurveModel::witness_pair(const std::array<Rat, 3>& y,
                                                         int depth) const {
  auto [wp, wq] = cantor3_split(y, depth);
  auto word_to_param = [this](const CornerWord& w) {
    TreeNode node = root_node(table_);
    Address addr;
    addr.reserve(w.size());
    for (const Bits3& corner : w) {
      int slot = -1;
      for (int k = 0; k < 8; ++k) {
        if (node.pattern.order[k] == corner) {
          slot = k;
          break;
        }
      }
      addr.push_back(static_cast<std::uint8_t>(slot));
      node = child_node(table_, node, slot);
    }
    return CirclePos::fractal(address_to_param(addr, Pad::Zero));
  };
  return {word_to_param(wp), word_to_param(wq)};
}

LengthStats CurveModel::length_stats(int depth) const {
  PolyCurve poly = build_polyline(depth);
  LengthStats st;
  st.depth = depth;
  st.vertex_count = poly.vertices.size();
  double total = 0;
  for (std::size_t i = 0; i + 1 < poly.vertices.size(); ++i) {
    total += vec_dist(poly.vertices[i].point, poly.vertices[i + 1].point);
  }
  if (poly.closed && poly.vertices.size() > 1) {
    total += vec_dist(poly.vertices.back().point, poly.vertices.front().point);
  }
  st.polyline_length = total;
  st.lower_bound = length_lower_bound(depth);
  return st;
}

ModulusReport CurveModel::modulus_check(int depth, int samples_per_gap) const {
  if (depth < 1) throw std::domain_error("modulus_check needs depth >= 1");
  if (samples_per_gap < 1) throw std::domain_error("samples_per_gap must be >= 1");
  int leaf_depth = depth / 2;
  int m = samples_per_gap;

  // Leaf parameter intervals in traversal order.
  std::vector<std::pair<Rat, Rat>> leaves;
  leaves.reserve(static_cast<std::size_t>(1) << (3 * leaf_depth));
  struct Frame {
    Rat in, len;
    int depth;
  };
  std::vector<Frame> stack{{Rat(0), Rat(1), 0}};
  // Iterative DFS, children pushed in reverse slot order to keep traversal order.
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth == leaf_depth) {
      leaves.emplace_back(f.in, f.in + f.len);
      continue;
    }
    Rat u = f.len / 15;
    for (int slot = 7; slot >= 0; --slot) {
      stack.push_back({f.in + Rat(2 * slot) * u, u, f.depth + 1});
    }
  }

  std::vector<CirclePos> samples;
  samples.push_back(CirclePos::fractal(leaves[0].first));
  samples.push_back(CirclePos::fractal(leaves[0].second));
  for (std::size_t k = 1; k < leaves.size(); ++k) {
    const Rat& lo = leaves[k - 1].second;
    const Rat& hi = leaves[k].first;
    for (int i = 1; i < m; ++i) {
      samples.push_back(CirclePos::fractal(lo + Rat(i, m) * (hi - lo)));
    }
    samples.push_back(CirclePos::fractal(hi));
    samples.push_back(CirclePos::fractal(leaves[k].second));
  }
  for (int i = 1; i < m; ++i) {
    samples.push_back(CirclePos::ret(Rat(i, m)));
  }

  std::vector<Vec3r> pts;
  pts.reserve(samples.size());
  for (const CirclePos& s : samples) pts.push_back(eval(s, depth).point);

  double max_adj = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    max_adj = std::max(max_adj, vec_dist(pts[i], pts[i + 1]));
  }
  max_adj = std::max(max_adj, vec_dist(pts.back(), pts.front()));  // wrap through t = 0

  // Largest image chunk a single gap step can cover: longest link at the
  // sampled levels (plus the return segment), divided by m.
  double max_link = vec_dist(table_.root_exit, table_.root_entry);
  std::vector<std::pair<TreeNode, int>> node_stack{{root_node(table_), 0}};
  while (!node_stack.empty()) {
    auto [node, d] = node_stack.back();
    node_stack.pop_back();
    auto links = node_links(node);
    for (const Link& link : links) {
      double len = 0;
      for (std::size_t i = 0; i < link.legs(); ++i) len += vec_dist(link.pts[i], link.pts[i + 1]);
      max_link = std::max(max_link, len);
    }
    if (d + 1 < leaf_depth) {
      for (int slot = 0; slot < 8; ++slot) node_stack.push_back({child_node(table_, node, slot), d + 1});
    }
  }

  ModulusReport rep;
  rep.depth = depth;
  rep.samples_per_gap = m;
  rep.sample_count = samples.size();
  rep.max_adjacent = max_adj;
  rep.bound = std::sqrt(3.0) * std::pow(3.0, -leaf_depth) + max_link / m;
  rep.within_bound = max_adj <= rep.bound;
  return rep;
}

std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(const PolyCurve& c) {
  std::size_t n = c.vertices.size();
  if (n < 3) return std::nullopt;
  auto edge = [&](std::size_t i) {
    return Segment3{c.vertices[i].point, c.vertices[(i + 1) % n].point};
  };
  std::size_t edge_count = c.closed ? n : n - 1;
  for (std::size_t i = 0; i < edge_count; ++i) {
    for (std::size_t j = i + 1; j < edge_count; ++j) {
      bool adjacent = (j == i + 1) || (c.closed && i == 0 && j == edge_count - 1);
      if (adjacent) {
        // Shared vertex is fine; collinear backtracking is not.
        Segment3 e1 = edge(i), e2 = edge(j);
        Vec3r da = (j == i + 1) ? e1.b - e1.a : e2.b - e2.a;
        Vec3r db = (j == i + 1) ? e2.b - e2.a : e1.b - e1.a;
        if (is_zero(cross(da, db)) && dot(da, db) < 0) return std::make_pair(i, j);
      } else {
        if (closed_segments_intersect(edge(i), edge(j))) return std::make_pair(i, j);
      }
    }
  }
  return std::nullopt;
}

std::string polyline_csv(const PolyCurve& c) {
  std::ostringstream os;
  os << "t_num,t_denom_exp15,x,y,z\n";
  for (const PolyVertex& v : c.vertices) {
    auto [num, e] = as_pow15_fraction(v.pos.value);
    os << num << ',' << e << ',' << fmt_double(rat_to_double(v.point.x)) << ','
       << fmt_double(rat_to_double(v.point.y)) << ',' << fmt_double(rat_to_double(v.point.z))
       << '\n';
  }
  return os.str();
}

std::string polyline_obj(const PolyCurve& c) {
  std::ostringstream os;
  for (const PolyVertex& v : c.vertices) {
    os << "v " << fmt_double(rat_to_double(v.point.x)) << ' ' << fmt_double(rat_to_double(v.point.y))
       << ' ' << fmt_double(rat_to_double(v.point.z)) << '\n';
  }
  os << 'l';
  for (std::size_t i = 1; i <= c.vertices.size(); ++i) os << ' ' << i;
  if (c.closed) os << " 1";
  os << '\n';
  return os.str();
}

}  // namespace cubecurve

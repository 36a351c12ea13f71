#include "cubecurve/pattern.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace cubecurve {

// ---------------------------------------------------------------------------
// Isometries and vertex-pair classes
// ---------------------------------------------------------------------------

const std::array<CubeIso, 48>& cube_isometries() {
  static const std::array<CubeIso, 48> isos = [] {
    std::array<CubeIso, 48> out;
    const std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    int n = 0;
    for (const auto& p : perms) {
      for (int mask = 0; mask < 8; ++mask) {
        out[n++] = CubeIso{p, {bool(mask & 1), bool(mask & 2), bool(mask & 4)}};
      }
    }
    return out;
  }();
  return isos;
}

const char* pair_class_name(PairClass c) {
  switch (c) {
    case PairClass::Edge: return "edge";
    case PairClass::FaceDiag: return "face_diag";
    case PairClass::SpaceDiag: return "space_diag";
  }
  return "?";
}

PairClass classify_vertex_pair(const Bits3& a, const Bits3& b) {
  switch (hamming(a, b)) {
    case 1: return PairClass::Edge;
    case 2: return PairClass::FaceDiag;
    case 3: return PairClass::SpaceDiag;
  }
  throw std::invalid_argument("vertex pair must be two distinct vertices");
}

std::pair<Bits3, Bits3> canonical_pair(PairClass c) {
  switch (c) {
    case PairClass::Edge: return {{0, 0, 0}, {1, 0, 0}};
    case PairClass::FaceDiag: return {{0, 0, 0}, {1, 1, 0}};
    case PairClass::SpaceDiag: return {{0, 0, 0}, {1, 1, 1}};
  }
  throw std::invalid_argument("bad class");
}

std::optional<CubeIso> find_iso(const Bits3& from_e, const Bits3& from_x, const Bits3& to_e,
                                const Bits3& to_x) {
  for (const CubeIso& g : cube_isometries()) {
    if (g.apply(from_e) == to_e && g.apply(from_x) == to_x) return g;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Links
// ---------------------------------------------------------------------------

Vec3r child_vertex_unit(const Bits3& h, const Bits3& v) {
  return {Rat(2 * h[0] + v[0], 3), Rat(2 * h[1] + v[1], 3), Rat(2 * h[2] + v[2], 3)};
}

bool link_box_disjoint(const Link& link, const Box3& box) {
  for (std::size_t i = 0; i < link.legs(); ++i) {
    if (!segment_box_disjoint(link.leg(i), box)) return false;
  }
  for (std::size_t i = 1; i + 1 < link.pts.size(); ++i) {
    if (box.contains(link.pts[i])) return false;
  }
  return true;
}

bool links_disjoint(const Link& a, const Link& b) {
  for (std::size_t i = 0; i < a.legs(); ++i) {
    for (std::size_t j = 0; j < b.legs(); ++j) {
      if (!segments_disjoint(a.leg(i), b.leg(j))) return false;
    }
  }
  // Interior joints belong to their link even though the legs are open.
  for (std::size_t i = 1; i + 1 < a.pts.size(); ++i) {
    for (std::size_t j = 0; j < b.legs(); ++j) {
      if (point_on_open_segment(a.pts[i], b.leg(j))) return false;
    }
    for (std::size_t j = 1; j + 1 < b.pts.size(); ++j) {
      if (a.pts[i] == b.pts[j]) return false;
    }
  }
  for (std::size_t j = 1; j + 1 < b.pts.size(); ++j) {
    for (std::size_t i = 0; i < a.legs(); ++i) {
      if (point_on_open_segment(b.pts[j], a.leg(i))) return false;
    }
  }
  return true;
}

bool link_segment_disjoint(const Link& link, const Segment3& seg) {
  for (std::size_t i = 0; i < link.legs(); ++i) {
    if (!segments_disjoint(link.leg(i), seg)) return false;
  }
  for (std::size_t i = 1; i + 1 < link.pts.size(); ++i) {
    if (point_on_open_segment(link.pts[i], seg)) return false;
  }
  return true;
}

std::array<Link, 7> pattern_links_unit(const Pattern& p) {
  std::array<Link, 7> out;
  for (int j = 0; j < 7; ++j) {
    Vec3r from = child_vertex_unit(p.order[j], p.exit[j]);
    Vec3r to = child_vertex_unit(p.order[j + 1], p.entry[j + 1]);
    if (p.waypoint[j]) {
      out[j].pts = {from, *p.waypoint[j], to};
    } else {
      out[j].pts = {from, to};
    }
  }
  return out;
}

Pattern transport(const Pattern& p, const CubeIso& g) {
  Pattern out;
  for (int k = 0; k < 8; ++k) {
    out.order[k] = g.apply(p.order[k]);
    out.entry[k] = g.apply(p.entry[k]);
    out.exit[k] = g.apply(p.exit[k]);
  }
  for (int j = 0; j < 7; ++j) {
    if (p.waypoint[j]) out.waypoint[j] = g.apply_unit(*p.waypoint[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

namespace {

Box3 unit_box() { return Box3{{Rat(0), Rat(0), Rat(0)}, Rat(1), 0}; }

std::optional<std::pair<int, int>> owner_vertex(const Vec3r& p) {
  for (int ci = 0; ci < 8; ++ci) {
    Bits3 h = index_bits(ci);
    for (int vi = 0; vi < 8; ++vi) {
      if (child_vertex_unit(h, index_bits(vi)) == p) return std::make_pair(ci, vi);
    }
  }
  return std::nullopt;
}

struct Cand {
  int vexit, ventry;
  Link link;
};

struct Searcher {
  std::array<Box3, 8> cubes;  // children of the unit cube, by corner index
  std::vector<Segment3> avoid;
  bool allow_chains = false;
  std::vector<Vec3r> waypoints;  // valid chain joints, lexicographic

  std::array<std::array<std::vector<Cand>, 8>, 8> cand_cache;
  std::array<std::array<bool, 8>, 8> cand_ready{};

  std::array<int, 8> slots{};
  std::array<int, 8> entry_sel{};
  std::array<int, 8> exit_sel{};
  std::array<Link, 7> links;

  void init_waypoints() {
    // Interior 1/9-grid points outside all 8 child cubes.
    for (int i = 1; i <= 8; ++i) {
      for (int j = 1; j <= 8; ++j) {
        for (int k = 1; k <= 8; ++k) {
          Vec3r w{Rat(i, 9), Rat(j, 9), Rat(k, 9)};
          bool inside = false;
          for (const Box3& c : cubes) {
            if (c.contains(w)) {
              inside = true;
              break;
            }
          }
          if (!inside) waypoints.push_back(w);
        }
      }
    }
  }

  bool link_clears_cubes(const Link& l) const {
    for (const Box3& c : cubes) {
      if (!link_box_disjoint(l, c)) return false;
    }
    return true;
  }

  const std::vector<Cand>& candidates(int a, int b) {
    if (cand_ready[a][b]) return cand_cache[a][b];
    std::vector<Cand>& out = cand_cache[a][b];
    Bits3 ha = index_bits(a), hb = index_bits(b);
    for (int ve = 0; ve < 8; ++ve) {
      Vec3r from = child_vertex_unit(ha, index_bits(ve));
      for (int vn = 0; vn < 8; ++vn) {
        Vec3r to = child_vertex_unit(hb, index_bits(vn));
        if (from == to) continue;
        Link straight{{from, to}};
        if (link_clears_cubes(straight)) out.push_back({ve, vn, std::move(straight)});
      }
    }
    if (allow_chains) {
      for (int ve = 0; ve < 8; ++ve) {
        Vec3r from = child_vertex_unit(ha, index_bits(ve));
        for (int vn = 0; vn < 8; ++vn) {
          Vec3r to = child_vertex_unit(hb, index_bits(vn));
          for (const Vec3r& w : waypoints) {
            if (w == from || w == to) continue;
            Link chain{{from, w, to}};
            if (!segments_disjoint(chain.leg(0), chain.leg(1))) continue;
            if (link_clears_cubes(chain)) out.push_back({ve, vn, std::move(chain)});
          }
        }
      }
    }
    cand_ready[a][b] = true;
    return out;
  }

  bool dfs(int j) {
    if (j == 7) return true;
    for (const Cand& c : candidates(slots[j], slots[j + 1])) {
      if (c.vexit == entry_sel[j]) continue;                  // entry != exit in child j
      if (j + 1 == 7 && c.ventry == exit_sel[7]) continue;    // entry != exit in child 7
      bool good = true;
      for (const Segment3& s : avoid) {
        if (!link_segment_disjoint(c.link, s)) {
          good = false;
          break;
        }
      }
      for (int prev = 0; good && prev < j; ++prev) {
        if (!links_disjoint(links[prev], c.link)) good = false;
      }
      if (!good) continue;
      exit_sel[j] = c.vexit;
      entry_sel[j + 1] = c.ventry;
      links[j] = c.link;
      if (dfs(j + 1)) return true;
    }
    return false;
  }
};

Vec3r to_unit(const Vec3r& p, const Box3& box) {
  Rat inv = 1 / box.side;
  return {(p.x - box.corner.x) * inv, (p.y - box.corner.y) * inv, (p.z - box.corner.z) * inv};
}

Segment3 to_unit(const Segment3& s, const Box3& box) {
  return {to_unit(s.a, box), to_unit(s.b, box)};
}

}  // namespace

std::optional<Pattern> find_pattern(const Vec3r& entry, const Vec3r& exit, const Box3& box,
                                    const std::vector<Segment3>& extra_avoid, bool allow_chains) {
  if (box.side <= 0) throw std::invalid_argument("degenerate box");
  Vec3r ue = to_unit(entry, box);
  Vec3r ux = to_unit(exit, box);
  if (ue == ux) throw std::invalid_argument("entry and exit must be two different points");
  auto oe = owner_vertex(ue);
  auto ox = owner_vertex(ux);
  if (!oe) throw std::invalid_argument("entry is not a vertex of a child cube");
  if (!ox) throw std::invalid_argument("exit is not a vertex of a child cube");
  if (oe->first == ox->first) return std::nullopt;  // slot 0 and slot 7 would coincide

  Searcher s;
  s.cubes = subdivide(unit_box());
  for (const Segment3& seg : extra_avoid) s.avoid.push_back(to_unit(seg, box));
  s.allow_chains = allow_chains;
  if (allow_chains) s.init_waypoints();

  s.slots[0] = oe->first;
  s.slots[7] = ox->first;
  s.entry_sel[0] = oe->second;
  s.exit_sel[7] = ox->second;

  std::array<int, 6> middle{};
  int n = 0;
  for (int i = 0; i < 8; ++i) {
    if (i != s.slots[0] && i != s.slots[7]) middle[n++] = i;
  }
  do {
    for (int k = 0; k < 6; ++k) s.slots[k + 1] = middle[k];
    if (s.dfs(0)) {
      Pattern p;
      for (int k = 0; k < 8; ++k) {
        p.order[k] = index_bits(s.slots[k]);
        p.entry[k] = index_bits(s.entry_sel[k]);
        p.exit[k] = index_bits(s.exit_sel[k]);
      }
      for (int j = 0; j < 7; ++j) {
        if (s.links[j].pts.size() == 3) p.waypoint[j] = s.links[j].pts[1];
      }
      return p;
    }
  } while (std::next_permutation(middle.begin(), middle.end()));
  return std::nullopt;
}

std::vector<std::string> check_pattern(const Vec3r& entry, const Vec3r& exit, const Box3& box,
                                       const std::vector<Segment3>& extra_avoid, const Pattern& p) {
  std::vector<std::string> out;
  auto fail = [&out](const std::string& msg) { out.push_back(msg); };

  Vec3r ue = to_unit(entry, box);
  Vec3r ux = to_unit(exit, box);
  std::vector<Segment3> avoid;
  for (const Segment3& seg : extra_avoid) avoid.push_back(to_unit(seg, box));

  std::array<bool, 8> seen{};
  for (int k = 0; k < 8; ++k) {
    for (int l = 0; l < 3; ++l) {
      if ((p.order[k][l] != 0 && p.order[k][l] != 1) || (p.entry[k][l] & ~1) ||
          (p.exit[k][l] & ~1)) {
        fail("slot " + std::to_string(k) + ": selector components must be 0 or 1");
      }
    }
    int idx = bits_index(p.order[k]);
    if (idx >= 0 && idx < 8) {
      if (seen[idx]) fail("order repeats corner " + std::to_string(idx));
      seen[idx] = true;
    }
  }
  for (int k = 0; k < 8; ++k) {
    if (p.entry[k] == p.exit[k]) {
      fail("slot " + std::to_string(k) + ": entry and exit vertices coincide");
    }
  }
  if (child_vertex_unit(p.order[0], p.entry[0]) != ue) {
    fail("slot 0 entry does not equal the node entry point");
  }
  if (child_vertex_unit(p.order[7], p.exit[7]) != ux) {
    fail("slot 7 exit does not equal the node exit point");
  }

  auto cubes = subdivide(unit_box());
  auto links = pattern_links_unit(p);
  Box3 unit = unit_box();
  for (int j = 0; j < 7; ++j) {
    for (const Vec3r& q : links[j].pts) {
      if (!unit.contains(q)) fail("link " + std::to_string(j) + " leaves the cube");
    }
    for (std::size_t leg = 0; leg < links[j].legs(); ++leg) {
      if (links[j].pts[leg] == links[j].pts[leg + 1]) {
        fail("link " + std::to_string(j) + " has a degenerate leg");
      }
    }
    for (int c = 0; c < 8; ++c) {
      if (!link_box_disjoint(links[j], cubes[c])) {
        fail("link " + std::to_string(j) + " meets child cube " + std::to_string(c));
      }
    }
    for (const Segment3& s : avoid) {
      if (!link_segment_disjoint(links[j], s)) {
        fail("link " + std::to_string(j) + " meets an avoided segment");
      }
    }
    for (int i = 0; i < j; ++i) {
      if (!links_disjoint(links[i], links[j])) {
        fail("links " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closure
// ---------------------------------------------------------------------------

PatternTable pattern_closure(const Vec3r& root_entry, const Vec3r& root_exit) {
  PatternTable t;
  t.root_entry = root_entry;
  t.root_exit = root_exit;
  Box3 unit = unit_box();
  Segment3 closing{root_exit, root_entry};

  auto solve = [&](const Vec3r& e, const Vec3r& x, const std::vector<Segment3>& avoid,
                   const std::string& what) -> Pattern {
    if (auto p = find_pattern(e, x, unit, avoid, false)) return *p;
    if (auto p = find_pattern(e, x, unit, avoid, true)) {
      t.chain_fallback_used = true;
      return *p;
    }
    throw PatternSearchError("no pattern found for " + what);
  };

  t.root = solve(root_entry, root_exit, {closing}, "root instance");

  std::vector<PairClass> work;
  auto enqueue = [&work](const Pattern& p) {
    for (int k = 0; k < 8; ++k) work.push_back(classify_vertex_pair(p.entry[k], p.exit[k]));
  };
  enqueue(t.root);
  std::size_t head = 0;
  while (head < work.size()) {
    PairClass c = work[head++];
    if (t.classes.count(c)) continue;
    auto [e, x] = canonical_pair(c);
    Vec3r ve{Rat(e[0]), Rat(e[1]), Rat(e[2])};
    Vec3r vx{Rat(x[0]), Rat(x[1]), Rat(x[2])};
    Pattern p = solve(ve, vx, {}, std::string("class ") + pair_class_name(c));
    enqueue(p);
    t.classes.emplace(c, p);
  }
  return t;
}

PatternTable pattern_closure() {
  return pattern_closure({Rat(1, 3), Rat(0), Rat(0)}, {Rat(2, 3), Rat(0), Rat(0)});
}

Segment3 closing_segment(const PatternTable& t) { return {t.root_exit, t.root_entry}; }

// ---------------------------------------------------------------------------
// Tree materialization
// ---------------------------------------------------------------------------

TreeNode root_node(const PatternTable& t) {
  return {unit_box(), t.root_entry, t.root_exit, t.root};
}

TreeNode child_node(const PatternTable& t, const TreeNode& node, int slot) {
  if (slot < 0 || slot > 7) throw std::out_of_range("slot out of {0,...,7}");
  auto kids = subdivide(node.box);
  const Bits3& h = node.pattern.order[slot];
  Box3 cb = kids[bits_index(h)];
  const Bits3& ve = node.pattern.entry[slot];
  const Bits3& vx = node.pattern.exit[slot];
  PairClass c = classify_vertex_pair(ve, vx);
  auto it = t.classes.find(c);
  if (it == t.classes.end()) {
    throw PatternSearchError(std::string("pattern table missing class ") + pair_class_name(c));
  }
  auto [ce, cx] = canonical_pair(c);
  auto iso = find_iso(ce, cx, ve, vx);
  TreeNode child;
  child.box = cb;
  child.entry = cb.vertex(ve);
  child.exit = cb.vertex(vx);
  child.pattern = transport(it->second, *iso);
  return child;
}

std::array<Link, 7> node_links(const TreeNode& node) {
  auto unit = pattern_links_unit(node.pattern);
  std::array<Link, 7> out;
  for (int j = 0; j < 7; ++j) {
    out[j].pts.reserve(unit[j].pts.size());
    for (const Vec3r& p : unit[j].pts) {
      out[j].pts.push_back(node.box.corner + node.box.side * p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

struct Validator {
  const PatternTable& table;
  int max_depth;
  ValidationReport report;

  void add(const char* clause, const Address& s, std::string detail) {
    report.violations.push_back({clause, s, std::move(detail)});
  }

  void visit(const TreeNode& node, Address& addr) {
    ++report.nodes;
    auto kids = subdivide(node.box);
    std::array<Box3, 8> cb;
    for (int k = 0; k < 8; ++k) cb[k] = kids[bits_index(node.pattern.order[k])];

    // (6) sibling cubes pairwise disjoint
    for (int i = 0; i < 8; ++i) {
      for (int j = i + 1; j < 8; ++j) {
        ++report.cube_pair_checks;
        if (!boxes_disjoint(cb[i], cb[j])) {
          add("(6)", addr, "child cubes " + std::to_string(i) + "," + std::to_string(j));
        }
      }
    }

    // bullet 1: endpoint wiring; (b3): two different vertices per cube
    if (cb[0].vertex(node.pattern.entry[0]) != node.entry) {
      add("bullet1", addr, "slot 0 entry != node entry");
    }
    if (cb[7].vertex(node.pattern.exit[7]) != node.exit) {
      add("bullet1", addr, "slot 7 exit != node exit");
    }
    for (int k = 0; k < 8; ++k) {
      if (node.pattern.entry[k] == node.pattern.exit[k]) {
        add("(b3)", addr, "slot " + std::to_string(k) + " entry == exit");
      }
    }

    auto links = node_links(node);

    // (7) via containment: links stay inside this node's cube
    for (int j = 0; j < 7; ++j) {
      for (const Vec3r& p : links[j].pts) {
        if (!node.box.contains(p)) {
          add("(7)", addr, "link " + std::to_string(j) + " leaves the node cube");
        }
      }
    }

    // bullet 2 / (8): links avoid all child cubes
    for (int j = 0; j < 7; ++j) {
      for (int c = 0; c < 8; ++c) {
        ++report.seg_cube_checks;
        if (!link_box_disjoint(links[j], cb[c])) {
          add("bullet2", addr,
              "link " + std::to_string(j) + " meets child cube slot " + std::to_string(c));
        }
      }
    }

    // bullet 4 / (9): links pairwise disjoint within the node
    for (int i = 0; i < 7; ++i) {
      for (int j = i + 1; j < 7; ++j) {
        ++report.seg_seg_checks;
        if (!links_disjoint(links[i], links[j])) {
          add("bullet4", addr, "links " + std::to_string(i) + "," + std::to_string(j));
        }
      }
    }

    // Root extras: bullet 3 / (11) against the closing segment, and the
    // level-1 part of (10).
    if (addr.empty()) {
      Segment3 closing = closing_segment(table);
      for (int j = 0; j < 7; ++j) {
        ++report.seg_seg_checks;
        if (!link_segment_disjoint(links[j], closing)) {
          add("bullet3", addr, "link " + std::to_string(j) + " meets the closing segment");
        }
      }
      for (int c = 0; c < 8; ++c) {
        ++report.seg_cube_checks;
        if (!segment_box_disjoint(closing, cb[c])) {
          add("(10)", addr, "closing segment meets child cube slot " + std::to_string(c));
        }
      }
    }

    if (static_cast<int>(addr.size()) + 1 < max_depth) {
      for (int k = 0; k < 8; ++k) {
        TreeNode child = child_node(table, node, k);
        addr.push_back(static_cast<std::uint8_t>(k));
        visit(child, addr);
        addr.pop_back();
      }
    }
  }
};

}  // namespace

ValidationReport validate_tree(const PatternTable& t, int depth) {
  Validator v{t, depth, {}};
  v.report.depth = depth;
  if (depth > 0) {
    Address addr;
    TreeNode root = root_node(t);
    v.visit(root, addr);
  }
  v.report.locality_note =
      "local checks only: sibling disjointness plus per-node link/cube and link/link "
      "disjointness imply the cross-subtree clauses by cube nesting (a deeper cube lies inside "
      "some sibling cube of the link's node, and links of deeper nodes lie inside their node "
      "cube)";
  return v.report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json bits_json(const Bits3& b) { return json::array({b[0], b[1], b[2]}); }

Bits3 bits_from(const json& j) {
  Bits3 b{j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()};
  for (int l = 0; l < 3; ++l) {
    if (b[l] != 0 && b[l] != 1) throw std::invalid_argument("corner bit out of {0,1}");
  }
  return b;
}

json rat3_json(const Rat& q) {
  auto [num, e] = as_pow3_fraction(q);
  std::ostringstream os;
  os << num;
  return json{{"num", os.str()}, {"exp3", e}};
}

Rat rat3_from(const json& j) {
  BigInt num(j.at("num").get<std::string>());
  int e = j.at("exp3").get<int>();
  if (e < 0) throw std::invalid_argument("exp3 must be >= 0");
  return Rat(num) * pow3(-e);
}

json vec_json(const Vec3r& v) { return json::array({rat3_json(v.x), rat3_json(v.y), rat3_json(v.z)}); }

Vec3r vec_from(const json& j) { return {rat3_from(j.at(0)), rat3_from(j.at(1)), rat3_from(j.at(2))}; }

json pattern_json(const Pattern& p) {
  json order = json::array(), entry = json::array(), exit = json::array(), wps = json::array();
  for (int k = 0; k < 8; ++k) {
    order.push_back(bits_json(p.order[k]));
    entry.push_back(bits_json(p.entry[k]));
    exit.push_back(bits_json(p.exit[k]));
  }
  for (int j = 0; j < 7; ++j) {
    wps.push_back(p.waypoint[j] ? vec_json(*p.waypoint[j]) : json(nullptr));
  }
  return json{{"order", order}, {"entry", entry}, {"exit", exit}, {"waypoints", wps}};
}

Pattern pattern_from(const json& j) {
  Pattern p;
  for (int k = 0; k < 8; ++k) {
    p.order[k] = bits_from(j.at("order").at(k));
    p.entry[k] = bits_from(j.at("entry").at(k));
    p.exit[k] = bits_from(j.at("exit").at(k));
  }
  const json& wps = j.at("waypoints");
  for (int k = 0; k < 7; ++k) {
    if (!wps.at(k).is_null()) p.waypoint[k] = vec_from(wps.at(k));
  }
  return p;
}

}  // namespace

std::string pattern_table_to_json(const PatternTable& t, const ValidationReport* report) {
  json j;
  j["format"] = "cubecurve-pattern/1";
  j["root"] = pattern_json(t.root);
  j["root_entry"] = vec_json(t.root_entry);
  j["root_exit"] = vec_json(t.root_exit);
  json classes;
  json class_names = json::array();
  bool chains = t.root.has_chains();
  for (const auto& [cls, pat] : t.classes) {
    classes[pair_class_name(cls)] = pattern_json(pat);
    class_names.push_back(pair_class_name(cls));
    chains = chains || pat.has_chains();
  }
  j["classes"] = classes;
  json digest;
  digest["classes_used"] = class_names;
  digest["chain_fallback_used"] = t.chain_fallback_used;
  digest["straight_segments_only"] = !chains;
  if (report) {
    json v;
    v["depth"] = report->depth;
    v["nodes"] = report->nodes;
    v["cube_pair_checks"] = report->cube_pair_checks;
    v["seg_cube_checks"] = report->seg_cube_checks;
    v["seg_seg_checks"] = report->seg_seg_checks;
    v["violations"] = report->violations.size();
    if (!report->violations.empty()) {
      json list = json::array();
      for (const Violation& viol : report->violations) {
        list.push_back(
            json{{"clause", viol.clause}, {"node", address_str(viol.node)}, {"detail", viol.detail}});
      }
      v["violation_list"] = list;
    }
    v["locality_note"] = report->locality_note;
    digest["validation"] = v;
  }
  j["digest"] = digest;
  return j.dump(2) + "\n";
}

PatternTable pattern_table_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("format").get<std::string>() != "cubecurve-pattern/1") {
    throw std::invalid_argument("unknown pattern file format");
  }
  PatternTable t;
  t.root = pattern_from(j.at("root"));
  t.root_entry = vec_from(j.at("root_entry"));
  t.root_exit = vec_from(j.at("root_exit"));
  for (const auto& [key, val] : j.at("classes").items()) {
    PairClass c;
    if (key == "edge") {
      c = PairClass::Edge;
    } else if (key == "face_diag") {
      c = PairClass::FaceDiag;
    } else if (key == "space_diag") {
      c = PairClass::SpaceDiag;
    } else {
      throw std::invalid_argument("unknown pattern class: " + key);
    }
    t.classes.emplace(c, pattern_from(val));
  }
  if (j.contains("digest") && j.at("digest").contains("chain_fallback_used")) {
    t.chain_fallback_used = j.at("digest").at("chain_fallback_used").get<bool>();
  }
  return t;
}

}  // namespace cubecurve

#pragma once

#include "cubecurve/geometry.hpp"
#include "cubecurve/param.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubecurve {

// ---------------------------------------------------------------------------
// Cube isometries
// ---------------------------------------------------------------------------

// Signed axis permutation acting on the unit cube: output axis l reads input
// axis perm[l], mirrored when flip[l]. All 48 of these form the symmetry
// group of the cube.
struct CubeIso {
  std::array<int, 3> perm;
  std::array<bool, 3> flip;

  Bits3 apply(const Bits3& h) const {
    Bits3 out;
    for (int l = 0; l < 3; ++l) out[l] = flip[l] ? 1 - h[perm[l]] : h[perm[l]];
    return out;
  }
  Vec3r apply_unit(const Vec3r& p) const {
    Vec3r out;
    for (int l = 0; l < 3; ++l) out[l] = flip[l] ? Rat(1) - p[perm[l]] : p[perm[l]];
    return out;
  }
};

// Fixed enumeration order (permutations lexicographic, then flip masks).
const std::array<CubeIso, 48>& cube_isometries();

// Ordered pairs of distinct cube vertices fall into three orbits under the
// symmetry group, keyed by Hamming distance.
enum class PairClass { Edge = 1, FaceDiag = 2, SpaceDiag = 3 };

const char* pair_class_name(PairClass c);
PairClass classify_vertex_pair(const Bits3& a, const Bits3& b);  // throws on a == b
std::pair<Bits3, Bits3> canonical_pair(PairClass c);

// First isometry (in enumeration order) taking (from_e, from_x) to (to_e, to_x).
std::optional<CubeIso> find_iso(const Bits3& from_e, const Bits3& from_x, const Bits3& to_e,
                                const Bits3& to_x);

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

// One recursion step: a traversal order of the 8 corner cubes plus an entry
// and exit vertex per cube. Consecutive cubes are joined by open connecting
// links; a link is normally a straight segment, with an optional interior
// waypoint (two-leg chain) as fallback.
struct Pattern {
  std::array<Bits3, 8> order;  // slot -> child corner selector
  std::array<Bits3, 8> entry;  // slot -> entry vertex, child-relative
  std::array<Bits3, 8> exit;   // slot -> exit vertex, child-relative
  std::array<std::optional<Vec3r>, 7> waypoint;  // unit-cube coordinates

  bool has_chains() const {
    for (const auto& w : waypoint)
      if (w) return true;
    return false;
  }
};

// Open polyline with 2 or 3 points; interior joints are part of the link,
// endpoints are excluded.
struct Link {
  std::vector<Vec3r> pts;

  std::size_t legs() const { return pts.size() - 1; }
  Segment3 leg(std::size_t i) const { return {pts[i], pts[i + 1]}; }
};

bool link_box_disjoint(const Link& link, const Box3& box);
bool links_disjoint(const Link& a, const Link& b);
bool link_segment_disjoint(const Link& link, const Segment3& seg);

// Vertex position of child `h`, vertex selector `v`, in unit-cube coordinates.
Vec3r child_vertex_unit(const Bits3& h, const Bits3& v);

// The 7 connecting links induced by a pattern, unit-cube coordinates.
std::array<Link, 7> pattern_links_unit(const Pattern& p);

Pattern transport(const Pattern& p, const CubeIso& g);

// Deterministic backtracking search for a pattern inside `box` joining `entry`
// to `exit`, with every link avoiding the 8 child cubes, all links pairwise
// disjoint, and every link disjoint from `extra_avoid`. Straight segments
// only unless allow_chains, which adds two-leg chains with one waypoint on
// the interior 1/9 grid of the (normalized) cube.
//
// Preconditions: entry != exit and each must be a vertex of exactly one child
// cube of `box`; violations throw std::invalid_argument.
std::optional<Pattern> find_pattern(const Vec3r& entry, const Vec3r& exit, const Box3& box,
                                    const std::vector<Segment3>& extra_avoid,
                                    bool allow_chains = false);

// Independent re-validation of a pattern against the same constraints the
// search enforces. Returns human-readable violations; empty means valid.
std::vector<std::string> check_pattern(const Vec3r& entry, const Vec3r& exit, const Box3& box,
                                       const std::vector<Segment3>& extra_avoid, const Pattern& p);

struct PatternSearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Closure over vertex-pair classes
// ---------------------------------------------------------------------------

struct PatternTable {
  Pattern root;
  Vec3r root_entry, root_exit;
  std::map<PairClass, Pattern> classes;  // canonical-pose pattern per class
  bool chain_fallback_used = false;
};

// Solves the root instance (avoiding the closing segment exit->entry), then a
// canonical instance per vertex-pair class reachable from it, iterating until
// closed. Throws PatternSearchError if any instance is unsolvable even with
// the chain fallback.
PatternTable pattern_closure(const Vec3r& root_entry, const Vec3r& root_exit);
PatternTable pattern_closure();  // root entry (1/3,0,0), exit (2/3,0,0)

Segment3 closing_segment(const PatternTable& t);  // open segment exit -> entry

// ---------------------------------------------------------------------------
// Tree materialization
// ---------------------------------------------------------------------------

struct TreeNode {
  Box3 box;
  Vec3r entry, exit;  // absolute coordinates
  Pattern pattern;
};

TreeNode root_node(const PatternTable& t);
TreeNode child_node(const PatternTable& t, const TreeNode& node, int slot);
std::array<Link, 7> node_links(const TreeNode& node);  // absolute coordinates

// ---------------------------------------------------------------------------
// Whole-tree validation
// ---------------------------------------------------------------------------

struct Violation {
  std::string clause;
  Address node;
  std::string detail;
};

struct ValidationReport {
  int depth = 0;
  std::uint64_t nodes = 0;
  std::uint64_t cube_pair_checks = 0;
  std::uint64_t seg_cube_checks = 0;
  std::uint64_t seg_seg_checks = 0;
  std::vector<Violation> violations;
  std::string locality_note;

  bool ok() const { return violations.empty(); }
};

// Materializes every node of address length < depth and exactly verifies the
// local constraints (sibling-cube disjointness, link/cube avoidance, pairwise
// link disjointness, endpoint wiring, containment; at the root also the
// closing segment). Cross-subtree disjointness follows from these local
// checks by cube nesting; see the report's locality note.
ValidationReport validate_tree(const PatternTable& t, int depth);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

// JSON with sorted keys; exact coordinates as decimal numerator plus
// exponent-of-3 pairs. The digest records the discovered classes, whether
// straight segments sufficed, and the validation outcome.
std::string pattern_table_to_json(const PatternTable& t, const ValidationReport* report);
PatternTable pattern_table_from_json(const std::string& text);

}  // namespace cubecurve

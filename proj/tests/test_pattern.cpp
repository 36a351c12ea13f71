#include "cubecurve/pattern.hpp"

#include <doctest.h>

#include <set>

using namespace cubecurve;

namespace {

const Box3 kUnit{{Rat(0), Rat(0), Rat(0)}, Rat(1), 0};

Vec3r bits_vec(const Bits3& b) { return {Rat(b[0]), Rat(b[1]), Rat(b[2])}; }

Vec3r root_entry() { return {Rat(1, 3), Rat(0), Rat(0)}; }
Vec3r root_exit() { return {Rat(2, 3), Rat(0), Rat(0)}; }

}  // namespace

TEST_CASE("the 48 cube isometries are distinct bijections on corners") {
  std::set<std::array<int, 8>> images;
  for (const CubeIso& g : cube_isometries()) {
    std::array<int, 8> image{};
    std::set<int> hit;
    for (int i = 0; i < 8; ++i) {
      image[i] = bits_index(g.apply(index_bits(i)));
      hit.insert(image[i]);
    }
    CHECK(hit.size() == 8);
    images.insert(image);
  }
  CHECK(images.size() == 48);
}

TEST_CASE("vertex pair classes and canonical transport") {
  CHECK(classify_vertex_pair({0, 0, 0}, {1, 0, 0}) == PairClass::Edge);
  CHECK(classify_vertex_pair({0, 0, 0}, {1, 1, 0}) == PairClass::FaceDiag);
  CHECK(classify_vertex_pair({0, 0, 0}, {1, 1, 1}) == PairClass::SpaceDiag);
  CHECK_THROWS_AS(classify_vertex_pair({1, 0, 1}, {1, 0, 1}), std::invalid_argument);

  int count = 0;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      if (a == b) continue;
      ++count;
      Bits3 va = index_bits(a), vb = index_bits(b);
      PairClass c = classify_vertex_pair(va, vb);
      auto [ce, cx] = canonical_pair(c);
      auto iso = find_iso(ce, cx, va, vb);
      REQUIRE(iso.has_value());
      CHECK(iso->apply(ce) == va);
      CHECK(iso->apply(cx) == vb);
    }
  }
  CHECK(count == 56);
}

TEST_CASE("find_pattern solves the root instance; validator agrees") {
  Segment3 closing{root_exit(), root_entry()};
  auto p = find_pattern(root_entry(), root_exit(), kUnit, {closing});
  REQUIRE(p.has_value());
  CHECK(check_pattern(root_entry(), root_exit(), kUnit, {closing}, *p).empty());
  // Slot 0 must own the entry, slot 7 the exit.
  CHECK(p->order[0] == Bits3{0, 0, 0});
  CHECK(p->order[7] == Bits3{1, 0, 0});
  CHECK_FALSE(p->has_chains());
}

TEST_CASE("find_pattern solves all canonical class instances") {
  for (PairClass c : {PairClass::Edge, PairClass::FaceDiag, PairClass::SpaceDiag}) {
    auto [e, x] = canonical_pair(c);
    auto p = find_pattern(bits_vec(e), bits_vec(x), kUnit, {});
    REQUIRE_MESSAGE(p.has_value(), pair_class_name(c));
    CHECK(check_pattern(bits_vec(e), bits_vec(x), kUnit, {}, *p).empty());
  }
}

TEST_CASE("find_pattern precondition violations") {
  CHECK_THROWS_AS(find_pattern(root_entry(), root_entry(), kUnit, {}), std::invalid_argument);
  Vec3r center{Rat(1, 2), Rat(1, 2), Rat(1, 2)};
  CHECK_THROWS_AS(find_pattern(center, root_exit(), kUnit, {}), std::invalid_argument);
}

TEST_CASE("pattern_closure reaches a class-closed table") {
  PatternTable t = pattern_closure();
  CHECK(t.classes.size() <= 3);
  CHECK_FALSE(t.classes.empty());
  // Every child pair class of every stored pattern is itself stored.
  auto covered = [&t](const Pattern& p) {
    for (int k = 0; k < 8; ++k) {
      if (!t.classes.count(classify_vertex_pair(p.entry[k], p.exit[k]))) return false;
    }
    return true;
  };
  CHECK(covered(t.root));
  for (const auto& [c, p] : t.classes) {
    (void)c;
    CHECK(covered(p));
  }
  // Straight segments suffice for this construction.
  CHECK_FALSE(t.chain_fallback_used);

  // Determinism: a second run yields the identical table.
  PatternTable t2 = pattern_closure();
  CHECK(pattern_table_to_json(t, nullptr) == pattern_table_to_json(t2, nullptr));
}

TEST_CASE("all 48 transports of a stored pattern re-validate") {
  PatternTable t = pattern_closure();
  for (const auto& [c, p] : t.classes) {
    auto [ce, cx] = canonical_pair(c);
    for (const CubeIso& g : cube_isometries()) {
      Pattern moved = transport(p, g);
      Bits3 e = g.apply(ce), x = g.apply(cx);
      CHECK(check_pattern(bits_vec(e), bits_vec(x), kUnit, {}, moved).empty());
    }
  }
}

TEST_CASE("tree wiring: child endpoints chain through the traversal") {
  PatternTable t = pattern_closure();
  TreeNode root = root_node(t);
  CHECK(root.entry == root_entry());
  CHECK(root.exit == root_exit());

  TreeNode first = child_node(t, root, 0);
  CHECK(first.entry == root.entry);  // slot-0 entry equals the parent entry
  TreeNode last = child_node(t, root, 7);
  CHECK(last.exit == root.exit);

  // Consecutive children are joined exactly by the node's links.
  auto links = node_links(root);
  for (int j = 0; j < 7; ++j) {
    TreeNode a = child_node(t, root, j);
    TreeNode b = child_node(t, root, j + 1);
    CHECK(links[j].pts.front() == a.exit);
    CHECK(links[j].pts.back() == b.entry);
  }
}

TEST_CASE("validate_tree depths 0..2") {
  PatternTable t = pattern_closure();
  ValidationReport r0 = validate_tree(t, 0);
  CHECK(r0.ok());
  CHECK(r0.nodes == 0);  // vacuous

  ValidationReport r2 = validate_tree(t, 2);
  CHECK(r2.ok());
  CHECK(r2.nodes == 9);  // root plus 8 children
  CHECK(r2.seg_cube_checks > 0);
  CHECK(r2.seg_seg_checks > 0);
}

TEST_CASE("a corrupted exit vertex is caught, including a bullet-2 case") {
  PatternTable t = pattern_closure();
  bool saw_bullet2 = false;
  bool saw_any = false;
  for (int vi = 0; vi < 8 && !saw_bullet2; ++vi) {
    PatternTable bad = t;
    Bits3 v = index_bits(vi);
    if (v == bad.root.exit[3]) continue;
    bad.root.exit[3] = v;
    ValidationReport r = validate_tree(bad, 1);
    if (!r.ok()) saw_any = true;
    for (const Violation& viol : r.violations) {
      if (viol.clause == "bullet2") saw_bullet2 = true;
    }
  }
  CHECK(saw_any);
  CHECK(saw_bullet2);
}

TEST_CASE("pattern table JSON round trip") {
  PatternTable t = pattern_closure();
  ValidationReport r = validate_tree(t, 2);
  std::string text = pattern_table_to_json(t, &r);
  PatternTable back = pattern_table_from_json(text);
  CHECK(pattern_table_to_json(back, &r) == text);
  CHECK(back.classes.size() == t.classes.size());
  CHECK(back.root_entry == t.root_entry);
  CHECK(back.root_exit == t.root_exit);

  CHECK_THROWS(pattern_table_from_json("{\"format\":\"nope\"}"));
}

TEST_CASE("two-leg chain links obey the same exact predicates") {
  // A chain through an interior joint: legs open, joint included.
  Link chain{{Vec3r{Rat(1, 3), Rat(1, 3), Rat(0)}, Vec3r{Rat(4, 9), Rat(5, 9), Rat(0)},
              Vec3r{Rat(2, 3), Rat(2, 3), Rat(0)}}};
  Box3 joint_box{{Rat(4, 9), Rat(5, 9), Rat(0)}, Rat(1, 27), 3};
  CHECK_FALSE(link_box_disjoint(chain, joint_box));  // joint lies in the box

  Box3 off_box{{Rat(8, 9), Rat(8, 9), Rat(8, 9)}, Rat(1, 9), 2};
  CHECK(link_box_disjoint(chain, off_box));

  // A segment passing through the joint intersects the chain.
  Segment3 through{{Rat(4, 9), Rat(5, 9), Rat(-1)}, {Rat(4, 9), Rat(5, 9), Rat(1)}};
  CHECK_FALSE(link_segment_disjoint(chain, through));
  // Touching only the chain's excluded endpoint is fine.
  Segment3 at_end{{Rat(1, 3), Rat(1, 3), Rat(0)}, {Rat(1, 3), Rat(1, 3), Rat(1)}};
  CHECK(link_segment_disjoint(chain, at_end));

  Link other{{Vec3r{Rat(4, 9), Rat(5, 9), Rat(-1)}, Vec3r{Rat(4, 9), Rat(5, 9), Rat(1)}}};
  CHECK_FALSE(links_disjoint(chain, other));
}

TEST_CASE("chain-enabled search still solves and validates") {
  auto [e, x] = canonical_pair(PairClass::Edge);
  auto p = find_pattern(bits_vec(e), bits_vec(x), kUnit, {}, true);
  REQUIRE(p.has_value());
  CHECK(check_pattern(bits_vec(e), bits_vec(x), kUnit, {}, *p).empty());
}

TEST_CASE("a hand-built chain pattern validates and transports") {
  PatternTable t = pattern_closure();
  // Replace root link 3 by a two-leg chain through a valid 1/9-grid joint.
  auto links = pattern_links_unit(t.root);
  bool built = false;
  for (int i = 1; i <= 8 && !built; ++i) {
    for (int j = 1; j <= 8 && !built; ++j) {
      for (int k = 1; k <= 8 && !built; ++k) {
        Vec3r w{Rat(i, 9), Rat(j, 9), Rat(k, 9)};
        if (w == links[3].pts.front() || w == links[3].pts.back()) continue;
        Pattern candidate = t.root;
        candidate.waypoint[3] = w;
        if (check_pattern(root_entry(), root_exit(), kUnit, {closing_segment(t)}, candidate)
                .empty()) {
          built = true;
          PatternTable chained = t;
          chained.root = candidate;
          ValidationReport r = validate_tree(chained, 2);
          CHECK(r.ok());
        }
      }
    }
  }
  CHECK(built);
}

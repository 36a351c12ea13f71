#include "cubecurve/param.hpp"

#include <doctest.h>

#include <random>

using namespace cubecurve;

namespace {

// Independent oracle for the scaffold endpoints: closed-form digit sum
// in_s = sum_k 2 s_k 15^-(k+1) instead of the affine recursion.
Rat oracle_in(const Address& s) {
  Rat acc = 0;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    acc = (acc + Rat(2 * int(*it))) / 15;
  }
  return acc;
}

Rat oracle_out(const Address& s) { return oracle_in(s) + pow15(-int(s.size())); }

bool is_gap(const ParamClass& c) { return std::holds_alternative<GapLocation>(c); }

}  // namespace

TEST_CASE("child_segment examples") {
  auto k0 = child_segment({}, 0);
  CHECK(k0.lo == 0);
  CHECK(k0.hi == Rat(1, 15));
  CHECK(k0.kind == IntervalKind::ClosedK);

  auto k7 = child_segment({}, 7);
  CHECK(k7.lo == Rat(14, 15));
  CHECK(k7.hi == 1);

  auto k10 = child_segment({1}, 0);
  CHECK(k10.lo == Rat(2, 15));
  CHECK(k10.hi == Rat(2, 15) + Rat(1, 225));
  CHECK(k10.lo == oracle_in({1, 0}));
  CHECK(k10.hi == oracle_out({1, 0}));

  CHECK_THROWS_AS(child_segment({}, 8), std::out_of_range);
}

TEST_CASE("gap_interval examples") {
  auto g0 = gap_interval({}, 0);
  CHECK(g0.lo == Rat(1, 15));
  CHECK(g0.hi == Rat(2, 15));
  CHECK(g0.kind == IntervalKind::OpenGap);

  auto g6 = gap_interval({}, 6);
  CHECK(g6.lo == Rat(13, 15));
  CHECK(g6.hi == Rat(14, 15));

  CHECK_THROWS_AS(gap_interval({}, 7), std::out_of_range);
  CHECK_THROWS_AS(gap_interval({}, -1), std::out_of_range);
}

TEST_CASE("address_to_param examples") {
  CHECK(address_to_param({}, Pad::Zero) == 0);
  CHECK(address_to_param({}, Pad::Seven) == 1);
  CHECK(address_to_param({7}, Pad::Seven) == 1);
  CHECK(address_to_param({0}, Pad::Zero) == 0);
  CHECK(address_to_param({1}, Pad::Zero) == Rat(2, 15));
}

TEST_CASE("classify_param examples") {
  auto mid = classify_param(Rat(1, 2), 4);
  REQUIRE(is_gap(mid));
  auto gap = std::get<GapLocation>(mid);
  CHECK(gap.node == Address{});
  CHECK(gap.gap_index == 3);
  CHECK(gap.local == Rat(1, 2));

  auto zero = classify_param(0, 4);
  REQUIRE_FALSE(is_gap(zero));
  CHECK(std::get<LimitPrefix>(zero).prefix == Address{0, 0, 0, 0});

  auto out0 = classify_param(Rat(1, 15), 4);
  REQUIRE_FALSE(is_gap(out0));
  CHECK(std::get<LimitPrefix>(out0).prefix == Address{0, 7, 7, 7});

  auto one = classify_param(1, 3);
  REQUIRE_FALSE(is_gap(one));
  CHECK(std::get<LimitPrefix>(one).prefix == Address{7, 7, 7});

  CHECK_THROWS_AS(classify_param(Rat(-1, 10), 2), std::domain_error);
  CHECK_THROWS_AS(classify_param(Rat(11, 10), 2), std::domain_error);
}

namespace {

constexpr int kTestDepth = 4;

// Walks every node to depth kTestDepth checking the partition, measure,
// nesting, and oracle agreement at each.
void check_node(const Address& s) {
  Rat in = oracle_in(s);
  Rat out = oracle_out(s);
  Rat len = pow15(-int(s.size()));
  REQUIRE(out - in == len);

  // 16 boundary points strictly increasing, interleaved children and gaps.
  Rat prev = in - 1;
  for (int i = 0; i < 8; ++i) {
    auto k = child_segment(s, i);
    CHECK(k.lo == oracle_in([&] {
      Address t = s;
      t.push_back(std::uint8_t(i));
      return t;
    }()));
    CHECK(k.hi - k.lo == len / 15);
    CHECK(prev < k.lo);
    if (i > 0) {
      auto g = gap_interval(s, i - 1);
      CHECK(g.lo == child_segment(s, i - 1).hi);
      CHECK(g.hi == k.lo);
      CHECK(g.hi - g.lo == len / 15);
    }
    prev = k.hi;
    // Nesting in K_s.
    CHECK(in <= k.lo);
    CHECK(k.hi <= out);
  }
  CHECK(child_segment(s, 0).lo == in);
  CHECK(child_segment(s, 7).hi == out);

  if (int(s.size()) < kTestDepth) {
    for (int i = 0; i < 8; ++i) {
      Address t = s;
      t.push_back(std::uint8_t(i));
      check_node(t);
    }
  }
}

}  // namespace

TEST_CASE("partition, measure, and nesting to depth 4") { check_node({}); }

TEST_CASE("classification round trip") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    Address x;
    int n = int(rng() % (kTestDepth + 1));
    for (int i = 0; i < n; ++i) x.push_back(std::uint8_t(rng() % 8));

    auto c = classify_param(address_to_param(x, Pad::Zero), kTestDepth);
    REQUIRE_FALSE(is_gap(c));
    Address padded = x;
    padded.resize(kTestDepth, 0);
    CHECK(std::get<LimitPrefix>(c).prefix == padded);

    // The Seven-padded endpoint classifies with a 7-tail.
    auto c7 = classify_param(address_to_param(x, Pad::Seven), kTestDepth);
    REQUIRE_FALSE(is_gap(c7));
    Address padded7 = x;
    padded7.resize(kTestDepth, 7);
    CHECK(std::get<LimitPrefix>(c7).prefix == padded7);
  }
}

TEST_CASE("gap classification is consistent with gap_interval") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    BigInt den = 1 + rng() % 100000;
    BigInt num = BigInt(rng()) % (den + 1);
    Rat t(num, den);
    auto c = classify_param(t, 6);
    if (!is_gap(c)) continue;
    auto gap = std::get<GapLocation>(c);
    auto g = gap_interval(gap.node, gap.gap_index);
    CHECK(g.lo < t);
    CHECK(t < g.hi);
    CHECK(g.lo + gap.local * (g.hi - g.lo) == t);
  }
}

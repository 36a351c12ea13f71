#pragma once

#include "cubecurve/rational.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace cubecurve {

// A node of the recursion tree: a finite word over {0,...,7}. Each digit picks
// one of the 8 closed child intervals of the current scaffold interval.
using Address = std::vector<std::uint8_t>;

std::string address_str(const Address& s);

enum class IntervalKind { ClosedK, OpenGap };

struct ParamInterval {
  Rat lo, hi;
  IntervalKind kind;
};

enum class Pad { Zero, Seven };

// The scaffold on [0,1]: each interval K_s splits into 15 consecutive pieces
// of equal length: 8 closed children K_{s+i} interleaved with 7 open gaps.
//
//   in_{s+i}  = in_s + (2i/15) |K_s|
//   out_{s+i} = in_{s+i} + (1/15) |K_s|

// Left endpoint in_s (pad Zero) or right endpoint out_s (pad Seven) of K_s.
// These are the parameters of the limit points with constant tails.
Rat address_to_param(const Address& s, Pad pad);

// K_{s+i} = [in_{s+i}, out_{s+i}], exact; 0 <= i <= 7.
ParamInterval child_segment(const Address& s, int i);

// Gap between consecutive children: (out_{s+j}, in_{s+(j+1)}); 0 <= j <= 6.
// Throws std::out_of_range for j outside that range (no gap after the last
// child).
ParamInterval gap_interval(const Address& s, int j);

struct GapLocation {
  Address node;
  int gap_index;  // in 0..6
  Rat local;      // affine coordinate in (0,1) within the open gap
};

struct LimitPrefix {
  Address prefix;  // length == max_depth; t lies in K_prefix
};

using ParamClass = std::variant<GapLocation, LimitPrefix>;

// Descends the scaffold from the root. Returns the gap containing t if one is
// reached before depth max_depth, otherwise the depth-max_depth address whose
// closed interval contains t. Points shared by a closed child and the closure
// of a gap classify on the closed side. Throws std::domain_error for t
// outside [0,1].
ParamClass classify_param(const Rat& t, int max_depth);

}  // namespace cubecurve

#pragma once

// Internal twist-region diagram engine shared by the 2-bridge and Montesinos
// modules. A diagram is a 4-valent plane graph of crossings; twist regions
// are rows of crossings between two strands. Orientation propagation,
// per-region crossing signs, Seifert-circle decomposition and component
// counts are all computed combinatorially on this structure.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "knotbb/rational.hpp"

namespace knotbb::diagram {

// Crossing ports in local drawing coordinates (x right, y up). The two
// strands run along the NW-SE and SW-NE diagonals.
enum Port : int { NW = 0, NE = 1, SW = 2, SE = 3 };

inline constexpr int diagonal_exit(int p) {
    switch (p) {
        case NW: return SE;
        case SE: return NW;
        case NE: return SW;
        default: return NE;
    }
}

struct Crossing {
    std::array<int, 4> arc{-1, -1, -1, -1};  // global port id across the arc at each port
    bool over_nwse = true;                   // NW-SE strand is the over strand
    int region = -1;                         // twist region this crossing belongs to
};

struct RegionRef {
    int tangle = -1;  // -1 for the closing half-twist row
    int index = 0;    // position within the tangle's continued fraction
};

// Resolved boundary ports of one tangle in the Montesinos frame.
struct TangleBoundary {
    int ne = -1, se = -1, sw = -1, nw = -1;  // crossing ports inside the tangle
};

struct Diagram {
    std::vector<Crossing> crossings;
    std::vector<RegionRef> regions;
    std::vector<int> region_size;

    std::vector<TangleBoundary> tangles;

    // Ports adjacent to the two long closure strands; used to seed and read
    // off the fixed orientations. left/right refer to drawing positions.
    int top_long_left = -1, top_long_right = -1;
    int bottom_long_left = -1, bottom_long_right = -1;

    int port_count() const { return 4 * static_cast<int>(crossings.size()); }
};

// Standard tangle/4-plat description: entries of one continued fraction plus
// the chirality of its crossings (mirrored tangles flip over/under).
struct TangleSpec {
    std::vector<long long> entries;
    bool mirrored = false;
};

// 2-bridge standard diagram of the given expansion (the denominator closure
// of the standard tangle). The bottom long arc is the NW-SW closure.
Diagram build_two_bridge(const ContinuedFraction& cf);

// Standard Montesinos diagram: tangles in a row, delta half twists on the
// right, closed by the two long strands. delta may be negative (mirrored
// half-twist row); tangle mirroring is per-tangle.
Diagram build_montesinos(const std::vector<TangleSpec>& tangles, long long delta);

int component_count(const Diagram& d);
std::vector<int> component_of_port(const Diagram& d);  // component id per port

// Orientation state: flow[p] is true when the strand enters the crossing at
// port p (i.e. the port is an inflow of that crossing).
struct Oriented {
    std::vector<char> inflow;
    std::vector<int> component;         // component id per port
    int components = 0;
    std::vector<int> crossing_sign;     // +1/-1 per crossing
    std::vector<int> seifert_circle;    // circle id per port
    int seifert_circles = 0;
};

// Orients the diagram. seed_inflow_port gets inflow=true; reverse[c] flips
// the traversal direction of component c (the seed's component bit is
// ignored). Computes crossing signs and the Seifert decomposition.
Oriented orient(const Diagram& d, int seed_inflow_port, const std::vector<bool>& reverse);

// Signs aggregated per twist region; throws InvariantError if a region's
// crossings disagree.
std::vector<int> region_signs(const Diagram& d, const Oriented& o);

// True when every strand alternates over/under along its traversal.
bool is_alternating(const Diagram& d);

}  // namespace knotbb::diagram

#include "knotbb/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace knotbb::diagram {

namespace {

// Crossing chirality of the standard drawings. Lower rows are the twist
// regions between the two lower active strands (odd continued-fraction
// positions), upper rows sit between the two upper strands. The closing
// half-twist row has its own handedness. Pinned by the worked fixtures.
constexpr bool kLowerRegionOverNWSE = true;
constexpr bool kUpperRegionOverNWSE = false;
constexpr bool kDeltaRowOverNWSE = true;  // forced: the closing row must extend the alternation

int port_id(int crossing, int port) { return 4 * crossing + port; }

// Incrementally records connections between crossing ports and pass-through
// junctions, then resolves junction chains into direct port-port arcs.
class ArcWeaver {
public:
    // Junctions are encoded as negative endpoint ids.
    int make_junction() {
        junction_links_.push_back({kUnset, kUnset});
        return -static_cast<int>(junction_links_.size());
    }

    void connect(int a, int b) {
        attach(a, b);
        attach(b, a);
    }

    void finalize(Diagram& d) const {
        for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c) {
            for (int p = 0; p < 4; ++p) {
                const int self = port_id(c, p);
                int prev = self;
                int cur = partner_of(self, self);
                while (cur < 0) {
                    const int next = other_junction_link(cur, prev);
                    prev = cur;
                    cur = next;
                }
                d.crossings[c].arc[p] = cur;
            }
        }
    }

private:
    void attach(int e, int to) {
        if (e >= 0) {
            if (static_cast<int>(port_links_.size()) <= e) port_links_.resize(e + 1, kUnset);
            if (port_links_[e] != kUnset) throw InvariantError("diagram port connected twice");
            port_links_[e] = to;
        } else {
            auto& slots = junction_links_[-e - 1];
            if (slots[0] == kUnset) slots[0] = to;
            else if (slots[1] == kUnset) slots[1] = to;
            else throw InvariantError("diagram junction connected three times");
        }
    }

    int partner_of(int e, int came_from) const {
        if (e >= 0) {
            if (e >= static_cast<int>(port_links_.size()) || port_links_[e] == kUnset)
                throw InvariantError("dangling diagram port");
            return port_links_[e];
        }
        return other_junction_link(e, came_from);
    }

    int other_junction_link(int junction, int came_from) const {
        const auto& slots = junction_links_[-junction - 1];
        if (slots[0] == kUnset || slots[1] == kUnset)
            throw InvariantError("dangling diagram junction");
        return slots[0] == came_from ? slots[1] : slots[0];
    }

    static constexpr int kUnset = INT32_MIN;
    std::vector<int> port_links_;
    std::vector<std::array<int, 2>> junction_links_;
};

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Appends one twist row of `count` crossings; returns {inU, inL, outU, outL}.
struct RowPorts {
    int in_upper, in_lower, out_upper, out_lower;
};

RowPorts add_twist_row(Diagram& d, ArcWeaver& w, int count, bool over_nwse, RegionRef ref) {
    const int region = static_cast<int>(d.regions.size());
    d.regions.push_back(ref);
    d.region_size.push_back(count);

    const int first = static_cast<int>(d.crossings.size());
    for (int i = 0; i < count; ++i) {
        Crossing c;
        c.over_nwse = over_nwse;
        c.region = region;
        d.crossings.push_back(c);
        if (i > 0) {
            w.connect(port_id(first + i - 1, NE), port_id(first + i, NW));
            w.connect(port_id(first + i - 1, SE), port_id(first + i, SW));
        }
    }
    const int last = first + count - 1;
    return {port_id(first, NW), port_id(first, SW), port_id(last, NE), port_id(last, SE)};
}

struct BuiltTangle {
    int end_ne, end_se, end_sw, end_nw;  // weaver endpoints
    TangleBoundary boundary;             // resolved internal crossing ports
};

// Standard tangle drawing of one continued fraction. Rows alternate between
// the lower strand pair (odd positions, starting with a1) and the upper pair;
// the upper-right strand ends are capped inside the tangle.
BuiltTangle add_tangle(Diagram& d, ArcWeaver& w, const TangleSpec& spec, int tangle_index) {
    const auto& a = spec.entries;
    if (a.empty() || a.size() % 2 == 0)
        throw std::invalid_argument("tangle expansion must have odd length");
    for (long long e : a)
        if (e < 1) throw std::invalid_argument("tangle expansion entries must be positive");

    const int j0 = w.make_junction();  // west end, upper strand
    const int j1 = w.make_junction();  // west end, middle strand
    const int j2 = w.make_junction();  // west end, lower strand
    int cur0 = j0, cur1 = j1, cur2 = j2;

    std::vector<RowPorts> rows;
    rows.reserve(a.size());
    const int first_crossing = static_cast<int>(d.crossings.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool lower = (i % 2 == 0);
        bool over = lower ? kLowerRegionOverNWSE : kUpperRegionOverNWSE;
        if (spec.mirrored) over = !over;
        RowPorts rp = add_twist_row(d, w, static_cast<int>(a[i]), over,
                                    RegionRef{tangle_index, static_cast<int>(i)});
        if (lower) {
            w.connect(cur1, rp.in_upper);
            w.connect(cur2, rp.in_lower);
            cur1 = rp.out_upper;
            cur2 = rp.out_lower;
        } else {
            w.connect(cur0, rp.in_upper);
            w.connect(cur1, rp.in_lower);
            cur0 = rp.out_upper;
            cur1 = rp.out_lower;
        }
        rows.push_back(rp);
    }
    w.connect(cur0, cur1);  // east cap joining the two upper strand ends

    BuiltTangle t;
    t.end_ne = j0;
    t.end_se = j1;
    t.end_sw = j2;
    t.end_nw = cur2;

    const int last_crossing = static_cast<int>(d.crossings.size()) - 1;
    t.boundary.se = rows.front().in_upper;
    t.boundary.sw = rows.front().in_lower;
    t.boundary.nw = port_id(last_crossing, SE);
    t.boundary.ne = a.size() > 1 ? rows[1].in_upper : port_id(first_crossing + static_cast<int>(a[0]) - 1, NE);
    return t;
}

std::vector<int> tangle_of_crossing(const Diagram& d) {
    std::vector<int> t(d.crossings.size());
    for (std::size_t c = 0; c < d.crossings.size(); ++c)
        t[c] = d.regions[d.crossings[c].region].tangle;
    return t;
}

}  // namespace

Diagram build_two_bridge(const ContinuedFraction& cf) {
    Diagram d;
    ArcWeaver w;
    BuiltTangle t = add_tangle(d, w, TangleSpec{cf.entries, false}, 0);
    w.connect(t.end_ne, t.end_se);  // west cap of the plat
    w.connect(t.end_nw, t.end_sw);  // long bottom arc
    w.finalize(d);

    d.tangles.push_back(t.boundary);
    d.bottom_long_left = t.boundary.sw;
    d.bottom_long_right = t.boundary.nw;
    return d;
}

Diagram build_montesinos(const std::vector<TangleSpec>& tangles, long long delta) {
    if (tangles.empty()) throw std::invalid_argument("montesinos diagram needs tangles");
    Diagram d;
    ArcWeaver w;

    std::vector<BuiltTangle> built;
    built.reserve(tangles.size());
    for (std::size_t j = 0; j < tangles.size(); ++j)
        built.push_back(add_tangle(d, w, tangles[j], static_cast<int>(j)));

    for (std::size_t j = 0; j + 1 < built.size(); ++j) {
        w.connect(built[j].end_ne, built[j + 1].end_nw);
        w.connect(built[j].end_se, built[j + 1].end_sw);
    }

    const BuiltTangle& first = built.front();
    const BuiltTangle& last = built.back();
    if (delta != 0) {
        const bool over = delta > 0 ? kDeltaRowOverNWSE : !kDeltaRowOverNWSE;
        const int count = static_cast<int>(delta > 0 ? delta : -delta);
        const int row_first = static_cast<int>(d.crossings.size());
        RowPorts rp = add_twist_row(d, w, count, over, RegionRef{-1, 0});
        w.connect(last.end_ne, rp.in_upper);
        w.connect(last.end_se, rp.in_lower);
        w.connect(rp.out_upper, first.end_nw);  // top long strand
        w.connect(rp.out_lower, first.end_sw);  // bottom long strand
        d.top_long_right = port_id(row_first + count - 1, NE);
        d.bottom_long_right = port_id(row_first + count - 1, SE);
    } else {
        w.connect(last.end_ne, first.end_nw);
        w.connect(last.end_se, first.end_sw);
        d.top_long_right = -1;     // filled below from tangle boundaries
        d.bottom_long_right = -1;
    }
    w.finalize(d);

    for (const auto& b : built) d.tangles.push_back(b.boundary);
    d.top_long_left = first.boundary.nw;
    d.bottom_long_left = first.boundary.sw;
    if (delta == 0) {
        d.top_long_right = last.boundary.ne;
        d.bottom_long_right = last.boundary.se;
    }
    return d;
}

std::vector<int> component_of_port(const Diagram& d) {
    const int n = d.port_count();
    DisjointSet uf(n);
    for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c) {
        uf.unite(port_id(c, NW), port_id(c, SE));
        uf.unite(port_id(c, NE), port_id(c, SW));
        for (int p = 0; p < 4; ++p) uf.unite(port_id(c, p), d.crossings[c].arc[p]);
    }
    std::vector<int> comp(n, -1);
    int next = 0;
    for (int p = 0; p < n; ++p) {
        const int r = uf.find(p);
        if (comp[r] < 0) comp[r] = next++;
        comp[p] = comp[r];
    }
    return comp;
}

int component_count(const Diagram& d) {
    const auto comp = component_of_port(d);
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

Oriented orient(const Diagram& d, int seed_inflow_port, const std::vector<bool>& reverse) {
    Oriented o;
    o.component = component_of_port(d);
    o.components = o.component.empty() ? 0 : 1 + *std::max_element(o.component.begin(), o.component.end());

    const int n = d.port_count();
    o.inflow.assign(n, -1);

    // One entry port per component; the seed component's direction is fixed,
    // the others take their reverse bit (indexed over non-seed components in
    // component-id order).
    const int seed_comp = o.component[seed_inflow_port];
    std::vector<int> comp_entry(o.components, -1);
    comp_entry[seed_comp] = seed_inflow_port;
    for (int p = 0; p < n; ++p)
        if (comp_entry[o.component[p]] < 0) comp_entry[o.component[p]] = p;

    for (int comp = 0; comp < o.components; ++comp) {
        const int entry = comp_entry[comp];
        int p = entry;
        do {
            o.inflow[p] = 1;
            const int c = p / 4;
            const int out = port_id(c, diagonal_exit(p % 4));
            o.inflow[out] = 0;
            p = d.crossings[c].arc[out % 4];
        } while (p != entry);

        bool flip = false;
        if (comp != seed_comp) {
            const int idx = comp < seed_comp ? comp : comp - 1;
            flip = idx < static_cast<int>(reverse.size()) && reverse[idx];
        }
        if (flip)
            for (int q = 0; q < n; ++q)
                if (o.component[q] == comp) o.inflow[q] = o.inflow[q] ? 0 : 1;
    }

    // Crossing signs from strand directions in the local frame.
    o.crossing_sign.resize(d.crossings.size());
    for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c) {
        const double ax = o.inflow[port_id(c, NW)] ? 1 : -1;
        const double ay = -ax;  // NW->SE direction is (1,-1)
        const double bx = o.inflow[port_id(c, SW)] ? 1 : -1;
        const double by = bx;  // SW->NE direction is (1,1)
        double cross;
        if (d.crossings[c].over_nwse)
            cross = ax * by - ay * bx;
        else
            cross = bx * ay - by * ax;
        o.crossing_sign[c] = cross > 0 ? 1 : -1;
    }

    // Seifert decomposition: orientation-preserving smoothing at each crossing.
    DisjointSet uf(n);
    for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c) {
        const bool vertical = o.inflow[port_id(c, NW)] == o.inflow[port_id(c, NE)];
        if (vertical) {
            uf.unite(port_id(c, NW), port_id(c, SW));
            uf.unite(port_id(c, NE), port_id(c, SE));
        } else {
            uf.unite(port_id(c, NW), port_id(c, NE));
            uf.unite(port_id(c, SW), port_id(c, SE));
        }
        for (int p = 0; p < 4; ++p) uf.unite(port_id(c, p), d.crossings[c].arc[p]);
    }
    o.seifert_circle.assign(n, -1);
    std::vector<int> remap(n, -1);
    int next = 0;
    for (int p = 0; p < n; ++p) {
        const int r = uf.find(p);
        if (remap[r] < 0) remap[r] = next++;
        o.seifert_circle[p] = remap[r];
    }
    o.seifert_circles = next;
    return o;
}

std::vector<int> region_signs(const Diagram& d, const Oriented& o) {
    std::vector<int> sign(d.regions.size(), 0);
    for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c) {
        const int r = d.crossings[c].region;
        if (sign[r] == 0) sign[r] = o.crossing_sign[c];
        else if (sign[r] != o.crossing_sign[c])
            throw InvariantError("twist region with mixed crossing signs");
    }
    return sign;
}

bool is_alternating(const Diagram& d) {
    const int n = d.port_count();
    std::vector<char> visited(n, 0);
    for (int start = 0; start < n; ++start) {
        if (visited[start]) continue;
        int p = start;
        int prev_over = -1;
        do {
            visited[p] = 1;
            const int c = p / 4;
            const bool on_nwse = (p % 4 == NW) || (p % 4 == SE);
            const int over = d.crossings[c].over_nwse == on_nwse ? 1 : 0;
            if (prev_over >= 0 && prev_over == over) return false;
            prev_over = over;
            const int out = port_id(c, diagonal_exit(p % 4));
            p = d.crossings[c].arc[out % 4];
        } while (p != start);
        // closing the loop must also alternate
        const int c = start / 4;
        const bool on_nwse = (start % 4 == NW) || (start % 4 == SE);
        const int first_over = d.crossings[c].over_nwse == on_nwse ? 1 : 0;
        if (prev_over == first_over) return false;
    }
    return true;
}

}  // namespace knotbb::diagram

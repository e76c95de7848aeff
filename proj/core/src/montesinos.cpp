#include "knotbb/montesinos.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "knotbb/diagram.hpp"

namespace knotbb {

RationalTangle::RationalTangle(long long beta_signed, long long alpha) {
    if (alpha < 2 || beta_signed == 0)
        throw std::invalid_argument("tangle fraction must satisfy 0 < |beta| < alpha");
    sign = beta_signed > 0 ? 1 : -1;
    const long long beta = beta_signed > 0 ? beta_signed : -beta_signed;
    if (beta >= alpha)
        throw std::invalid_argument("tangle fraction must satisfy |beta/alpha| < 1");
    frac = Fraction(alpha, beta);
    cf = standard_cf(frac);
}

MontesinosLink MontesinosLink::make(const std::vector<std::pair<long long, long long>>& fractions,
                                    long long delta) {
    MontesinosLink m;
    m.delta = delta;
    for (auto [beta, alpha] : fractions) {
        if (alpha <= 0) throw std::invalid_argument("tangle denominators must be positive");
        // fold the integer part of an improper fraction into the half-twist row
        long long whole = beta / alpha;
        long long rest = beta % alpha;
        if (rest == 0) throw std::invalid_argument("integer tangles are not rational tangle slots");
        m.delta += whole;
        m.tangles.emplace_back(rest, alpha);
    }
    if (m.tangles.size() < 3)
        throw std::invalid_argument("Montesinos form needs s >= 3 tangles (s = 2 is a 2-bridge link)");
    return m;
}

long long MontesinosLink::crossing_count() const {
    long long n = delta >= 0 ? delta : -delta;
    for (const auto& t : tangles) n += t.crossing_count();
    return n;
}

bool MontesinosLink::alternating() const {
    const int s0 = tangles.front().sign;
    for (const auto& t : tangles)
        if (t.sign != s0) return false;
    if (delta != 0 && (delta > 0 ? 1 : -1) != s0) return false;
    return true;
}

bool MontesinosLink::all_negative() const {
    for (const auto& t : tangles)
        if (t.sign > 0) return false;
    return delta <= 0;
}

MontesinosLink MontesinosLink::mirrored() const {
    MontesinosLink m = *this;
    m.delta = -m.delta;
    for (auto& t : m.tangles) t.sign = -t.sign;
    return m;
}

MontesinosLink MontesinosLink::positive_form() const {
    return all_negative() ? mirrored() : *this;
}

std::string MontesinosLink::canonical_key() const {
    const std::size_t s = tangles.size();
    auto render = [&](bool reversed, std::size_t shift) {
        std::ostringstream os;
        os << "d" << delta << ":";
        for (std::size_t i = 0; i < s; ++i) {
            const auto& t = tangles[reversed ? (s - 1 - (i + shift) % s) : (i + shift) % s];
            os << t.sign * t.frac.beta << "/" << t.frac.alpha << ",";
        }
        return os.str();
    };
    std::string best = render(false, 0);
    for (int rev = 0; rev < 2; ++rev)
        for (std::size_t shift = 0; shift < s; ++shift)
            best = std::min(best, render(rev == 1, shift));
    return best;
}

namespace {

std::vector<diagram::TangleSpec> tangle_specs(const MontesinosLink& m) {
    std::vector<diagram::TangleSpec> specs;
    specs.reserve(m.tangles.size());
    for (const auto& t : m.tangles)
        specs.push_back(diagram::TangleSpec{t.cf.entries, t.sign < 0});
    return specs;
}

diagram::Diagram build(const MontesinosLink& m) {
    return diagram::build_montesinos(tangle_specs(m), m.delta);
}

}  // namespace

int components(const MontesinosLink& m) {
    return diagram::component_count(build(m));
}

std::vector<OrientationAssignment> all_orientations(const MontesinosLink& m) {
    const int c = components(m);
    std::vector<OrientationAssignment> out;
    out.reserve(std::size_t{1} << (c - 1));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (c - 1)); ++mask) {
        OrientationAssignment o;
        for (int i = 0; i < c - 1; ++i) o.reverse.push_back((mask >> i) & 1);
        out.push_back(std::move(o));
    }
    return out;
}

ParityAnalysis classify(const MontesinosLink& m, const OrientationAssignment& o) {
    using namespace diagram;
    const Diagram d = build(m);
    const Oriented ori = orient(d, d.top_long_left, o.reverse);
    const auto signs = region_signs(d, ori);

    ParityAnalysis pa;
    pa.seifert_circles = ori.seifert_circles;
    pa.tangles.resize(m.tangles.size());
    for (std::size_t j = 0; j < m.tangles.size(); ++j) {
        pa.tangles[j].signed_entries.entries.assign(m.tangles[j].cf.length(), 0);
        pa.tangles[j].signed_entries.component_count = ori.components;
    }
    for (std::size_t r = 0; r < d.regions.size(); ++r) {
        const auto ref = d.regions[r];
        if (ref.tangle >= 0)
            pa.tangles[ref.tangle].signed_entries.entries[ref.index] =
                signs[r] * d.region_size[r];
        else
            pa.delta_sign = signs[r];
    }

    // Seifert-arc pass pattern of each tangle: restrict the smoothing to the
    // tangle's own crossings and internal arcs, then look at how the four
    // boundary ports pair up and which of them are inflows.
    std::vector<int> tangle_of(d.crossings.size());
    for (std::size_t c = 0; c < d.crossings.size(); ++c)
        tangle_of[c] = d.regions[d.crossings[c].region].tangle;

    const int n = d.port_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c) {
        if (tangle_of[c] < 0) continue;
        const bool vertical = ori.inflow[4 * c + NW] == ori.inflow[4 * c + NE];
        if (vertical) {
            unite(4 * c + NW, 4 * c + SW);
            unite(4 * c + NE, 4 * c + SE);
        } else {
            unite(4 * c + NW, 4 * c + NE);
            unite(4 * c + SW, 4 * c + SE);
        }
        for (int p = 0; p < 4; ++p) {
            const int q = d.crossings[c].arc[p];
            if (tangle_of[q / 4] == tangle_of[c]) unite(4 * c + p, q);
        }
    }

    for (std::size_t j = 0; j < m.tangles.size(); ++j) {
        const TangleBoundary& b = d.tangles[j];
        const bool in_ne = ori.inflow[b.ne], in_nw = ori.inflow[b.nw];
        const bool in_se = ori.inflow[b.se], in_sw = ori.inflow[b.sw];
        if (in_ne + in_nw + in_se + in_sw != 2)
            throw InvariantError("tangle boundary must carry two inflows");

        const bool horizontal = find(b.ne) == find(b.nw) && find(b.se) == find(b.sw);
        const bool vertical = find(b.nw) == find(b.sw) && find(b.ne) == find(b.se);
        if (horizontal == vertical)
            throw InvariantError("tangle Seifert arcs do not pair along the boundary");

        // The top long strand runs right to left around the outside, so the
        // standard flow through a tangle enters at its left-hand corners.
        int parity;
        if (horizontal) {
            const bool top_standard = in_nw;
            const bool bottom_standard = in_sw;
            if (top_standard && bottom_standard) parity = 1;
            else if (!top_standard && !bottom_standard)
                throw InvariantError("excluded Seifert pattern: both passes against the standard flow");
            else parity = 2;
        } else {
            if (in_nw != in_ne)
                throw InvariantError("excluded Seifert pattern: antiparallel vertical passes");
            parity = 3;
        }
        pa.tangles[j].parity = parity;

        // sign law relating b1 to the parity
        const long long b1 = pa.tangles[j].signed_entries.entries.front();
        if ((parity == 3) != (b1 > 0))
            throw InvariantError("tangle leading sign disagrees with its Seifert parity");

        if (parity == 2) pa.omega2.push_back(static_cast<int>(j));
        if (parity == 3) pa.omega3.push_back(static_cast<int>(j));
    }
    pa.eta = static_cast<int>(pa.omega3.size());

    // Class characterizations. In class M3 the two strands of the closing
    // row run against each other (negative signs here); in class M1 they run
    // parallel (positive signs).
    const bool same_circle =
        ori.seifert_circle[d.top_long_left] == ori.seifert_circle[d.bottom_long_left];
    if (same_circle) {
        pa.cls = SeifertClass::M3;
        for (const auto& t : pa.tangles)
            if (t.parity == 1)
                throw InvariantError("parity-1 tangle inside a class-M3 analysis");
        if (m.delta != 0 && pa.delta_sign >= 0)
            throw InvariantError("class M3 requires antiparallel half-twist strands");
    } else {
        const bool bottom_right_to_left = ori.inflow[d.bottom_long_left];
        pa.cls = bottom_right_to_left ? SeifertClass::M1 : SeifertClass::M2;
        if (pa.cls == SeifertClass::M1) {
            for (const auto& t : pa.tangles)
                if (t.parity != 1) throw InvariantError("class M1 requires all parities 1");
            if (m.delta != 0 && pa.delta_sign <= 0)
                throw InvariantError("class M1 requires parallel half-twist strands");
        } else {
            if (m.delta != 0) throw InvariantError("class M2 requires delta = 0");
            for (const auto& t : pa.tangles)
                if (t.parity != 2) throw InvariantError("class M2 requires all parities 2");
        }
    }
    return pa;
}

Rat delta_contribution(const SignedVector& v, int parity) {
    const auto& b = v.entries;
    if (b.empty() || b.size() % 2 == 0)
        throw std::invalid_argument("tangle vector must have odd length");
    auto sgn = [](long long x) { return x > 0 ? 1 : -1; };

    Rat base(0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const bool even_position = (i % 2 == 1);
        if (even_position && b[i] > 0) base += Rat(b[i], 2);
        if (!even_position && b[i] < 0) base += Rat(-b[i], 2);
    }
    if (parity == 1 || parity == 3) return Rat(-1 + sgn(b.back()), 4) + base;
    if (parity == 2) return Rat(2 + sgn(b.front()) + sgn(b.back()), 4) + base;
    throw std::invalid_argument("Seifert parity must be 1, 2 or 3");
}

long long bridge_index(const MontesinosLink& m) {
    return static_cast<long long>(m.tangles.size());
}

long long braid_index_oriented(const MontesinosLink& m, const OrientationAssignment& o) {
    if (!m.alternating())
        throw std::domain_error("braid-index formula is proven for alternating Montesinos links only");
    const MontesinosLink pos = m.positive_form();
    const ParityAnalysis pa = classify(pos, o);

    Rat total(0);
    switch (pa.cls) {
        case SeifertClass::M1: {
            total = 2;
            for (const auto& t : pa.tangles) total += delta_contribution(t.signed_entries, 1);
            break;
        }
        case SeifertClass::M2: {
            total = 1;
            for (const auto& t : pa.tangles) total += delta_contribution(t.signed_entries, 2);
            break;
        }
        case SeifertClass::M3: {
            const Rat eta_delta(pa.eta + pos.delta);
            const Rat cap = std::min(eta_delta / 2 - 1, Rat(pos.delta));
            total = eta_delta - cap;
            for (int j : pa.omega2) total += delta_contribution(pa.tangles[j].signed_entries, 2);
            for (int j : pa.omega3) total += delta_contribution(pa.tangles[j].signed_entries, 3);
            break;
        }
    }
    if (total.denominator() != 1)
        throw InvariantError("Montesinos braid-index formula evaluated to a non-integer");
    const long long value = total.numerator();
    if (value < bridge_index(m))
        throw InvariantError("braid index below the bridge index");
    if (value > pa.seifert_circles)
        throw InvariantError("braid index above the Seifert-circle count");
    return value;
}

long long braid_index_unoriented(const MontesinosLink& m) {
    long long best = -1;
    for (const auto& o : all_orientations(m)) {
        const long long v = braid_index_oriented(m, o);
        if (best < 0 || v < best) best = v;
    }
    return best;
}

BbAlternating is_bb_alternating(const MontesinosLink& m) {
    if (!m.alternating())
        throw std::domain_error("is_bb_alternating requires an alternating Montesinos link");
    const MontesinosLink pos = m.positive_form();

    auto vector_is_parity2_form = [](const std::vector<long long>& b) {
        if (b.size() == 1) return b[0] == -2;
        return b.size() == 3 && b[0] == -1 && b[2] == -1 && b[1] <= -1;
    };

    for (const auto& o : all_orientations(pos)) {
        const ParityAnalysis pa = classify(pos, o);
        if (pa.cls != SeifertClass::M3) continue;
        if (pa.eta < pos.delta + 2) continue;
        bool ok = true;
        for (const auto& t : pa.tangles) {
            if (t.parity == 3) {
                ok = t.signed_entries.entries.size() == 1 && t.signed_entries.entries[0] > 0;
            } else if (t.parity == 2) {
                ok = vector_is_parity2_form(t.signed_entries.entries);
            } else {
                ok = false;
            }
            if (!ok) break;
        }
        if (ok) return BbAlternating{true, o};
    }
    return BbAlternating{false, std::nullopt};
}

NonAlternatingVerdict is_bb_nonalternating_sufficient(const MontesinosLink& m) {
    if (m.delta != 0)
        throw std::domain_error("the sufficient condition is stated for delta = 0");
    int verticals = 0;
    for (const auto& t : m.tangles) {
        if (t.is_vertical()) ++verticals;
        else if (!t.is_horizontal()) return NonAlternatingVerdict::NoVerdict;
    }
    return verticals >= 2 ? NonAlternatingVerdict::ProvenBB : NonAlternatingVerdict::NoVerdict;
}

int seifert_circle_count(const MontesinosLink& m, const OrientationAssignment& o) {
    const auto d = build(m);
    const auto ori = diagram::orient(d, d.top_long_left, o.reverse);
    return ori.seifert_circles;
}

ConwayAlgebraicResult conway_algebraic_bb(long long a1, long long b1, long long a2, long long b2,
                                          ConwayAlgebraicVariant) {
    auto big = [](long long v) { return v >= 2 || v <= -2; };
    ConwayAlgebraicResult r;
    r.proven_bb3 = big(a1) && big(b1) && big(a2) && big(b2);
    const bool one_component = a1 % 2 == 0 && a2 % 2 == 0 && b1 % 2 != 0 && b2 % 2 != 0;
    r.parallel_orientation_assumed = r.proven_bb3 && !one_component;
    return r;
}

}  // namespace knotbb

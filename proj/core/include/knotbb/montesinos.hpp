#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knotbb/rational.hpp"

namespace knotbb {

// One rational tangle slot of a Montesinos link: a signed fraction with
// |beta/alpha| < 1 and the standard expansion of its magnitude.
struct RationalTangle {
    int sign = 1;  // +1 or -1: chirality of the slot
    Fraction frac{2, 1};
    ContinuedFraction cf;

    RationalTangle() = default;
    RationalTangle(long long beta_signed, long long alpha);

    long long crossing_count() const { return cf.crossing_count(); }
    // beta/alpha = 1/s
    bool is_vertical() const { return frac.beta == 1; }
    // beta/alpha = (s+1)/(s+2), s >= 1
    bool is_horizontal() const { return frac.beta >= 2 && frac.beta == frac.alpha - 1; }
};

struct MontesinosLink {
    std::vector<RationalTangle> tangles;
    long long delta = 0;

    // Builds from signed fractions beta_j/alpha_j; integer parts of improper
    // fractions are folded into delta (flypes move horizontal twists into the
    // closing row). Requires s >= 3 after normalization.
    static MontesinosLink make(const std::vector<std::pair<long long, long long>>& signed_fractions,
                               long long delta);

    std::size_t tangle_count() const { return tangles.size(); }
    long long crossing_count() const;
    bool alternating() const;
    bool all_negative() const;
    MontesinosLink mirrored() const;
    // All-positive representative of {link, mirror}; identity when already positive.
    MontesinosLink positive_form() const;

    // Canonical key under cyclic rotation and reversal of the tangle list
    // (construction-level distinctness used for census comparisons).
    std::string canonical_key() const;
};

int components(const MontesinosLink& m);

// Orientation assignment: the component carrying the top long strand keeps
// the fixed right-to-left orientation; each remaining component gets one
// reversal bit (component-id order).
struct OrientationAssignment {
    std::vector<bool> reverse;
};

std::vector<OrientationAssignment> all_orientations(const MontesinosLink& m);

enum class SeifertClass { M1, M2, M3 };

struct TangleAnalysis {
    int parity = 0;                  // 1, 2 or 3
    SignedVector signed_entries;     // region signs inherited from the link orientation
};

struct ParityAnalysis {
    SeifertClass cls = SeifertClass::M1;
    std::vector<TangleAnalysis> tangles;
    int eta = 0;                     // number of Seifert-parity-3 tangles
    std::vector<int> omega2, omega3; // tangle indices by parity
    int delta_sign = 0;              // common crossing sign of the half-twist row (0 if delta = 0)
    int seifert_circles = 0;
};

// Propagates the orientation through the standard diagram, classifies every
// tangle by how its Seifert arcs pass through it, and determines the class of
// the oriented diagram. Throws InvariantError on patterns excluded by the
// theory (and reports a parity-1 tangle inside a class-M3 analysis as such).
ParityAnalysis classify(const MontesinosLink& m, const OrientationAssignment& o);

// Tangle-wise correction term: Delta = sum_{b_{2m}>0} b_{2m}/2
//                                     + sum_{b_{2m+1}<0} |b_{2m+1}|/2,
// shifted per Seifert parity. Exact rational, never rounded.
Rat delta_contribution(const SignedVector& tangle_entries, int parity);

// Braid index of an oriented alternating Montesinos link:
//   M1: 2 + sum Delta_1, M2: 1 + sum Delta_2,
//   M3: Delta_0 + sum_{Omega2} Delta_2 + sum_{Omega3} Delta_3
// with Delta_0 = eta + delta - min{(eta+delta)/2 - 1, delta}.
long long braid_index_oriented(const MontesinosLink& m, const OrientationAssignment& o);

long long braid_index_unoriented(const MontesinosLink& m);

// bridge(K) = s for any Montesinos link with |beta_j/alpha_j| < 1.
long long bridge_index(const MontesinosLink& m);

struct BbAlternating {
    bool is_bb = false;
    std::optional<OrientationAssignment> witness;
};

// Unoriented BB test for alternating Montesinos links: searches for an
// orientation of class M3 whose parity-3 tangles are single-row vertical
// tangles, whose parity-2 tangles carry (-1,-s,-1)-form vectors, and whose
// parity-3 count is at least delta + 2.
BbAlternating is_bb_alternating(const MontesinosLink& m);

enum class NonAlternatingVerdict { ProvenBB, NoVerdict };

// Sufficient condition for delta = 0: every slot (up to its own mirror) is a
// vertical or horizontal tangle and at least two are vertical.
NonAlternatingVerdict is_bb_nonalternating_sufficient(const MontesinosLink& m);

int seifert_circle_count(const MontesinosLink& m, const OrientationAssignment& o);

// Conway algebraic family [(a1;b1)(a2;b2)] and its four non-alternating
// bracket variants; braid = bridge = 3 whenever |a_i| >= 2 and |b_i| >= 2.
enum class ConwayAlgebraicVariant {
    Plain,            // [(a1;b1)(a2;b2)]
    NegatedJoin,      // [(a1;b1)-(a2;b2)]
    SplitB2,          // [(a1;b1)(a2-1,1;-b2)]
    SplitA1B1,        // [(a1-1,1;-b1+1,-1)(a2;b2)]
    SplitNegA1        // [(-a1+1,-1;b1-1,1)(a2;b2)]
};

struct ConwayAlgebraicResult {
    bool proven_bb3 = false;
    bool parallel_orientation_assumed = false;  // multi-component inputs assume parallel half-twists
};

ConwayAlgebraicResult conway_algebraic_bb(long long a1, long long b1, long long a2, long long b2,
                                          ConwayAlgebraicVariant variant);

}  // namespace knotbb

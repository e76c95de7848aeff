#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace knotbb {

using Rat = boost::rational<long long>;

// Thrown when a computed quantity violates a structural invariant of the
// underlying theory (e.g. a braid-index formula evaluating to a non-integer).
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

// Coprime pair 0 < beta < alpha identifying the 2-bridge link B(alpha, beta).
struct Fraction {
    long long alpha = 1;
    long long beta = 0;

    Fraction() = default;
    Fraction(long long a, long long b);

    bool operator==(const Fraction&) const = default;
};

// (alpha, alpha - beta) presents the mirror image of B(alpha, beta).
Fraction mirror(const Fraction& f);

// Odd-length all-positive expansion beta/alpha = 1/(a1 + 1/(a2 + ... + 1/an)).
// A trailing 1 is used when needed to make the length odd.
struct ContinuedFraction {
    std::vector<long long> entries;

    std::size_t length() const { return entries.size(); }
    long long crossing_count() const;

    bool operator==(const ContinuedFraction&) const = default;
};

ContinuedFraction standard_cf(const Fraction& f);

// Exact value of an expansion in lowest terms. Interior zeros are tolerated
// (they arise when rewriting (2) as (1,0,1) in normalization arguments).
Fraction evaluate_cf(const ContinuedFraction& cf);

// Orientation freedom of a two-component 2-bridge diagram. The long bottom
// arc always keeps its fixed right-to-left orientation; the second component
// may run parallel to it (Default) or against it (Reversed).
enum class TwoBridgeOrientation { Default, Reversed };

// Continued-fraction entries with the crossing sign of each twist region
// attached, under a concrete orientation of the standard diagram.
struct SignedVector {
    std::vector<long long> entries;
    int component_count = 1;

    std::size_t length() const { return entries.size(); }
    bool operator==(const SignedVector&) const = default;
};

// Builds the standard 4-plat diagram for cf, propagates orientations from the
// fixed bottom-arc direction plus the requested choice for the second
// component, and signs every twist region. Throws std::invalid_argument when
// Reversed is requested for a one-component link.
SignedVector orient_and_sign(const ContinuedFraction& cf,
                             TwoBridgeOrientation o = TwoBridgeOrientation::Default);

// Braid index of an oriented 2-bridge link from its signed vector:
//   1 + (2 + sign b1 + sign b_{2k+1})/4
//     + sum_{b_{2j} > 0} b_{2j}/2 + sum_{b_{2j+1} < 0} |b_{2j+1}|/2.
// Evaluated in exact rationals; a non-integral value means the vector cannot
// come from a valid oriented standard diagram and raises InvariantError.
long long braid_index_oriented(const SignedVector& sv);

// Minimum of braid_index_oriented over all orientation assignments.
long long braid_index_unoriented(const Fraction& f);

// component count of B(alpha, beta): 2 iff alpha is even.
int two_bridge_components(const Fraction& f);

// True iff bridge index (= 2) equals the unoriented braid index. Cross-checked
// against the closed-form criterion beta in {1, alpha - 1}.
bool is_bb_two_bridge(const Fraction& f);

std::string to_string(const Fraction& f);

}  // namespace knotbb

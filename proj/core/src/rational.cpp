#include "knotbb/rational.hpp"

#include <numeric>

#include "knotbb/diagram.hpp"

namespace knotbb {

Fraction::Fraction(long long a, long long b) : alpha(a), beta(b) {
    if (a <= 0 || b <= 0 || b >= a)
        throw std::invalid_argument("2-bridge parameters need 0 < beta < alpha");
    if (std::gcd(a, b) != 1)
        throw std::invalid_argument("2-bridge parameters must be coprime");
}

Fraction mirror(const Fraction& f) { return Fraction(f.alpha, f.alpha - f.beta); }

long long ContinuedFraction::crossing_count() const {
    long long n = 0;
    for (long long e : entries) n += e;
    return n;
}

ContinuedFraction standard_cf(const Fraction& f) {
    // Euclidean quotients of alpha/beta; the final quotient is >= 2 whenever
    // the expansion has more than one entry, so an even-length expansion can
    // be made odd by splitting the last entry as (a-1, 1).
    std::vector<long long> q;
    long long a = f.alpha, b = f.beta;
    while (b != 0) {
        q.push_back(a / b);
        const long long r = a % b;
        a = b;
        b = r;
    }
    if (q.size() % 2 == 0) {
        q.back() -= 1;
        q.push_back(1);
    }
    return ContinuedFraction{std::move(q)};
}

Fraction evaluate_cf(const ContinuedFraction& cf) {
    if (cf.entries.empty()) throw std::invalid_argument("empty continued fraction");
    // Bottom-up: t -> a_i + 1/t, then the value is 1/t.
    long long num = cf.entries.back(), den = 1;
    if (num <= 0) throw std::invalid_argument("trailing entry must be positive");
    for (auto it = cf.entries.rbegin() + 1; it != cf.entries.rend(); ++it) {
        if (num == 0) throw std::invalid_argument("division by zero in continued fraction");
        const long long n2 = *it * num + den;
        den = num;
        num = n2;
    }
    const long long g = std::gcd(num, den);
    return Fraction(num / g, den / g);
}

int two_bridge_components(const Fraction& f) { return f.alpha % 2 == 0 ? 2 : 1; }

namespace {

// Default orientation of a two-component diagram: the two strands run
// parallel through the first twist region where both components meet.
bool second_component_bit(const diagram::Diagram& d, TwoBridgeOrientation o) {
    using namespace diagram;
    const Oriented base = orient(d, d.bottom_long_left, {false});
    int probe = -1;
    int c0 = 0;
    for (std::size_t r = 0; r < d.regions.size(); ++r) {
        if (base.component[4 * c0 + NW] != base.component[4 * c0 + SW]) {
            probe = c0;
            break;
        }
        c0 += d.region_size[r];
    }
    if (probe < 0) throw InvariantError("two-component diagram with no mixed twist region");
    const bool parallel_at_false = base.inflow[4 * probe + NW] == base.inflow[4 * probe + SW];
    const bool want_default = o == TwoBridgeOrientation::Default;
    return parallel_at_false != want_default;
}

SignedVector signed_vector_from(const diagram::Diagram& d, const diagram::Oriented& o, int components) {
    const auto signs = diagram::region_signs(d, o);
    SignedVector sv;
    sv.component_count = components;
    sv.entries.resize(signs.size());
    for (std::size_t r = 0; r < signs.size(); ++r)
        sv.entries[r] = signs[r] * d.region_size[r];
    return sv;
}

}  // namespace

SignedVector orient_and_sign(const ContinuedFraction& cf, TwoBridgeOrientation o) {
    const diagram::Diagram d = diagram::build_two_bridge(cf);
    const int comps = diagram::component_count(d);
    if (comps > 2) throw InvariantError("2-bridge diagram with more than two components");
    const Fraction f = evaluate_cf(cf);
    if (comps != two_bridge_components(f))
        throw InvariantError("component count disagrees with alpha parity");

    if (comps == 1) {
        if (o == TwoBridgeOrientation::Reversed)
            throw std::invalid_argument("one-component link has a single orientation class");
        const auto ori = diagram::orient(d, d.bottom_long_left, {});
        return signed_vector_from(d, ori, comps);
    }
    const bool bit = second_component_bit(d, o);
    const auto ori = diagram::orient(d, d.bottom_long_left, {bit});
    return signed_vector_from(d, ori, comps);
}

long long braid_index_oriented(const SignedVector& sv) {
    const auto& b = sv.entries;
    if (b.empty() || b.size() % 2 == 0)
        throw std::invalid_argument("signed vector must have odd length");
    for (long long e : b)
        if (e == 0) throw std::invalid_argument("signed vector entries must be nonzero");

    auto sgn = [](long long v) { return v > 0 ? 1 : -1; };
    Rat total = 1;
    total += Rat(2 + sgn(b.front()) + sgn(b.back()), 4);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const bool even_position = (i % 2 == 1);  // b_2, b_4, ... in 1-based terms
        if (even_position && b[i] > 0) total += Rat(b[i], 2);
        if (!even_position && b[i] < 0) total += Rat(-b[i], 2);
    }
    if (total.denominator() != 1)
        throw InvariantError("braid-index formula evaluated to a non-integer");
    const long long value = total.numerator();
    if (value < 2) throw InvariantError("braid index of a 2-bridge link must be >= 2");
    return value;
}

long long braid_index_unoriented(const Fraction& f) {
    const ContinuedFraction cf = standard_cf(f);
    long long best = braid_index_oriented(orient_and_sign(cf, TwoBridgeOrientation::Default));
    if (two_bridge_components(f) == 2) {
        const long long other = braid_index_oriented(orient_and_sign(cf, TwoBridgeOrientation::Reversed));
        best = std::min(best, other);
    }
    return best;
}

bool is_bb_two_bridge(const Fraction& f) {
    const bool by_formula = braid_index_unoriented(f) == 2;
    const bool closed_form = f.beta == 1 || f.beta == f.alpha - 1;
    if (by_formula != closed_form)
        throw InvariantError("torus characterization disagrees with the braid-index minimum");
    return by_formula;
}

std::string to_string(const Fraction& f) {
    return std::to_string(f.beta) + "/" + std::to_string(f.alpha);
}

}  // namespace knotbb

#include "knotbb/braidcensus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

namespace knotbb::braidcensus {

namespace {

std::uint32_t mask_of(int n) { return n >= 32 ? 0xffffffffu : ((1u << n) - 1); }

std::uint32_t rot_bits(std::uint32_t bits, int n, int k) {
    k %= n;
    if (k == 0) return bits;
    return ((bits >> k) | (bits << (n - k))) & mask_of(n);
}

std::uint32_t canonical_bits(std::uint32_t bits, int n) {
    std::uint32_t best = bits;
    const std::uint32_t swapped = ~bits & mask_of(n);
    for (int k = 0; k < n; ++k) {
        best = std::min(best, rot_bits(bits, n, k));
        best = std::min(best, rot_bits(swapped, n, k));
    }
    return best;
}

int components_of_bits(std::uint32_t bits, int n) {
    // sigma_1 acts as the transposition (0 1), sigma_2^{-1} as (1 2)
    std::array<int, 3> perm{0, 1, 2};
    for (int i = 0; i < n; ++i) {
        if ((bits >> i) & 1) std::swap(perm[1], perm[2]);
        else std::swap(perm[0], perm[1]);
    }
    std::array<bool, 3> seen{false, false, false};
    int cycles = 0;
    for (int s = 0; s < 3; ++s) {
        if (seen[s]) continue;
        ++cycles;
        for (int t = s; !seen[t]; t = perm[t]) seen[t] = true;
    }
    return cycles;
}

// Maximal cyclic runs of equal letters.
int cyclic_block_count(std::uint32_t bits, int n, int* min_block) {
    int start = -1;
    for (int k = 0; k < n; ++k) {
        const int prev = (bits >> ((k + n - 1) % n)) & 1;
        const int cur = (bits >> k) & 1;
        if (prev != cur) {
            start = k;
            break;
        }
    }
    if (start < 0) {
        if (min_block) *min_block = n;
        return 1;
    }
    int blocks = 0;
    int shortest = n;
    int run = 0;
    int prev = (bits >> start) & 1;
    for (int k = 0; k <= n; ++k) {
        const int cur = (bits >> ((start + k) % n)) & 1;
        if (k < n && cur == prev) {
            ++run;
            continue;
        }
        ++blocks;
        shortest = std::min(shortest, run);
        run = 1;
        prev = cur;
    }
    if (min_block) *min_block = shortest;
    return blocks;
}

bool flype_fast(std::uint32_t bits, int n) {
    int min_block = 0;
    const int blocks = cyclic_block_count(bits, n, &min_block);
    return blocks == 4 && min_block == 1;
}

bool matches_pattern(std::uint32_t bits, int n, bool singleton_last) {
    // 0^u 1 0^z 1^v (singleton_last = false) or 0^u 1^v 0^z 1 (true)
    std::vector<int> runs;
    std::vector<int> vals;
    int i = 0;
    while (i < n) {
        const int v = (bits >> i) & 1;
        int j = i;
        while (j < n && (((bits >> j) & 1) == static_cast<unsigned>(v))) ++j;
        runs.push_back(j - i);
        vals.push_back(v);
        i = j;
    }
    if (runs.size() != 4) return false;
    if (vals != std::vector<int>{0, 1, 0, 1}) return false;
    return singleton_last ? runs[3] == 1 : runs[1] == 1;
}

}  // namespace

BraidWord parse_word(const std::string& letters) {
    BraidWord w;
    w.length = static_cast<int>(letters.size());
    if (w.length > 31) throw std::invalid_argument("braid word too long (max 31 letters)");
    for (int i = 0; i < w.length; ++i) {
        if (letters[i] == 'B') w.bits |= (1u << i);
        else if (letters[i] != 'a')
            throw std::invalid_argument("braid words use letters 'a' (sigma_1) and 'B' (sigma_2^{-1})");
    }
    return w;
}

std::string word_letters(const BraidWord& w) {
    std::string s(w.length, 'a');
    for (int i = 0; i < w.length; ++i)
        if ((w.bits >> i) & 1) s[i] = 'B';
    return s;
}

BraidWord rotate(const BraidWord& w, int k) {
    return BraidWord{rot_bits(w.bits, w.length, ((k % w.length) + w.length) % w.length), w.length};
}

BraidWord swap_letters(const BraidWord& w) {
    return BraidWord{~w.bits & mask_of(w.length), w.length};
}

BraidWord canonical_form(const BraidWord& w) {
    if (w.length <= 0) throw std::invalid_argument("empty braid word");
    return BraidWord{canonical_bits(w.bits, w.length), w.length};
}

EquivClass equivalence_class(const BraidWord& w) {
    std::set<std::uint32_t> orbit;
    const std::uint32_t swapped = ~w.bits & mask_of(w.length);
    for (int k = 0; k < w.length; ++k) {
        orbit.insert(rot_bits(w.bits, w.length, k));
        orbit.insert(rot_bits(swapped, w.length, k));
    }
    return EquivClass{BraidWord{*orbit.begin(), w.length}, static_cast<int>(orbit.size())};
}

int closure_components(const BraidWord& w) {
    if (w.length == 0) return 3;
    return components_of_bits(w.bits, w.length);
}

bool is_reduced_alternating(const BraidWord& w) {
    const int ones = std::popcount(w.bits & mask_of(w.length));
    return ones >= 2 && w.length - ones >= 2;
}

bool admits_flype(const BraidWord& w) { return flype_fast(w.bits, w.length); }

bool admits_flype_by_pattern(const BraidWord& w) {
    for (int swap = 0; swap < 2; ++swap) {
        const std::uint32_t base = swap ? (~w.bits & mask_of(w.length)) : w.bits;
        for (int k = 0; k < w.length; ++k) {
            const std::uint32_t r = rot_bits(base, w.length, k);
            if (matches_pattern(r, w.length, false) || matches_pattern(r, w.length, true))
                return true;
        }
    }
    return false;
}

std::uint64_t burnside_class_count(int n) {
    // Group of order 2n: rotations r^k and swap compositions s r^k.
    // |Fix(r^k)| = 2^gcd(n,k); |Fix(s r^k)| = 2^gcd(n,k) when n/gcd is even.
    long double total = 0;
    for (int k = 0; k < n; ++k) {
        const int g = std::gcd(n, k);
        total += std::pow(2.0L, g);
        if ((n / g) % 2 == 0) total += std::pow(2.0L, g);
    }
    return static_cast<std::uint64_t>(std::llround(static_cast<double>(total / (2 * n))));
}

TwoBridgeBraid3 two_bridge_braid3(int n) {
    if (n < 4) return {};
    std::vector<std::vector<long long>> family;
    auto add = [&](std::vector<long long> v) {
        if (std::accumulate(v.begin(), v.end(), 0LL) == n) family.push_back(std::move(v));
    };
    add({2, 1, 1});
    add({static_cast<long long>(n) - 3, 1, 2});
    for (long long a = 1; a <= n - 3; ++a) add({a, 2, n - 2 - a});
    add({3, static_cast<long long>(n) - 4, 1});
    for (long long a = 1; a <= n - 4; ++a) add({a, 1, 1, n - 3 - a, 1});
    for (long long a = 1; a <= n - 5; ++a) add({1, a, 2, n - 4 - a, 1});

    TwoBridgeBraid3 out;
    std::set<std::pair<long long, long long>> seen;
    for (auto& v : family) {
        if (std::any_of(v.begin(), v.end(), [](long long e) { return e < 1; })) continue;
        const ContinuedFraction cf{v};
        const Fraction f = evaluate_cf(cf);
        // identify B(alpha,beta) with B(alpha,beta') for beta*beta' = 1 mod alpha
        long long inv = 1;
        for (long long x = 1; x < f.alpha; ++x)
            if ((x * f.beta) % f.alpha == 1) {
                inv = x;
                break;
            }
        const auto key = std::make_pair(f.alpha, std::min(f.beta, inv));
        if (!seen.insert(key).second) continue;
        if (braid_index_unoriented(f) == 3) out.vectors.push_back(cf);
        else out.excluded.push_back(cf);
    }
    return out;
}

long long two_bridge_braid3_count(int n) {
    return static_cast<long long>(two_bridge_braid3(n).vectors.size());
}

double CensusReport::one_component_share() const {
    const double total = static_cast<double>(flype_free_classes);
    return total > 0 ? static_cast<double>(components_breakdown[0]) / total : 0.0;
}

CensusReport census(int n, int workers) {
    if (n < 4 || n > kMaxCensusN)
        throw std::invalid_argument("census crossing number out of range (4..24)");

    CensusReport r;
    r.n = n;
    r.raw_words = std::uint64_t{1} << n;

    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers <= 0) workers = 1;
        workers = std::min(workers, 16);
    }

    struct Counts {
        std::uint64_t classes = 0, reduced = 0, flype_free = 0;
        std::array<std::uint64_t, 3> comp{0, 0, 0};
    };
    std::vector<Counts> partial(workers);

    auto scan = [&](int worker, std::uint64_t lo, std::uint64_t hi) {
        Counts c;
        for (std::uint64_t w = lo; w < hi; ++w) {
            const auto bits = static_cast<std::uint32_t>(w);
            if (canonical_bits(bits, n) != bits) continue;
            ++c.classes;
            const int ones = std::popcount(bits);
            if (ones < 2 || n - ones < 2) continue;
            ++c.reduced;
            if (flype_fast(bits, n)) continue;
            ++c.flype_free;
            ++c.comp[components_of_bits(bits, n) - 1];
        }
        partial[worker] = c;
    };

    const std::uint64_t span = (r.raw_words + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
        const std::uint64_t lo = t * span;
        const std::uint64_t hi = std::min<std::uint64_t>(r.raw_words, lo + span);
        if (lo >= hi) break;
        pool.emplace_back(scan, t, lo, hi);
    }
    for (auto& th : pool) th.join();

    for (const auto& c : partial) {
        r.classes += c.classes;
        r.reduced_classes += c.reduced;
        r.flype_free_classes += c.flype_free;
        for (int i = 0; i < 3; ++i) r.components_breakdown[i] += c.comp[i];
    }

    r.two_bridge_count = two_bridge_braid3_count(n);
    const double usable = static_cast<double>(r.flype_free_classes) - static_cast<double>(r.two_bridge_count);
    const double bound = std::ldexp(1.0, n - 5) / n - std::pow(static_cast<double>(n), 3.0);
    r.bb_lower_bound_ok = usable >= bound;
    return r;
}

ConwayPolyhedron conway_polyhedron(int k) {
    if (k < 3) throw std::invalid_argument("Conway basic polyhedra need k >= 3");
    ConwayPolyhedron p;
    p.crossings = 2 * k;
    p.word.length = 2 * k;
    for (int i = 0; i < k; ++i) p.word.bits |= (1u << (2 * i + 1));  // aBaB...
    p.components = (p.crossings % 3 == 0) ? 3 : 1;
    if (closure_components(p.word) != p.components)
        throw InvariantError("polyhedron component count disagrees with its closure permutation");
    return p;
}

double growth_fit(const std::vector<CensusReport>& reports) {
    if (reports.size() < 5)
        throw std::invalid_argument("growth fit needs at least 5 census points");
    for (std::size_t i = 1; i < reports.size(); ++i)
        if (reports[i].n != reports[i - 1].n + 1)
            throw std::invalid_argument("growth fit needs consecutive crossing numbers");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : reports) {
        const double count =
            static_cast<double>(r.flype_free_classes) - static_cast<double>(r.two_bridge_count);
        if (count <= 0) throw std::invalid_argument("growth fit needs positive counts");
        const double x = r.n;
        const double y = std::log2(count);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(reports.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace knotbb::braidcensus

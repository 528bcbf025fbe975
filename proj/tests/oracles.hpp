#pragma once

// Reference implementations used by the tests. They share only the Rational
// type with the library and favour brute force over speed.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;

inline Q frac(long n, long d) {
    Q r(n, d);
    r.canonicalize();
    return r;
}

inline Q power(const Q& base, long e) {
    Q r = 1;
    const Q b = e < 0 ? Q(1 / base) : base;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) {
        r *= b;
    }
    return r;
}

// splitmix64: small, seedable, and stable across standard libraries
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    int uniform(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

    bool coin() { return next() & 1U; }

private:
    std::uint64_t state_;
};

// ---- finite families of sets, as sets of sets ----

using Set = std::set<int>;
using Fam = std::set<Set>;

inline std::vector<Set> all_subsets(const Set& v) {
    std::vector<int> elems(v.begin(), v.end());
    std::vector<Set> out;
    for (unsigned m = 0; m < (1U << elems.size()); ++m) {
        Set s;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (m & (1U << i)) {
                s.insert(elems[i]);
            }
        }
        out.push_back(s);
    }
    return out;
}

inline Set set_union(const Set& a, const Set& b) {
    Set u = a;
    u.insert(b.begin(), b.end());
    return u;
}

inline bool subset_of(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline Set support(const Fam& f) {
    Set v;
    for (const auto& s : f) {
        v.insert(s.begin(), s.end());
    }
    return v;
}

inline bool down_closed(const Fam& f) {
    for (const auto& s : f) {
        for (const auto& t : all_subsets(s)) {
            if (!f.count(t)) {
                return false;
            }
        }
    }
    return true;
}

inline bool ideal_on(const Fam& f, const Set& v) {
    if (f.empty() || !down_closed(f) || f.count(v)) {
        return false;
    }
    for (const auto& a : f) {
        for (const auto& b : f) {
            if (!f.count(set_union(a, b))) {
                return false;
            }
        }
    }
    return true;
}

// every family over the universe {0..n-1}, as a vector of families
inline std::vector<Fam> all_families(int n) {
    Set v;
    for (int i = 0; i < n; ++i) {
        v.insert(i);
    }
    const auto subs = all_subsets(v);
    std::vector<Fam> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << subs.size()); ++m) {
        Fam f;
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (m & (std::uint64_t{1} << i)) {
                f.insert(subs[i]);
            }
        }
        out.push_back(f);
    }
    return out;
}

inline std::vector<Fam> down_sets(int n) {
    std::vector<Fam> out;
    for (auto& f : all_families(n)) {
        if (down_closed(f)) {
            out.push_back(f);
        }
    }
    return out;
}

// ideals on V(gamma) inside gamma, maximal under inclusion
inline std::vector<Fam> maximal_ideals(const Fam& gamma) {
    const Set v = support(gamma);
    std::vector<Set> members(gamma.begin(), gamma.end());
    std::vector<Fam> ideals;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << members.size()); ++m) {
        Fam f;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (m & (std::uint64_t{1} << i)) {
                f.insert(members[i]);
            }
        }
        if (ideal_on(f, v)) {
            ideals.push_back(f);
        }
    }
    std::vector<Fam> maximal;
    for (const auto& i : ideals) {
        const bool extended = std::any_of(ideals.begin(), ideals.end(), [&](const Fam& j) {
            return j.size() > i.size() && std::includes(j.begin(), j.end(), i.begin(), i.end());
        });
        if (!extended) {
            maximal.push_back(i);
        }
    }
    return maximal;
}

inline Fam intersect_all(const std::vector<Fam>& fams) {
    if (fams.empty()) {
        return {};
    }
    Fam out = fams.front();
    for (const auto& f : fams) {
        Fam keep;
        for (const auto& s : out) {
            if (f.count(s)) {
                keep.insert(s);
            }
        }
        out = keep;
    }
    return out;
}

inline Fam i_star(const Fam& gamma) {
    Fam out;
    for (const auto& s : all_subsets(support(gamma))) {
        const bool ok = std::all_of(gamma.begin(), gamma.end(), [&](const Set& b) { return gamma.count(set_union(s, b)) > 0; });
        if (ok) {
            out.insert(s);
        }
    }
    return out;
}

// ---- subsets of the positive reals built from points and open intervals ----

struct Piece {
    Q lo;
    Q hi;  // lo == hi: a point
};

inline bool member(const std::vector<Piece>& ps, const Q& x) {
    return std::any_of(ps.begin(), ps.end(), [&](const Piece& p) { return p.lo == p.hi ? x == p.lo : (p.lo < x && x < p.hi); });
}

// Two finite unions agree on the open window (lo, hi) iff they agree at every
// endpoint inside it and at every midpoint between consecutive endpoints.
inline bool same_set_on(const std::vector<Piece>& a, const std::vector<Piece>& b, const Q& lo, const Q& hi) {
    std::vector<Q> cuts{lo, hi};
    for (const auto* ps : {&a, &b}) {
        for (const auto& p : *ps) {
            for (const Q& e : {p.lo, p.hi}) {
                if (lo < e && e < hi) {
                    cuts.push_back(e);
                }
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (i > 0 && i + 1 < cuts.size() && member(a, cuts[i]) != member(b, cuts[i])) {
            return false;
        }
        if (i + 1 < cuts.size()) {
            const Q mid = (cuts[i] + cuts[i + 1]) / 2;
            if (member(a, mid) != member(b, mid)) {
                return false;
            }
        }
    }
    return true;
}

// (x/q, qx) around each point, overlapping intervals merged; touching ones stay apart.
// Result is ascending.
inline std::vector<Piece> blow_up_points(std::vector<Q> xs, const Q& q) {
    std::sort(xs.begin(), xs.end());
    std::vector<Piece> out;
    for (const auto& x : xs) {
        Piece p{x / q, x * q};
        if (!out.empty() && p.lo < out.back().hi) {
            out.back().hi = std::max(out.back().hi, p.hi);
        } else {
            out.push_back(p);
        }
    }
    return out;
}

inline std::vector<Q> geometric_points(const Q& x0, const Q& rho, int count) {
    std::vector<Q> xs;
    Q x = x0;
    for (int i = 0; i < count; ++i) {
        xs.push_back(x);
        x *= rho;
    }
    return xs;
}

inline std::vector<Q> super_geometric_points(const Q& x0, const Q& rho, int count) {
    std::vector<Q> xs;
    for (int n = 0; n < count; ++n) {
        xs.push_back(x0 * power(rho, static_cast<long>(n) * (n + 1) / 2));
    }
    return xs;
}

// blocks j = 1..blocks, y(k,j) = alpha^k y(k-1,j), next block starts alpha^(j+1) below
inline std::vector<Q> example_points(const Q& alpha, int blocks) {
    std::vector<Q> xs;
    Q y = 1;
    for (int j = 1; j <= blocks; ++j) {
        xs.push_back(y);
        for (int k = 1; k <= j; ++k) {
            y *= power(alpha, k);
            xs.push_back(y);
        }
        y *= power(alpha, j + 1);
    }
    return xs;
}

// Largest open subinterval of (0, h) missing the points, given every point below
// h down to the smallest listed one (the gap down to 0 included).
inline Q largest_gap_below(std::vector<Q> xs, const Q& h) {
    std::erase_if(xs, [&](const Q& x) { return x >= h; });
    std::sort(xs.begin(), xs.end());
    if (xs.empty()) {
        return h;
    }
    Q best = xs.front();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        best = std::max(best, Q(xs[i + 1] - xs[i]));
    }
    return std::max(best, Q(h - xs.back()));
}

}  // namespace oracle

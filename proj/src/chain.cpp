#include "porosity/chain.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace porosity {

Block Block::point(Rational x) {
    if (x <= 0) {
        throw std::invalid_argument("points must be positive, got " + to_string(x));
    }
    return {x, x};
}

Block Block::interval(Rational lo, Rational hi) {
    if (lo <= 0 || hi <= lo) {
        throw std::invalid_argument("interval needs 0 < lo < hi, got (" + to_string(lo) + ", " + to_string(hi) + ")");
    }
    return {std::move(lo), std::move(hi)};
}

bool Block::contains(const Rational& x) const {
    return is_point() ? x == lo : (lo < x && x < hi);
}

bool Block::within(const Block& outer) const {
    if (outer.is_point()) {
        return is_point() && lo == outer.lo;
    }
    if (is_point()) {
        return outer.contains(lo);
    }
    return outer.lo <= lo && hi <= outer.hi;
}

std::string to_string(const Block& b) {
    if (b.is_point()) {
        return "{" + to_string(b.lo) + "}";
    }
    return "(" + to_string(b.lo) + ", " + to_string(b.hi) + ")";
}

std::vector<Block> normalize(std::vector<Block> blocks) {
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    });

    std::vector<Block> merged;
    for (auto& b : blocks) {
        if (!merged.empty()) {
            Block& last = merged.back();
            if (!last.is_point() && b.lo < last.hi) {
                // sorted order puts a point at last.lo before the interval, so b overlaps or is interior
                if (b.hi > last.hi) {
                    last.hi = b.hi;
                }
                continue;
            }
            if (last.is_point() && b.is_point() && b.lo == last.lo) {
                continue;
            }
        }
        merged.push_back(std::move(b));
    }

    std::vector<Block> joined;
    for (auto& b : merged) {
        joined.push_back(std::move(b));
        const std::size_t n = joined.size();
        if (n >= 3) {
            const Block& left = joined[n - 3];
            const Block& mid = joined[n - 2];
            const Block& right = joined[n - 1];
            if (!left.is_point() && mid.is_point() && !right.is_point() && left.hi == mid.lo && mid.lo == right.lo) {
                Block whole{left.lo, right.hi};
                joined.resize(n - 3);
                joined.push_back(std::move(whole));
            }
        }
    }
    std::reverse(joined.begin(), joined.end());
    return joined;
}

bool is_subset(const std::vector<Block>& a, const std::vector<Block>& b) {
    const auto comps = normalize(b);
    for (const auto& x : normalize(a)) {
        // candidates: the highest components starting at or below x.lo; an interval and
        // a point may share that lower end
        auto it = std::partition_point(comps.begin(), comps.end(), [&](const Block& c) { return c.lo > x.lo; });
        bool found = false;
        for (; it != comps.end() && !found; ++it) {
            found = x.within(*it);
            if (it->lo != x.lo) {
                break;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

std::vector<Block> restrict_to(const std::vector<Block>& blocks, const Rational& x, const Rational& y) {
    std::vector<Block> out;
    for (const auto& b : blocks) {
        if (b.is_point()) {
            if (x < b.lo && b.lo < y) {
                out.push_back(b);
            }
            continue;
        }
        Rational lo = b.lo > x ? b.lo : x;
        Rational hi = b.hi < y ? b.hi : y;
        if (lo < hi) {
            out.push_back({std::move(lo), std::move(hi)});
        }
    }
    return normalize(std::move(out));
}

std::vector<Block> set_union(const std::vector<Block>& a, const std::vector<Block>& b) {
    std::vector<Block> all(a);
    all.insert(all.end(), b.begin(), b.end());
    return normalize(std::move(all));
}

Chain::Chain(std::vector<Block> blocks, Rational upper, Rational horizon)
    : blocks_(std::move(blocks)), upper_(std::move(upper)), horizon_(std::move(horizon)) {
    if (upper_ <= 0) {
        throw std::invalid_argument("chain upper bound must be positive");
    }
    if (horizon_ < 0 || horizon_ > upper_) {
        throw std::invalid_argument("chain horizon must lie in [0, upper]");
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Block& b = blocks_[i];
        if (b.lo <= 0 || b.hi < b.lo) {
            throw std::invalid_argument("malformed block " + to_string(b));
        }
        if (b.hi > upper_) {
            throw std::invalid_argument("block " + to_string(b) + " exceeds upper bound " + to_string(upper_));
        }
        if (b.is_point() ? b.lo < horizon_ : b.hi <= horizon_) {
            throw std::invalid_argument("block " + to_string(b) + " lies below the horizon " + to_string(horizon_));
        }
        if (i > 0) {
            const Block& above = blocks_[i - 1];
            const bool ordered = b.hi < above.lo || (b.hi == above.lo && !(b.is_point() && above.is_point()));
            if (!ordered) {
                throw std::invalid_argument("blocks " + to_string(above) + " and " + to_string(b) +
                                            " are not strictly descending");
            }
        }
    }
}

Chain Chain::normalized(std::vector<Block> blocks, Rational upper, Rational horizon) {
    auto comps = normalize(std::move(blocks));
    std::erase_if(comps, [&](const Block& b) { return b.is_point() ? b.lo < horizon : b.hi <= horizon; });
    return Chain(std::move(comps), std::move(upper), std::move(horizon));
}

bool Chain::has_points() const {
    return std::any_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.is_point(); });
}

bool Chain::has_intervals() const {
    return std::any_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return !b.is_point(); });
}

std::string to_string(const Chain& c) {
    std::ostringstream out;
    out << "Chain[U=" << to_string(c.upper()) << ", eps=" << to_string(c.horizon()) << "]";
    for (const auto& b : c.blocks()) {
        out << ' ' << to_string(b);
    }
    return out.str();
}

}  // namespace porosity

#include "tpred/lbest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "tpred/errors.hpp"

namespace tpred {

double NearestNeighborBound::lower_bound(const DistanceTable& dist, std::uint32_t unvisited, int node) const {
    const int n = dist.targets();
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        if (!(unvisited >> j & 1u)) continue;
        double cheapest = dist(node, j);
        for (int i = 0; i < n; ++i)
            if (i != j && (unvisited >> i & 1u)) cheapest = std::min(cheapest, dist(i, j));
        total += cheapest;
    }
    return total;
}

namespace {

struct Candidate {
    double cost;
    Sequence order;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.order < b.order;
}

class Search {
public:
    Search(const DistanceTable& dist, int l, const RemainderBound& bound) : dist_(dist), l_(l), bound_(bound) {
        heap_.reserve(l_ + 1);
    }

    void run(std::uint32_t unvisited, int node) {
        path_.clear();
        descend(unvisited, node, 0.0);
    }

    std::vector<Candidate> take_sorted() {
        std::sort_heap(heap_.begin(), heap_.end(), better);
        return std::move(heap_);
    }

    std::uint64_t nodes() const { return nodes_; }
    double min_excluded() const { return min_excluded_; }

private:
    bool full() const { return static_cast<int>(heap_.size()) == l_; }
    double worst() const { return heap_.front().cost; }

    void offer(double cost) {
        Candidate c{cost, path_};
        if (!full()) {
            heap_.push_back(std::move(c));
            std::push_heap(heap_.begin(), heap_.end(), better);
            return;
        }
        if (better(c, heap_.front())) {
            std::pop_heap(heap_.begin(), heap_.end(), better);
            min_excluded_ = std::min(min_excluded_, heap_.back().cost);
            heap_.back() = std::move(c);
            std::push_heap(heap_.begin(), heap_.end(), better);
        } else {
            min_excluded_ = std::min(min_excluded_, cost);
        }
    }

    void descend(std::uint32_t unvisited, int node, double acc) {
        if (unvisited == 0) {
            offer(acc);
            return;
        }
        if (full() && acc + bound_.lower_bound(dist_, unvisited, node) > worst()) return;
        ++nodes_;

        // Cheapest step first so good incumbents appear early.
        std::uint32_t rest = unvisited;
        int count = 0;
        std::pair<double, int> children[32];
        while (rest != 0) {
            const int j = std::countr_zero(rest);
            rest &= rest - 1;
            children[count++] = {dist_(node, j), j};
        }
        std::sort(children, children + count);
        for (int c = 0; c < count; ++c) {
            const auto [step, j] = children[c];
            const double next = acc + step;
            if (full() && next > worst()) continue;
            path_.push_back(j);
            descend(unvisited & ~(1u << j), j, next);
            path_.pop_back();
        }
    }

    const DistanceTable& dist_;
    int l_;
    const RemainderBound& bound_;
    std::vector<Candidate> heap_;
    Sequence path_;
    std::uint64_t nodes_ = 0;
    double min_excluded_ = std::numeric_limits<double>::infinity();
};

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

} // namespace

LBestResult lbest_remainders(const DistanceTable& dist, std::uint32_t unvisited, int node, int l,
                             const RemainderBound& bound) {
    if (l < 1) throw InvalidArgument("l must be >= 1, got " + std::to_string(l));
    Search search(dist, l, bound);
    search.run(unvisited, node);

    LBestResult out;
    out.nodes_expanded = search.nodes();
    out.exhaustive_equivalent = factorial(std::popcount(unvisited));
    for (auto& c : search.take_sorted()) {
        out.costs.push_back(c.cost);
        out.remainders.push_back(std::move(c.order));
    }
    const double last = out.costs.back();
    out.tied_at_cutoff = search.min_excluded() <= last + cost_tolerance(last);
    return out;
}

LBestResult lbest_remainders(const Layout& layout, std::span<const int> prefix, int l) {
    check_prefix(layout, prefix);
    if (layout.size() > 32) throw InvalidArgument("at most 32 targets supported");
    const DistanceTable dist(layout);
    std::uint32_t unvisited = layout.size() == 32 ? ~0u : (1u << layout.size()) - 1u;
    for (int idx : prefix) unvisited &= ~(1u << idx);
    const int node = prefix.empty() ? dist.start_node() : prefix.back();
    return lbest_remainders(dist, unvisited, node, l, NearestNeighborBound{});
}

double approx_predictability(const LBestResult& best, std::span<const int> own_remainder, double own_cost,
                             const Rationality& rationality) {
    const bool listed = std::any_of(best.remainders.begin(), best.remainders.end(), [&](const Sequence& r) {
        return std::equal(r.begin(), r.end(), own_remainder.begin(), own_remainder.end());
    });
    if (rationality.is_uniform()) return 1.0 / static_cast<double>(best.remainders.size() + (listed ? 0 : 1));

    const double beta = rationality.beta();
    std::vector<double> logw;
    logw.reserve(best.costs.size() + 1);
    for (double c : best.costs) logw.push_back(-beta * c);
    if (!listed) logw.push_back(-beta * own_cost);
    return std::min(1.0, std::exp(-beta * own_cost - log_sum_exp(logw)));
}

double t_predictability_approx(const Layout& layout, const Plan& plan, int t, const Rationality& rationality,
                               int l) {
    check_plan(layout, plan);
    if (t < 0) throw InvalidArgument("t must be nonnegative");
    if (t > layout.size())
        throw HorizonExceeded("t = " + std::to_string(t) + " exceeds T = " + std::to_string(layout.size()));
    const PrefixSplit split(plan, t);
    const LBestResult best = lbest_remainders(layout, split.prefix(), l);
    const DistanceTable dist(layout);
    const int from = split.t() == 0 ? dist.start_node() : split.prefix().back();
    return approx_predictability(best, split.remainder(), dist.path_length(from, split.remainder()), rationality);
}

} // namespace tpred

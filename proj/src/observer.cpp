#include "tpred/observer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tpred/errors.hpp"

namespace tpred {

Rationality::Rationality(double beta) : beta_(beta) {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw InvalidArgument("rationality coefficient must be finite and > 0 (use Rationality::uniform() "
                              "for the beta -> 0 limit), got " + std::to_string(beta));
}

Rationality Rationality::uniform() { return Rationality(UniformTag{}); }

double cost_tolerance(double magnitude) { return 1e-12 * std::max(1.0, std::abs(magnitude)); }

void check_prefix(const Layout& layout, std::span<const int> prefix) {
    const int n = layout.size();
    if (static_cast<int>(prefix.size()) > n)
        throw InvalidPrefix("prefix longer than the number of targets");
    std::vector<bool> seen(n, false);
    for (int idx : prefix) {
        if (idx < 0 || idx >= n) throw InvalidPrefix("prefix index " + std::to_string(idx) + " out of range");
        if (seen[idx]) throw InvalidPrefix("prefix repeats target " + std::to_string(idx));
        seen[idx] = true;
    }
}

Sequence unvisited_targets(const Layout& layout, std::span<const int> prefix) {
    check_prefix(layout, prefix);
    std::vector<bool> seen(layout.size(), false);
    for (int idx : prefix) seen[idx] = true;
    Sequence rest;
    for (int i = 0; i < layout.size(); ++i)
        if (!seen[i]) rest.push_back(i);
    return rest;
}

std::vector<Sequence> enumerate_remainders(const Layout& layout, std::span<const int> prefix) {
    Sequence rest = unvisited_targets(layout, prefix);
    std::vector<Sequence> out;
    do {
        out.push_back(rest);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

double log_sum_exp(std::span<const double> values) {
    if (values.empty()) return -std::numeric_limits<double>::infinity();
    const double hi = *std::max_element(values.begin(), values.end());
    if (!std::isfinite(hi)) return hi;
    double acc = 0.0;
    for (double v : values) acc += std::exp(v - hi);
    return hi + std::log(acc);
}

std::vector<double> boltzmann_distribution(std::span<const double> costs, const Rationality& rationality) {
    if (costs.empty()) throw EmptyCostList("Boltzmann distribution over an empty cost list");
    for (double c : costs)
        if (!std::isfinite(c)) throw NonFiniteCost("non-finite cost in Boltzmann distribution");

    std::vector<double> logw(costs.size());
    std::transform(costs.begin(), costs.end(), logw.begin(),
                   [&](double c) { return -rationality.beta() * c; });
    const double lz = log_sum_exp(logw);
    std::vector<double> p(costs.size());
    std::transform(logw.begin(), logw.end(), p.begin(), [&](double w) { return std::exp(w - lz); });
    return p;
}

RemainderDistribution posterior_over_remainders(const Layout& layout, std::span<const int> prefix,
                                                const Rationality& rationality) {
    RemainderDistribution dist;
    dist.remainders = enumerate_remainders(layout, prefix);
    const DistanceTable table(layout);
    const int from = prefix.empty() ? table.start_node() : prefix.back();

    std::vector<double> costs;
    costs.reserve(dist.remainders.size());
    for (const auto& r : dist.remainders) costs.push_back(table.path_length(from, r));

    dist.log_weights.resize(costs.size());
    std::transform(costs.begin(), costs.end(), dist.log_weights.begin(),
                   [&](double c) { return -rationality.beta() * c; });
    dist.probabilities = boltzmann_distribution(costs, rationality);
    return dist;
}

double t_predictability_exact(const Layout& layout, const Plan& plan, int t, const Rationality& rationality) {
    return RemainderTable(layout, rationality).predictability(plan, t);
}

// RemainderTable

RemainderTable::RemainderTable(const Layout& layout, const Rationality& rationality)
    : n_(layout.size()), dist_(layout), rationality_(rationality) {
    if (n_ > kMaxTargets)
        throw InvalidArgument("remainder table supports at most " + std::to_string(kMaxTargets) + " targets");

    const std::uint32_t full = (1u << n_) - 1u;
    const std::size_t slots = static_cast<std::size_t>(full + 1) * (n_ + 1);
    log_z_.assign(slots, 0.0);
    min_cost_.assign(slots, 0.0);

    const double beta = rationality_.beta();
    std::vector<double> terms;
    terms.reserve(n_);
    // Removing a target from the mask yields a numerically smaller mask, so
    // ascending order visits every dependency first.
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        for (int node = 0; node <= n_; ++node) {
            if (node < n_ && (mask >> node & 1u)) continue;
            terms.clear();
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n_; ++j) {
                if (!(mask >> j & 1u)) continue;
                const std::uint32_t rest = mask & ~(1u << j);
                const double step = dist_(node, j);
                terms.push_back(-beta * step + log_z_[slot(rest, j)]);
                best = std::min(best, step + min_cost_[slot(rest, j)]);
            }
            log_z_[slot(mask, node)] = log_sum_exp(terms);
            min_cost_[slot(mask, node)] = best;
        }
    }
}

Sequence RemainderTable::best_remainder(std::uint32_t unvisited, int node) const {
    Sequence out;
    while (unvisited != 0) {
        const double target = min_cost(unvisited, node);
        int pick = -1;
        for (int j = 0; j < n_; ++j) {
            if (!(unvisited >> j & 1u)) continue;
            const double via = dist_(node, j) + min_cost(unvisited & ~(1u << j), j);
            if (via <= target + cost_tolerance(target)) {
                pick = j;
                break;
            }
        }
        out.push_back(pick);
        unvisited &= ~(1u << pick);
        node = pick;
    }
    return out;
}

std::uint32_t RemainderTable::unvisited_mask(std::span<const int> prefix) const {
    std::uint32_t mask = (1u << n_) - 1u;
    for (int idx : prefix) mask &= ~(1u << idx);
    return mask;
}

double RemainderTable::log_predictability(const Plan& plan, int t) const {
    if (plan.size() != n_) throw InvalidPlan("plan size does not match the table's layout");
    std::uint32_t seen = 0;
    for (int idx : plan.order) {
        if (idx < 0 || idx >= n_ || (seen >> idx & 1u)) throw InvalidPlan("plan is not a permutation");
        seen |= 1u << idx;
    }
    if (t < 0) throw InvalidArgument("t must be nonnegative");
    if (t > n_) throw HorizonExceeded("t = " + std::to_string(t) + " exceeds T = " + std::to_string(n_));
    std::span<const int> order(plan.order);
    const auto prefix = order.first(t);
    const int from = node_after(prefix);
    const double own = dist_.path_length(from, order.subspan(t));
    return -rationality_.beta() * own - log_partition(unvisited_mask(prefix), from);
}

double RemainderTable::predictability(const Plan& plan, int t) const {
    const double lp = log_predictability(plan, t);
    if (rationality_.is_uniform()) {
        double count = 1.0;
        for (int k = 2; k <= n_ - t; ++k) count *= k;
        return 1.0 / count;
    }
    return std::exp(lp);
}

} // namespace tpred

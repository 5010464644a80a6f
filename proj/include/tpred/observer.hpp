//
// Boltzmann noisy-rational observer over plan remainders.
//
// The observer knows the start, the goal (visit every target once) and the
// first t visited targets. It scores every completion r from the reached
// position with weight exp(-beta * cost(r)) and predicts a completion with
// the normalized weight.
//

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tpred/geometry.hpp"

namespace tpred {

class Rationality {
public:
    // beta must be finite and strictly positive.
    explicit Rationality(double beta = 1.0);

    // beta -> 0: every remainder equally likely.
    static Rationality uniform();

    double beta() const { return beta_; }
    bool is_uniform() const { return beta_ == 0.0; }

private:
    struct UniformTag {};
    explicit Rationality(UniformTag) : beta_(0.0) {}

    double beta_;
};

struct RemainderDistribution {
    std::vector<Sequence> remainders;
    std::vector<double> log_weights;  // -beta * cost
    std::vector<double> probabilities;
};

// Throws InvalidPrefix on duplicate or out-of-range indices.
void check_prefix(const Layout& layout, std::span<const int> prefix);

// Targets not in `prefix`, ascending.
Sequence unvisited_targets(const Layout& layout, std::span<const int> prefix);

// All (T-t)! orderings of the unvisited targets, lexicographic.
std::vector<Sequence> enumerate_remainders(const Layout& layout, std::span<const int> prefix);

double log_sum_exp(std::span<const double> values);

// p_i proportional to exp(-beta * c_i), evaluated with max-subtraction.
std::vector<double> boltzmann_distribution(std::span<const double> costs, const Rationality& rationality);

RemainderDistribution posterior_over_remainders(const Layout& layout, std::span<const int> prefix,
                                                const Rationality& rationality);

double t_predictability_exact(const Layout& layout, const Plan& plan, int t, const Rationality& rationality);

// Subset dynamic program over (unvisited set, current node) holding the
// log-partition function of the remainder distribution and the minimum
// remainder cost. Built once per (layout, beta); answers exact
// t-predictability queries in O(T).
class RemainderTable {
public:
    static constexpr int kMaxTargets = 16;

    RemainderTable(const Layout& layout, const Rationality& rationality);

    int targets() const { return n_; }
    const DistanceTable& distances() const { return dist_; }
    const Rationality& rationality() const { return rationality_; }

    // `node` is a target index or distances().start_node().
    double log_partition(std::uint32_t unvisited, int node) const { return log_z_[slot(unvisited, node)]; }
    double min_cost(std::uint32_t unvisited, int node) const { return min_cost_[slot(unvisited, node)]; }

    // Lexicographically smallest among the minimum-cost remainders.
    Sequence best_remainder(std::uint32_t unvisited, int node) const;

    double predictability(const Plan& plan, int t) const;
    double log_predictability(const Plan& plan, int t) const;

    std::uint32_t unvisited_mask(std::span<const int> prefix) const;
    int node_after(std::span<const int> prefix) const { return prefix.empty() ? n_ : prefix.back(); }

private:
    std::size_t slot(std::uint32_t mask, int node) const {
        return static_cast<std::size_t>(mask) * (n_ + 1) + node;
    }

    int n_;
    DistanceTable dist_;
    Rationality rationality_;
    std::vector<double> log_z_;
    std::vector<double> min_cost_;
};

// Tolerance used when comparing accumulated path costs for ties.
double cost_tolerance(double magnitude);

} // namespace tpred

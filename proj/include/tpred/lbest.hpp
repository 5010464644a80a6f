//
// Branch-and-bound enumeration of the l cheapest open-path remainders and
// the truncated-denominator t-predictability built on top of it.
//

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tpred/geometry.hpp"
#include "tpred/observer.hpp"

namespace tpred {

struct LBestResult {
    std::vector<Sequence> remainders;  // ascending (cost, lexicographic)
    std::vector<double> costs;
    std::uint64_t nodes_expanded = 0;
    std::uint64_t exhaustive_equivalent = 0;  // (T-t)!
    // Some remainder left out of the list costs the same as the last one kept.
    bool tied_at_cutoff = false;
};

// Admissible lower bound on the cost of completing a partial remainder that
// stands at `node` with the targets in `unvisited` still to visit.
class RemainderBound {
public:
    virtual ~RemainderBound() = default;
    virtual double lower_bound(const DistanceTable& dist, std::uint32_t unvisited, int node) const = 0;
};

// Every unvisited target is entered by exactly one edge, whose tail is the
// current node or another unvisited target; the cheapest such edge per
// target sums to a bound that never overestimates.
class NearestNeighborBound final : public RemainderBound {
public:
    double lower_bound(const DistanceTable& dist, std::uint32_t unvisited, int node) const override;
};

LBestResult lbest_remainders(const DistanceTable& dist, std::uint32_t unvisited, int node, int l,
                             const RemainderBound& bound);

LBestResult lbest_remainders(const Layout& layout, std::span<const int> prefix, int l);

// Truncated predictability of a remainder with cost `own_cost`: the
// denominator sums over the l-best set plus the remainder itself.
double approx_predictability(const LBestResult& best, std::span<const int> own_remainder, double own_cost,
                             const Rationality& rationality);

double t_predictability_approx(const Layout& layout, const Plan& plan, int t, const Rationality& rationality,
                               int l);

} // namespace tpred

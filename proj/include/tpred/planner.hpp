//
// t-predictable planning: pick the plan whose first t actions make the rest
// of it easiest for a Boltzmann observer to infer.
//

#pragma once

#include <vector>

#include "tpred/geometry.hpp"
#include "tpred/lbest.hpp"
#include "tpred/observer.hpp"

namespace tpred {

enum class PlannerMode { Exact, Approximate };

const char* to_string(PlannerMode mode);
PlannerMode parse_planner_mode(const std::string& text);

struct PlannerSpec {
    int t = 0;
    Rationality rationality{1.0};
    PlannerMode mode = PlannerMode::Exact;
    int l = 2;  // approximate mode only
};

struct PlannedSequence {
    Plan plan;
    double cost = 0.0;
    double log_score = 0.0;  // log P_t (exact) or log of the truncated estimate (approximate)
};

// Minimum path-length plan; lexicographically smallest among equal costs.
Plan plan_optimal(const Layout& layout);

// Maximizes P_t; ties go to the lower path cost, then lexicographic order.
// Throws HorizonExceeded when spec.t > T.
Plan plan_t_predictable(const Layout& layout, const PlannerSpec& spec);

// Exact-mode planner reusing a prebuilt table.
PlannedSequence plan_exact(const RemainderTable& table, int t);

// Approximate-mode planner: one l-best search per length-t prefix.
PlannedSequence plan_approximate(const DistanceTable& dist, int t, const Rationality& rationality, int l);

struct PredictabilityMatrix {
    std::vector<int> planner_ts;  // rows
    std::vector<int> ks;          // columns
    std::vector<Plan> plans;      // plan chosen for each row
    std::vector<std::vector<double>> entries;

    double at(std::size_t row, std::size_t col) const { return entries[row][col]; }
};

// Entry (t, k) is the exact k-predictability of the exact t-planner's plan.
PredictabilityMatrix k_predictability_matrix(const Layout& layout, const std::vector<int>& planner_ts,
                                             const std::vector<int>& ks, const Rationality& rationality);

PredictabilityMatrix k_predictability_matrix(const RemainderTable& table, const std::vector<int>& planner_ts,
                                             const std::vector<int>& ks);

} // namespace tpred

#include "tpred/planner.hpp"

#include <cmath>
#include <string>

#include "tpred/errors.hpp"

namespace tpred {

const char* to_string(PlannerMode mode) { return mode == PlannerMode::Exact ? "exact" : "approx"; }

PlannerMode parse_planner_mode(const std::string& text) {
    if (text == "exact") return PlannerMode::Exact;
    if (text == "approx" || text == "approximate") return PlannerMode::Approximate;
    throw InvalidArgument("unknown planner mode '" + text + "' (expected exact|approx)");
}

namespace {

void check_horizon(int t, int n) {
    if (t < 0) throw InvalidArgument("t must be nonnegative");
    if (t > n) throw HorizonExceeded("t = " + std::to_string(t) + " exceeds T = " + std::to_string(n));
}

// Keeps the running argmax. Candidates must arrive in lexicographic order so
// that a full tie keeps the earlier (smaller) plan.
class BestTracker {
public:
    void offer(PlannedSequence cand) {
        if (!has_) {
            best_ = std::move(cand);
            has_ = true;
            return;
        }
        const double score_tol = 1e-12 * std::max(1.0, std::abs(best_.log_score));
        if (cand.log_score > best_.log_score + score_tol) {
            best_ = std::move(cand);
        } else if (cand.log_score >= best_.log_score - score_tol &&
                   cand.cost < best_.cost - cost_tolerance(best_.cost)) {
            best_ = std::move(cand);
        }
    }

    PlannedSequence take() { return std::move(best_); }

private:
    PlannedSequence best_;
    bool has_ = false;
};

// Calls visit(prefix, unvisited_mask) for every ordered selection of t
// distinct targets, lexicographically.
template <typename Visit>
void for_each_prefix(int n, int t, Visit&& visit) {
    Sequence prefix;
    prefix.reserve(t);
    const std::uint32_t full = (1u << n) - 1u;
    auto rec = [&](auto&& self, std::uint32_t unvisited) -> void {
        if (static_cast<int>(prefix.size()) == t) {
            visit(prefix, unvisited);
            return;
        }
        for (int j = 0; j < n; ++j) {
            if (!(unvisited >> j & 1u)) continue;
            prefix.push_back(j);
            self(self, unvisited & ~(1u << j));
            prefix.pop_back();
        }
    };
    rec(rec, full);
}

Sequence concat(const Sequence& a, const Sequence& b) {
    Sequence out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

} // namespace

Plan plan_optimal(const Layout& layout) {
    const RemainderTable table(layout, Rationality::uniform());
    return Plan{table.best_remainder(table.unvisited_mask({}), table.distances().start_node())};
}

PlannedSequence plan_exact(const RemainderTable& table, int t) {
    const int n = table.targets();
    check_horizon(t, n);
    const auto& dist = table.distances();
    const double beta = table.rationality().beta();

    BestTracker best;
    for_each_prefix(n, t, [&](const Sequence& prefix, std::uint32_t unvisited) {
        const int node = table.node_after(prefix);
        const double rest = table.min_cost(unvisited, node);
        PlannedSequence cand;
        cand.log_score = -beta * rest - table.log_partition(unvisited, node);
        cand.cost = dist.path_length(dist.start_node(), prefix) + rest;
        cand.plan = Plan{concat(prefix, table.best_remainder(unvisited, node))};
        best.offer(std::move(cand));
    });
    return best.take();
}

PlannedSequence plan_approximate(const DistanceTable& dist, int t, const Rationality& rationality, int l) {
    const int n = dist.targets();
    check_horizon(t, n);
    if (n > RemainderTable::kMaxTargets) throw InvalidArgument("too many targets");
    const NearestNeighborBound bound;
    const double beta = rationality.beta();

    BestTracker best;
    for_each_prefix(n, t, [&](const Sequence& prefix, std::uint32_t unvisited) {
        const int node = prefix.empty() ? dist.start_node() : prefix.back();
        const LBestResult lb = lbest_remainders(dist, unvisited, node, l, bound);
        std::vector<double> logw;
        for (double c : lb.costs) logw.push_back(-beta * c);
        PlannedSequence cand;
        cand.log_score = -beta * lb.costs.front() - log_sum_exp(logw);
        cand.cost = dist.path_length(dist.start_node(), prefix) + lb.costs.front();
        cand.plan = Plan{concat(prefix, lb.remainders.front())};
        best.offer(std::move(cand));
    });
    return best.take();
}

Plan plan_t_predictable(const Layout& layout, const PlannerSpec& spec) {
    check_horizon(spec.t, layout.size());
    if (spec.mode == PlannerMode::Exact) return plan_exact(RemainderTable(layout, spec.rationality), spec.t).plan;
    return plan_approximate(DistanceTable(layout), spec.t, spec.rationality, spec.l).plan;
}

PredictabilityMatrix k_predictability_matrix(const RemainderTable& table, const std::vector<int>& planner_ts,
                                             const std::vector<int>& ks) {
    for (int k : ks) check_horizon(k, table.targets());
    PredictabilityMatrix m;
    m.planner_ts = planner_ts;
    m.ks = ks;
    for (int t : planner_ts) {
        Plan plan = plan_exact(table, t).plan;
        std::vector<double> row;
        for (int k : ks) row.push_back(table.predictability(plan, k));
        m.entries.push_back(std::move(row));
        m.plans.push_back(std::move(plan));
    }
    return m;
}

PredictabilityMatrix k_predictability_matrix(const Layout& layout, const std::vector<int>& planner_ts,
                                             const std::vector<int>& ks, const Rationality& rationality) {
    return k_predictability_matrix(RemainderTable(layout, rationality), planner_ts, ks);
}

} // namespace tpred

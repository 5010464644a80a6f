//
// Layout generation, the stimulus filtering pipeline, simulated observers
// and the objective metrics used to compare planners.
//

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpred/geometry.hpp"
#include "tpred/observer.hpp"
#include "tpred/planner.hpp"
#include "tpred/rng.hpp"

namespace tpred {

struct GeneratorConfig {
    int count = 270;
    int targets_min = 5;
    int targets_max = 6;
    BoundingBox bbox;
    double min_separation = 0.05;
    std::uint64_t seed = 0;
    // Unset: the start is drawn uniformly from the box like the targets.
    std::optional<Point2> fixed_start;
    // Rejection-sampling attempts allowed per point.
    int max_attempts = 10000;
};

// Throws InvalidArgument for an inconsistent config and GenerationStalled
// when a point cannot be placed within the attempt budget.
std::vector<Layout> generate_layouts(const GeneratorConfig& config);

// Plans chosen by the exact t-planner for each t, in order.
std::vector<Plan> chosen_plans(const RemainderTable& table, std::span<const int> planner_ts);

// Keeps layouts where the planners for planner_ts choose pairwise distinct
// plans. Needs at least two planners.
std::vector<Layout> filter_distinguishable(std::span<const Layout> layouts, std::span<const int> planner_ts,
                                           const Rationality& rationality);

// True when some segment of `plan` passes within `capture_radius` of a
// target that is still unvisited and is not the segment's own endpoint.
bool has_confound(const Layout& layout, const Plan& plan, double capture_radius);

std::vector<Layout> filter_no_confounds(std::span<const Layout> layouts, double capture_radius,
                                        std::span<const int> planner_ts, const Rationality& rationality);

// Two readings of "gain in 1-predictability to 2-predictability":
//   Sum:        [P1(plan1) - P1(plan0)] + [P2(plan2) - P2(plan0)]
//   Difference: [P2(plan2) - P2(plan0)] - [P1(plan1) - P1(plan0)]
// where planN is the exact N-planner's choice.
enum class InfoGainRule { Sum, Difference };

const char* to_string(InfoGainRule rule);
InfoGainRule parse_info_gain_rule(const std::string& text);

double info_gain(const Layout& layout, const Rationality& rationality, InfoGainRule rule = InfoGainRule::Sum);

struct RankedLayout {
    Layout layout;
    double gain = 0.0;
};

// Descending by gain; equal gains keep input order.
std::vector<RankedLayout> rank_by_info_gain(std::span<const Layout> layouts, const Rationality& rationality,
                                            InfoGainRule rule = InfoGainRule::Sum);

// Draws remainders from a fixed posterior by inverse CDF.
class ObserverSampler {
public:
    explicit ObserverSampler(RemainderDistribution posterior);

    const RemainderDistribution& posterior() const { return posterior_; }
    std::size_t draw_index(SplitMix64& rng) const;
    const Sequence& draw(SplitMix64& rng) const { return posterior_.remainders[draw_index(rng)]; }

private:
    RemainderDistribution posterior_;
    std::vector<double> cumulative_;
};

Sequence sample_observer(const Layout& layout, std::span<const int> prefix, const Rationality& rationality,
                         SplitMix64& rng);

int levenshtein(std::span<const int> a, std::span<const int> b);

// 1 - LD(predicted, actual) / max(|actual|, 1).
double levenshtein_similarity(std::span<const int> predicted, std::span<const int> actual);

struct EvalRecord {
    std::string layout_id;
    int planner_t = 0;
    int k_observed = 0;
    double theoretical_k_pred = 0.0;
    int n_samples = 0;
    double exact_match_rate = 0.0;
    double mean_lev_similarity = 0.0;
};

struct EvalOptions {
    std::vector<int> planner_ts{0, 1, 2};
    std::vector<int> ks{0, 1, 2};
    Rationality rationality{1.0};
    PlannerMode mode = PlannerMode::Exact;
    int l = 2;
    int n_samples = 500;
    std::uint64_t seed = 0;
    int threads = 0;  // 0: configured_threads()
};

// One record per (layout, t, k), ordered by layout, then t, then k.
std::vector<EvalRecord> evaluate(std::span<const Layout> pool, const EvalOptions& options);

double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

struct EvalSummary {
    std::vector<int> planner_ts;
    std::vector<int> ks;
    // Pooled exact-match rate, [t index][k index].
    std::vector<std::vector<double>> mean_match_rate;
    std::vector<std::vector<double>> mean_theoretical;
    // For every k the t == k row has the highest pooled match rate.
    bool diagonal_dominant = true;
    std::optional<double> correlation;  // theoretical vs. empirical, unset when degenerate
};

EvalSummary summarize(std::span<const EvalRecord> records, std::span<const int> planner_ts,
                      std::span<const int> ks);

// One row per (layout, grid point). `plan` is the exact t-planner's choice,
// scored exactly and with the l-best truncation; `approx_plan` is what the
// approximate planner picks at the same l.
struct SweepRow {
    std::string layout_id;
    int planner_t = 0;
    double beta = 1.0;
    int l = 2;
    Plan plan;  // exact planner's choice
    double cost = 0.0;
    double exact_pred = 0.0;
    double approx_pred = 0.0;
    double ratio = 0.0;  // exact_pred / approx_pred
    Plan approx_plan;    // approximate planner's choice at this l
    double approx_plan_exact_pred = 0.0;
};

// Rows cover layouts x betas x ls in that nesting order. A beta of 0
// selects the uniform observer.
std::vector<SweepRow> run_sweep(std::span<const Layout> pool, int t, const std::vector<double>& betas,
                                const std::vector<int>& ls, int threads = 0);

} // namespace tpred

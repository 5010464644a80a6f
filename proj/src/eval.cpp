#include "tpred/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tpred/errors.hpp"
#include "tpred/parallel.hpp"

namespace tpred {

namespace {

std::string layout_name(int index, int count) {
    const std::string digits = std::to_string(index + 1);
    const std::size_t width = std::max<std::size_t>(3, std::to_string(count).size());
    return "L" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

Point2 draw_point(const BoundingBox& box, SplitMix64& rng) {
    const double x = box.min_x + uniform01(rng) * box.width();
    const double y = box.min_y + uniform01(rng) * box.height();
    return {x, y};
}

// Keeps the layouts whose flag is set, preserving order.
std::vector<Layout> keep_flagged(std::span<const Layout> layouts, const std::vector<char>& keep) {
    std::vector<Layout> out;
    for (std::size_t i = 0; i < layouts.size(); ++i)
        if (keep[i]) out.push_back(layouts[i]);
    return out;
}

} // namespace

std::vector<Layout> generate_layouts(const GeneratorConfig& config) {
    if (config.count < 0) throw InvalidArgument("count must be >= 0");
    if (config.targets_min < 2) throw InvalidArgument("targets_min must be >= 2");
    if (config.targets_max < config.targets_min) throw InvalidArgument("targets_max must be >= targets_min");
    if (config.targets_max > RemainderTable::kMaxTargets)
        throw InvalidArgument("targets_max must be <= " + std::to_string(RemainderTable::kMaxTargets));
    if (!(config.min_separation > 0.0)) throw InvalidArgument("min_separation must be > 0");
    if (!(config.bbox.width() > 0.0) || !(config.bbox.height() > 0.0))
        throw InvalidArgument("bounding box must have positive extent");
    if (config.fixed_start && !config.bbox.contains(*config.fixed_start))
        throw InvalidArgument("fixed start lies outside the bounding box");

    const LayoutLimits limits{config.bbox, std::min(kDefaultMinSeparation, config.min_separation)};
    std::vector<Layout> layouts;
    layouts.reserve(config.count);
    for (int i = 0; i < config.count; ++i) {
        SplitMix64 rng(stream_key(config.seed, "layout", static_cast<std::uint64_t>(i)));
        const auto span = static_cast<std::uint64_t>(config.targets_max - config.targets_min + 1);
        const int n = config.targets_min + static_cast<int>(uniform_below(rng, span));

        Layout layout;
        layout.id = layout_name(i, config.count);
        layout.start = config.fixed_start ? *config.fixed_start : draw_point(config.bbox, rng);
        while (layout.size() < n) {
            bool placed = false;
            for (int attempt = 0; attempt < config.max_attempts && !placed; ++attempt) {
                const Point2 p = draw_point(config.bbox, rng);
                placed = distance(p, layout.start) >= config.min_separation &&
                         std::all_of(layout.targets.begin(), layout.targets.end(), [&](const Point2& q) {
                             return distance(p, q) >= config.min_separation;
                         });
                if (placed) layout.targets.push_back(p);
            }
            if (!placed)
                throw GenerationStalled("could not place target " + std::to_string(layout.size()) + " of layout " +
                                        layout.id + " after " + std::to_string(config.max_attempts) +
                                        " attempts; min_separation too large for the bounding box");
        }
        layouts.push_back(validate_layout(layout, limits));
    }
    return layouts;
}

std::vector<Plan> chosen_plans(const RemainderTable& table, std::span<const int> planner_ts) {
    std::vector<Plan> plans;
    for (int t : planner_ts) plans.push_back(plan_exact(table, t).plan);
    return plans;
}

std::vector<Layout> filter_distinguishable(std::span<const Layout> layouts, std::span<const int> planner_ts,
                                           const Rationality& rationality) {
    if (planner_ts.size() < 2) throw InvalidArgument("distinguishability needs at least two planners");
    std::vector<char> keep(layouts.size(), 0);
    parallel_for(layouts.size(), configured_threads(), [&](std::size_t i) {
        const RemainderTable table(layouts[i], rationality);
        const auto plans = chosen_plans(table, planner_ts);
        bool distinct = true;
        for (std::size_t a = 0; a < plans.size() && distinct; ++a)
            for (std::size_t b = a + 1; b < plans.size() && distinct; ++b) distinct = plans[a] != plans[b];
        keep[i] = distinct;
    });
    return keep_flagged(layouts, keep);
}

bool has_confound(const Layout& layout, const Plan& plan, double capture_radius) {
    check_plan(layout, plan);
    Point2 from = layout.start;
    for (std::size_t step = 0; step < plan.order.size(); ++step) {
        const Point2& to = layout.targets[plan.order[step]];
        for (std::size_t later = step + 1; later < plan.order.size(); ++later)
            if (point_segment_distance(layout.targets[plan.order[later]], from, to) < capture_radius) return true;
        from = to;
    }
    return false;
}

std::vector<Layout> filter_no_confounds(std::span<const Layout> layouts, double capture_radius,
                                        std::span<const int> planner_ts, const Rationality& rationality) {
    if (!(capture_radius > 0.0)) throw InvalidArgument("capture_radius must be > 0");
    std::vector<char> keep(layouts.size(), 0);
    parallel_for(layouts.size(), configured_threads(), [&](std::size_t i) {
        const RemainderTable table(layouts[i], rationality);
        const auto plans = chosen_plans(table, planner_ts);
        keep[i] = std::none_of(plans.begin(), plans.end(),
                               [&](const Plan& p) { return has_confound(layouts[i], p, capture_radius); });
    });
    return keep_flagged(layouts, keep);
}

const char* to_string(InfoGainRule rule) { return rule == InfoGainRule::Sum ? "sum" : "diff"; }

InfoGainRule parse_info_gain_rule(const std::string& text) {
    if (text == "sum") return InfoGainRule::Sum;
    if (text == "diff" || text == "difference") return InfoGainRule::Difference;
    throw InvalidArgument("unknown info-gain rule '" + text + "' (expected sum|diff)");
}

double info_gain(const Layout& layout, const Rationality& rationality, InfoGainRule rule) {
    const RemainderTable table(layout, rationality);
    const int ts[] = {0, 1, 2};
    const auto plans = chosen_plans(table, ts);
    const double gain1 = table.predictability(plans[1], 1) - table.predictability(plans[0], 1);
    const double gain2 = table.predictability(plans[2], 2) - table.predictability(plans[0], 2);
    return rule == InfoGainRule::Sum ? gain1 + gain2 : gain2 - gain1;
}

std::vector<RankedLayout> rank_by_info_gain(std::span<const Layout> layouts, const Rationality& rationality,
                                            InfoGainRule rule) {
    std::vector<RankedLayout> ranked(layouts.size());
    parallel_for(layouts.size(), configured_threads(), [&](std::size_t i) {
        ranked[i] = RankedLayout{layouts[i], info_gain(layouts[i], rationality, rule)};
    });
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedLayout& a, const RankedLayout& b) { return a.gain > b.gain; });
    return ranked;
}

ObserverSampler::ObserverSampler(RemainderDistribution posterior) : posterior_(std::move(posterior)) {
    cumulative_.resize(posterior_.probabilities.size());
    std::partial_sum(posterior_.probabilities.begin(), posterior_.probabilities.end(), cumulative_.begin());
}

std::size_t ObserverSampler::draw_index(SplitMix64& rng) const {
    const double u = uniform01(rng) * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

Sequence sample_observer(const Layout& layout, std::span<const int> prefix, const Rationality& rationality,
                         SplitMix64& rng) {
    const ObserverSampler sampler(posterior_over_remainders(layout, prefix, rationality));
    return sampler.draw(rng);
}

int levenshtein(std::span<const int> a, std::span<const int> b) {
    std::vector<int> row(b.size() + 1);
    std::iota(row.begin(), row.end(), 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        int diag = row[0];
        row[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const int up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row.back();
}

double levenshtein_similarity(std::span<const int> predicted, std::span<const int> actual) {
    const double norm = std::max<double>(static_cast<double>(actual.size()), 1.0);
    return 1.0 - static_cast<double>(levenshtein(predicted, actual)) / norm;
}

std::vector<EvalRecord> evaluate(std::span<const Layout> pool, const EvalOptions& options) {
    if (options.n_samples < 1) throw InvalidArgument("n_samples must be >= 1");
    const std::size_t per_layout = options.planner_ts.size() * options.ks.size();
    std::vector<EvalRecord> records(pool.size() * per_layout);

    const int threads = options.threads > 0 ? options.threads : configured_threads();
    parallel_for(pool.size(), threads, [&](std::size_t li) {
        const Layout& layout = pool[li];
        for (int k : options.ks)
            if (k < 0 || k > layout.size())
                throw HorizonExceeded("k = " + std::to_string(k) + " exceeds T = " + std::to_string(layout.size()) +
                                      " for layout " + layout.id);
        const RemainderTable table(layout, options.rationality);
        std::size_t slot = li * per_layout;
        for (int t : options.planner_ts) {
            const Plan plan = options.mode == PlannerMode::Exact
                                  ? plan_exact(table, t).plan
                                  : plan_approximate(table.distances(), t, options.rationality, options.l).plan;
            for (int k : options.ks) {
                const PrefixSplit split(plan, k);
                const ObserverSampler sampler(posterior_over_remainders(layout, split.prefix(), options.rationality));
                int matches = 0;
                double similarity = 0.0;
                for (int s = 0; s < options.n_samples; ++s) {
                    SplitMix64 rng(stream_key(options.seed, layout.id, static_cast<std::uint64_t>(t),
                                              static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(s)));
                    const Sequence& guess = sampler.draw(rng);
                    const auto actual = split.remainder();
                    if (std::equal(guess.begin(), guess.end(), actual.begin(), actual.end())) ++matches;
                    similarity += levenshtein_similarity(guess, actual);
                }
                EvalRecord& rec = records[slot++];
                rec.layout_id = layout.id;
                rec.planner_t = t;
                rec.k_observed = k;
                rec.theoretical_k_pred = table.predictability(plan, k);
                rec.n_samples = options.n_samples;
                rec.exact_match_rate = static_cast<double>(matches) / options.n_samples;
                rec.mean_lev_similarity = similarity / options.n_samples;
            }
        }
    });
    return records;
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw InvalidArgument("correlation inputs differ in length");
    if (xs.size() < 2) throw InvalidArgument("correlation needs at least two points");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateVariance("correlation input has zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

EvalSummary summarize(std::span<const EvalRecord> records, std::span<const int> planner_ts,
                      std::span<const int> ks) {
    EvalSummary s;
    s.planner_ts.assign(planner_ts.begin(), planner_ts.end());
    s.ks.assign(ks.begin(), ks.end());
    const std::size_t rows = planner_ts.size(), cols = ks.size();
    s.mean_match_rate.assign(rows, std::vector<double>(cols, 0.0));
    s.mean_theoretical.assign(rows, std::vector<double>(cols, 0.0));
    std::vector<std::vector<int>> counts(rows, std::vector<int>(cols, 0));

    auto index_of = [](std::span<const int> v, int x) {
        return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
    };
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        const std::size_t ti = index_of(planner_ts, r.planner_t), ki = index_of(ks, r.k_observed);
        if (ti == rows || ki == cols) continue;
        s.mean_match_rate[ti][ki] += r.exact_match_rate;
        s.mean_theoretical[ti][ki] += r.theoretical_k_pred;
        ++counts[ti][ki];
        xs.push_back(r.theoretical_k_pred);
        ys.push_back(r.exact_match_rate);
    }
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (counts[i][j] > 0) {
                s.mean_match_rate[i][j] /= counts[i][j];
                s.mean_theoretical[i][j] /= counts[i][j];
            }
    for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t diag = index_of(planner_ts, ks[j]);
        if (diag == rows) continue;
        for (std::size_t i = 0; i < rows; ++i)
            if (s.mean_match_rate[i][j] > s.mean_match_rate[diag][j]) s.diagonal_dominant = false;
    }
    try {
        s.correlation = pearson_correlation(xs, ys);
    } catch (const Error&) {
        s.correlation.reset();
    }
    return s;
}


std::vector<SweepRow> run_sweep(std::span<const Layout> pool, int t, const std::vector<double>& betas,
                                const std::vector<int>& ls, int threads) {
    if (betas.empty() || ls.empty()) throw InvalidArgument("sweep grid must not be empty");
    for (double b : betas)
        if (!std::isfinite(b) || b < 0.0) throw InvalidArgument("sweep beta must be finite and >= 0");
    for (int l : ls)
        if (l < 1) throw InvalidArgument("sweep l must be >= 1");

    const std::size_t per_layout = betas.size() * ls.size();
    std::vector<SweepRow> rows(pool.size() * per_layout);
    parallel_for(pool.size(), threads > 0 ? threads : configured_threads(), [&](std::size_t li) {
        const Layout& layout = pool[li];
        std::size_t slot = li * per_layout;
        for (double beta : betas) {
            const Rationality rationality = beta == 0.0 ? Rationality::uniform() : Rationality(beta);
            const RemainderTable table(layout, rationality);
            const PlannedSequence chosen = plan_exact(table, t);
            const PrefixSplit split(chosen.plan, t);
            const auto& dist = table.distances();
            const int node = table.node_after(split.prefix());
            const double own = dist.path_length(node, split.remainder());
            const double exact = table.predictability(chosen.plan, t);
            for (int l : ls) {
                const LBestResult best =
                    lbest_remainders(dist, table.unvisited_mask(split.prefix()), node, l, NearestNeighborBound{});
                SweepRow& row = rows[slot++];
                row.layout_id = layout.id;
                row.planner_t = t;
                row.beta = beta;
                row.l = l;
                row.plan = chosen.plan;
                row.cost = chosen.cost;
                row.exact_pred = exact;
                row.approx_pred = approx_predictability(best, split.remainder(), own, rationality);
                row.ratio = row.exact_pred / row.approx_pred;
                row.approx_plan = plan_approximate(dist, t, rationality, l).plan;
                row.approx_plan_exact_pred = table.predictability(row.approx_plan, t);
            }
        }
    });
    return rows;
}

} // namespace tpred

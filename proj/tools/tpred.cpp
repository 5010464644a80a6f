// tpred: generate layouts, plan for t-predictability, and evaluate planners
// against simulated Boltzmann observers.
//
// Exit codes:
//   0  success
//   1  I/O or malformed input file
//   2  invalid flags or arguments (including t or k beyond the target count)
//   3  layout generation stalled
//   4  unknown layout id

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tpred/errors.hpp"
#include "tpred/eval.hpp"
#include "tpred/io.hpp"
#include "tpred/planner.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kStalled = 3, kUnknownLayout = 4 };

class UnknownLayout : public tpred::Error {
public:
    using tpred::Error::Error;
};

tpred::Rationality rationality_from(double beta) {
    return beta == 0.0 ? tpred::Rationality::uniform() : tpred::Rationality(beta);
}

const tpred::Layout& find_layout(const std::vector<tpred::Layout>& layouts, const std::string& id) {
    for (const auto& l : layouts)
        if (l.id == id) return l;
    throw UnknownLayout("no layout with id '" + id + "'");
}

struct GenOptions {
    int count = 270;
    int targets_min = 5;
    int targets_max = 6;
    std::uint64_t seed = 0;
    double scale = 1.0;
    std::optional<double> min_separation;
    bool filter = false;
    std::vector<int> ts{0, 1, 2};
    std::optional<double> capture_radius;
    double beta = 1.0;
    std::string info_gain = "sum";
    int select = 0;
    std::string out;
};

int run_gen(const GenOptions& o) {
    tpred::GeneratorConfig g;
    g.count = o.count;
    g.targets_min = o.targets_min;
    g.targets_max = o.targets_max;
    g.seed = o.seed;
    g.bbox = tpred::BoundingBox::square(o.scale);
    g.min_separation = o.min_separation.value_or(0.05 * o.scale);
    const double radius = o.capture_radius.value_or(0.05 * o.scale);
    const auto rationality = rationality_from(o.beta);
    const auto rule = tpred::parse_info_gain_rule(o.info_gain);

    std::vector<tpred::Layout> layouts = tpred::generate_layouts(g);
    std::printf("generated %zu\n", layouts.size());
    if (o.filter) {
        layouts = tpred::filter_distinguishable(layouts, o.ts, rationality);
        std::printf("distinguishable %zu\n", layouts.size());
        layouts = tpred::filter_no_confounds(layouts, radius, o.ts, rationality);
        std::printf("confound_free %zu\n", layouts.size());
        const auto ranked = tpred::rank_by_info_gain(layouts, rationality, rule);
        layouts.clear();
        for (const auto& r : ranked) {
            if (o.select > 0 && static_cast<int>(layouts.size()) == o.select) break;
            layouts.push_back(r.layout);
        }
        std::printf("selected %zu (rank by %s gain, capture_radius %s)\n", layouts.size(), tpred::to_string(rule),
                    tpred::format_real(radius).c_str());
    } else if (o.select > 0 && static_cast<int>(layouts.size()) > o.select) {
        layouts.resize(o.select);
        std::printf("selected %zu\n", layouts.size());
    }
    tpred::write_text_file(o.out, tpred::write_layout_file(layouts));
    return kOk;
}

struct PlanOptions {
    std::string layouts;
    std::string layout_id;
    int t = 0;
    double beta = 1.0;
    std::string mode = "exact";
    int l = 2;
    std::string format = "text";
};

int run_plan(const PlanOptions& o) {
    const auto layouts = tpred::parse_layout_file(tpred::read_text_file(o.layouts));
    const auto& layout = find_layout(layouts, o.layout_id);
    const auto rationality = rationality_from(o.beta);
    const auto mode = tpred::parse_planner_mode(o.mode);
    const tpred::Plan plan = tpred::plan_t_predictable(layout, tpred::PlannerSpec{o.t, rationality, mode, o.l});
    const double cost = tpred::path_cost(layout, plan);
    const double exact = tpred::t_predictability_exact(layout, plan, o.t, rationality);
    std::optional<double> approx;
    if (mode == tpred::PlannerMode::Approximate)
        approx = tpred::t_predictability_approx(layout, plan, o.t, rationality, o.l);

    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["layout_id"] = layout.id;
        j["t"] = o.t;
        j["beta"] = o.beta;
        j["mode"] = tpred::to_string(mode);
        j["l"] = o.l;
        j["order"] = plan.order;
        j["cost"] = cost;
        j["exact_pred"] = exact;
        if (approx) j["approx_pred"] = *approx;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "layout " << layout.id << " t=" << o.t << " mode=" << tpred::to_string(mode) << '\n'
                  << "order " << tpred::format_sequence(plan.order) << '\n'
                  << "cost " << tpred::format_real(cost) << '\n'
                  << "exact_pred " << tpred::format_real(exact) << '\n';
        if (approx) std::cout << "approx_pred " << tpred::format_real(*approx) << '\n';
    }
    return kOk;
}

struct EvalCliOptions {
    std::string layouts;
    std::vector<int> ts{0, 1, 2};
    std::vector<int> ks{0, 1, 2};
    double beta = 1.0;
    std::string mode = "exact";
    int l = 2;
    int samples = 500;
    std::uint64_t seed = 0;
    std::optional<double> capture_radius;
    std::string out;
};

int run_eval(const EvalCliOptions& o) {
    const auto layouts = tpred::parse_layout_file(tpred::read_text_file(o.layouts));
    tpred::EvalOptions e;
    e.planner_ts = o.ts;
    e.ks = o.ks;
    e.rationality = rationality_from(o.beta);
    e.mode = tpred::parse_planner_mode(o.mode);
    e.l = o.l;
    e.n_samples = o.samples;
    e.seed = o.seed;
    const auto records = tpred::evaluate(layouts, e);

    const tpred::RunMetadata meta{o.beta, tpred::to_string(e.mode), o.l, o.seed};
    tpred::write_text_file(o.out, tpred::write_results_table(records, meta));

    nlohmann::ordered_json m;
    m["tool_version"] = kToolVersion;
    m["beta"] = o.beta;
    m["mode"] = meta.mode;
    m["l"] = o.l;
    m["seed"] = o.seed;
    m["samples"] = o.samples;
    m["planner_ts"] = o.ts;
    m["ks"] = o.ks;
    if (o.capture_radius) m["capture_radius"] = *o.capture_radius;
    m["layouts"] = layouts.size();
    tpred::write_text_file(o.out + ".meta.json", m.dump(2) + "\n");

    const auto s = tpred::summarize(records, o.ts, o.ks);
    std::printf("records %zu\n", records.size());
    std::printf("pooled exact-match rate (rows t, columns k):\n");
    for (std::size_t i = 0; i < s.planner_ts.size(); ++i) {
        std::printf("  t=%d", s.planner_ts[i]);
        for (std::size_t j = 0; j < s.ks.size(); ++j)
            std::printf("  %.4f (theory %.4f)", s.mean_match_rate[i][j], s.mean_theoretical[i][j]);
        std::printf("\n");
    }
    std::printf("diagonal_dominant %s\n", s.diagonal_dominant ? "yes" : "no");
    if (s.correlation)
        std::printf("correlation %.6f\n", *s.correlation);
    else
        std::printf("correlation undefined\n");
    return kOk;
}

struct SweepOptions {
    std::string layouts;
    int t = 1;
    std::vector<double> beta_grid;
    std::vector<int> l_grid;
    double beta = 1.0;
    int l = 2;
    std::string out;
};

int run_sweep(const SweepOptions& o) {
    if (o.beta_grid.empty() == o.l_grid.empty())
        throw tpred::InvalidArgument("give exactly one of --beta-grid or --l-grid");
    const auto layouts = tpred::parse_layout_file(tpred::read_text_file(o.layouts));
    const std::vector<double> betas = o.beta_grid.empty() ? std::vector<double>{o.beta} : o.beta_grid;
    const std::vector<int> ls = o.l_grid.empty() ? std::vector<int>{o.l} : o.l_grid;
    const auto rows = tpred::run_sweep(layouts, o.t, betas, ls);
    tpred::write_text_file(o.out, tpred::write_sweep_table(rows));

    double sum = 0.0, lowest = 1.0;
    for (const auto& r : rows) {
        sum += r.ratio;
        lowest = std::min(lowest, r.ratio);
    }
    std::printf("rows %zu\n", rows.size());
    if (!rows.empty()) std::printf("ratio mean %.6f min %.6f\n", sum / rows.size(), lowest);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"t-predictable task planning toolkit"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate random layouts, optionally filtered and ranked");
    gen_cmd->add_option("--count", gen.count, "Number of layouts to generate")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--targets-min", gen.targets_min, "Minimum targets per layout");
    gen_cmd->add_option("--targets-max", gen.targets_max, "Maximum targets per layout");
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--scale", gen.scale, "Side length of the square domain")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--min-separation", gen.min_separation, "Minimum point separation (default 0.05*scale)");
    gen_cmd->add_flag("--filter", gen.filter, "Apply distinguishability and confound filters, then rank");
    gen_cmd->add_option("--t", gen.ts, "Planner t values used by the filters")->delimiter(',');
    gen_cmd->add_option("--capture-radius", gen.capture_radius, "Confound radius (default 0.05*scale)");
    gen_cmd->add_option("--beta", gen.beta, "Rationality coefficient (0 = uniform observer)");
    gen_cmd->add_option("--info-gain", gen.info_gain, "Ranking statistic: sum|diff");
    gen_cmd->add_option("--select", gen.select, "Keep only the first N layouts after ranking");
    gen_cmd->add_option("--out", gen.out, "Output layout file")->required();

    PlanOptions plan;
    auto* plan_cmd = app.add_subcommand("plan", "Plan one layout for t-predictability");
    plan_cmd->add_option("--layouts", plan.layouts, "Layout file")->required();
    plan_cmd->add_option("--layout-id", plan.layout_id, "Layout id")->required();
    plan_cmd->add_option("--t", plan.t, "Number of actions the observer sees")->check(CLI::NonNegativeNumber);
    plan_cmd->add_option("--beta", plan.beta, "Rationality coefficient (0 = uniform observer)");
    plan_cmd->add_option("--mode", plan.mode, "exact|approx");
    plan_cmd->add_option("--l", plan.l, "Remainders kept in approximate mode")->check(CLI::PositiveNumber);
    plan_cmd->add_option("--format", plan.format, "text|json")->check(CLI::IsMember({"text", "json"}));

    EvalCliOptions ev;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate planners against simulated observers");
    eval_cmd->add_option("--layouts", ev.layouts, "Layout file")->required();
    eval_cmd->add_option("--t", ev.ts, "Planner t values")->delimiter(',');
    eval_cmd->add_option("--k", ev.ks, "Observed-count k values")->delimiter(',');
    eval_cmd->add_option("--beta", ev.beta, "Rationality coefficient (0 = uniform observer)");
    eval_cmd->add_option("--mode", ev.mode, "exact|approx");
    eval_cmd->add_option("--l", ev.l, "Remainders kept in approximate mode")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--samples", ev.samples, "Observer samples per cell")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--seed", ev.seed, "Random seed");
    eval_cmd->add_option("--capture-radius", ev.capture_radius, "Recorded in the metadata file");
    eval_cmd->add_option("--out", ev.out, "Output results table (CSV)")->required();

    SweepOptions sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Exact vs. truncated predictability over a beta or l grid");
    sweep_cmd->add_option("--layouts", sw.layouts, "Layout file")->required();
    sweep_cmd->add_option("--t", sw.t, "Planner t")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--beta-grid", sw.beta_grid, "Comma-separated beta values")->delimiter(',');
    sweep_cmd->add_option("--l-grid", sw.l_grid, "Comma-separated l values")->delimiter(',');
    sweep_cmd->add_option("--beta", sw.beta, "Fixed beta for an l sweep");
    sweep_cmd->add_option("--l", sw.l, "Fixed l for a beta sweep")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out", sw.out, "Output sweep table (CSV)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*plan_cmd) return run_plan(plan);
        if (*eval_cmd) return run_eval(ev);
        if (*sweep_cmd) return run_sweep(sw);
    } catch (const tpred::GenerationStalled& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kStalled;
    } catch (const UnknownLayout& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnknownLayout;
    } catch (const tpred::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const tpred::HorizonExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const tpred::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.
//
// Pools that stand in for the stimulus study are drawn in a square of side
// kStudyScale (β = 1), with separation and capture radius at 5% of the width.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <sys/wait.h>

#include "oracles.hpp"
#include "tpred/eval.hpp"
#include "tpred/io.hpp"
#include "tpred/lbest.hpp"
#include "tpred/planner.hpp"

using namespace tpred;

namespace {

constexpr double kStudyScale = 100.0;
const std::vector<int> kTs{0, 1, 2};

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        o.pass = false;
        o.detail += " [over time limit " + std::to_string(static_cast<int>(limit_s)) + " s]";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<Layout> study_pool(int count, std::uint64_t seed, double scale = kStudyScale) {
    GeneratorConfig g;
    g.count = count;
    g.seed = seed;
    g.bbox = BoundingBox::square(scale);
    g.min_separation = 0.05 * scale;
    return generate_layouts(g);
}

std::vector<Layout> filtered_pool(std::size_t want, std::uint64_t seed) {
    const Rationality beta1{1.0};
    const auto pool = study_pool(270, seed);
    const auto kept = filter_no_confounds(filter_distinguishable(pool, kTs, beta1), 0.05 * kStudyScale, kTs, beta1);
    std::vector<Layout> out;
    for (const auto& r : rank_by_info_gain(kept, beta1)) {
        if (out.size() == want) break;
        out.push_back(r.layout);
    }
    return out;
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    long checked = 0;
    for (int i = 0; i < 50; ++i) {
        const int n = 4 + i % 3;
        const Layout l = oracle::random_layout(rng, n);
        const RemainderTable table(l, Rationality{1.0});
        for (const auto& p : oracle::all_plans(l))
            for (int t : kTs) {
                const double lib = table.predictability(Plan{p}, t);
                worst = std::max(worst, std::abs(lib - oracle::conditional_full_sequence(l, p, t, 1.0)));
                ++checked;
            }
    }
    return {worst <= 1e-9, fmt("%ld plan/t pairs, max |diff| %.3g (limit 1e-9)", checked, worst)};
}

Outcome diagonal_dominance() {
    const auto pool = filtered_pool(50, 202);
    if (pool.size() < 50) return {false, fmt("only %zu filtered layouts", pool.size())};
    int violations = 0;
    for (const auto& l : pool) {
        const auto m = k_predictability_matrix(l, kTs, kTs, Rationality{1.0});
        for (std::size_t k = 0; k < kTs.size(); ++k)
            for (std::size_t t = 0; t < kTs.size(); ++t)
                if (t != k && m.at(t, k) > m.at(k, k)) ++violations;
    }
    return {violations == 0, fmt("%zu filtered layouts, %d violations", pool.size(), violations)};
}

Outcome zero_predictable_is_optimal() {
    std::mt19937_64 rng(303);
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
        const Layout l = oracle::random_layout(rng, 3 + i % 5);
        const Plan chosen = plan_t_predictable(l, PlannerSpec{0, Rationality{1.0}});
        const auto best = oracle::min_cost_plan(l);
        const double c = oracle::walk(l, -1, chosen.order), b = oracle::walk(l, -1, best);
        if (chosen.order != best && std::abs(c - b) > 1e-12 * std::max(1.0, b)) ++violations;
    }
    return {violations == 0, fmt("100 layouts with T in [3,7], %d violations", violations)};
}

struct ApproxStats {
    int agree[2] = {0, 0};
    int disagree[2] = {0, 0};
    double min_ratio[2] = {1.0, 1.0};
    double sum_ratio[2] = {0.0, 0.0};
    long bound_checks = 0;
    long bound_violations = 0;
};

// Planner agreement at t = 1, 2 and the truncated-predictability bounds on
// every plan of every layout. The l-best list is computed once per prefix.
ApproxStats approximation_stats(const std::vector<Layout>& pool, bool check_bounds) {
    const Rationality beta1{1.0};
    ApproxStats s;
    for (const auto& l : pool) {
        const RemainderTable table(l, beta1);
        const auto& dist = table.distances();
        for (int i = 0; i < 2; ++i) {
            const int t = i + 1;
            const auto e = plan_exact(table, t);
            const auto a = plan_approximate(dist, t, beta1, 2);
            if (e.plan == a.plan) {
                ++s.agree[i];
            } else {
                ++s.disagree[i];
                const double r = table.predictability(a.plan, t) / table.predictability(e.plan, t);
                s.min_ratio[i] = std::min(s.min_ratio[i], r);
                s.sum_ratio[i] += r;
            }
            if (!check_bounds) continue;
            std::map<Sequence, LBestResult> cache;
            for (const auto& p : oracle::all_plans(l)) {
                const Sequence prefix(p.begin(), p.begin() + t);
                auto it = cache.find(prefix);
                if (it == cache.end()) it = cache.emplace(prefix, lbest_remainders(l, prefix, 2)).first;
                const std::span<const int> own(p.data() + t, p.size() - t);
                const double own_cost = dist.path_length(prefix.back(), own);
                const double approx = approx_predictability(it->second, own, own_cost, beta1);
                const double exact = table.predictability(Plan{p}, t);
                ++s.bound_checks;
                if (approx > 1.0 || approx < exact * (1.0 - 1e-12)) ++s.bound_violations;
            }
        }
    }
    return s;
}

Outcome approximation_quality() {
    const auto pool = study_pool(270, 404);
    const auto s = approximation_stats(pool, true);
    const double mean1 = s.disagree[0] ? s.sum_ratio[0] / s.disagree[0] : 1.0;
    const double mean2 = s.disagree[1] ? s.sum_ratio[1] / s.disagree[1] : 1.0;
    const bool a = s.agree[0] >= 0.8 * 270 && s.agree[1] >= 0.9 * 270;
    const bool b = std::min(s.min_ratio[0], s.min_ratio[1]) >= 0.85 &&
                   (s.sum_ratio[0] + s.sum_ratio[1]) / std::max(1, s.disagree[0] + s.disagree[1]) >= 0.95 &&
                   mean1 >= 0.95 && mean2 >= 0.95;
    const bool c = s.bound_violations == 0;
    return {a && b && c,
            fmt("agreement t=1 %d/270, t=2 %d/270; disagreement ratio min %.4f/%.4f mean %.4f/%.4f; "
                "bound exceptions %ld of %ld plans",
                s.agree[0], s.agree[1], s.min_ratio[0], s.min_ratio[1], mean1, mean2, s.bound_violations,
                s.bound_checks)};
}

void unit_square_note() {
    const auto s = approximation_stats(study_pool(270, 404, 1.0), false);
    std::printf("[INFO] 4 at the unit square (same seed): agreement t=1 %d/270, t=2 %d/270; "
                "disagreement ratio min %.4f/%.4f\n",
                s.agree[0], s.agree[1], s.min_ratio[0], s.min_ratio[1]);
}

Outcome lbest_correctness() {
    std::mt19937_64 rng(505);
    int violations = 0;
    for (int i = 0; i < 50; ++i) {
        const int rest = 1 + i % 8;
        const int n = rest + static_cast<int>(rng() % 3);
        const Layout l = oracle::random_layout(rng, n);
        Sequence perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Sequence prefix(perm.begin(), perm.begin() + (n - rest));
        const auto truth = oracle::sorted_remainders(l, prefix);
        for (int lv : {1, 2, 5}) {
            const auto got = lbest_remainders(l, prefix, lv);
            const std::size_t want = std::min<std::size_t>(lv, truth.size());
            bool ok = got.remainders.size() == want && got.costs.size() == want;
            const int from = prefix.empty() ? -1 : prefix.back();
            for (std::size_t j = 0; ok && j < want; ++j) {
                const double tol = 1e-9;
                ok = std::abs(got.costs[j] - truth[j].first) <= tol &&
                     std::abs(oracle::walk(l, from, got.remainders[j]) - got.costs[j]) <= tol;
                for (std::size_t q = 0; ok && q < j; ++q) ok = got.remainders[q] != got.remainders[j];
            }
            if (!ok) ++violations;
        }
    }
    int pruned = 0;
    const int cases = 50;
    for (int i = 0; i < cases; ++i) {
        const Layout l = oracle::random_layout(rng, 9 + i % 2);
        const Sequence prefix = i % 2 ? Sequence{static_cast<int>(rng() % 10)} : Sequence{};
        const auto got = lbest_remainders(l, prefix, 2);
        if (got.nodes_expanded < got.exhaustive_equivalent) ++pruned;
    }
    return {violations == 0 && pruned >= 0.9 * cases,
            fmt("%d mismatches over 50 prefixes x l in {1,2,5}; pruned below (T-t)! on %d/%d cases at T-t=9",
                violations, pruned, cases)};
}

Outcome beta_limits() {
    std::mt19937_64 rng(606);
    int sharp_fail = 0, sharp_cases = 0, uniform_fail = 0, duality_fail = 0;
    double worst_uniform = 0.0, worst_dual = 0.0;
    for (int i = 0; i < 30; ++i) {
        const int n = 3 + i % 4;
        const Layout l = oracle::random_layout(rng, n);
        for (int t = 0; t < std::min(n, 3); ++t) {
            // Sharp limit: the cheapest remainder after the optimal prefix.
            const auto best = oracle::min_cost_plan(l);
            const Sequence prefix(best.begin(), best.begin() + t);
            const auto ranked = oracle::sorted_remainders(l, prefix);
            if (ranked.size() < 2 || ranked[1].first - ranked[0].first < 1e-4) continue;
            ++sharp_cases;
            Sequence plan = prefix;
            plan.insert(plan.end(), ranked[0].second.begin(), ranked[0].second.end());
            if (!(t_predictability_exact(l, Plan{plan}, t, Rationality{1e6}) > 1.0 - 1e-6)) ++sharp_fail;
        }
        const RemainderTable uniform(l, Rationality::uniform());
        for (const auto& p : oracle::all_plans(l))
            for (int t = 0; t <= n; ++t) {
                double f = 1.0;
                for (int j = 2; j <= n - t; ++j) f *= j;
                const double d = std::abs(uniform.predictability(Plan{p}, t) - 1.0 / f);
                worst_uniform = std::max(worst_uniform, d);
                if (d > 1e-12) ++uniform_fail;
            }
        for (double s : {0.1, 10.0}) {
            Layout scaled = l;
            scaled.start = {l.start.x * s, l.start.y * s};
            for (auto& p : scaled.targets) p = {p.x * s, p.y * s};
            const RemainderTable base(l, Rationality{2.0}), dual(scaled, Rationality{2.0 / s});
            for (const auto& p : oracle::all_plans(l))
                for (int t : kTs) {
                    if (t > n) continue;
                    const double d = std::abs(base.predictability(Plan{p}, t) - dual.predictability(Plan{p}, t));
                    worst_dual = std::max(worst_dual, d);
                    if (d > 1e-9) ++duality_fail;
                }
        }
    }
    return {sharp_fail == 0 && sharp_cases > 0 && uniform_fail == 0 && duality_fail == 0,
            fmt("beta=1e6 unique optimum %d/%d above 1-1e-6; uniform max |diff| %.3g; duality max |diff| %.3g",
                sharp_cases - sharp_fail, sharp_cases, worst_uniform, worst_dual)};
}

Outcome simulated_validity() {
    const auto pool = filtered_pool(30, 707);
    if (pool.size() < 30) return {false, fmt("only %zu filtered layouts", pool.size())};
    EvalOptions o;
    o.n_samples = 500;
    o.seed = 707;
    const auto records = evaluate(pool, o);
    const auto s = summarize(records, o.planner_ts, o.ks);
    if (!s.correlation) return {false, "correlation undefined"};
    return {*s.correlation >= 0.95 && records.size() >= 30 * 9,
            fmt("%zu layouts x 3 planners x 3 k, 500 samples: r = %.4f", pool.size(), *s.correlation)};
}

int run_cli(const std::string& env, const std::string& args) {
    const std::string cmd = env + " \"" + TPRED_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::current_path() / "acceptance_scratch";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::vector<std::string> layouts, results;
    int runs = 0, errors = 0;
    for (const char* threads : {"1", "1", "4", "4"}) {
        const std::string tag = std::to_string(runs++);
        const std::string env = std::string("TPRED_THREADS=") + threads;
        const std::string lf = (dir / ("layouts" + tag + ".json")).string();
        const std::string rf = (dir / ("results" + tag + ".csv")).string();
        errors += run_cli(env, "gen --count 40 --seed 808 --scale 100 --filter --out " + lf) != 0;
        errors += run_cli(env, "eval --layouts " + lf + " --samples 200 --seed 808 --out " + rf) != 0;
        layouts.push_back(read_text_file(lf));
        results.push_back(read_text_file(rf));
    }
    bool same = errors == 0;
    for (std::size_t i = 1; i < layouts.size(); ++i) same = same && layouts[i] == layouts[0] && results[i] == results[0];
    return {same && !results[0].empty(),
            fmt("%d runs (TPRED_THREADS 1,1,4,4): layout files and results tables %s", runs,
                same ? "byte-identical" : "differ")};
}

} // namespace

int main() {
    report(1, "oracle equivalence", 30, oracle_equivalence);
    report(2, "argmax diagonal dominance", 60, diagonal_dominance);
    report(3, "0-predictable equals optimal", 0, zero_predictable_is_optimal);
    report(4, "approximation quality", 600, approximation_quality);
    unit_square_note();
    report(5, "l-best correctness", 0, lbest_correctness);
    report(6, "beta limits and scale duality", 0, beta_limits);
    report(7, "simulated model validity", 300, simulated_validity);
    report(8, "determinism and format stability", 0, determinism);
    std::printf("%s: %d of 8 criteria failed\n", failures ? "FAILED" : "OK", failures);
    return failures ? 1 : 0;
}

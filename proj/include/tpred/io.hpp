//
// Layout files and result tables.
//
// Layout file (JSON, canonical key order, reals as %.17g):
//   {"schema_version":1,"layouts":[{"id":"L001","start":[x,y],"targets":[[x,y],...]}]}
//

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpred/eval.hpp"
#include "tpred/geometry.hpp"

namespace tpred {

inline constexpr int kLayoutSchemaVersion = 1;

inline constexpr const char* kResultsHeader =
    "layout_id,planner_t,k_observed,beta,mode,l,theoretical_k_pred,n_samples,exact_match_rate,"
    "mean_lev_similarity,seed";

inline constexpr const char* kSweepHeader =
    "layout_id,planner_t,beta,l,plan,cost,exact_pred,approx_pred,ratio,approx_plan,approx_plan_exact_pred";

// 17 significant digits; parses back to the same double.
std::string format_real(double value);

std::string write_layout_file(const std::vector<Layout>& layouts);

LayoutLimits unbounded_limits();

// Parses and validates every layout. Unbounded coordinates are accepted;
// pass limits to enforce a box.
std::vector<Layout> parse_layout_file(const std::string& text, const LayoutLimits& limits = unbounded_limits());

struct RunMetadata {
    double beta = 1.0;
    std::string mode = "exact";
    int l = 2;
    std::uint64_t seed = 0;
};

std::string write_results_table(const std::vector<EvalRecord>& records, const RunMetadata& meta);


std::string write_sweep_table(const std::vector<SweepRow>& rows);

// Space-separated indices, e.g. "2 0 1".
std::string format_sequence(const Sequence& seq);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

} // namespace tpred

#include "tpred/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tpred/errors.hpp"

namespace tpred {

std::string format_real(double value) {
    if (value == 0.0) value = 0.0;  // folds -0.0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

void append_point(std::string& out, const Point2& p) {
    out += '[';
    out += format_real(p.x);
    out += ',';
    out += format_real(p.y);
    out += ']';
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

Point2 parse_point(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError(what + " must be a [x, y] pair of numbers");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

std::string write_layout_file(const std::vector<Layout>& layouts) {
    std::string out = "{\"schema_version\":" + std::to_string(kLayoutSchemaVersion) + ",\"layouts\":[";
    for (std::size_t i = 0; i < layouts.size(); ++i) {
        const Layout& l = layouts[i];
        if (i) out += ',';
        out += "{\"id\":" + json_string(l.id) + ",\"start\":";
        append_point(out, l.start);
        out += ",\"targets\":[";
        for (std::size_t k = 0; k < l.targets.size(); ++k) {
            if (k) out += ',';
            append_point(out, l.targets[k]);
        }
        out += "]}";
    }
    out += "]}\n";
    return out;
}

LayoutLimits unbounded_limits() {
    const double inf = std::numeric_limits<double>::infinity();
    return LayoutLimits{BoundingBox{-inf, -inf, inf, inf}, kDefaultMinSeparation};
}

std::vector<Layout> parse_layout_file(const std::string& text, const LayoutLimits& limits) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("layout file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("schema_version") || !doc.contains("layouts"))
        throw FormatError("layout file needs \"schema_version\" and \"layouts\"");
    if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kLayoutSchemaVersion)
        throw FormatError("unsupported layout schema_version (expected " +
                              std::to_string(kLayoutSchemaVersion) + ")");
    if (!doc["layouts"].is_array()) throw FormatError("\"layouts\" must be an array");

    std::vector<Layout> layouts;
    for (const auto& item : doc["layouts"]) {
        if (!item.is_object() || !item.contains("id") || !item.contains("start") || !item.contains("targets") ||
            !item["id"].is_string() || !item["targets"].is_array())
            throw FormatError("each layout needs a string \"id\", \"start\" and a \"targets\" array");
        Layout layout;
        layout.id = item["id"].get<std::string>();
        layout.start = parse_point(item["start"], "start of " + layout.id);
        for (const auto& t : item["targets"]) layout.targets.push_back(parse_point(t, "target of " + layout.id));
        layouts.push_back(validate_layout(layout, limits));
    }
    return layouts;
}

std::string write_results_table(const std::vector<EvalRecord>& records, const RunMetadata& meta) {
    std::ostringstream out;
    out << kResultsHeader << '\n';
    for (const auto& r : records) {
        out << r.layout_id << ',' << r.planner_t << ',' << r.k_observed << ',' << format_real(meta.beta) << ','
            << meta.mode << ',' << meta.l << ',' << format_real(r.theoretical_k_pred) << ',' << r.n_samples << ','
            << format_real(r.exact_match_rate) << ',' << format_real(r.mean_lev_similarity) << ',' << meta.seed
            << '\n';
    }
    return out.str();
}

std::string format_sequence(const Sequence& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(seq[i]);
    }
    return out;
}

std::string write_sweep_table(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << r.layout_id << ',' << r.planner_t << ',' << format_real(r.beta) << ',' << r.l << ','
            << format_sequence(r.plan.order) << ',' << format_real(r.cost) << ',' << format_real(r.exact_pred) << ','
            << format_real(r.approx_pred) << ',' << format_real(r.ratio) << ',' << format_sequence(r.approx_plan.order)
            << ',' << format_real(r.approx_plan_exact_pred) << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw Error("failed writing '" + path + "'");
}

} // namespace tpred

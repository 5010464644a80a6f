#include "tpred/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tpred/errors.hpp"

namespace tpred {

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) return distance(p, a);
    double s = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    s = std::clamp(s, 0.0, 1.0);
    return distance(p, Point2{a.x + s * dx, a.y + s * dy});
}

bool BoundingBox::contains(const Point2& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
}

namespace {

std::string point_name(int i) { return i < 0 ? std::string("start") : "target " + std::to_string(i); }

} // namespace

const Layout& validate_layout(const Layout& layout, const LayoutLimits& limits) {
    const int n = layout.size();
    if (n < 2)
        throw DegenerateLayout("layout '" + layout.id + "' has " + std::to_string(n) +
                               " targets; at least 2 are required");

    // Index -1 stands for the start point.
    auto at = [&](int i) -> const Point2& { return i < 0 ? layout.start : layout.targets[i]; };
    for (int i = -1; i < n; ++i) {
        const Point2& p = at(i);
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw DegenerateLayout("layout '" + layout.id + "': " + point_name(i) +
                                   " has a non-finite coordinate");
        if (!limits.bbox.contains(p))
            throw DegenerateLayout("layout '" + layout.id + "': " + point_name(i) +
                                   " lies outside the bounding box");
    }
    for (int i = -1; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (distance(at(i), at(j)) < limits.min_separation)
                throw DegenerateLayout("layout '" + layout.id + "': " + point_name(j) +
                                       " is too close to " + point_name(i));
    return layout;
}

void check_plan(const Layout& layout, const Plan& plan) {
    const int n = layout.size();
    if (plan.size() != n)
        throw InvalidPlan("plan has " + std::to_string(plan.size()) + " entries, layout has " +
                          std::to_string(n) + " targets");
    std::vector<bool> seen(n, false);
    for (int idx : plan.order) {
        if (idx < 0 || idx >= n) throw InvalidPlan("plan index " + std::to_string(idx) + " out of range");
        if (seen[idx]) throw InvalidPlan("plan visits target " + std::to_string(idx) + " twice");
        seen[idx] = true;
    }
}

PrefixSplit::PrefixSplit(Plan plan, int t) : plan_(std::move(plan)), t_(t) {
    if (t_ < 0 || t_ > plan_.size())
        throw InvalidArgument("split index " + std::to_string(t_) + " outside [0, " +
                              std::to_string(plan_.size()) + "]");
}

std::span<const int> PrefixSplit::prefix() const { return std::span<const int>(plan_.order).first(t_); }

std::span<const int> PrefixSplit::remainder() const { return std::span<const int>(plan_.order).subspan(t_); }

Point2 endpoint(const Layout& layout, std::span<const int> prefix) {
    return prefix.empty() ? layout.start : layout.targets.at(prefix.back());
}

DistanceTable::DistanceTable(const Layout& layout) : n_(layout.size()) {
    const int m = n_ + 1;
    d_.assign(static_cast<std::size_t>(m) * m, 0.0);
    auto at = [&](int i) -> const Point2& { return i == n_ ? layout.start : layout.targets[i]; };
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) d_[static_cast<std::size_t>(a) * m + b] = distance(at(a), at(b));
}

double DistanceTable::path_length(int from, std::span<const int> seq) const {
    double total = 0.0;
    for (int next : seq) {
        total += (*this)(from, next);
        from = next;
    }
    return total;
}

double path_cost(const Layout& layout, const Plan& plan) {
    check_plan(layout, plan);
    double total = 0.0;
    Point2 at = layout.start;
    for (int idx : plan.order) {
        total += distance(at, layout.targets[idx]);
        at = layout.targets[idx];
    }
    return total;
}

double prefix_cost(const Layout& layout, const PrefixSplit& split) {
    check_plan(layout, split.plan());
    double total = 0.0;
    Point2 at = layout.start;
    for (int idx : split.prefix()) {
        total += distance(at, layout.targets[idx]);
        at = layout.targets[idx];
    }
    return total;
}

double remainder_cost(const Layout& layout, const PrefixSplit& split) {
    check_plan(layout, split.plan());
    double total = 0.0;
    Point2 at = endpoint(layout, split.prefix());
    for (int idx : split.remainder()) {
        total += distance(at, layout.targets[idx]);
        at = layout.targets[idx];
    }
    return total;
}

std::vector<Plan> enumerate_plans(const Layout& layout) {
    Sequence order(layout.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Plan> plans;
    do {
        plans.push_back(Plan{order});
    } while (std::next_permutation(order.begin(), order.end()));
    return plans;
}

} // namespace tpred

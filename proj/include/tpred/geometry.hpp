//
// Layouts, plans and the Euclidean open-path cost model.
//

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tpred {

// Ordered list of target indices (a plan, a prefix or a remainder).
using Sequence = std::vector<int>;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(const Point2& a, const Point2& b);

// Shortest distance from p to the closed segment [a, b].
double point_segment_distance(const Point2& p, const Point2& a, const Point2& b);

struct BoundingBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 1.0;
    double max_y = 1.0;

    static BoundingBox square(double side) { return {0.0, 0.0, side, side}; }

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    bool contains(const Point2& p) const;
};

// Minimum pairwise separation between any two points of a layout.
inline constexpr double kDefaultMinSeparation = 1e-6;

struct Layout {
    std::string id;
    Point2 start;
    std::vector<Point2> targets;

    int size() const { return static_cast<int>(targets.size()); }

    friend bool operator==(const Layout&, const Layout&) = default;
};

struct LayoutLimits {
    BoundingBox bbox;
    double min_separation = kDefaultMinSeparation;
};

// Throws DegenerateLayout naming the offending index when the layout has
// fewer than two targets, points closer than min_separation, non-finite
// coordinates or points outside the bounding box.
const Layout& validate_layout(const Layout& layout, const LayoutLimits& limits = {});

struct Plan {
    Sequence order;

    int size() const { return static_cast<int>(order.size()); }

    friend bool operator==(const Plan&, const Plan&) = default;
    friend auto operator<=>(const Plan&, const Plan&) = default;
};

// Throws InvalidPlan unless plan.order is a permutation of 0..T-1.
void check_plan(const Layout& layout, const Plan& plan);

// A plan cut after its first t actions.
class PrefixSplit {
public:
    PrefixSplit(Plan plan, int t);

    const Plan& plan() const { return plan_; }
    int t() const { return t_; }
    std::span<const int> prefix() const;
    std::span<const int> remainder() const;

private:
    Plan plan_;
    int t_;
};

// Position reached after visiting `prefix` (the start when it is empty).
Point2 endpoint(const Layout& layout, std::span<const int> prefix);

// Dense distance matrix over targets 0..T-1 plus the start at index T.
class DistanceTable {
public:
    explicit DistanceTable(const Layout& layout);

    int targets() const { return n_; }
    int start_node() const { return n_; }
    double operator()(int a, int b) const { return d_[static_cast<std::size_t>(a) * (n_ + 1) + b]; }

    // Length of the open path from node `from` through `seq`.
    double path_length(int from, std::span<const int> seq) const;

private:
    int n_;
    std::vector<double> d_;
};

// Length of the open path start -> order[0] -> ... -> order[T-1].
double path_cost(const Layout& layout, const Plan& plan);

// Length of the partial path start -> prefix[0] -> ... -> prefix[t-1].
double prefix_cost(const Layout& layout, const PrefixSplit& split);

// Length of the remainder walked from the position reached after the prefix.
double remainder_cost(const Layout& layout, const PrefixSplit& split);

// All T! plans in lexicographic order.
std::vector<Plan> enumerate_plans(const Layout& layout);

} // namespace tpred

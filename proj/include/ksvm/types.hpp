#ifndef KSVM_TYPES_HPP
#define KSVM_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ksvm/errors.hpp"

namespace ksvm {

// Class labels: -1 = flying robot, +1 = mobile robot.
inline constexpr int kFlyingLabel = -1;
inline constexpr int kMobileLabel = +1;

struct LabeledPoint {
    std::vector<double> features;
    int label = kMobileLabel;  // -1 or +1
};

struct Dataset {
    std::vector<LabeledPoint> points;
    std::size_t dim = 0;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

// Counts of each label; throws if any label is outside {-1,+1}.
struct ClassCounts {
    std::size_t flying = 0;  // label -1
    std::size_t mobile = 0;  // label +1
};

ClassCounts count_classes(const Dataset& ds);

// Throws PreconditionError when the dataset breaks its invariants
// (mixed dimensions, non-finite features, bad labels).
void validate_dataset(const Dataset& ds);

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace ksvm

#endif

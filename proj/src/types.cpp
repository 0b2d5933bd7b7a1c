#include "ksvm/types.hpp"

#include <cmath>

namespace ksvm {

ClassCounts count_classes(const Dataset& ds) {
    ClassCounts c;
    for (const auto& p : ds.points) {
        if (p.label == kFlyingLabel) {
            ++c.flying;
        } else if (p.label == kMobileLabel) {
            ++c.mobile;
        } else {
            throw PreconditionError("label must be -1 or +1");
        }
    }
    return c;
}

void validate_dataset(const Dataset& ds) {
    for (std::size_t i = 0; i < ds.points.size(); ++i) {
        const auto& p = ds.points[i];
        if (p.features.size() != ds.dim)
            throw PreconditionError("point " + std::to_string(i) + " has dimension " +
                                    std::to_string(p.features.size()) + ", expected " +
                                    std::to_string(ds.dim));
        if (p.label != kFlyingLabel && p.label != kMobileLabel)
            throw PreconditionError("point " + std::to_string(i) + " has label outside {-1,+1}");
        for (double v : p.features)
            if (!std::isfinite(v))
                throw PreconditionError("point " + std::to_string(i) + " has non-finite feature");
    }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw PreconditionError("dimension mismatch in distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace ksvm

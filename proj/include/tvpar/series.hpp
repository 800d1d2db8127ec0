#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tvpar {

/// An observed univariate series Y_1..Y_n with optional date labels.
/// Accessors are 1-indexed to match the regression conventions used
/// throughout (windows reference Y_{t-1}, so indices start at 2).
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values);
    TimeSeries(std::vector<double> values, std::vector<std::string> labels);

    std::size_t size() const noexcept { return values_.size(); }

    /// 1-indexed access: at(1) == Y_1.
    double at(std::size_t t) const { return values_[t - 1]; }

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool has_labels() const noexcept { return !labels_.empty(); }

private:
    void validate() const;

    std::vector<double> values_;
    std::vector<std::string> labels_;
};

}  // namespace tvpar

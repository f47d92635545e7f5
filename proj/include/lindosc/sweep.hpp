// sweep.hpp - tensor-product parameter sweeps evaluated on the closed-form route

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lindosc/config_io.hpp"

namespace lindosc {

struct SweepAxis {
    std::string name;  // lambda | mu | delta | r | C | t
    double min{0.0};
    double max{0.0};
    std::size_t count{1};
    bool log{false};

    void check() const;
    std::vector<double> values() const;
};

/// Parses `name:min:max:count` with an optional `:log` suffix.
SweepAxis parse_sweep_axis(std::string_view text);

/// Quantities that can be recorded per sweep point.
const std::vector<std::string>& sweep_quantities();

struct SweepSpec {
    ConfigValues base;
    std::vector<SweepAxis> axes;
    std::vector<std::string> quantities{"delta_qd", "delta_cc"};
    std::size_t workers{0};  // 0 = hardware concurrency

    void check() const;
};

/// One CSV row per point of the tensor grid (first axis slowest). Columns are the axis names
/// followed by the requested quantities. Points whose configuration is rejected produce `nan`.
/// Output does not depend on the number of workers.
std::string run_sweep(const SweepSpec& spec);

} // namespace lindosc

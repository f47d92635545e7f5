// sweep.cpp - parameter sweeps fanned out over worker threads

#include "lindosc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "lindosc/classicality.hpp"
#include "lindosc/csv.hpp"
#include "lindosc/decoherence.hpp"
#include "lindosc/errors.hpp"
#include "lindosc/propagate.hpp"

namespace lindosc {

namespace {

const std::vector<std::string> kAxisNames{"lambda", "mu", "delta", "r", "C", "t"};

std::string config_key(const std::string& axis) {
    if (axis == "delta") return "init.delta";
    if (axis == "r") return "init.r";
    if (axis == "C") return "temp.C";
    return axis;
}

std::vector<double> evaluate_point(const SweepSpec& spec, const std::vector<double>& coords) {
    ConfigValues values = spec.base;
    double t = 0.0;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
        const auto& name = spec.axes[a].name;
        if (name == "t") {
            t = coords[a];
            continue;
        }
        if (name == "C") values.erase("temp.T");
        values[config_key(name)] = coords[a];
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> out(spec.quantities.size(), nan);
    RunConfig rc;
    try {
        rc = build_run_config(values);
        if (!rc.osc.closed_system) thermal_coefficients(rc.osc);
    } catch (const ValidationError&) {
        return out;
    }
    const auto& cfg = rc.osc;
    const GaussianState s = closed_form_state(rc.init, cfg, t);
    const TrajectorySample smp{s, sigma_det_closed(rc.init, cfg, t)};
    const auto m = classicality_metrics(smp, cfg.hbar);

    for (std::size_t k = 0; k < spec.quantities.size(); ++k) {
        const auto& q = spec.quantities[k];
        double v = nan;
        if (q == "delta_qd") v = m.delta_qd;
        else if (q == "delta_cc") v = m.delta_cc;
        else if (q == "gamma") v = m.gamma;
        else if (q == "sigma_det") v = m.sigma_det;
        else if (q == "mean_q") v = s.mean_q;
        else if (q == "mean_p") v = s.mean_p;
        else if (q == "s_qq") v = s.s_qq;
        else if (q == "s_pp") v = s.s_pp;
        else if (q == "s_pq") v = s.s_pq;
        else if (q == "t_deco") v = decoherence_time(rc.init, cfg).value;
        else if (q == "t_d") v = statistical_time(rc.init, cfg).value;
        else if (q == "constraint_ok") v = thermal_constraint_margin(cfg) >= 0.0 ? 1.0 : 0.0;
        out[k] = v;
    }
    return out;
}

} // namespace

void SweepAxis::check() const {
    if (std::find(kAxisNames.begin(), kAxisNames.end(), name) == kAxisNames.end())
        throw ValidationError("unknown sweep axis '" + name + "'");
    if (count < 1) throw ValidationError("sweep axis '" + name + "' needs count >= 1");
    if (!std::isfinite(min) || !std::isfinite(max))
        throw ValidationError("sweep axis '" + name + "' bounds must be finite");
    if (max < min) throw ValidationError("sweep axis '" + name + "' needs min <= max");
    if (log && !(min > 0.0 && max > 0.0))
        throw ValidationError("log spacing on '" + name + "' needs positive bounds");
}

std::vector<double> SweepAxis::values() const {
    check();
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = min;
        return v;
    }
    const double n = static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        const double f = static_cast<double>(k) / n;
        v[k] = log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                   : min + f * (max - min);
    }
    // End points exactly as given.
    v.back() = max;
    return v;
}

SweepAxis parse_sweep_axis(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.emplace_back(text.substr(start, colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() != 4 && parts.size() != 5)
        throw ValidationError("sweep axis must look like name:min:max:count[:log]");
    SweepAxis ax;
    ax.name = parts[0];
    ax.min = parse_decimal(parts[1]);
    ax.max = parse_decimal(parts[2]);
    const double count = parse_decimal(parts[3]);
    if (!(count >= 1.0) || count != std::floor(count))
        throw ValidationError("sweep axis count must be a positive integer");
    ax.count = static_cast<std::size_t>(count);
    if (parts.size() == 5) {
        if (parts[4] == "log")
            ax.log = true;
        else if (parts[4] != "lin")
            throw ValidationError("sweep axis spacing must be 'lin' or 'log'");
    }
    ax.check();
    return ax;
}

const std::vector<std::string>& sweep_quantities() {
    static const std::vector<std::string> q{"delta_qd", "delta_cc", "gamma",  "sigma_det",
                                            "mean_q",   "mean_p",   "s_qq",   "s_pp",
                                            "s_pq",     "t_deco",   "t_d",    "constraint_ok"};
    return q;
}

void SweepSpec::check() const {
    if (axes.empty()) throw ValidationError("sweep needs at least one axis");
    for (std::size_t a = 0; a < axes.size(); ++a) {
        axes[a].check();
        for (std::size_t b = 0; b < a; ++b)
            if (axes[b].name == axes[a].name)
                throw ValidationError("sweep axis '" + axes[a].name + "' given twice");
    }
    if (quantities.empty()) throw ValidationError("sweep needs at least one quantity");
    const auto& known = sweep_quantities();
    for (const auto& q : quantities)
        if (std::find(known.begin(), known.end(), q) == known.end())
            throw ValidationError("unknown sweep quantity '" + q + "'");
}

std::string run_sweep(const SweepSpec& spec) {
    spec.check();
    std::vector<std::vector<double>> axis_values;
    std::size_t total = 1;
    for (const auto& ax : spec.axes) {
        axis_values.push_back(ax.values());
        total *= ax.count;
    }

    auto coords_of = [&](std::size_t index) {
        std::vector<double> c(spec.axes.size());
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            const std::size_t n = axis_values[a].size();
            c[a] = axis_values[a][index % n];
            index /= n;
        }
        return c;
    };

    std::size_t workers = spec.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, total);
    const std::size_t chunk = (total + workers - 1) / workers;

    // Each worker formats its own contiguous block; blocks are joined in index order.
    std::vector<std::future<std::string>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(total, lo + chunk);
        jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
            std::string block;
            for (std::size_t i = lo; i < hi; ++i) {
                auto row = coords_of(i);
                const auto vals = evaluate_point(spec, row);
                row.insert(row.end(), vals.begin(), vals.end());
                block += csv_row(row);
            }
            return block;
        }));
    }

    std::vector<std::string> header;
    for (const auto& ax : spec.axes) header.push_back(ax.name);
    header.insert(header.end(), spec.quantities.begin(), spec.quantities.end());
    std::string out = csv_row(header);
    for (auto& j : jobs) out += j.get();
    return out;
}

} // namespace lindosc

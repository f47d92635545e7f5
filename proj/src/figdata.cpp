// figdata.cpp - figure data generation

#include "lindosc/figdata.hpp"

#include <cmath>

#include <json.hpp>

#include "lindosc/classicality.hpp"
#include "lindosc/csv.hpp"
#include "lindosc/errors.hpp"
#include "lindosc/propagate.hpp"
#include "lindosc/states.hpp"
#include "lindosc/sweep.hpp"

namespace lindosc {

namespace {

// Shared caption parameters: lambda = 0.2, mu = 0.1, delta = 4, r = 0, natural units.
OscillatorConfig caption_config(double coth) {
    OscillatorConfig cfg;
    cfg.lambda = 0.2;
    cfg.mu = 0.1;
    cfg.temp = TemperatureSpec::from_coth(coth);
    return cfg;
}

InitialStateSpec caption_state(double delta = 4.0) {
    InitialStateSpec s;
    s.delta = delta;
    return s;
}

std::string params_json(std::string_view id, const nlohmann::ordered_json& extra) {
    nlohmann::ordered_json j;
    j["figure"] = std::string(id);
    j["m"] = 1.0;
    j["omega"] = 1.0;
    j["hbar"] = 1.0;
    j["lambda"] = 0.2;
    j["mu"] = 0.1;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j.dump(2) + "\n";
}

std::vector<FigureFile> figure1() {
    // Temperature does not enter the centroid; C = 3 is used for the contour states.
    const auto cfg = caption_config(3.0);
    std::string traj = "t,mean_q,mean_p\n";
    for (double t : uniform_times(14.0, 0.01)) {
        GaussianState s0;
        s0.mean_q = 6.0;
        s0.mean_p = 4.0;
        const Vec2 m = mean_closed_form(s0, cfg, t);
        traj += csv_row(std::vector<double>{t, m.q, m.p});
    }
    std::string contours = "delta,k,q,p\n";
    for (double delta : {1.0, 4.0}) {
        auto spec = caption_state(delta);
        spec.q0 = 6.0;
        spec.p0 = 4.0;
        const auto c = one_sigma_contour(initial_state(spec, cfg), 256);
        for (std::size_t k = 0; k < c.points.size(); ++k)
            contours += csv_row(std::vector<double>{delta, static_cast<double>(k),
                                                    c.points[k].q, c.points[k].p});
    }
    return {{"fig1_trajectory.csv", traj},
            {"fig1_contours.csv", contours},
            {"fig1.json", params_json("1", {{"q0", 6.0}, {"p0", 4.0}, {"t_min", 0.0},
                                            {"t_max", 14.0}, {"dt", 0.01},
                                            {"contour_delta", {1.0, 4.0}}})}};
}

std::vector<FigureFile> figure2(std::string_view id, const std::string& quantity) {
    SweepSpec sw;
    sw.base = {{"lambda", 0.2}, {"mu", 0.1}, {"init.delta", 4.0}, {"init.r", 0.0}};
    sw.axes = {{"C", 1.0, 6.0, 51, false}, {"t", 0.0, 20.0, 201, false}};
    sw.quantities = {quantity, "constraint_ok"};
    const std::string name = "fig" + std::string(id);
    return {{name + ".csv", run_sweep(sw)},
            {name + ".json",
             params_json(id, {{"delta", 4.0}, {"r", 0.0}, {"quantity", quantity},
                              {"C_range", {1.0, 6.0, 51}}, {"t_range", {0.0, 20.0, 201}}})}};
}

std::vector<FigureFile> figure3a() {
    const auto cfg = caption_config(3.0);
    const auto s0 = initial_state(caption_state(), cfg);
    const auto grid = density_grid(s0, -8.0, 8.0, 161, cfg.hbar);
    return {{"fig3a.csv", density_grid_csv(grid, Component::abs)},
            {"fig3a.json", params_json("3a", {{"delta", 4.0}, {"r", 0.0}, {"t", 0.0},
                                              {"component", "abs"}})}};
}

std::vector<FigureFile> figure3_stationary(std::string_view id, double coth) {
    const auto cfg = caption_config(coth);
    GridGeometry g{-8.0, 8.0, -8.0, 8.0, 161, 161};
    PhaseSpaceGrid grid(g);
    for (std::size_t i = 0; i < g.n_q; ++i)
        for (std::size_t j = 0; j < g.n_p; ++j)
            grid.at(i, j) = density_stationary(cfg, g.q(i), g.p(j));
    const std::string name = "fig" + std::string(id);
    return {{name + ".csv", grid_csv(grid)},
            {name + ".json", params_json(id, {{"C", coth}, {"t", "inf"}, {"axes", "q,q'"}})}};
}

std::vector<FigureFile> figure4(std::string_view id, bool stationary) {
    const auto cfg = caption_config(3.0);
    GridGeometry g{-6.0, 6.0, -6.0, 6.0, 121, 121};
    PhaseSpaceGrid grid = stationary ? PhaseSpaceGrid(g)
                                     : render_grid(initial_state(caption_state(), cfg), g);
    if (stationary)
        for (std::size_t i = 0; i < g.n_q; ++i)
            for (std::size_t j = 0; j < g.n_p; ++j)
                grid.at(i, j) = wigner_stationary(cfg, g.q(i), g.p(j));
    const std::string name = "fig" + std::string(id);
    nlohmann::ordered_json extra{{"delta", 4.0}, {"r", 0.0}, {"C", 3.0}};
    if (stationary)
        extra["t"] = "inf";
    else
        extra["t"] = 0.0;
    return {{name + ".csv", grid_csv(grid)}, {name + ".json", params_json(id, extra)}};
}

} // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"1", "2a", "2b", "3a", "3b", "3c", "4a", "4b"};
    return ids;
}

std::vector<FigureFile> figure_data(std::string_view id) {
    if (id == "1") return figure1();
    if (id == "2a") return figure2(id, "delta_qd");
    if (id == "2b") return figure2(id, "delta_cc");
    if (id == "3a") return figure3a();
    if (id == "3b") return figure3_stationary(id, 3.0);
    if (id == "3c") return figure3_stationary(id, 20.0);
    if (id == "4a") return figure4(id, false);
    if (id == "4b") return figure4(id, true);
    throw ValidationError("unknown figure '" + std::string(id) + "'");
}

} // namespace lindosc

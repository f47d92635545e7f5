// config_io.cpp - key/value configuration parsing

#include "lindosc/config_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lindosc/errors.hpp"

namespace lindosc {

namespace {

constexpr std::array<std::string_view, 12> kKeys = {
    "m",          "omega",  "lambda",  "mu",      "hbar",    "temp.C",
    "temp.T",     "init.delta", "init.r", "init.q0", "init.p0", "closed"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

bool is_known_config_key(std::string_view key) {
    for (auto k : kKeys)
        if (k == key) return true;
    return false;
}

double parse_decimal(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value, std::chars_format::general);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw ValidationError("not a decimal number: '" + std::string(text) + "'");
    return value;
}

ConfigValues parse_config_text(std::string_view text) {
    ConfigValues values;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("line " + std::to_string(line_no) + ": expected key = value");
        const auto key = std::string(trim(line.substr(0, eq)));
        if (!is_known_config_key(key))
            throw ValidationError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (values.count(key))
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        try {
            values[key] = parse_decimal(line.substr(eq + 1));
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return values;
}

ConfigValues load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

RunConfig build_run_config(const ConfigValues& values) {
    for (const auto& [k, v] : values)
        if (!is_known_config_key(k)) throw ValidationError("unknown key '" + k + "'");
    if (values.count("temp.C") && values.count("temp.T"))
        throw ValidationError("temp.C and temp.T are mutually exclusive");

    auto get = [&](const char* key, double fallback) {
        const auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    };

    RunConfig rc;
    auto& osc = rc.osc;
    osc.closed_system = get("closed", 0.0) != 0.0;
    osc.m = get("m", 1.0);
    osc.omega = get("omega", 1.0);
    osc.hbar = get("hbar", 1.0);
    osc.lambda = get("lambda", osc.closed_system ? 0.0 : 0.2);
    osc.mu = get("mu", osc.closed_system ? 0.0 : 0.1);
    if (values.count("temp.T"))
        osc.temp = TemperatureSpec::from_temperature(values.at("temp.T"), osc.hbar, osc.omega,
                                                     osc.k_boltzmann);
    else
        osc.temp = TemperatureSpec::from_coth(get("temp.C", 3.0));

    rc.init.delta = get("init.delta", 4.0);
    rc.init.r = get("init.r", 0.0);
    rc.init.q0 = get("init.q0", 0.0);
    rc.init.p0 = get("init.p0", 0.0);

    osc.check();
    rc.init.check();
    return rc;
}

} // namespace lindosc

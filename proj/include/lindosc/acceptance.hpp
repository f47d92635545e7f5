// acceptance.hpp - end-to-end acceptance checks with pinned tolerances

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lindosc {

struct CriterionResult {
    int id{0};
    std::string name;
    bool passed{false};
    std::string detail;
    double seconds{0.0};
};

struct Criterion {
    int id;
    std::string name;
    std::function<CriterionResult()> run;
};

const std::vector<Criterion>& acceptance_criteria();

/// Runs every criterion; `on_result` (optional) is called as each one finishes.
std::vector<CriterionResult> run_acceptance(
    const std::function<void(const CriterionResult&)>& on_result = {});

/// `PASS  3 uncertainty-bound  (0.41 s)  min margin ...`
std::string format_result(const CriterionResult& r);

} // namespace lindosc

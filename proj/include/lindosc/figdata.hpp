// figdata.hpp - data grids behind the published figures, regenerated from their captions

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lindosc {

struct FigureFile {
    std::string name;
    std::string content;
};

/// Figure ids: 1, 2a, 2b, 3a, 3b, 3c, 4a, 4b.
const std::vector<std::string>& figure_ids();

/// Files for one figure: the data (CSV or grid CSV) plus `fig<id>.json` with the parameters.
/// Throws ValidationError for an unknown id.
std::vector<FigureFile> figure_data(std::string_view id);

} // namespace lindosc

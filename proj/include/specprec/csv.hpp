#pragma once

#include <string>

#include "specprec/types.hpp"

namespace specprec {

/// Reads an n x p panel from CSV: one header row of series names, then
/// numeric rows. Throws std::invalid_argument with a row/column diagnostic on
/// ragged rows, non-numeric cells, or fewer than two data rows.
TimeSeriesPanel read_panel_csv(const std::string& path);

/// Writes a panel in the same format.
void write_panel_csv(const std::string& path, const TimeSeriesPanel& panel);

}  // namespace specprec

#pragma once

#include <iosfwd>
#include <string>

#include "clubconv/panel.hpp"

namespace clubconv {

enum class CsvLayout { long_format, wide_format };

/// Long layout: header `unit,period,value`, one cell per line.
/// Wide layout: header `unit,<period>,<period>,...`, one unit per line.
/// UTF-8, '.' decimal separator. The resulting panel is sorted by unit label.
Panel read_panel_csv(const std::string& path, CsvLayout layout);
Panel read_panel_csv(std::istream& in, CsvLayout layout, const std::string& name = "<stream>");

std::string write_panel_csv(const Panel& panel, CsvLayout layout);

}  // namespace clubconv

#include "clubconv/csv_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace clubconv {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_value(const std::string& s, const std::string& name, int line_no, int col) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(name + ":" + std::to_string(line_no) + ": column " + std::to_string(col) +
                     ": cannot parse value '" + s + "'");
  }
}

Panel assemble(std::map<std::string, std::map<std::string, double>>& cells,
               const std::vector<std::string>& period_order) {
  std::vector<std::string> units;
  for (const auto& [u, _] : cells) units.push_back(u);  // map iteration = sorted

  for (const auto& u : units)
    for (const auto& p : period_order)
      if (!cells[u].count(p)) throw RaggedPanel("unit " + u + " is missing period " + p);

  std::vector<double> values;
  values.reserve(units.size() * period_order.size());
  for (const auto& u : units)
    for (const auto& p : period_order) values.push_back(cells[u][p]);
  return build_panel(units, period_order, std::move(values));
}

}  // namespace

Panel read_panel_csv(std::istream& in, CsvLayout layout, const std::string& name) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError(name + ": empty file");
  ++line_no;
  auto header = split_csv_line(line);

  std::map<std::string, std::map<std::string, double>> cells;
  std::vector<std::string> period_order;

  if (layout == CsvLayout::long_format) {
    if (header.size() != 3 || header[0] != "unit" || header[1] != "period" ||
        header[2] != "value")
      throw ParseError(name + ":1: long layout requires header 'unit,period,value'");
    std::set<std::string> seen_periods;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line == "\r") continue;
      auto f = split_csv_line(line);
      if (f.size() != 3)
        throw ParseError(name + ":" + std::to_string(line_no) + ": expected 3 fields, got " +
                         std::to_string(f.size()));
      const double v = parse_value(f[2], name, line_no, 3);
      if (cells[f[0]].count(f[1]))
        throw DuplicateCell("duplicate cell for unit " + f[0] + ", period " + f[1]);
      cells[f[0]][f[1]] = v;
      if (seen_periods.insert(f[1]).second) period_order.push_back(f[1]);
    }
    std::sort(period_order.begin(), period_order.end());
  } else {
    if (header.size() < 2 || header[0] != "unit")
      throw ParseError(name + ":1: wide layout requires header 'unit,<period>,...'");
    period_order.assign(header.begin() + 1, header.end());
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line == "\r") continue;
      auto f = split_csv_line(line);
      if (f.size() != header.size())
        throw ParseError(name + ":" + std::to_string(line_no) + ": expected " +
                         std::to_string(header.size()) + " fields, got " +
                         std::to_string(f.size()));
      if (cells.count(f[0])) throw DuplicateCell("duplicate unit row: " + f[0]);
      for (std::size_t c = 1; c < f.size(); ++c)
        cells[f[0]][period_order[c - 1]] = parse_value(f[c], name, line_no, static_cast<int>(c + 1));
    }
  }
  if (cells.empty()) throw ParseError(name + ": no data rows");
  return assemble(cells, period_order);
}

Panel read_panel_csv(const std::string& path, CsvLayout layout) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  return read_panel_csv(in, layout, path);
}

std::string write_panel_csv(const Panel& panel, CsvLayout layout) {
  std::ostringstream os;
  os.precision(17);
  if (layout == CsvLayout::long_format) {
    os << "unit,period,value\n";
    for (int i = 0; i < panel.n_units(); ++i)
      for (int t = 0; t < panel.n_periods(); ++t)
        os << panel.unit_ids[i] << ',' << panel.period_labels[t] << ',' << panel.at(i, t) << '\n';
  } else {
    os << "unit";
    for (const auto& p : panel.period_labels) os << ',' << p;
    os << '\n';
    for (int i = 0; i < panel.n_units(); ++i) {
      os << panel.unit_ids[i];
      for (int t = 0; t < panel.n_periods(); ++t) os << ',' << panel.at(i, t);
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace clubconv

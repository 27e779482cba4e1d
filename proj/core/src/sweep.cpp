#include "cqed/sweep.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace cqed {

namespace {

std::string format_grid_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string format_fixed6(double v) {
  double r = std::round(v * 1e6) / 1e6;
  if (r == 0.0) r = 0.0;  // fold -0 into +0 so zeros always print as 0.000000
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", r);
  return buf;
}

SweepSeries::SweepSeries(std::string parameter, std::vector<double> grid)
    : parameter_(std::move(parameter)), grid_(std::move(grid)) {
  if (parameter_.empty()) throw std::invalid_argument("sweep parameter name is empty");
  if (grid_.empty()) throw std::invalid_argument("sweep grid is empty");
}

void SweepSeries::add_column(std::string name, std::vector<double> values) {
  if (values.size() != grid_.size())
    throw std::invalid_argument("column length does not match grid length");
  for (const auto& [existing, _] : columns_)
    if (existing == name) throw std::invalid_argument("duplicate column name: " + name);
  columns_.emplace_back(std::move(name), std::move(values));
}

const std::vector<double>& SweepSeries::column(std::string_view name) const {
  for (const auto& [key, values] : columns_)
    if (key == name) return values;
  throw std::invalid_argument("no such column: " + std::string(name));
}

void SweepSeries::set_metadata(std::string key, std::string value) {
  for (auto& [existing, v] : metadata_) {
    if (existing == key) {
      v = std::move(value);
      return;
    }
  }
  metadata_.emplace_back(std::move(key), std::move(value));
}

std::string SweepSeries::to_csv() const {
  std::string out = parameter_;
  for (const auto& [name, _] : columns_) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    out += format_grid_value(grid_[i]);
    for (const auto& [_, values] : columns_) {
      out += ',';
      out += format_fixed6(values[i]);
    }
    out += '\n';
  }
  return out;
}

std::string SweepSeries::to_json_string(int indent) const {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata_) {
    if (value == "true" || value == "false") {
      config[key] = (value == "true");
      continue;
    }
    char* end = nullptr;
    double num = std::strtod(value.c_str(), &end);
    if (end && *end == '\0' && end != value.c_str())
      config[key] = num;
    else
      config[key] = value;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    row[parameter_] = grid_[i];
    for (const auto& [name, values] : columns_) row[name] = values[i];
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["config"] = std::move(config);
  doc["rows"] = std::move(rows);
  return doc.dump(indent);
}

std::vector<double> linspace(double a, double b, int points) {
  if (points < 2) throw std::invalid_argument("linspace needs at least 2 points");
  if (!(a < b)) throw std::invalid_argument("linspace needs a < b");
  std::vector<double> grid(points);
  double step = (b - a) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) grid[i] = a + step * i;
  grid.front() = a;
  grid.back() = b;
  return grid;
}

}  // namespace cqed

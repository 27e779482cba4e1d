#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cqed {

/// One-parameter sweep: a grid, named value columns of the same length, and
/// string metadata. Serializes to CSV (grid with %.6g, values fixed at six
/// decimals, negative zero normalized) and to JSON ({config, rows} with full
/// double precision).
class SweepSeries {
 public:
  SweepSeries(std::string parameter, std::vector<double> grid);

  const std::string& parameter() const { return parameter_; }
  const std::vector<double>& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }

  void add_column(std::string name, std::vector<double> values);
  const std::vector<double>& column(std::string_view name) const;
  const std::vector<std::pair<std::string, std::vector<double>>>& columns() const { return columns_; }

  void set_metadata(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  std::string to_csv() const;
  std::string to_json_string(int indent = 2) const;

 private:
  std::string parameter_;
  std::vector<double> grid_;
  std::vector<std::pair<std::string, std::vector<double>>> columns_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Evenly spaced grid including both endpoints; points >= 2, a < b.
std::vector<double> linspace(double a, double b, int points);

/// Fixed six-decimal rendering used by the CSV writer; rounds first and folds
/// negative zero into +0 so zero always prints as 0.000000.
std::string format_fixed6(double v);

}  // namespace cqed

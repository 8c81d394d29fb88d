#pragma once
#include <string>
#include <vector>

namespace ddlab {

// Numeric CSV with `# comment` lines before/within and a single header row.
struct CsvTable {
  std::string path;
  std::vector<std::string> comments;  // text after "# "
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Column index by name; throws listing the available columns.
  int column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

std::string format_double(double v);  // shortest %.12g rendering

}  // namespace ddlab

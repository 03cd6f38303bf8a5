#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace tunnelkit::cli {

using Settings = std::vector<std::pair<std::string, std::string>>;

// Rows go out as they arrive (CSV to a file) into `path.partial`; commit()
// renames over the final path, so a crash never leaves a truncated file.
// JSON holds rows until commit. An empty path or "-" means stdout.
class TableWriter {
 public:
  TableWriter(std::string command, std::string path, std::string format, Settings settings,
              std::vector<std::string> columns);
  ~TableWriter();
  TableWriter(const TableWriter&) = delete;
  TableWriter& operator=(const TableWriter&) = delete;

  void add_row(std::vector<std::string> row);
  void commit();

  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::ostream& out();
  void write_csv_row(const std::vector<std::string>& row);

  std::string command_, path_, tmp_path_, format_;
  Settings settings_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::ofstream file_;
  bool to_stdout_ = false;
  bool committed_ = false;
};

// Single-line echo of the effective configuration.
std::string header_comment(const std::string& command, const Settings& settings);

}  // namespace tunnelkit::cli

#include "table.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tunnelkit::cli {

std::string header_comment(const std::string& command, const Settings& settings) {
  std::string s = "# tunnelkit " + command;
  for (const auto& [k, v] : settings) s += " " + k + "=" + v;
  return s;
}

namespace {

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char ch : v) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

TableWriter::TableWriter(std::string command, std::string path, std::string format, Settings settings,
                         std::vector<std::string> columns)
    : command_(std::move(command)),
      path_(std::move(path)),
      format_(std::move(format)),
      settings_(std::move(settings)),
      columns_(std::move(columns)) {
  if (format_ != "csv" && format_ != "json") throw std::invalid_argument("format must be csv or json");
  to_stdout_ = path_.empty() || path_ == "-";
  if (!to_stdout_) {
    tmp_path_ = path_ + ".partial";
    file_.open(tmp_path_, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!file_) throw std::runtime_error("cannot open " + tmp_path_ + " for writing");
  }
  if (format_ == "csv") {
    out() << header_comment(command_, settings_) << "\n";
    write_csv_row(columns_);
    out().flush();
  }
}

TableWriter::~TableWriter() {
  if (!committed_ && !to_stdout_) {
    file_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_path_, ec);
  }
}

std::ostream& TableWriter::out() { return to_stdout_ ? std::cout : static_cast<std::ostream&>(file_); }

void TableWriter::write_csv_row(const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out() << ',';
    out() << csv_field(row[i]);
  }
  out() << '\n';
}

void TableWriter::add_row(std::vector<std::string> row) {
  if (row.size() != columns_.size()) throw std::logic_error("row width does not match the header");
  if (format_ == "csv") {
    write_csv_row(row);
    out().flush();
  }
  rows_.push_back(std::move(row));
}

void TableWriter::commit() {
  if (committed_) return;
  if (format_ == "json") {
    nlohmann::ordered_json doc;
    doc["command"] = command_;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : settings_) cfg[k] = v;
    doc["config"] = cfg;
    doc["columns"] = columns_;
    // values stay strings: they carry more digits than a double
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < r.size(); ++i) obj[columns_[i]] = r[i];
      rows.push_back(obj);
    }
    doc["rows"] = rows;
    out() << doc.dump(2) << "\n";
  }
  out().flush();
  if (!to_stdout_) {
    file_.close();
    if (!file_) throw std::runtime_error("write failed for " + tmp_path_);
    std::filesystem::rename(tmp_path_, path_);
  }
  committed_ = true;
}

}  // namespace tunnelkit::cli

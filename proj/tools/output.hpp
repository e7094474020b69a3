#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace omtcli {

using json = nlohmann::ordered_json;

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// RFC-4180 CSV writer: header row, CRLF records, '.' decimal separator.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    for (size_t i = 0; i < header.size(); ++i)
      out_ << (i ? "," : "") << header[i];
    out_ << "\r\n";
  }

  void row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i)
      out_ << (i ? "," : "") << num(values[i]);
    out_ << "\r\n";
  }

  void row_mixed(const std::vector<std::string>& values) {
    for (size_t i = 0; i < values.size(); ++i)
      out_ << (i ? "," : "") << values[i];
    out_ << "\r\n";
  }

 private:
  std::ofstream out_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
}

inline std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

/// Collects every produced file and finishes with a manifest the run can be
/// reproduced from: command, resolved parameters, seed and output list.
class RunManifest {
 public:
  RunManifest(std::string command, std::filesystem::path out_dir)
      : command_(std::move(command)), dir_(std::move(out_dir)) {
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path path_for(const std::string& name) {
    outputs_.push_back(name);
    return dir_ / name;
  }

  void set_params(json params) { params_ = std::move(params); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  void write(const std::string& version) {
    json m;
    m["command"] = command_;
    m["tool_version"] = version;
    m["timestamp"] = iso_timestamp();
    m["seed"] = seed_;
    m["parameters"] = params_;
    m["outputs"] = outputs_;
    m["outputs"].push_back("manifest.json");
    write_text(dir_ / "manifest.json", m.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::filesystem::path dir_;
  std::vector<std::string> outputs_;
  json params_;
  std::uint64_t seed_ = 0;
};

}  // namespace omtcli

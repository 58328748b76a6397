#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace modlab::cli {

enum class OutputFormat { csv, json };

/// One invocation of the driver. `parameters` holds every flag that was given,
/// already in canonical text form, so equal configurations hash equally.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::filesystem::path output_dir;
  std::uint64_t seed = 42;
  OutputFormat format = OutputFormat::csv;

  /// Canonical "command key=value ... seed=S" text; the output directory and
  /// the format are excluded.
  [[nodiscard]] std::string canonical() const;
  /// 16 hex digits of FNV-1a over canonical().
  [[nodiscard]] std::string hash() const;
};

struct Row {
  double abscissa = 0.0;
  double value = 0.0;
  std::string component;
};

struct ResultRecord {
  std::string config_hash;
  std::string timestamp;
  std::string version;
  std::vector<Row> rows;
  /// Command-specific payload (fit parameters, verdicts, ...).
  nlohmann::json payload = nlohmann::json::object();
};

/// Finite values as numbers; infinities and NaN as "inf", "-inf", "nan".
[[nodiscard]] nlohmann::json json_real(double x);

/// ISO-8601 UTC time of the call.
[[nodiscard]] std::string utc_timestamp();

/// Header plus one line per row; reals with 17 significant digits.
void write_csv_payload(std::ostream& os, const ResultRecord& record);

/// Metadata comment lines followed by the CSV payload.
void write_csv(std::ostream& os, const RunConfig& config, const ResultRecord& record);

[[nodiscard]] nlohmann::json to_json(const RunConfig& config, const ResultRecord& record);

/// Writes `<stem>.csv` or `<stem>.json` into config.output_dir and returns the
/// path.
std::filesystem::path save_record(const RunConfig& config, const ResultRecord& record,
                                  const std::string& stem);

/// One two-column "abscissa value" file per component, named
/// `<stem>_<component>.dat`. Returns the paths written.
std::vector<std::filesystem::path> save_plot_data(const RunConfig& config,
                                                  const ResultRecord& record,
                                                  const std::string& stem);

/// Reads the rows of a CSV written by write_csv ('#' lines are skipped).
[[nodiscard]] std::vector<Row> read_csv_rows(const std::filesystem::path& path);

/// Fixed-width text table.
class Table {
 public:
  explicit Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}
  void add(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  void print(std::ostream& os) const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

/// Six significant digits for human-facing summaries.
[[nodiscard]] std::string short_real(double x);

}  // namespace modlab::cli

#include "records.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "modlab/core.hpp"
#include "modlab/errors.hpp"

namespace modlab::cli {

std::string RunConfig::canonical() const {
  std::string s = command;
  for (const auto& [key, value] : parameters) s += " " + key + "=" + value;
  s += " seed=" + std::to_string(seed);
  return s;
}

std::string RunConfig::hash() const {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canonical());
  return os.str();
}

nlohmann::json json_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_csv_payload(std::ostream& os, const ResultRecord& record) {
  os << "abscissa,value,component,config_hash\n";
  for (const Row& r : record.rows) {
    os << format_real(r.abscissa) << ',' << format_real(r.value) << ',' << r.component << ','
       << record.config_hash << '\n';
  }
}

void write_csv(std::ostream& os, const RunConfig& config, const ResultRecord& record) {
  os << "# version=" << record.version << '\n'
     << "# timestamp=" << record.timestamp << '\n'
     << "# config=" << config.canonical() << '\n';
  write_csv_payload(os, record);
}

nlohmann::json to_json(const RunConfig& config, const ResultRecord& record) {
  nlohmann::json rows = nlohmann::json::array();
  for (const Row& r : record.rows) {
    rows.push_back({{"abscissa", json_real(r.abscissa)},
                    {"value", json_real(r.value)},
                    {"component", r.component}});
  }
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : config.parameters) params[key] = value;
  return {{"command", config.command},
          {"parameters", params},
          {"seed", config.seed},
          {"config_hash", record.config_hash},
          {"timestamp", record.timestamp},
          {"version", record.version},
          {"rows", rows},
          {"payload", record.payload}};
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

}  // namespace

std::filesystem::path save_record(const RunConfig& config, const ResultRecord& record,
                                  const std::string& stem) {
  const bool csv = config.format == OutputFormat::csv;
  const std::filesystem::path path = config.output_dir / (stem + (csv ? ".csv" : ".json"));
  std::ofstream os = open_output(path);
  if (csv) {
    write_csv(os, config, record);
  } else {
    os << to_json(config, record).dump(2) << '\n';
  }
  return path;
}

std::vector<std::filesystem::path> save_plot_data(const RunConfig& config,
                                                  const ResultRecord& record,
                                                  const std::string& stem) {
  std::vector<std::string> components;
  for (const Row& r : record.rows) {
    if (std::find(components.begin(), components.end(), r.component) == components.end()) {
      components.push_back(r.component);
    }
  }
  std::vector<std::filesystem::path> out;
  for (const std::string& c : components) {
    std::string name = c;
    std::replace_if(name.begin(), name.end(), [](char ch) { return ch == '/' || ch == ' '; }, '_');
    const std::filesystem::path path = config.output_dir / (stem + "_" + name + ".dat");
    std::ofstream os = open_output(path);
    os << "# " << c << '\n';
    for (const Row& r : record.rows) {
      if (r.component == c) os << format_real(r.abscissa) << ' ' << format_real(r.value) << '\n';
    }
    out.push_back(path);
  }
  return out;
}

std::vector<Row> read_csv_rows(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgumentError("cannot read " + path.string());
  std::vector<Row> rows;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (header) {
      if (line.rfind("abscissa,value,component", 0) != 0) {
        throw InvalidArgumentError(path.string() + " lacks the abscissa,value,component header");
      }
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string a;
    std::string v;
    std::string c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, v, ',') || !std::getline(ss, c, ',')) {
      throw InvalidArgumentError("malformed row in " + path.string() + ": " + line);
    }
    try {
      rows.push_back({std::stod(a), std::stod(v), c});
    } catch (const std::exception&) {
      throw InvalidArgumentError("malformed number in " + path.string() + ": " + line);
    }
  }
  return rows;
}

void Table::print(std::ostream& os) const {
  std::vector<std::size_t> width(headers_.size());
  for (std::size_t j = 0; j < headers_.size(); ++j) width[j] = headers_[j].size();
  for (const auto& r : rows_) {
    for (std::size_t j = 0; j < r.size() && j < width.size(); ++j) {
      width[j] = std::max(width[j], r[j].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < width.size(); ++j) {
      const std::string& c = j < cells.size() ? cells[j] : std::string();
      os << (j ? "  " : "");
      if (j + 1 < width.size()) {
        os << std::left << std::setw(static_cast<int>(width[j])) << c;
      } else {
        os << c;
      }
    }
    os << '\n';
  };
  line(headers_);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : rows_) line(r);
}

std::string short_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

}  // namespace modlab::cli

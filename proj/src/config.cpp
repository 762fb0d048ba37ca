#include "dpht/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpht {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "' needs a number, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& origin, int line, const std::string& key,
                        const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "' needs a non-negative integer, got '" +
                           value + "'");
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

RunConfig RunConfig::parse(const std::string& text, const std::string& origin) {
  RunConfig config;
  std::stringstream ss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, line_no, "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "empty key");

    if (key == "candidates") {
      config.candidates = split_list(value);
    } else if (key == "k") {
      config.k = static_cast<int>(parse_u64(origin, line_no, key, value));
    } else if (key == "g") {
      config.g = parse_double(origin, line_no, key, value);
    } else if (key == "u0") {
      config.u0 = parse_double(origin, line_no, key, value);
    } else if (key == "eps") {
      config.eps = parse_double(origin, line_no, key, value);
    } else if (key == "eps0") {
      config.eps0 = parse_double(origin, line_no, key, value);
    } else if (key == "delta") {
      config.delta = parse_double(origin, line_no, key, value);
    } else if (key == "delta_slack") {
      config.delta_slack = parse_double(origin, line_no, key, value);
    } else if (key == "trainer") {
      if (value != "reference" && value != "synthetic")
        fail(origin, line_no, "trainer must be 'reference' or 'synthetic'");
      config.trainer = value;
    } else if (key == "train_path") {
      config.train_path = value;
    } else if (key == "valid_path") {
      config.valid_path = value;
    } else if (key == "n_seeds") {
      config.n_seeds = parse_u64(origin, line_no, key, value);
    } else if (key == "n_candidates") {
      config.n_candidates = parse_u64(origin, line_no, key, value);
    } else if (key == "utility_distribution") {
      if (value != "uniform01" && value != "constant")
        fail(origin, line_no,
             "utility_distribution must be 'uniform01' or 'constant'");
      config.utility_distribution = value;
    } else if (key == "constant_value") {
      config.constant_value = parse_double(origin, line_no, key, value);
    } else if (key == "ratios") {
      config.ratios.clear();
      for (const std::string& item : split_list(value))
        config.ratios.push_back(
            static_cast<long>(parse_u64(origin, line_no, key, item)));
      if (config.ratios.empty()) fail(origin, line_no, "ratios list is empty");
    } else if (key == "seed") {
      config.seed = parse_u64(origin, line_no, key, value);
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else {
      fail(origin, line_no, "unknown key '" + key + "'");
    }
  }
  return config;
}

}  // namespace dpht

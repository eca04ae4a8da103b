#include "tnn/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <string>

namespace tnn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("config: bad value '" + std::string(value) + "' for " + std::string(key));
  }
  return v;
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  auto& a = cfg.admm;
  if (key == "rho0") a.rho0 = parse_number<double>(key, value);
  else if (key == "eta") a.eta = parse_number<double>(key, value);
  else if (key == "tol") a.tol = parse_number<double>(key, value);
  else if (key == "max_iters") a.max_iters = parse_number<int>(key, value);
  else if (key == "rho_max") a.rho_max = parse_number<double>(key, value);
  else if (key == "regularizer") a.regularizer = parse_regularizer(value);
  else if (key == "prox_scaling") a.prox_scaling = parse_fourier_scale(value);
  else if (key == "seed") a.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "budget") cfg.budget.max_elements = parse_number<std::size_t>(key, value);
  else if (key == "spectrum") {
    if (value == "full") a.spectrum = SpectrumMode::full;
    else if (value == "half") a.spectrum = SpectrumMode::half;
    else throw std::invalid_argument("config: spectrum must be full or half");
  } else {
    throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
  }
}

void read_config(std::istream& is, RunConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(cfg, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config " + path.string());
  RunConfig cfg;
  read_config(is, cfg);
  return cfg;
}

}  // namespace tnn

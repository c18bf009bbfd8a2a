#include "irqn/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

#include <fmt/format.h>

#include "irqn/common.hpp"

namespace irqn {
namespace {

using Field = std::variant<double SolverConfig::*, int SolverConfig::*>;

struct NamedField {
  std::string_view name;
  Field member;
};

constexpr std::array<NamedField, 16> kFields{{
    {"alpha", &SolverConfig::alpha},
    {"eta", &SolverConfig::eta},
    {"lambda_", &SolverConfig::lambda_},
    {"beta", &SolverConfig::beta},
    {"gamma", &SolverConfig::gamma},
    {"h", &SolverConfig::h},
    {"r_exp", &SolverConfig::r_exp},
    {"tol", &SolverConfig::tol},
    {"mu_scale", &SolverConfig::mu_scale},
    {"rho0", &SolverConfig::rho0},
    {"rho_decay", &SolverConfig::rho_decay},
    {"rho_min", &SolverConfig::rho_min},
    {"max_iter", &SolverConfig::max_iter},
    {"max_linesearch", &SolverConfig::max_linesearch},
    {"inner_tol_abs", &SolverConfig::inner_tol_abs},
    {"inner_max_iter", &SolverConfig::inner_max_iter},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError, fmt::format("bad value '{}' for key '{}'", text, key));
  }
  return value;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void check_open_unit(std::vector<std::string>& errors, const char* name, double v) {
  if (!(v > 0.0 && v < 1.0)) errors.push_back(fmt::format("{} must lie in (0,1)", name));
}

void check_positive(std::vector<std::string>& errors, const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) errors.push_back(fmt::format("{} must be positive", name));
}

}  // namespace

double SolverConfig::rho_at(int k) const {
  const double scheduled = rho0 * std::pow(rho_decay, static_cast<double>(k));
  return std::max(scheduled, rho_min);
}

std::vector<std::string> validate_config(const SolverConfig& cfg) {
  std::vector<std::string> errors;
  check_positive(errors, "alpha", cfg.alpha);
  check_open_unit(errors, "eta", cfg.eta);
  check_open_unit(errors, "lambda_", cfg.lambda_);
  check_open_unit(errors, "beta", cfg.beta);
  check_open_unit(errors, "gamma", cfg.gamma);
  check_positive(errors, "h", cfg.h);
  check_positive(errors, "r_exp", cfg.r_exp);
  check_positive(errors, "tol", cfg.tol);
  check_positive(errors, "mu_scale", cfg.mu_scale);
  if (!(cfg.rho0 >= 0.0 && cfg.rho0 < 1.0)) errors.emplace_back("rho0 must lie in [0,1)");
  if (!(cfg.rho_decay > 0.0 && cfg.rho_decay <= 1.0)) {
    errors.emplace_back("rho_decay must lie in (0,1]");
  }
  if (!(cfg.rho_min >= 0.0 && cfg.rho_min < 1.0)) errors.emplace_back("rho_min must lie in [0,1)");
  if (cfg.max_iter <= 0) errors.emplace_back("max_iter must be positive");
  if (cfg.max_linesearch <= 0) errors.emplace_back("max_linesearch must be positive");
  check_positive(errors, "inner_tol_abs", cfg.inner_tol_abs);
  if (cfg.inner_max_iter <= 0) errors.emplace_back("inner_max_iter must be positive");
  return errors;
}

std::string to_key_value(const SolverConfig& cfg) {
  std::string out;
  for (const auto& field : kFields) {
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(cfg.*member)>;
          if constexpr (std::is_same_v<T, const double>) {
            out += fmt::format("{}={}\n", field.name, format_double(cfg.*member));
          } else {
            out += fmt::format("{}={}\n", field.name, cfg.*member);
          }
        },
        field.member);
  }
  return out;
}

SolverConfig parse_key_value(std::string_view text, SolverConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: expected key=value", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    bool found = false;
    for (const auto& field : kFields) {
      if (field.name != key) continue;
      found = true;
      std::visit(
          [&](auto member) {
            using T = std::remove_reference_t<decltype(base.*member)>;
            base.*member = parse_number<T>(key, value);
          },
          field.member);
    }
    if (!found) {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: unknown key '{}'", line_no, key));
    }
  }
  return base;
}

SolverConfig load_config(const std::filesystem::path& path, SolverConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_value(ss.str(), base);
}

}  // namespace irqn

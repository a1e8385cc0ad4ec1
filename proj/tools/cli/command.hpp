#pragma once

#include "inertia/conjecture.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace inertia::cli {

enum class Subcommand { Decompose, Flatten, Qsc, Wht, Additive, Onebit, Info, Bounds, Scan };

std::string_view to_string(Subcommand command) noexcept;

enum class OutputFormat { Json, Csv };

struct CommandConfig {
  Subcommand subcommand = Subcommand::Decompose;
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> out;
  OutputFormat format = OutputFormat::Json;

  std::optional<int> n;
  std::optional<double> delta;
  std::optional<std::string> delta_grid;  // "a:b:step"
  std::optional<double> a;
  std::optional<double> b;
  std::optional<int> q;
  std::optional<double> epsilon;
  std::optional<std::string> f;  // hex truth table or JSON array
  std::string kernel = "kl";
  int order = 20;
  double tol = 1e-9;
  ScanMode mode = ScanMode::Exhaustive;
  bool fail_on_violation = false;
  bool prune = false;
  bool records = true;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

// Checks flag combinations and ranges; throws Error(InvalidArgument).
void validate(const CommandConfig& config);

// Expands "a:b:step" into a ascending grid including b; throws InvalidArgument.
std::vector<double> parse_delta_grid(std::string_view grid);

// Executes a validated config. Results go to config.out or `out`; failures are
// reported on `err` as {"error": {"code": ..., "message": ...}}.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (program name first), validates and runs.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inertia::cli

#include "command.hpp"

#include "inertia/bounds.hpp"
#include "inertia/channels.hpp"
#include "inertia/error.hpp"
#include "inertia/hadamard.hpp"
#include "inertia/infomeasures.hpp"
#include "inertia/io.hpp"
#include "inertia/onebit.hpp"
#include "inertia/pic.hpp"

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace inertia::cli {
namespace {

using io::Json;

struct Output {
  Json json;
  std::string csv;
  bool violation = false;
};

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidArgument, message);
}

void write_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << Json{{"error", {{"code", std::string(code)}, {"message", message}}}}.dump() << '\n';
}

std::string matrix_csv(const Matrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += io::format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Json load_input(const CommandConfig& config) { return io::load_document(*config.input); }

JointDistribution input_joint(const CommandConfig& config) {
  return io::joint_from_document(load_input(config));
}

JointDistribution bsc_joint(const CommandConfig& config) {
  return memoryless_bsc(*config.n, *config.delta).uniform_joint();
}

ZeroMassPolicy policy(const CommandConfig& config) {
  return config.prune ? ZeroMassPolicy::Prune : ZeroMassPolicy::Strict;
}

BitFunctionVector parse_bit_function(const std::string& text, Eigen::Index size) {
  const std::string_view trimmed = text;
  if (trimmed.find('[') != std::string_view::npos) {
    return BitFunctionVector::from_values(io::vector_from_json(io::parse_json(text)));
  }
  return BitFunctionVector::from_hex(trimmed, size);
}

Output run_decompose(const CommandConfig& config) {
  const PicDecomposition dec = decompose(input_joint(config), policy(config));
  return {io::to_json(dec), io::vector_csv("sigma", dec.singulars)};
}

Output run_flatten(const CommandConfig& config) {
  const JointDistribution joint = config.input ? input_joint(config) : bsc_joint(config);
  const JointDistribution flat = flatten_pics(joint, config.tol);
  const double sigma1 = decompose(joint).maximal_correlation();
  const int q = static_cast<int>(joint.rows());
  Json json{{"q", q},
            {"sigma1", sigma1},
            {"epsilon", qsc_epsilon_for_correlation(q, sigma1)},
            {"matrix", io::to_json(flat.matrix())}};
  return {std::move(json), matrix_csv(flat.matrix())};
}

Output run_qsc(const CommandConfig& config) {
  int q = 0;
  double epsilon = 0.0;
  if (config.q) {
    q = *config.q;
    epsilon = *config.epsilon;
  } else {
    if (*config.n < 1 || *config.n > 16) invalid("--n must lie in [1, 16]");
    q = 1 << *config.n;
    epsilon = 2.0 * *config.delta * (1.0 - 1.0 / q);
  }
  const ChannelMatrix channel = synthesize_qsc(q, epsilon);
  const JointDistribution joint = joint_from_channel(channel, uniform_distribution(q));
  Json json{{"q", q},
            {"epsilon", epsilon},
            {"sigma1", 1.0 - q * epsilon / (q - 1)},
            {"channel", io::to_json(channel.matrix())},
            {"matrix", io::to_json(joint.matrix())}};
  return {std::move(json), matrix_csv(joint.matrix())};
}

Output run_wht(const CommandConfig& config) {
  const Vector transformed = wht(io::vector_from_document(load_input(config), "vector"));
  return {Json{{"vector", io::to_json(transformed)}}, io::vector_csv("value", transformed)};
}

std::string additive_csv(const AdditiveNoiseChannel& channel) {
  std::string out = "mask,coeff,noise\n";
  for (Eigen::Index s = 0; s < channel.coeffs().size(); ++s) {
    out += std::to_string(s) + ',' + io::format_double(channel.coeffs()(s)) + ',' +
           io::format_double(channel.noise()(s)) + '\n';
  }
  return out;
}

Output run_additive(const CommandConfig& config) {
  if (!config.input) {
    const AdditiveNoiseChannel channel = memoryless_bsc(*config.n, *config.delta);
    return {io::to_json(channel), additive_csv(channel)};
  }
  const Json doc = load_input(config);
  auto from_noise = [](const Vector& noise) {
    return additive_from_noise(block_length_of(static_cast<std::size_t>(noise.size())), noise);
  };
  if (doc.is_object() && doc.contains("channel")) {
    const ParityProbe probe = parity_coeffs_probe(io::channel_from_document(doc), config.tol);
    Json violations = Json::array();
    for (const ParityViolation& v : probe.violations) {
      violations.push_back({{"subset", v.subset},
                            {"point", v.point},
                            {"expectation", v.expectation},
                            {"predicted", v.predicted}});
    }
    Json json{{"parity_changing", probe.parity_changing},
              {"additive", probe.additive},
              {"violations", std::move(violations)}};
    std::string csv;
    if (probe.parity_changing) json["coeffs"] = io::to_json(probe.coeffs);
    if (probe.additive) {
      const AdditiveNoiseChannel channel = from_noise(noise_from_coeffs(probe.coeffs));
      json["noise"] = io::to_json(channel.noise());
      json["pic"] = io::to_json(channel.inertia_components());
      csv = additive_csv(channel);
    } else if (config.format == OutputFormat::Csv) {
      invalid("CSV output needs a parity-changing additive channel");
    }
    return {std::move(json), std::move(csv)};
  }
  AdditiveNoiseChannel channel = [&] {
    if (doc.is_object() && doc.contains("coeffs")) {
      return from_noise(noise_from_coeffs(io::vector_from_json(doc.at("coeffs"))));
    }
    return from_noise(io::vector_from_document(doc, "noise"));
  }();
  return {io::to_json(channel), additive_csv(channel)};
}

Output run_onebit(const CommandConfig& config) {
  const JointDistribution joint = input_joint(config);
  const BitFunctionVector f = parse_bit_function(*config.f, joint.rows());
  const FDivergenceKernel kernel = FDivergenceKernel::by_name(config.kernel);
  const PicDecomposition dec = decompose(joint);
  const double a = f.mean(joint.row_marginal());
  const JointDistribution pair = bit_joint(f, joint);
  Json json{{"a", a},
            {"expected_b", 1.0 - a},
            {"posterior", io::to_json(posterior_of_bit(f, joint))},
            {"bit_joint", io::to_json(pair.matrix())},
            {"kernel", kernel.name()},
            {"f_information", f_information(pair, kernel)},
            {"second_moment", second_moment_via_pics(f, dec, a)}};
  if (is_conforming(joint, config.tol)) {
    const FilterTrace trace = filter_pipeline(f, dec);
    json["filter"] = {{"transformed", io::to_json(trace.transformed)},
                      {"filtered", io::to_json(trace.filtered)},
                      {"posterior", io::to_json(trace.posterior)}};
  }
  return {std::move(json), {}};
}

Output run_info(const CommandConfig& config) {
  const FDivergenceKernel kernel = FDivergenceKernel::by_name(config.kernel);
  if (!config.input) {
    const double sigma1 = 1.0 - 2.0 * *config.delta;
    return {Json{{"kernel", kernel.name()},
                 {"a", *config.a},
                 {"sigma1", sigma1},
                 {"f_information", qsc_f_information(*config.a, sigma1, kernel)}},
            {}};
  }
  const JointDistribution joint = input_joint(config);
  Json json{{"kernel", kernel.name()}, {"f_information", f_information(joint, kernel)}};
  if (config.f) {
    const BitFunctionVector f = parse_bit_function(*config.f, joint.rows());
    Json bit{{"a", f.mean(joint.row_marginal())},
             {"f_information", f_information(bit_joint(f, joint), kernel)}};
    if (kernel.derivatives_at_one().empty()) {
      bit["series"] = nullptr;
    } else {
      const SeriesExpansion series = series_f_information(f, joint, kernel, config.order);
      bit["series"] = {{"partial_sums", series.partial_sums},
                       {"converges", series.converges},
                       {"ratio", series.ratio}};
    }
    json["bit"] = std::move(bit);
  }
  return {std::move(json), {}};
}

Output run_bounds(const CommandConfig& config) {
  const JointDistribution joint = input_joint(config);
  const double a = *config.a;
  const double b = *config.b;
  const FDivergenceKernel kernel = FDivergenceKernel::by_name(config.kernel);
  ZExtremesOptions options;
  options.seed = config.seed;
  const ZExtremes extremes = z_extremes(joint, a, b, options);
  const double rho = decompose(joint, ZeroMassPolicy::Prune).maximal_correlation();
  Json json{{"z_low", extremes.z_low},
            {"z_high", extremes.z_high},
            {"z_upper_closed", z_upper_bound(rho, a, b)},
            {"err_lower", error_prob_lower(a, b, rho)},
            {"err_lower_opt", error_prob_lower_opt(a, rho)},
            {"fi_upper", nullptr},
            {"exact", extremes.exact},
            {"rho_m", rho},
            {"kernel", kernel.name()},
            {"argmin", {{"x", io::to_json(extremes.argmin_x)}, {"y", io::to_json(extremes.argmin_y)}}},
            {"argmax", {{"x", io::to_json(extremes.argmax_x)}, {"y", io::to_json(extremes.argmax_y)}}}};
  if (a > 0.0 && a < 1.0) json["fi_upper"] = fi_upper_unbiased(a, rho, kernel);
  return {std::move(json), {}};
}

Output run_scan(const CommandConfig& config) {
  std::vector<double> deltas;
  if (config.delta) {
    deltas.push_back(*config.delta);
  } else {
    deltas = parse_delta_grid(config.delta_grid.value_or("0.05:0.45:0.05"));
  }
  ScanOptions options;
  options.mode = config.mode;
  options.tol = config.tol;
  options.threads = config.threads;
  options.keep_records = config.records;

  std::vector<ScanReport> reports;
  Output output;
  for (double delta : deltas) {
    reports.push_back(scan(*config.n, delta, options));
    output.violation = output.violation || !reports.back().violations.empty();
  }
  if (config.delta) {
    output.json = io::to_json(reports.front());
  } else {
    output.json = Json{{"reports", Json::array()}};
    for (const ScanReport& r : reports) output.json["reports"].push_back(io::to_json(r));
  }
  output.csv = io::scan_csv(reports);
  return output;
}

Output dispatch(const CommandConfig& config) {
  switch (config.subcommand) {
    case Subcommand::Decompose: return run_decompose(config);
    case Subcommand::Flatten: return run_flatten(config);
    case Subcommand::Qsc: return run_qsc(config);
    case Subcommand::Wht: return run_wht(config);
    case Subcommand::Additive: return run_additive(config);
    case Subcommand::Onebit: return run_onebit(config);
    case Subcommand::Info: return run_info(config);
    case Subcommand::Bounds: return run_bounds(config);
    case Subcommand::Scan: return run_scan(config);
  }
  invalid("unknown subcommand");
}

bool csv_supported(Subcommand command) {
  switch (command) {
    case Subcommand::Decompose:
    case Subcommand::Flatten:
    case Subcommand::Qsc:
    case Subcommand::Wht:
    case Subcommand::Additive:
    case Subcommand::Scan:
      return true;
    default:
      return false;
  }
}

void write_output(const CommandConfig& config, const std::string& text, std::ostream& out) {
  if (!config.out) {
    out << text;
    return;
  }
  std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) {
    throw Error(ErrorCode::OutputWrite, "cannot write '" + config.out->string() + "'");
  }
}

}  // namespace

std::string_view to_string(Subcommand command) noexcept {
  switch (command) {
    case Subcommand::Decompose: return "decompose";
    case Subcommand::Flatten: return "flatten";
    case Subcommand::Qsc: return "qsc";
    case Subcommand::Wht: return "wht";
    case Subcommand::Additive: return "additive";
    case Subcommand::Onebit: return "onebit";
    case Subcommand::Info: return "info";
    case Subcommand::Bounds: return "bounds";
    case Subcommand::Scan: return "scan";
  }
  return "unknown";
}

std::vector<double> parse_delta_grid(std::string_view grid) {
  std::array<double, 3> parts{};
  std::string_view rest = grid;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto colon = rest.find(':');
    if ((k < 2) == (colon == std::string_view::npos)) {
      invalid("--delta-grid expects a:b:step, got '" + std::string(grid) + "'");
    }
    const std::string field(rest.substr(0, colon));
    std::size_t used = 0;
    try {
      parts[k] = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size()) {
      invalid("--delta-grid field '" + field + "' is not a number");
    }
    rest = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
  }
  const auto [lo, hi, step] = parts;
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    invalid("--delta-grid needs a <= b and step > 0");
  }
  std::vector<double> values;
  for (long k = 0;; ++k) {
    // rounded to 12 decimals so 0.05:0.45:0.05 yields 0.15 rather than 0.15000000000000002
    const double v = std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12;
    if (v > hi + 1e-9 * step) break;
    values.push_back(v);
    if (values.size() > 100000) invalid("--delta-grid expands to too many values");
  }
  return values;
}

void validate(const CommandConfig& config) {
  const std::string name(to_string(config.subcommand));
  auto require = [&](bool present, const char* what) {
    if (!present) invalid(name + " needs " + what);
  };
  if (!(config.tol > 0.0) || !std::isfinite(config.tol)) invalid("--tol must be positive");
  if (config.threads < 1) invalid("--threads must be at least 1");
  if (config.order < 2 || config.order > 101) invalid("--order must lie in [2, 101]");
  if (config.format == OutputFormat::Csv && !csv_supported(config.subcommand)) {
    invalid(name + " has no CSV output");
  }
  if (config.kernel != "kl" && config.kernel != "chi2" && config.kernel != "tv") {
    invalid("--kernel must be kl, chi2 or tv");
  }
  if (config.input && config.out) {
    std::error_code ec;
    if (std::filesystem::equivalent(*config.input, *config.out, ec)) {
      invalid("--out must not overwrite --input");
    }
  }
  const bool bsc = config.n.has_value() && config.delta.has_value();
  switch (config.subcommand) {
    case Subcommand::Decompose:
    case Subcommand::Wht:
      require(config.input.has_value(), "--input");
      break;
    case Subcommand::Flatten:
    case Subcommand::Additive:
      require(config.input.has_value() || bsc, "--input, or --n with --delta");
      break;
    case Subcommand::Qsc:
      require((config.q.has_value() && config.epsilon.has_value()) || bsc,
              "--q with --epsilon, or --n with --delta");
      break;
    case Subcommand::Onebit:
      require(config.input.has_value(), "--input");
      require(config.f.has_value(), "--f");
      break;
    case Subcommand::Info:
      require(config.input.has_value() || (config.a.has_value() && config.delta.has_value()),
              "--input, or --a with --delta");
      break;
    case Subcommand::Bounds:
      require(config.input.has_value(), "--input");
      require(config.a.has_value() && config.b.has_value(), "--a and --b");
      break;
    case Subcommand::Scan:
      require(config.n.has_value(), "--n");
      if (config.delta && config.delta_grid) invalid("--delta and --delta-grid are exclusive");
      if (config.delta_grid) parse_delta_grid(*config.delta_grid);
      break;
  }
}

int run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const Output output = dispatch(config);
    const std::string text =
        config.format == OutputFormat::Csv ? output.csv : io::dump(output.json);
    write_output(config, text, out);
    if (output.violation) {
      err << Json{{"warning",
                   {{"code", "CONJECTURE_VIOLATION"},
                    {"message", "scan found functions violating an inequality"}}}}
                 .dump()
          << '\n';
      if (config.fail_on_violation) return kExitViolation;
    }
    return kExitSuccess;
  } catch (const Error& e) {
    write_error(err, inertia::to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    write_error(err, "INTERNAL", e.what());
  }
  return kExitError;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal inertia components, channel synthesis and one-bit information bounds"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  CommandConfig config;
  config.threads = std::max(1U, std::thread::hardware_concurrency());
  std::string format = "json";
  std::string mode = "exhaustive";

  const std::array<std::pair<Subcommand, const char*>, 9> commands{{
      {Subcommand::Decompose, "Principal inertia decomposition of a joint distribution"},
      {Subcommand::Flatten, "Replace nonleading singular values of a conforming joint by sigma_1"},
      {Subcommand::Qsc, "Synthesize a q-ary symmetric channel"},
      {Subcommand::Wht, "Normalized Walsh-Hadamard transform of a vector"},
      {Subcommand::Additive, "Parity coefficients of a binary additive-noise channel"},
      {Subcommand::Onebit, "Posterior, filter trace and information of a one-bit function"},
      {Subcommand::Info, "f-information and its moment expansion"},
      {Subcommand::Bounds, "Extremes and closed-form bounds for Pr{B = B_hat = 0}"},
      {Subcommand::Scan, "Exhaustive Boolean-function scan over a BSC"},
  }};
  for (const auto& [command, description] : commands) {
    app.add_subcommand(std::string(to_string(command)), description)
        ->callback([&config, command = command] { config.subcommand = command; });
  }

  app.add_option("--input", config.input, "Input file (.json, or .csv for a joint matrix)");
  app.add_option("--out", config.out, "Output file (default: standard output)");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--n", config.n, "Block length");
  app.add_option("--delta", config.delta, "BSC crossover probability");
  app.add_option("--delta-grid", config.delta_grid, "Crossover grid a:b:step");
  app.add_option("--a", config.a, "P(B = 0)");
  app.add_option("--b", config.b, "P(B_hat = 0)");
  app.add_option("--q", config.q, "Alphabet size of the symmetric channel");
  app.add_option("--epsilon", config.epsilon, "Crossover of the symmetric channel");
  app.add_option("--f", config.f, "p_{B|X}(0|.) as hex truth table or JSON array");
  app.add_option("--kernel", config.kernel, "kl | chi2 | tv");
  app.add_option("--order", config.order, "Highest order of the moment expansion");
  app.add_option("--tol", config.tol, "Comparison tolerance");
  app.add_option("--mode", mode, "exhaustive | balanced-only")
      ->check(CLI::IsMember({"exhaustive", "balanced-only"}));
  app.add_flag("--fail-on-violation", config.fail_on_violation,
               "Exit with status 2 when a scan finds a violation");
  app.add_flag("--prune", config.prune, "Drop zero-mass rows and columns before decomposing");
  app.add_flag("!--no-records", config.records, "Omit per-function records from scan reports");
  app.add_option("--seed", config.seed, "Seed for randomized search");
  app.add_option("--threads", config.threads, "Worker threads");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    write_error(err, inertia::to_string(ErrorCode::InvalidArgument), e.what());
    return kExitError;
  }
  config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  config.mode = scan_mode_from_string(mode);
  return run(config, out, err);
}

}  // namespace inertia::cli

#include "inertia/io.hpp"

#include "inertia/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace inertia::io {
namespace {

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorCode::InputParse, message);
}

double number_from_json(const Json& value) {
  if (!value.is_number()) parse_error("expected a number, found " + value.dump());
  return value.get<double>();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_csv_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
    std::ostringstream os;
    os << "line " << line << ": '" << field << "' is not a number";
    parse_error(os.str());
  }
  return value;
}

const char* violation_name(ViolationKind kind) {
  return kind == ViolationKind::ExceedsBound ? "exceeds_bound" : "exceeds_tilde";
}

std::string table_hex(int n, std::uint64_t table) {
  return BooleanFunction::from_integer(n, table).to_hex();
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

Matrix parse_csv_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_number = 0;
  while (!text.empty()) {
    const auto newline = text.find('\n');
    const std::string_view line = trim(text.substr(0, newline));
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
    ++line_number;
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_csv_number(rest.substr(0, comma), line_number));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream os;
      os << "line " << line_number << ": expected " << rows.front().size() << " columns, found "
         << row.size();
      parse_error(os.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_error("CSV input holds no rows");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Json load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (path.extension() == ".csv") {
    return Json{{"matrix", to_json(parse_csv_matrix(text))}};
  }
  return parse_json(text);
}

Matrix matrix_from_json(const Json& value) {
  if (!value.is_array() || value.empty()) parse_error("expected a non-empty array of rows");
  const std::size_t rows = value.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = value[i];
    if (!row.is_array() || row.empty()) parse_error("matrix rows must be non-empty arrays");
    if (i == 0) cols = row.size();
    if (row.size() != cols) parse_error("matrix rows differ in length");
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          number_from_json(value[i][j]);
    }
  }
  return m;
}

Vector vector_from_json(const Json& value) {
  if (!value.is_array() || value.empty()) parse_error("expected a non-empty array of numbers");
  Vector v(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number_from_json(value[i]);
  }
  return v;
}

JointDistribution joint_from_document(const Json& doc) {
  if (!doc.is_object()) parse_error("expected an object with \"matrix\" or \"channel\"");
  if (doc.contains("matrix")) return validate_joint(matrix_from_json(doc.at("matrix")));
  if (doc.contains("channel")) {
    if (!doc.contains("input")) parse_error("\"channel\" needs an \"input\" distribution");
    const ChannelMatrix channel = ChannelMatrix::validate(matrix_from_json(doc.at("channel")));
    return joint_from_channel(channel, vector_from_json(doc.at("input")));
  }
  parse_error("expected an object with \"matrix\" or \"channel\"");
}

ChannelMatrix channel_from_document(const Json& doc) {
  if (!doc.is_object()) parse_error("expected an object with \"channel\" or \"matrix\"");
  if (doc.contains("channel")) return ChannelMatrix::validate(matrix_from_json(doc.at("channel")));
  if (doc.contains("matrix")) {
    return channel_from_joint(validate_joint(matrix_from_json(doc.at("matrix")))).channel;
  }
  parse_error("expected an object with \"channel\" or \"matrix\"");
}

Vector vector_from_document(const Json& doc, std::string_view key) {
  const std::string name(key);
  if (doc.is_object()) {
    if (!doc.contains(name)) parse_error("missing \"" + name + "\"");
    return vector_from_json(doc.at(name));
  }
  return vector_from_json(doc);
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const PicDecomposition& dec) {
  return Json{{"sigma", to_json(dec.singulars)},
              {"pic", to_json(dec.inertia_components())},
              {"rho_m", dec.maximal_correlation()},
              {"U", to_json(dec.left)},
              {"V", to_json(dec.right)},
              {"reconstruction_error", dec.reconstruction_error}};
}

Json to_json(const AdditiveNoiseChannel& channel) {
  return Json{{"n", channel.block_length()},
              {"coeffs", to_json(channel.coeffs())},
              {"noise", to_json(channel.noise())},
              {"pic", to_json(channel.inertia_components())}};
}

Json to_json(const ZExtremes& extremes) {
  return Json{{"z_low", extremes.z_low},
              {"z_high", extremes.z_high},
              {"exact", extremes.exact},
              {"argmin", {{"x", to_json(extremes.argmin_x)}, {"y", to_json(extremes.argmin_y)}}},
              {"argmax", {{"x", to_json(extremes.argmax_x)}, {"y", to_json(extremes.argmax_y)}}}};
}

Json to_json(const ScanReport& report) {
  Json records = Json::array();
  for (const ScanRecord& r : report.records) {
    records.push_back({{"table", table_hex(report.n, r.table)},
                       {"expected_b", r.expected_b},
                       {"mi", r.mi},
                       {"mi_tilde", r.mi_tilde}});
  }
  Json violations = Json::array();
  for (const ScanViolation& v : report.violations) {
    violations.push_back({{"table", table_hex(report.n, v.table)},
                          {"kind", violation_name(v.kind)},
                          {"mi", v.mi},
                          {"reference", v.reference}});
  }
  return Json{{"n", report.n},
              {"delta", report.delta},
              {"mode", std::string(to_string(report.mode))},
              {"tol", report.tol},
              {"bound_1mHb", report.bound},
              {"functions_scanned", report.functions_scanned},
              {"max_mi", report.max_mi},
              {"argmax", table_hex(report.n, report.argmax)},
              {"min_tilde_gap", report.min_tilde_gap},
              {"min_tilde_gap_table", table_hex(report.n, report.min_tilde_gap_table)},
              {"dictator_deviation", report.dictator_deviation},
              {"violations", std::move(violations)},
              {"records", std::move(records)}};
}

std::string dump(const Json& value) { return value.dump(2) + "\n"; }

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw Error(ErrorCode::NumericalFailure, "cannot format number");
  return std::string(buffer.data(), end);
}

std::string vector_csv(std::string_view header, const Vector& v) {
  std::string out(header);
  out += '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += format_double(v(i));
    out += '\n';
  }
  return out;
}

std::string scan_csv(const std::vector<ScanReport>& reports) {
  std::string out = "delta,bound_1mHb,max_mi,max_mi_tilde_gap,argmax_hex\n";
  for (const ScanReport& r : reports) {
    out += format_double(r.delta) + ',' + format_double(r.bound) + ',' +
           format_double(r.max_mi) + ',' + format_double(r.min_tilde_gap) + ',' +
           table_hex(r.n, r.argmax) + '\n';
  }
  return out;
}

}  // namespace inertia::io

#pragma once

// JSON and CSV exchange formats.
//
//   joint:    {"matrix": [[...], ...]}
//   channel:  {"channel": [[...], ...], "input": [...]}
//   CSV:      one comma-separated row per x; blank lines and '#' lines skipped
//
// Parse failures throw Error(InputParse); shape problems throw the validation
// error of the object being built.

#include "inertia/bounds.hpp"
#include "inertia/channels.hpp"
#include "inertia/conjecture.hpp"
#include "inertia/distribution.hpp"
#include "inertia/pic.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace inertia::io {

using Json = nlohmann::json;

Json parse_json(std::string_view text);
Matrix parse_csv_matrix(std::string_view text);

// Reads a file as JSON, or as a CSV matrix wrapped in {"matrix": ...} when
// the extension is .csv.
Json load_document(const std::filesystem::path& path);

Matrix matrix_from_json(const Json& value);
Vector vector_from_json(const Json& value);

// {"matrix": M}, or {"channel": W, "input": p} composed into P = D_p W.
JointDistribution joint_from_document(const Json& doc);

// {"channel": W}, or {"matrix": P} read as P_{Y|X} via strict row
// normalization.
ChannelMatrix channel_from_document(const Json& doc);

// doc[key] when doc is an object holding it, otherwise doc itself.
Vector vector_from_document(const Json& doc, std::string_view key);

Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const PicDecomposition& dec);
Json to_json(const AdditiveNoiseChannel& channel);
Json to_json(const ZExtremes& extremes);
Json to_json(const ScanReport& report);

// Indented JSON with shortest round-trip doubles and a trailing newline.
std::string dump(const Json& value);

// Shortest decimal that parses back to the same double.
std::string format_double(double value);

// Single-column CSV with a header line.
std::string vector_csv(std::string_view header, const Vector& v);

// Columns delta, bound_1mHb, max_mi, max_mi_tilde_gap, argmax_hex; one row
// per report.
std::string scan_csv(const std::vector<ScanReport>& reports);

}  // namespace inertia::io

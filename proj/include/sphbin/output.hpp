// SPDX-License-Identifier: Apache-2.0
//
// Machine-readable command output.  Every floating-point number is emitted
// with 17 significant digits so the byte stream round-trips to the exact
// double; row order and key order are fixed by construction, which makes the
// output suitable for golden-file comparison.

#ifndef SPHBIN_OUTPUT_HPP
#define SPHBIN_OUTPUT_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sphbin::output {

inline constexpr const char* kSchemaVersion = "1";

/// monostate renders as "undefined" in CSV and null in JSON.
using Value = std::variant<std::monostate, long long, double, std::string>;

struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, Value>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

/// %.17g with -0 canonicalized to 0.
std::string format_double(double x);

std::string format_value(const Value& value);

/// Comment block with schema version, command and parameters, then a header
/// row and the data rows.
std::string to_csv(const OutputRecord& record);

std::string to_json(const OutputRecord& record);

}  // namespace sphbin::output

#endif  // SPHBIN_OUTPUT_HPP

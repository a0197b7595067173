// SPDX-License-Identifier: Apache-2.0

#include "sphbin/output.hpp"

#include <cmath>
#include <cstdio>

namespace sphbin::output {

namespace {

std::string json_escape(const std::string& s)
{
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string json_value(const Value& value)
{
    if (std::holds_alternative<std::monostate>(value)) return "null";
    if (std::holds_alternative<std::string>(value))
        return "\"" + json_escape(std::get<std::string>(value)) + "\"";
    // JSON has no literal for non-finite numbers; quote them.
    if (const auto* d = std::get_if<double>(&value); d && !std::isfinite(*d))
        return "\"" + format_double(*d) + "\"";
    return format_value(value);
}

}  // namespace

std::string format_double(double x)
{
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_value(const Value& value)
{
    if (std::holds_alternative<std::monostate>(value)) return "undefined";
    if (const auto* i = std::get_if<long long>(&value)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&value)) return format_double(*d);
    return std::get<std::string>(value);
}

std::string to_csv(const OutputRecord& record)
{
    std::string out;
    out += "# schema_version,";
    out += kSchemaVersion;
    out += "\n# command,";
    out += record.command;
    out += "\n";
    for (const auto& [key, value] : record.params) {
        out += "# ";
        out += key;
        out += ",";
        out += format_value(value);
        out += "\n";
    }
    for (std::size_t c = 0; c < record.columns.size(); ++c) {
        if (c) out += ",";
        out += record.columns[c];
    }
    out += "\n";
    for (const auto& row : record.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += format_value(row[c]);
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const OutputRecord& record)
{
    std::string out;
    out += "{\n";
    out += "  \"schema_version\": \"";
    out += kSchemaVersion;
    out += "\",\n";
    out += "  \"command\": \"" + json_escape(record.command) + "\",\n";
    out += "  \"params\": {";
    for (std::size_t i = 0; i < record.params.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + json_escape(record.params[i].first) + "\": " +
               json_value(record.params[i].second);
    }
    out += "},\n";
    out += "  \"rows\": [";
    for (std::size_t r = 0; r < record.rows.size(); ++r) {
        out += (r == 0) ? "\n" : ",\n";
        out += "    {";
        for (std::size_t c = 0; c < record.rows[r].size(); ++c) {
            if (c) out += ", ";
            out += "\"" + json_escape(record.columns[c]) + "\": " + json_value(record.rows[r][c]);
        }
        out += "}";
    }
    out += record.rows.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

}  // namespace sphbin::output

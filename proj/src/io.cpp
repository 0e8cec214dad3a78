#include "conicosc/io.hpp"

#include "conicosc/version.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace conicosc::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    return std::get<std::string>(c);
}

} // namespace

void write_csv(std::ostream& os, const Meta& meta, const Table& table) {
    os << "# conicosc " << CONICOSC_VERSION << " | " << meta.command;
    for (const auto& [k, v] : meta.params) os << " | " << k << "=" << v;
    os << "\n";
    for (size_t i = 0; i < table.columns.size(); ++i)
        os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << cell_text(row[i]) << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
}

void write_json(std::ostream& os, const Meta& meta, const Table& table) {
    nlohmann::ordered_json j;
    j["tool"] = "conicosc";
    j["version"] = CONICOSC_VERSION;
    j["command"] = meta.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta.params) params[k] = v;
    j["params"] = params;
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<long long>(c)) {
                rec[table.columns[i]] = std::get<long long>(c);
            } else if (std::holds_alternative<double>(c)) {
                double v = std::get<double>(c);
                if (std::isfinite(v)) {
                    // round through the 12-digit text form so both formats
                    // carry the same values
                    rec[table.columns[i]] = std::strtod(format_double(v).c_str(), nullptr);
                } else {
                    rec[table.columns[i]] = format_double(v);
                }
            } else {
                rec[table.columns[i]] = std::get<std::string>(c);
            }
        }
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    os << j.dump(2) << "\n";
}

} // namespace conicosc::io

#include "sharpfr/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sharpfr {

Decimal5 Decimal5::round_up(double x) {
    return Decimal5{static_cast<std::int64_t>(std::ceil(x * 1e5))};
}

Decimal5 Decimal5::round_down(double x) {
    return Decimal5{static_cast<std::int64_t>(std::floor(x * 1e5))};
}

std::string Decimal5::str() const {
    const std::int64_t mag = units < 0 ? -units : units;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%lld.%05lld", units < 0 ? "-" : "",
                  static_cast<long long>(mag / 100000), static_cast<long long>(mag % 100000));
    return buf;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

CoeffTable::CoeffTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

void CoeffTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("row length does not match column count");
    }
    rows_.push_back(std::move(row));
}

std::size_t CoeffTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == name) return i;
    }
    throw std::out_of_range("no column named " + name);
}

const Cell& CoeffTable::at(std::size_t row, const std::string& column) const {
    return rows_.at(row).at(column_index(column));
}

namespace {

struct CsvCell {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const Decimal5& v) const { return v.str(); }
    std::string operator()(const std::string& v) const { return v; }
};

struct JsonCell {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(const Decimal5& v) const { return v.to_double(); }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
};

}  // namespace

std::string CoeffTable::to_csv() const {
    std::string out;
    bool first = true;
    for (const auto& c : columns_) {
        if (c.json_only) continue;
        if (!first) out += ',';
        out += c.name;
        first = false;
    }
    out += '\n';
    for (const auto& row : rows_) {
        first = true;
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (columns_[i].json_only) continue;
            if (!first) out += ',';
            out += std::visit(CsvCell{}, row[i]);
            first = false;
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json CoeffTable::to_json() const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            obj[columns_[i].name] = std::visit(JsonCell{}, row[i]);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

}  // namespace sharpfr

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace sharpfr {

/// A decimal with five fractional digits, stored exactly as an integer count of 1e-5.
struct Decimal5 {
    std::int64_t units = 0;

    static Decimal5 round_up(double x);
    static Decimal5 round_down(double x);
    double to_double() const { return static_cast<double>(units) / 1e5; }
    std::string str() const;
    friend bool operator==(const Decimal5&, const Decimal5&) = default;
};

using Cell = std::variant<std::monostate, std::int64_t, double, Decimal5, std::string>;

/// Column-oriented table with CSV and JSON serializers.
///
/// Columns flagged `json_only` carry diagnostic values (error bounds, raw estimates) that the
/// CSV layout omits.
class CoeffTable {
public:
    struct Column {
        std::string name;
        bool json_only = false;
    };

    CoeffTable() = default;
    explicit CoeffTable(std::vector<Column> columns);

    void add_row(std::vector<Cell> row);

    const std::vector<Column>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    std::size_t column_index(const std::string& name) const;
    const Cell& at(std::size_t row, const std::string& column) const;

    std::string to_csv() const;
    nlohmann::ordered_json to_json() const;

private:
    std::vector<Column> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// Shortest round-trip representation used by every CSV writer in the project.
std::string format_double(double x);

}  // namespace sharpfr

// Deterministic tabular output: CSV and JSON writers plus the matching
// readers.  Numbers are written with 17 significant digits so a read-back
// reproduces the doubles bit for bit; no timestamps anywhere.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wqed {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;  // ordered
    std::vector<std::string> columns;                       // names with unit tags
    std::vector<std::vector<double>> rows;

    void add_meta(std::string key, std::string value) {
        meta.emplace_back(std::move(key), std::move(value));
    }
    const std::string* find_meta(const std::string& key) const;
};

bool operator==(const Table& a, const Table& b);

std::string format_double(double v);
std::uint64_t fnv1a(const std::string& s);

void write_table(const Table& t, const std::string& path, const std::string& format);
Table read_table(const std::string& path);  // format inferred from extension

}  // namespace wqed

#include "table.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wqed {

const std::string* Table::find_meta(const std::string& key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return &v;
    return nullptr;
}

bool operator==(const Table& a, const Table& b) {
    return a.meta == b.meta && a.columns == b.columns && a.rows == b.rows;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

static void write_csv(const Table& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    for (const auto& [k, v] : t.meta) out << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << t.columns[c] << (c + 1 == t.columns.size() ? "" : ",");
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_double(row[c]) << (c + 1 == row.size() ? "" : ",");
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

static void write_json(const Table& t, const std::string& path) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    for (const auto& [k, v] : t.meta) meta[k] = v;
    meta["columns"] = t.columns;
    j["meta"] = meta;
    j["data"] = t.rows;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

void write_table(const Table& t, const std::string& path, const std::string& format) {
    if (format == "csv")
        write_csv(t, path);
    else if (format == "json")
        write_json(t, path);
    else
        throw std::invalid_argument("unknown output format: " + format);
}

static double parse_double(const std::string& tok, const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str()) throw IoError("bad number '" + tok + "' in " + path);
    return v;
}

static Table read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    Table t;
    std::string line;
    bool header_done = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos)
                t.add_meta(line.substr(2, eq - 2), line.substr(eq + 3));
            continue;
        }
        std::vector<std::string> toks;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) toks.push_back(tok);
        if (!header_done) {
            t.columns = toks;
            header_done = true;
        } else {
            std::vector<double> row;
            row.reserve(toks.size());
            for (const auto& s : toks) row.push_back(parse_double(s, path));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

static Table read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad json in " + path + ": " + e.what());
    }
    Table t;
    for (const auto& [k, v] : j.at("meta").items()) {
        if (k == "columns") continue;
        t.add_meta(k, v.get<std::string>());
    }
    t.columns = j.at("meta").at("columns").get<std::vector<std::string>>();
    t.rows = j.at("data").get<std::vector<std::vector<double>>>();
    return t;
}

Table read_table(const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return read_json(path);
    return read_csv(path);
}

}  // namespace wqed

#include "fpt/pdf_table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fpt {

long PdfTable::negative_count() const {
    long n = 0;
    for (int f : flags) n += (f & 1);
    return n;
}

void PdfTable::validate() const {
    if (grid.size() != values.size() || grid.size() != flags.size())
        throw std::invalid_argument("PdfTable: grid/values/flags size mismatch");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("PdfTable: grid must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("PdfTable: non-finite value");
}

namespace io {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(const PdfTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("write_csv: cannot open " + path);
    out << "# source=" << table.source << "\n";
    for (const auto& [k, v] : table.params) out << "# " << k << "=" << v << "\n";
    out << "t,g_hat,flags\n";
    for (std::size_t i = 0; i < table.grid.size(); ++i)
        out << format_g17(table.grid[i]) << ',' << format_g17(table.values[i]) << ','
            << table.flags[i] << "\n";
    if (!out) throw io_error("write_csv: write failed for " + path);
}

PdfTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("read_csv: cannot open " + path);
    PdfTable t;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto body = line.substr(1);
            auto eq = body.find('=');
            if (eq == std::string::npos) continue;
            auto key = body.substr(0, eq);
            key.erase(0, key.find_first_not_of(" \t"));
            key.erase(key.find_last_not_of(" \t") + 1);
            auto val = body.substr(eq + 1);
            if (key == "source")
                t.source = val;
            else
                t.params[key] = val;
            continue;
        }
        if (!header_seen) {  // column header row
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
            throw std::runtime_error("read_csv: malformed row in " + path);
        t.grid.push_back(std::stod(a));
        t.values.push_back(std::stod(b));
        t.flags.push_back(std::stoi(c));
    }
    t.validate();
    return t;
}

void write_json(const PdfTable& table, const std::string& path) {
    nlohmann::json j;
    j["source"] = table.source;
    j["params"] = table.params;
    // decimal strings keep the 17-digit round-trip contract independent of
    // the JSON library's own number formatting
    nlohmann::json grid = nlohmann::json::array(), values = nlohmann::json::array();
    for (double g : table.grid) grid.push_back(format_g17(g));
    for (double v : table.values) values.push_back(format_g17(v));
    j["t"] = std::move(grid);
    j["values"] = std::move(values);
    j["flags"] = table.flags;
    std::ofstream out(path);
    if (!out) throw io_error("write_json: cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw io_error("write_json: write failed for " + path);
}

PdfTable read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("read_json: cannot open " + path);
    nlohmann::json j;
    in >> j;
    PdfTable t;
    t.source = j.value("source", "");
    if (j.contains("params"))
        for (auto& [k, v] : j["params"].items()) t.params[k] = v.get<std::string>();
    for (auto& g : j["t"]) t.grid.push_back(std::stod(g.get<std::string>()));
    for (auto& v : j["values"]) t.values.push_back(std::stod(v.get<std::string>()));
    for (auto& f : j["flags"]) t.flags.push_back(f.get<int>());
    t.validate();
    return t;
}

}  // namespace io
}  // namespace fpt

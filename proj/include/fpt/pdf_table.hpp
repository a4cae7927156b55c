#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpt {

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Density values sampled on a strictly increasing time grid, with a source
/// tag and a parameter echo that travels with the table through CSV/JSON.
/// Flag bit 0 marks entries whose raw value was negative.
struct PdfTable {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<int> flags;
    std::string source;  ///< "approximant" | "simulation" | "reference"
    std::map<std::string, std::string> params;

    long negative_count() const;
    void validate() const;  ///< strictly increasing grid, finite values
};

namespace io {

/// File open/read/write failures, kept apart from value errors so the CLI
/// can map them to its I/O exit code.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17-significant-digit decimal formatting; round-trips any double exactly.
std::string format_g17(double x);

void write_csv(const PdfTable& table, const std::string& path);
PdfTable read_csv(const std::string& path);

void write_json(const PdfTable& table, const std::string& path);
PdfTable read_json(const std::string& path);

}  // namespace io
}  // namespace fpt

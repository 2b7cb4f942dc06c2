#pragma once

// Locale-independent CSV helpers. Doubles are printed with the shortest
// representation that round-trips, so outputs are byte-stable across runs.

#include <string>
#include <vector>

namespace hsplus {

std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::string header) : buffer_(std::move(header)) { buffer_ += '\n'; }

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        (append_field(to_field(fields), first), ...);
        buffer_ += '\n';
    }

    const std::string& str() const { return buffer_; }
    void write_file(const std::string& path) const;

private:
    static std::string to_field(double v) { return format_double(v); }
    static std::string to_field(int v) { return std::to_string(v); }
    static std::string to_field(long v) { return std::to_string(v); }
    static std::string to_field(bool v) { return v ? "1" : "0"; }
    static std::string to_field(const std::string& v) { return v; }
    static std::string to_field(const char* v) { return v; }
    void append_field(const std::string& f, bool& first) {
        if (!first) buffer_ += ',';
        first = false;
        buffer_ += f;
    }
    std::string buffer_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

}  // namespace hsplus

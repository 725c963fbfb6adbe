#include "dicke/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace dicke {

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_number(std::optional<double> v) {
    return v ? csv_number(*v) : std::string("nan");
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_escape(cells[i]);
    }
    out_ << "\r\n";
    if (!out_) throw std::runtime_error("CSV write failed");
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw std::runtime_error("CSV close failed");
}

}  // namespace dicke

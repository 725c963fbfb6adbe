// csv.hpp — RFC-4180 CSV output, UTF-8, '.' decimal separator, doubles at 17
// significant digits (lossless round-trip).

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace dicke {

std::string csv_number(double v);
std::string csv_number(std::optional<double> v);  // empty optional -> "nan"
std::string csv_escape(const std::string& field);

class CsvWriter {
  public:
    explicit CsvWriter(const std::filesystem::path& path);

    void write_row(const std::vector<std::string>& cells);
    void close();

  private:
    std::ofstream out_;
};

}  // namespace dicke

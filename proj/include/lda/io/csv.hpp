#ifndef LDA_IO_CSV_HPP
#define LDA_IO_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace lda {

/// Shortest representation that round-trips the double exactly (%.17g).
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

/// Writes header + rows, comma separated, LF line endings.
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Reads a comma-separated file written by write_csv (no quoting/escapes).
CsvTable read_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lda

#endif

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ccsim::cli {

/// RFC 4180: fields quoted when they hold a comma, quote or line break;
/// records end in CRLF.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::vector<std::string> header);

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
    std::size_t columns_;
};

std::string csv_quote(std::string_view field);

/// 17 significant digits.
std::string csv_real(double v);

using CsvTable = std::vector<std::vector<std::string>>;

/// Parses RFC 4180 text (CRLF or LF records). Throws std::runtime_error on
/// an unterminated quote.
CsvTable parse_csv(std::string_view text);

/// Copy of `table` without the column whose header is `name`.
CsvTable drop_column(const CsvTable& table, std::string_view name);

}  // namespace ccsim::cli

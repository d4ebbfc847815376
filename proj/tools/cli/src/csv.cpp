#include "ccsim_cli/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace ccsim::cli {

std::string csv_quote(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out)
    , columns_(header.size())
{
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields)
{
    if (fields.size() != columns_)
        throw std::logic_error("csv row has the wrong number of fields");
    for (std::size_t k = 0; k < fields.size(); ++k)
        out_ << (k ? "," : "") << csv_quote(fields[k]);
    out_ << "\r\n";
}

CsvTable parse_csv(std::string_view text)
{
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    std::size_t i = 0;
    auto end_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        table.push_back(std::move(record));
        record.clear();
        any = false;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            ++i;
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            end_record();
            ++i;
        } else if (c == '\n') {
            end_record();
        } else {
            field += c;
            any = true;
        }
        ++i;
    }
    if (quoted)
        throw std::runtime_error("csv: unterminated quoted field");
    if (any || !field.empty() || !record.empty())
        end_record();
    return table;
}

CsvTable drop_column(const CsvTable& table, std::string_view name)
{
    if (table.empty())
        return table;
    const auto& header = table.front();
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        return table;
    const auto col = static_cast<std::size_t>(it - header.begin());
    CsvTable out;
    for (const auto& rec : table) {
        auto copy = rec;
        if (col < copy.size())
            copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(col));
        out.push_back(std::move(copy));
    }
    return out;
}

}  // namespace ccsim::cli

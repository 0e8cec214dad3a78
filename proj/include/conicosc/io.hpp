#ifndef CONICOSC_IO_HPP
#define CONICOSC_IO_HPP

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace conicosc::io {

// One output cell.  Doubles are rendered at 12 significant digits with the
// literal "NaN" at poles, so identical configs give byte-identical files.
using Cell = std::variant<long long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Meta {
    std::string command; // echo of the invocation
    std::vector<std::pair<std::string, std::string>> params;
};

std::string format_double(double v); // %.12g, NaN -> "NaN"

void write_csv(std::ostream& os, const Meta& meta, const Table& table);
void write_json(std::ostream& os, const Meta& meta, const Table& table);

} // namespace conicosc::io

#endif

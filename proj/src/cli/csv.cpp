#include "spectral_clt/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "spectral_clt/errors.hpp"

namespace spectral_clt {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Eigen::MatrixXd read_numeric_csv(std::istream& in, const CsvOptions& options,
                                 const std::string& source) {
  std::vector<double> cells;
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (options.header && line_no == 1) continue;
    if (trim(line).empty()) continue;
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view cell = trim(rest.substr(0, comma));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        std::ostringstream msg;
        msg << source << ":" << line_no << ": column " << count + 1 << " is not a number ('"
            << cell << "')";
        throw InputError(msg.str());
      }
      cells.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      columns = count;
    } else if (count != columns) {
      std::ostringstream msg;
      msg << source << ":" << line_no << ": expected " << columns << " columns, found " << count;
      throw InputError(msg.str());
    }
    ++rows;
  }
  if (rows == 0) throw InputError(source + ": no data rows");
  Eigen::MatrixXd out(rows, columns);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < columns; ++j) out(i, j) = cells[i * columns + j];
  return out;
}

Eigen::MatrixXd read_numeric_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_numeric_csv(in, options, path);
}

}  // namespace spectral_clt

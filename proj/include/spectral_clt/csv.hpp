#pragma once

#include <istream>
#include <string>

#include <Eigen/Dense>

namespace spectral_clt {

struct CsvOptions {
  bool header = false;  ///< skip the first line
};

/// Reads a rectangular table of real numbers. Blank lines are ignored.
/// Throws InputError naming the line and column of ragged rows or
/// non-numeric cells.
Eigen::MatrixXd read_numeric_csv(std::istream& in, const CsvOptions& options = {},
                                 const std::string& source = "<stream>");

Eigen::MatrixXd read_numeric_csv_file(const std::string& path, const CsvOptions& options = {});

}  // namespace spectral_clt

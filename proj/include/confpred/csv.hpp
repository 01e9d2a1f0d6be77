#pragma once

#include <iosfwd>
#include <string>

#include "confpred/types.hpp"

namespace confpred {

/// Reads a dataset from CSV with header "x1,...,xd,y", one observation per
/// row, IEEE-754 decimal text. Throws input_error naming the offending line
/// on malformed input.
DataSet read_dataset_csv(const std::string& path);
DataSet read_dataset_csv(std::istream& in, const std::string& name);

/// Reads query points from CSV with header "x1,...,xd".
Eigen::MatrixXd read_query_csv(const std::string& path);
Eigen::MatrixXd read_query_csv(std::istream& in, const std::string& name);

void write_dataset_csv(const std::string& path, const DataSet& data);

/// Round-trip safe rendering of a double; infinities become "inf"/"-inf".
std::string format_number(double v);

}  // namespace confpred

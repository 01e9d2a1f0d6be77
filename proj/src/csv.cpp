#include "confpred/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace confpred {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& name, int line_no) {
  const std::string t = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw input_error(name + ": line " + std::to_string(line_no) + ": bad number '" + t + "'");
  return v;
}

// Reads a matrix with header "x1,...,xd[,y]"; with_response selects the form.
Eigen::MatrixXd read_table(std::istream& in, const std::string& name, bool with_response) {
  std::string line;
  if (!std::getline(in, line)) throw input_error(name + ": empty file");
  const auto header = split_line(line);
  const int ncol = static_cast<int>(header.size());
  const int d = with_response ? ncol - 1 : ncol;
  if (d < 1) throw input_error(name + ": line 1: header needs at least one feature column");
  for (int j = 0; j < d; ++j) {
    const std::string expect = "x" + std::to_string(j + 1);
    if (trim(header[j]) != expect)
      throw input_error(name + ": line 1: expected column '" + expect + "', got '" +
                        trim(header[j]) + "'");
  }
  if (with_response && trim(header[ncol - 1]) != "y")
    throw input_error(name + ": line 1: expected last column 'y'");

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_line(line);
    if (static_cast<int>(fields.size()) != ncol)
      throw input_error(name + ": line " + std::to_string(line_no) + ": expected " +
                        std::to_string(ncol) + " fields, got " + std::to_string(fields.size()));
    std::vector<double> row(ncol);
    for (int j = 0; j < ncol; ++j) {
      row[j] = parse_number(fields[j], name, line_no);
      if (!std::isfinite(row[j]))
        throw input_error(name + ": line " + std::to_string(line_no) + ": non-finite entry");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw input_error(name + ": no data rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), ncol);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < ncol; ++j) m(static_cast<Eigen::Index>(i), j) = rows[i][j];
  return m;
}

}  // namespace

DataSet read_dataset_csv(std::istream& in, const std::string& name) {
  const Eigen::MatrixXd m = read_table(in, name, true);
  return DataSet(m.leftCols(m.cols() - 1), m.col(m.cols() - 1));
}

DataSet read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  return read_dataset_csv(in, path);
}

Eigen::MatrixXd read_query_csv(std::istream& in, const std::string& name) {
  return read_table(in, name, false);
}

Eigen::MatrixXd read_query_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  return read_query_csv(in, path);
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_dataset_csv(const std::string& path, const DataSet& data) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot open '" + path + "' for writing");
  for (Eigen::Index j = 0; j < data.dim(); ++j) out << "x" << (j + 1) << ",";
  out << "y\n";
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) out << format_number(data.x(i, j)) << ",";
    out << format_number(data.y[i]) << "\n";
  }
}

}  // namespace confpred

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fracgreen/errors.hpp"
#include "fracgreen/field.hpp"

namespace fracgreen {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const SolutionField& f) {
  const bool with_err = !f.err_est.empty();
  os << (with_err ? "x,y,value,err_est\n" : "x,y,value\n");
  for (std::size_t j = 0; j < f.ny(); ++j) {
    for (std::size_t i = 0; i < f.nx(); ++i) {
      const std::size_t k = j * f.nx() + i;
      os << format_double(f.x[i]) << ',' << format_double(f.y[j]) << ','
         << format_double(f.values[k]);
      if (with_err) os << ',' << format_double(f.err_est[k]);
      os << '\n';
    }
  }
}

void write_csv(const std::string& path, const SolutionField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  write_csv(os, f);
}

namespace {
double parse(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error("csv: cannot parse number '" + s + "'");
  return v;
}
}  // namespace

SolutionField read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("csv: empty input");
  const bool with_err = line == "x,y,value,err_est";
  if (!with_err && line != "x,y,value") throw Error("csv: unexpected header '" + line + "'");
  SolutionField f;
  std::vector<double> xs, ys;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(parse(cell));
    if (row.size() != (with_err ? 4u : 3u)) throw Error("csv: wrong column count");
    xs.push_back(row[0]);
    ys.push_back(row[1]);
    f.values.push_back(row[2]);
    if (with_err) f.err_est.push_back(row[3]);
  }
  // Rows run over x fastest; recover the axes.
  for (std::size_t k = 0; k < xs.size() && (k == 0 || ys[k] == ys[0]); ++k) f.x.push_back(xs[k]);
  if (f.x.empty()) return f;
  for (std::size_t k = 0; k < ys.size(); k += f.x.size()) f.y.push_back(ys[k]);
  if (f.x.size() * f.y.size() != f.values.size()) throw Error("csv: grid is not rectangular");
  return f;
}

SolutionField read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  return read_csv(is);
}

}  // namespace fracgreen

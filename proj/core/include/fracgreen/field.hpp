#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fracgreen {

/// Values on a tensor grid, stored row-major over y then x: values[j * nx + i].
struct SolutionField {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> values;
  std::vector<double> err_est;  ///< empty, or one estimate per value
  std::map<std::string, std::string> meta;

  std::size_t nx() const { return x.size(); }
  std::size_t ny() const { return y.size(); }
  double& at(std::size_t i, std::size_t j) { return values[j * x.size() + i]; }
  double at(std::size_t i, std::size_t j) const { return values[j * x.size() + i]; }
};

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// CSV with header `x,y,value[,err_est]`, rows ordered by y then x.
void write_csv(std::ostream& os, const SolutionField& f);
void write_csv(const std::string& path, const SolutionField& f);
SolutionField read_csv(std::istream& is);
SolutionField read_csv(const std::string& path);

}  // namespace fracgreen

#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace lameforge::cli {

/// Runs the lame-forge command line. Exit codes: 0 success, 1 numeric
/// failure, 2 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SweepRow {
  double N = 0.0;
  std::vector<double> zeros;  // positive zeros of the relativistic Hermite polynomial, ascending
};

struct SweepTable {
  int n = 0;
  std::vector<SweepRow> rows;
  std::vector<double> limit;  // positive Hermite zeros, the N -> infinity limit
};

/// Requires n >= 2 and a positive, strictly increasing grid.
SweepTable sweep_n(int n, std::span<const double> grid);

/// "1,2,4" as a list, or "geom:start:ratio:count".
std::vector<double> parse_grid(std::string_view spec);

}  // namespace lameforge::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kmb/errors.hpp"
#include "kmb/gaussian.hpp"

namespace kmb::cli {

enum ExitCode {
  exit_ok = 0,
  exit_usage = 1,
  exit_nonfaithful = 2,  // also: petz-scan found ordering violations
  exit_invalid = 3,
  exit_malformed = 4,
  exit_boundary = 5,
  exit_no_convergence = 6,
};

class MalformedInput : public Error {
 public:
  using Error::Error;
};

// {"modes": N, "ordering": "block" | "interleaved", "entries": [4N^2 numbers]}
// Returned in block ordering.
Matrix parse_matrix_json(const std::string& text);
Matrix load_matrix_file(const std::string& path);
std::string matrix_to_json(const Matrix& m);

// Shortest representation that reads back to the same double.
std::string format_double(double x);

struct PetzPoint {
  Vector nu;
  double entropy = 0.0;
  double scal = 0.0;
};

struct PetzReport {
  long long pairs = 0;
  long long agreements = 0;
  long long violations = 0;
  // pairs where one sorted spectrum dominates the other entrywise
  long long dominance_pairs = 0;
  long long dominance_violations = 0;
  std::vector<std::pair<std::size_t, std::size_t>> examples;
};

// Checks Scal(b) > Scal(a) <=> S(b) > S(a) for the listed index pairs; equal
// entropies count as agreement when the curvatures match within tie_tolerance.
PetzReport petz_compare(const std::vector<PetzPoint>& points,
                        const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                        double tie_tolerance, std::size_t max_examples);
// Same check over every unordered pair of points.
PetzReport petz_compare_all(const std::vector<PetzPoint>& points, double tie_tolerance,
                            std::size_t max_examples);

// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kmb::cli

#pragma once

#include <vector>

namespace dsclust {

struct EigenExtremes {
  double min = 0.0;
  double max = 0.0;
};

// Smallest and largest eigenvalue of a dense symmetric matrix (row-major,
// n*n entries). Cyclic Jacobi for n <= 256; above that, shifted power
// iteration on (s*I + M) and (s*I - M) with s a Gershgorin bound, relative
// tolerance 1e-8, at most 10*n iterations per extreme.
EigenExtremes symmetric_extreme_eigenvalues(const std::vector<double>& m, int n);

}  // namespace dsclust

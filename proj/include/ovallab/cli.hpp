#ifndef OVALLAB_CLI_HPP
#define OVALLAB_CLI_HPP

#include <string>
#include <utility>
#include <vector>

#include "ovallab/curve.hpp"
#include "ovallab/grid.hpp"

namespace ovallab {

/// `start:end:step`, start always included, end included when
/// (end - start)/step is integral to 1e-9.
struct GridSpec {
  double start = 0.0, end = 0.0, step = 1.0;
  std::vector<double> values() const;
};
GridSpec parse_grid_spec(const std::string& text);

/// `circle`, inline `harm:n=2,a=0,b=0.25;n=4,a=0.1,b=0`, or `file:path`.
CurveSpec parse_curve(const std::string& text);

/// Seeded smooth decaying orthonormal pair on [-12, 12] for ratio sweeps
/// (Gram-Schmidt on Hermite-style samples).
std::pair<GridFunction, GridFunction> random_decaying_pair(std::uint64_t seed);

/// Full command-line entry point. Exit codes: 0 success, 1 invalid input,
/// 2 numerical failure, 3 conjecture-violation candidate (dump written).
int run_cli(int argc, char** argv);

}  // namespace ovallab

#endif

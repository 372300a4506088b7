#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kac/kac_algebra.hpp"
#include "kac/tolerance.hpp"

namespace kac {

struct RunConfig {
  std::string algebra;                // zn:N, zn-group:N, s3-function, ..., file:PATH, table:PATH, table-group:PATH
  std::vector<std::string> elements;  // element JSON files
  std::string suite = "all";          // axioms, inequalities, minimizers, hardy, all
  ToleranceConfig tol;
  int samples = 1000;
  int random = 0;
  std::uint64_t seed = 1;
  std::string out = "out";
};

/// Resolves an algebra source string. Throws ParseError for unknown sources.
FiniteKacAlgebra load_algebra(const std::string& source);

// Exit codes: 0 all checks pass, 1 a check failed, 2 the inputs did not load.
int cmd_verify(const RunConfig& config, std::ostream& log);
int cmd_minimizers(const RunConfig& config, std::ostream& log);

}  // namespace kac

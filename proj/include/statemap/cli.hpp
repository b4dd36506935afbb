#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace statemap::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformedInput = 1,
  kShapeMismatch = 2,
  kCertifiedNo = 3,
  kCapExceeded = 4,
};

struct CommandConfig {
  std::string command;  // convert | check | kraus | schmidt | lab
  std::string input;
  std::string output;   // empty: stdout
  std::string direction = "j";
  std::string kind = "cp";
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t restarts = 32;
  std::size_t mix_dim = 0;
  bool measure = false;
  std::optional<std::size_t> harness_k;
  std::size_t trials = 100;
  std::string family;
  std::vector<std::size_t> n_values;
  std::vector<double> coefficients;
  std::string csv;
};

/// Executes a parsed command. Results go to out (or the --out / --csv file),
/// diagnostics to err. Returns an ExitCode.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs them.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace statemap::cli

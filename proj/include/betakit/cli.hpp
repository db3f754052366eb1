#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "betakit/errors.hpp"

namespace betakit::cli {

enum class Format { Json, Csv, Plain };

struct RunConfig {
  std::size_t orbit_cap = 1000000;
  unsigned refine_floor = 4096;
  std::size_t period_cap = 64;
  std::size_t prefix_len = 48;
  int precision = 12;
  Format format = Format::Json;
  bool strict = false;
  std::optional<std::uint64_t> seed;
};

/// Exit statuses.
inline constexpr int kSuccess = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDomain = 2;
inline constexpr int kCapExhausted = 3;
inline constexpr int kExperimental = 4;
inline constexpr int kGoldenMismatch = 5;

int exit_code(ErrorCode code) noexcept;

/// Runs one command line (without the program name). Output and diagnostics
/// go to the given streams; the return value is the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the versioned golden outputs used by `reproduce`.
std::string default_golden_dir();

/// Identifiers accepted by `reproduce`.
const std::vector<std::string>& reproduce_ids();

}  // namespace betakit::cli

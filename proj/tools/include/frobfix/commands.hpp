#pragma once

#include "frobfix/finite_field.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace frobfix::cli {

enum ExitCode : int { kPass = 0, kMismatch = 1, kUsage = 2, kResource = 3 };

/// Overrides the field-size ceiling when set.
inline constexpr const char* kCeilingEnv = "FROBFIX_CEILING";

struct RunConfig {
  std::string format = "json";  // json | markdown
  bool check = false;
  std::uint64_t field_ceiling = kDefaultFieldCeiling;
  std::string corpus;
};

struct CommandResult {
  int exit_code = kPass;
  std::string output;
};

CommandResult cmd_ktable(std::int64_t p, int n_max, const RunConfig& cfg);
CommandResult cmd_pitable(std::int64_t p, const RunConfig& cfg);

struct Weight1Args {
  std::string curve = "P1";  // "point", "P1" or a corpus name
  std::optional<std::uint32_t> p;
  std::vector<unsigned> levels{1, 2, 3};
  bool invert_p = false;
  unsigned certify_level = 3;
};

CommandResult cmd_weight1(const Weight1Args& args, const RunConfig& cfg);
CommandResult cmd_versch(std::optional<std::uint32_t> p, unsigned max_level, unsigned kernel_level, const RunConfig& cfg);
CommandResult cmd_thh(std::int64_t p, unsigned d, unsigned n, unsigned D, const std::vector<unsigned>& levels,
                      const RunConfig& cfg);

/// Parses arguments and dispatches; errors become exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frobfix::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace sievelab {

inline constexpr const char* kVersion = "sievelab 0.1.0";
inline constexpr const char* kConfigEnv = "SIEVELAB_CONFIG";

struct RunConfig {
  std::uint64_t seed = 1;
  std::uint64_t segment_size = std::uint64_t{1} << 20;
  std::size_t basis_cap = 64;
  std::string output_format = "json";
  unsigned threads = 0;  // 0 = available cores
  std::map<std::string, double> tolerances;

  double tolerance(const std::string& name, double fallback) const;
  /// Applies one key=value setting. Throws PreconditionError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
};

/// Reads key=value lines; '#' starts a comment.
RunConfig load_config(std::istream& in, RunConfig base = {});

/// Exit codes: 0 ok, 2 precondition/validation, 3 internal consistency, 64 usage.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sievelab

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "inar/montecarlo.hpp"

namespace inar::cli {

/// Validated Monte Carlo study description, as read from a JSON config.
struct RunConfig {
  std::string case_name = "custom";
  std::string kernel_spec;
  McConfig mc;
  std::vector<std::size_t> components;  // empty: nu, alpha1, alpha2
};

/// Accepted keys: case, nu, kernel, T, p, n_experiments, seed,
/// cap_negatives, components, with_sandwich. Unknown keys and malformed
/// JSON raise ParseError; out-of-range values raise ValidationError naming
/// the field.
RunConfig parse_config(std::string_view text);

/// Digest of the canonical, validated config. Thread count is not part of
/// it.
std::string config_digest(const RunConfig& config);

/// McSummary JSON document (pretty-printed, trailing newline).
std::string summary_json(const RunConfig& config, const McSummary& summary,
                         const std::vector<ComponentNormality>& normality);

std::string_view tool_version() noexcept;

/// Runs one subcommand. Returns 0 on success, 1 on runtime errors, 2 on
/// usage errors; failures print a single `error: <Code>: <message>` line to
/// `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inar::cli

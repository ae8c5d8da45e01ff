#ifndef DNORMAL_CLI_HPP
#define DNORMAL_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dnormal/linalg.hpp"
#include "dnormal/toric.hpp"

namespace dnormal::cli {

/// A configuration file: a leading "d n" header line, then d rows of n
/// integers, then optional "names:", "weight:" and "tiebreak:" lines (each
/// at most once, in any order).  Blank lines and lines starting with '#' are
/// ignored.  `names` lists n distinct variable names; `weight` holds n
/// integers; `tiebreak` lists the n variable names from largest to smallest.
struct ConfigFile {
  linalg::IntMatrix a;
  std::vector<std::string> names;      // empty: default letter names
  std::optional<IntVector> weight;
  std::vector<std::string> tiebreak;   // empty: no explicit tie-break
};

/// Parses a configuration file from a stream.  `source` names the input in
/// error messages.  Throws InputError on malformed content.
ConfigFile parse_config(std::istream& in, const std::string& source);

/// Reads and parses a configuration file from disk.  Throws InputError when
/// the file cannot be opened or is malformed.
ConfigFile load_config(const std::string& path);

/// Serializes a configuration file in the canonical form parse_config
/// accepts (header, rows, then names/weight/tiebreak lines when present).
std::string write_config(const ConfigFile& f);

/// Builds the column configuration described by the file.
toric::Configuration to_configuration(const ConfigFile& f);

/// Runs one CLI invocation.  `args` holds the arguments after the program
/// name.  The report is written to `out`, diagnostics to `err`.  Returns the
/// process exit code: 0 on success (including negative verdicts), 2 on input
/// errors, 3 on computation errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace dnormal::cli

#endif  // DNORMAL_CLI_HPP

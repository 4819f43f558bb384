#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hardy/config.hpp"
#include "hardy/report_json.hpp"

namespace hardy::cli {

enum ExitCode { ok = 0, invalid_input = 2, numerical_failure = 3 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  ToleranceConfig tol;
  std::string out;
  bool json = false;
  std::string identity;  // verify only
};

/// Throws PreconditionError unless the ladder is strictly increasing with at
/// least two entries, none above the truncation degree.
void validate(const RunConfig& rc);

int cmd_examples(const RunConfig& rc, std::ostream& out);
int cmd_classify(const RunConfig& rc, std::ostream& out);
int cmd_construct(const RunConfig& rc, std::ostream& out);
int cmd_verify(const RunConfig& rc, std::ostream& out);

/// Rows for one identity over the built-in fixtures (or the symbols named
/// in rc.inputs). Throws PreconditionError for an unknown identity.
std::vector<ResidualRow> verify_rows(const RunConfig& rc);

/// Parses argv and dispatches; errors go to `err` and map to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli

#pragma once

namespace srpl {

/// Command-line front end. Returns the process exit code: 0 when every
/// requested check passes, 1 when at least one check fails (the report is
/// still emitted), 2 on usage or configuration errors.
int run_cli(int argc, const char* const* argv);

}  // namespace srpl

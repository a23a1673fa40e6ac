#pragma once

#include <iosfwd>

namespace srpl {

/// Runs the full verification suite: ten criteria covering every identity
/// the library asserts, printed one PASS/FAIL line each. Returns true when
/// every criterion passes. All tolerances are pinned here.
bool run_acceptance(std::ostream& out);

}  // namespace srpl

#pragma once

namespace awi {

// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 validation failure.
int run_cli(int argc, const char* const* argv);

}  // namespace awi

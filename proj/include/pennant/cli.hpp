#pragma once

#include <iosfwd>

namespace pennant {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the `pennant` tool: subcommands index, rank, pennant, serve.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pennant

#pragma once

#include <ostream>

namespace metasearch {

// Subcommands: search, senses, index, parse, serve, providers.
// Exit codes: 0 success, 1 pipeline failure, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace metasearch

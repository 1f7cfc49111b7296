#pragma once

#include <string>
#include <vector>

namespace coword {

// Entry point behind the `coword` binary, exposed so tests can drive the
// command surface in-process. `args` excludes the program name.
// Exit codes: 0 success, 2 validation/usage error, 3 stage failure.
int cli_main(const std::vector<std::string>& args);
int cli_main(int argc, const char* const* argv);

}  // namespace coword

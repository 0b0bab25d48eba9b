#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cabdm::cli {

// Name of the environment variable holding the default CTM table directory.
inline constexpr const char* kTableDirEnv = "CABDM_TABLE_DIR";

// Exit codes: 0 success, 1 runtime error, 2 usage error.
int run(int argc, const char* const* argv);
int run(int argc, char** argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cabdm::cli

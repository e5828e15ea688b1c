#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace simpkit::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 when records produced findings or errors, 2 on usage errors. "-" as a
/// path means standard input or `out`.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace simpkit::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace framecast::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kNotRegular = 3,
    kNotLiftable = 4,
    kNoBasePoint = 5,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace framecast::cli

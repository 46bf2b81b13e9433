#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace binsig {
namespace cli {

// Runs one CLI invocation. Exit code 0: success or true verdict; 1: false
// or negative verdict; 2: usage or input error. `in` backs the "-" input.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, std::istream& in);

}  // namespace cli
}  // namespace binsig

#pragma once

#include <string>
#include <vector>

namespace flockcert {

/// One violated invariant: which field, and what is wrong with it.
struct Violation {
    std::string path;
    std::string message;
};

std::string describe(const std::vector<Violation>& violations);

}  // namespace flockcert

#pragma once

#include <string>
#include <vector>

namespace obstr {

struct SelftestResult {
    int checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// randomized invariant suite behind the `selftest` subcommand; deterministic
// for a fixed seed
SelftestResult run_selftest(unsigned seed);

}  // namespace obstr

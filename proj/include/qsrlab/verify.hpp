#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsrlab::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full verification suite: every bound, identity and tolerance the
/// scheme promises, over the default grid (message_bits <= 3,
/// security_bits <= 4, key_copies <= 3). One result per criterion; progress
/// lines go to the stream when given.
std::vector<CriterionResult> run_acceptance(std::ostream* progress = nullptr);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace qsrlab::verify

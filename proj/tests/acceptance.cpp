// Acceptance gate: runs every suite criterion at its pinned tolerance and
// prints one pass/fail line per criterion.
#include <cstdio>

#include "curv/suite.hpp"

int main() {
    const auto rows = curv::run_suite("");
    std::fputs(curv::suite_table(rows).c_str(), stdout);
    return curv::suite_all_pass(rows) ? 0 : 1;
}

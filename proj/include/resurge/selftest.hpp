#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace resurge::selftest {

struct Options {
    std::set<int> only; // empty = run all criteria
};

struct Outcome {
    int id = 0;
    bool pass = false;
    std::string name;
    std::string detail;
    double seconds = 0;
};

std::vector<Outcome> run(const Options& opt, std::ostream& log);

// Prints one PASS/FAIL line per criterion, returns the number of failures.
int run_and_report(const Options& opt, std::ostream& out);

} // namespace resurge::selftest

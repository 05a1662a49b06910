// Acceptance suite runner: one PASS/FAIL line per criterion, nonzero exit
// on any failure.  `--only 3,7` restricts the run.

#include "resurge/selftest.hpp"

#include <cstring>
#include <iostream>
#include <sstream>
#include <string>

int main(int argc, char** argv)
{
    resurge::selftest::Options opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            std::string tok;
            while (std::getline(ss, tok, ','))
                opt.only.insert(std::stoi(tok));
        }
    }
    int fails = resurge::selftest::run_and_report(opt, std::cout);
    return fails == 0 ? 0 : 1;
}

// Acceptance runner: one PASS / FAIL line per criterion.
//
//   acceptance [--seed N] [--only 3,5]

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "maxmodel/suite.hpp"

int main(int argc, char** argv) {
    CLI::App app{"maxmodel acceptance criteria"};
    std::uint64_t seed = 0;
    std::vector<int> only;
    app.add_option("--seed", seed, "override the pinned seeds");
    app.add_option("--only", only, "run only these criteria")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    maxmodel::suite::Options opts;
    opts.seed = seed;
    int failed = 0;
    for (const auto& r : maxmodel::suite::run(opts, nullptr, only)) {
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", r.seconds, r.limit_seconds);
        std::cout << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << timing << ")";
        if (!r.pass) {
            ++failed;
            std::cout << ": " << r.detail;
            if (!r.reproducer.empty()) std::cout << "\n     reproduce: " << r.reproducer;
        }
        std::cout << std::endl;
    }
    return failed ? 1 : 0;
}

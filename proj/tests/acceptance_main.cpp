// Runs every acceptance criterion at full size and prints one line each.
// Pass --quick for the reduced budgets used by `arithmos verify --profile quick`.
#include "arithmos/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
    using namespace arithmos::acceptance;
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    int failed = 0;
    for (int id = 1; id <= criterion_count; ++id) {
        const auto r = run_one(id, quick ? Profile::quick : Profile::full);
        std::cout << format_line(r, true) << std::endl;
        failed += !r.pass;
    }
    std::cout << (criterion_count - failed) << "/" << criterion_count << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}

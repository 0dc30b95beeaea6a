#include <iostream>

#include <cuspq/suites.hpp>

int main() {
    auto rs = cuspq::acceptance();
    int failed = 0, n = 0;
    for (auto& r : rs) {
        ++n;
        std::cout << (r.ok() ? "PASS " : "FAIL ") << n << ": " << r.title << "\n";
        for (auto& c : r.checks)
            if (!c.pass) std::cout << "    failed: " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        failed += !r.ok();
    }
    std::cout << n - failed << "/" << n << " criteria pass\n";
    return failed ? 1 : 0;
}

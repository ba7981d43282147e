#pragma once

// Invariant suite run by `ymh selftest` on small lattices.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ymh/lattice.hpp"

namespace ymh {

struct SelftestCheck {
    std::string module;
    std::string invariant;
    double measured = 0.0;
    double limit = 0.0;
    bool passed = false;
};

struct SelftestOptions {
    std::uint64_t seed = 20240611;
    // Replaces the codifferential in the calculus checks (mutation testing).
    std::function<Cochain(const Cochain&)> codifferential;
    std::ostream* log = nullptr;
};

struct SelftestReport {
    std::vector<SelftestCheck> checks;
    bool passed() const;
    std::vector<SelftestCheck> failures() const;
};

SelftestReport run_selftest(const SelftestOptions& opts = {});

}  // namespace ymh

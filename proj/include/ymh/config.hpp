#pragma once

// Run configuration for the command-line driver, stored as JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ymh/solve.hpp"

namespace ymh {

struct RunConfig {
    std::vector<int> sites;
    std::vector<double> lengths;
    std::vector<std::vector<int>> chern;
    std::vector<double> epsilons;
    double tolerance = 1e-8;
    int max_iter = 200000;
    std::uint64_t seed = 0;
    bool truncate_each = false;
    int record_every = 10;
    std::string output = "out";
    std::optional<AnsatzSpec> ansatz;
    double sites_per_epsilon = 0.0;

    TorusGeometry geometry() const;
    ChernMatrix chern_matrix() const;
    MinimizerOptions minimizer_options() const;
    SweepOptions sweep_options() const;

    friend bool operator==(const RunConfig&, const RunConfig&);
};

// Throws InvalidArgument naming the failing precondition.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& c);
void validate(const RunConfig& c);

}  // namespace ymh

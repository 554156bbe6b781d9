#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "doubletop/tube.hpp"

namespace doubletop {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    uint64_t seed = kDefaultSeed;   // decomposition seed; the determinism check also uses seed + 1
    uint64_t rng_seed = 20240229;   // random graphs and sites
    int workers = 0;
};

// Runs all twelve criteria, writing one "PASS|FAIL <id> <name>: <detail>" line each.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const AcceptanceOptions& opt = {});

// DOUBLETOP_SEED if set and parseable, else kDefaultSeed.
uint64_t seed_from_env();

}  // namespace doubletop

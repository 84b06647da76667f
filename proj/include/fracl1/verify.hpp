#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fracl1 {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;      // observed quantity
    double threshold = 0.0;  // pass iff value <= threshold
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const;
    /// Largest value/threshold over the checks (0 when empty).
    double worst_margin() const;
};

/// Row-sum identity and linear-data exactness on random meshes, alphas and rows.
SuiteResult verify_l1_identities(std::uint64_t seed, std::size_t trials = 1000);

/**
 * Randomized discrete comparison principle: V^0 <= 0 and non-positive sources
 * for (delta^alpha - lambda0) V^m - lambda1 V^{m-1} must give V^m <= 1e-12.
 */
SuiteResult verify_comparison(std::uint64_t seed, std::size_t trials = 1000);

/**
 * Stability bound: solves (delta^alpha - lambda0) U^j - lambda1 U^{j-1} = (tau/t_j)^{gamma+1}
 * and checks that sup_j U^j / barrier^j varies by less than 50% (max/min - 1 < 0.5)
 * across the M ladder, for every gamma in {-1, -0.2, 0, 0.3, alpha},
 * lambda0, lambda1 in {0, 0.5} and r in {1, 2, 5}.
 */
SuiteResult verify_stability(double alpha = 0.4, const std::vector<std::size_t>& Ms = {256, 1024, 4096});

/**
 * Truncation bound: sup_m |r^m| / bound stable within 50% across the M ladder
 * on the grid alpha x sigma x r = {0.3,0.5,0.7} x {0.4,0.8,1.5} x {1,2,4},
 * and r^m = 0 to rounding for sigma = 1.
 */
SuiteResult verify_truncation(const std::vector<std::size_t>& Ms = {256, 1024, 4096});

/// Random variable-coefficient operators: whenever the h condition holds, L_h is an M-matrix.
SuiteResult verify_fd_structure(std::uint64_t seed, std::size_t trials = 500);

/// Sampled A1/A2 constants of all five scheme kinds for f = u^3 - u on [-1.5, 1.5].
SuiteResult verify_scheme_conditions(std::size_t samples = 40000);

/// Suites run by the `verify` command.
std::vector<SuiteResult> run_verification(std::uint64_t seed);

}  // namespace fracl1

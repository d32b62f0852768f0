#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vdwmix/rng.hpp"
#include "vdwmix/thermo.hpp"

namespace vdwmix {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool expected_fail = false;  ///< check asserts a documented failure mode
    double worst = 0.0;          ///< worst residual or margin seen
    std::string note;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Runs every randomized identity and bound check (thermodynamic identities,
/// Hessian bound, two-vector inequality, inversion round trip, appendix
/// identity, pressure bounds, Hessian scans) with a deterministic sampler.
VerifyReport verify_suite(std::uint64_t seed);

/// Deterministic text rendering of the report (bit-identical per seed).
std::string render_report(const VerifyReport& report);

/// Random admissible state: fractions from normalized uniforms with floor
/// z_floor, covolume fill uniform in [fill_lo, fill_hi].
State sample_admissible_state(const MixtureParams& params, Rng& rng, double fill_lo,
                              double fill_hi, double z_floor);

}  // namespace vdwmix

#pragma once

#include <cstdint>
#include <string>

#include "kisin/oracles.hpp"

namespace kisin {
namespace checks {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::vector<std::string> lines; // human-readable detail
    long long ms = 0;

    void fail(const std::string& why) {
        pass = false;
        lines.push_back("FAIL: " + why);
    }
    void note(const std::string& what) { lines.push_back(what); }
};

/// The standard-module battery: p in {2,3}, n in {1,2,3}, s in [-6,6] with
/// (p^n + 1) not dividing s.
struct BatteryInstance {
    int p, n, s;
    std::string key() const {
        return "p" + std::to_string(p) + ".n" + std::to_string(n) + ".s" + std::to_string(s);
    }
};
std::vector<BatteryInstance> battery();

/// Deterministic cocharacter for a battery module: root bounds r_i <= 3 and
/// the smallest determinant pairing making the det-class system integral.
std::optional<Cochar> battery_nu(const PhiModule& M);

// Acceptance criteria. Each returns one CheckResult whose name states the
// criterion; `pass` is the verdict at the spec tolerance (exact unless noted).
CheckResult criterion1_fixed_point();
CheckResult criterion2_distance_scaling(uint64_t seed);
CheckResult criterion3_schubert(uint64_t seed);
CheckResult criterion4_fiber(uint64_t seed);
CheckResult criterion5_membership_biconditional();
CheckResult criterion6_enumeration(const std::string& golden_dir, bool regen_golden);
CheckResult criterion7_witness();
CheckResult criterion8_families(uint64_t seed);
CheckResult criterion9_connectedness();
CheckResult criterion10_mq_lemmas();

std::vector<CheckResult> run_all(uint64_t seed, const std::string& golden_dir, bool regen_golden);

} // namespace checks
} // namespace kisin

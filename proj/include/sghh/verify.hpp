#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sghh/algebra.hpp"
#include "sghh/tensorspace.hpp"

namespace sghh {

enum class CheckOutcome { Pass, Fail, Invalid };
std::string outcome_name(CheckOutcome o);

struct Counterexample {
    std::uint64_t seed = 0;  // per-check stream seed; replay with the same SuiteSpec
    std::size_t sample = 0;
    std::vector<std::string> inputs;  // after greedy minimization
    std::string defect;
};

struct CheckResult {
    std::string suite, name;
    std::size_t samples = 0, passed = 0, skipped = 0;
    CheckOutcome outcome = CheckOutcome::Invalid;
    std::optional<Counterexample> counterexample;
};

struct SuiteSpec {
    std::string suite;  // dg | theta | gerstenhaber | binfinity | star | dstar | bv | comparison
    AlgebraPtr alg;
    std::string algebra_name;
    int max_arity = 3;
    int max_form = 2;
    int samples = 50;
    std::uint64_t seed = 1;
    // degree window for class-level checks on D*
    int deg_lo = -3, deg_hi = 3;
    // restrict to these check names (empty: all)
    std::vector<std::string> only;
};

struct SuiteResult {
    std::string suite, algebra;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool passed() const;
    const CheckResult* find(const std::string& name) const;
};

struct CheckInfo {
    std::string suite, name, description;
    bool class_level = false;
    // fails on the literal formulas; kept to report the real outcome
    bool known_deviation = false;
};

const std::vector<std::string>& suite_names();
const std::vector<CheckInfo>& check_manifest();

// throws InvalidParameter for an unknown suite, MissingFrobeniusData / NotSymmetric when required
SuiteResult run_suite(const SuiteSpec& spec);

nlohmann::json to_json(const SuiteResult& r);
std::string to_text(const SuiteResult& r);

// ---- sign arbiter ----

struct ArbiterSetting {
    SignConvention convention;
    bool passed = false;
    std::vector<std::string> failing;  // "suite/check" names
};

struct ArbiterResult {
    std::vector<ArbiterSetting> settings;  // all four combinations
    std::optional<SignConvention> selected;
    std::string verdict;  // "unique" | "none" | "ambiguous"
};

// runs the battery once per switch setting
ArbiterResult arbitrate(const std::function<std::vector<SuiteResult>()>& battery);
nlohmann::json to_json(const ArbiterResult& r);

}  // namespace sghh

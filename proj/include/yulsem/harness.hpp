// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/engine.hpp>
#include <yulsem/smallstep.hpp>

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace yulsem
{
struct GenConfig
{
    uint64_t seed = 0;
    unsigned max_depth = 3;
    unsigned max_block_length = 4;
    unsigned max_functions = 3;
    double loop_probability = 0.15;
    std::vector<std::string> opcodes = default_opcodes();
    uint64_t fuel = 1'000'000;
    uint64_t gas_limit = 10'000'000;

    static std::vector<std::string> default_opcodes();
};

/// Generates a program that passes check_halting and check_scopes. Deterministic in cfg.
Block generate(const GenConfig& cfg, const Dialect& dialect);

enum class Verdict : uint8_t
{
    agree,
    disagree,
    both_nonterminating,
    host_error,
};

std::string_view to_string(Verdict v) noexcept;

/// The outcome of running one engine: either an Outcome or the text of a host error.
struct EngineRun
{
    std::optional<Outcome> outcome;
    std::string error;
};

struct DiffVerdict
{
    Block program;
    EngineRun big;
    EngineRun small;
    EngineRun small_opt;
    Verdict verdict = Verdict::agree;
    std::string field;   ///< First differing field, or the engine that raised a host error.
    std::string detail;  ///< Human-readable values of the differing field.

    [[nodiscard]] bool failing() const noexcept
    {
        return verdict == Verdict::disagree || verdict == Verdict::host_error;
    }
};

struct DiffOptions
{
    uint64_t fuel = 1'000'000;
    uint64_t gas_limit = 10'000'000;
    ArgOrder small_arg_order = ArgOrder::right_to_left;  ///< left_to_right injects a bug.
    LemmaMonitor* monitor = nullptr;                     ///< Filled in by the big-step run.
};

/// Runs big-step, small-step and small-step with frame collapsing, and compares them on mode,
/// G and L restricted to the initial (empty) domain.
DiffVerdict diff_one(const Block& program, const Dialect& dialect, const DiffOptions& options = {});

/// Compares two outcomes field by field. Returns (field, detail) of the first difference.
std::optional<std::pair<std::string, std::string>> compare_outcomes(const Outcome& a, const Outcome& b,
    const LocalStore& initial = {});

nlohmann::json to_json(const DiffVerdict& v);
nlohmann::json outcome_json(const Outcome& o);

/// Greedy structural shrinking, keeping the program analysis-clean and failing in the same
/// way. Returns the program unchanged if it does not fail.
Block shrink(const Block& program, const Dialect& dialect, const DiffOptions& options = {});

struct SeedResult
{
    uint64_t seed = 0;
    Verdict verdict = Verdict::agree;
    std::string field;
    std::optional<DiffVerdict> failure;  ///< Kept only for failing seeds.
};

struct DiffSummary
{
    uint64_t agree = 0;
    uint64_t disagree = 0;
    uint64_t both_nonterminating = 0;
    uint64_t host_error = 0;
    uint64_t generator_rejects = 0;  ///< Generated programs that failed analysis.
    LemmaMonitor monitor;
    std::vector<SeedResult> results;  ///< In seed order.

    void add(const SeedResult& r);
};

/// Generates and diffs seeds [first, last] across jobs worker threads.
DiffSummary run_seeds(uint64_t first, uint64_t last, const GenConfig& base, const Dialect& dialect,
    const DiffOptions& options, unsigned jobs = 1);
}  // namespace yulsem

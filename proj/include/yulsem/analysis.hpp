// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/dialect.hpp>
#include <yulsem/syntax.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace yulsem
{
enum class AnalysisErrorKind : uint8_t
{
    break_outside_loop,
    continue_outside_loop,
    leave_outside_function,
    duplicate_function,
    duplicate_variable,
    unbound_variable_candidate,
    arity_mismatch,
};

std::string_view to_string(AnalysisErrorKind kind) noexcept;

struct AnalysisError
{
    AnalysisErrorKind kind;
    SourceSpan span;
    std::string message;
};

nlohmann::json to_json(const AnalysisError& e);

/// Raised by funsof when a block directly defines the same function twice.
class DuplicateFunction : public HostError
{
public:
    using HostError::HostError;
};

/// The function definitions that are direct statements of the block, in source order.
std::vector<Namespace::Entry> funsof_entries(const Block& block);

/// funsof as a namespace of its own.
Namespace funsof(const Block& block);

/// Placement rules for break, continue and leave.
///
/// break and continue must sit inside a loop body, with the nearest enclosing loop part being
/// the body and no function definition in between. leave must sit inside a function body.
std::vector<AnalysisError> check_halting(const Block& program);
std::vector<AnalysisError> check_halting(const Statement& program);

/// Declaration-before-use, redeclaration, function visibility and arity checks.
std::vector<AnalysisError> check_scopes(const Block& program, const Dialect& dialect);

/// check_halting followed by check_scopes.
std::vector<AnalysisError> analyze(const Block& program, const Dialect& dialect);
}  // namespace yulsem

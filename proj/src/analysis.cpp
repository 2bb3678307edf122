// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/analysis.hpp>

#include <algorithm>

namespace yulsem
{
namespace
{
class HaltingChecker
{
public:
    std::vector<AnalysisError> errors;

    void block(const Block& b, bool in_body, bool in_function)
    {
        for (const auto& s : b.statements)
            statement(s, in_body, in_function);
    }

    void statement(const Statement& s, bool in_body, bool in_function)
    {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Block>)
                    block(n, in_body, in_function);
                else if constexpr (std::is_same_v<T, FunDef>)
                    block(n.body, false, true);
                else if constexpr (std::is_same_v<T, If>)
                    block(n.body, in_body, in_function);
                else if constexpr (std::is_same_v<T, Switch>)
                {
                    for (const auto& c : n.cases)
                        block(c.body, in_body, in_function);
                    block(n.default_body, in_body, in_function);
                }
                else if constexpr (std::is_same_v<T, For>)
                {
                    block(n.init, false, in_function);
                    block(n.post, false, in_function);
                    block(n.body, true, in_function);
                }
                else if constexpr (std::is_same_v<T, Break>)
                {
                    if (!in_body)
                        errors.push_back({AnalysisErrorKind::break_outside_loop, s.span,
                            "break must appear inside a loop body"});
                }
                else if constexpr (std::is_same_v<T, Continue>)
                {
                    if (!in_body)
                        errors.push_back({AnalysisErrorKind::continue_outside_loop, s.span,
                            "continue must appear inside a loop body"});
                }
                else if constexpr (std::is_same_v<T, Leave>)
                {
                    if (!in_function)
                        errors.push_back({AnalysisErrorKind::leave_outside_function, s.span,
                            "leave must appear inside a function body"});
                }
            },
            s.node);
    }
};

class ScopeChecker
{
public:
    ScopeChecker(const Dialect& dialect) : m_dialect{dialect} {}

    std::vector<AnalysisError> errors;

    void block(const Block& b)
    {
        push(false);
        declare_functions(b);
        for (const auto& s : b.statements)
            statement(s);
        pop();
    }

private:
    struct Scope
    {
        std::vector<Identifier> vars;
        std::vector<Namespace::Entry> funcs;
        bool boundary = false;
    };

    void push(bool boundary) { m_scopes.push_back({{}, {}, boundary}); }
    void pop() { m_scopes.pop_back(); }

    void error(AnalysisErrorKind kind, const SourceSpan& span, std::string message)
    {
        errors.push_back({kind, span, std::move(message)});
    }

    [[nodiscard]] bool variable_visible(Identifier name) const
    {
        for (auto it = m_scopes.rbegin(); it != m_scopes.rend(); ++it)
        {
            if (std::find(it->vars.begin(), it->vars.end(), name) != it->vars.end())
                return true;
            if (it->boundary)
                return false;
        }
        return false;
    }

    [[nodiscard]] const FunDef* function_visible(Identifier name) const
    {
        for (auto it = m_scopes.rbegin(); it != m_scopes.rend(); ++it)
            for (const auto& e : it->funcs)
                if (e.name == name)
                    return e.def;
        return nullptr;
    }

    void declare_functions(const Block& b)
    {
        for (const auto& s : b.statements)
        {
            const auto* f = std::get_if<FunDef>(&s.node);
            if (f == nullptr)
                continue;
            if (function_visible(f->name) != nullptr)
            {
                error(AnalysisErrorKind::duplicate_function, s.span,
                    "function '" + f->name.str() + "' is already defined in this or an enclosing block");
                continue;
            }
            m_scopes.back().funcs.push_back({f->name, f});
        }
    }

    void declare_variable(Identifier name, const SourceSpan& span)
    {
        if (variable_visible(name))
        {
            error(AnalysisErrorKind::duplicate_variable, span, "variable '" + name.str() + "' is already declared");
            return;
        }
        m_scopes.back().vars.push_back(name);
    }

    void expect_arity(int got, size_t want, const SourceSpan& span, std::string_view what)
    {
        if (got >= 0 && static_cast<size_t>(got) != want)
            error(AnalysisErrorKind::arity_mismatch, span,
                std::string{what} + " expects " + std::to_string(want) + " value(s), expression yields " +
                    std::to_string(got));
    }

    /// Number of values the expression yields, or -1 when unknown after an error.
    int expression(const Expression& e)
    {
        return std::visit(
            [&](const auto& n) -> int {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Lit>)
                    return 1;
                else if constexpr (std::is_same_v<T, Ident>)
                {
                    if (!variable_visible(n.name))
                        error(AnalysisErrorKind::unbound_variable_candidate, e.span,
                            "variable '" + n.name.str() + "' is not declared in scope");
                    return 1;
                }
                else if constexpr (std::is_same_v<T, OpCall>)
                {
                    const auto* info = m_dialect.builtin(n.name.str());
                    if (info == nullptr)
                    {
                        error(AnalysisErrorKind::unbound_variable_candidate, e.span,
                            "unknown builtin '" + n.name.str() + "'");
                        return -1;
                    }
                    if (!info->literal_args)
                        arguments(n.args);
                    if (n.args.size() != info->args)
                        error(AnalysisErrorKind::arity_mismatch, e.span,
                            "'" + n.name.str() + "' takes " + std::to_string(info->args) + " argument(s), " +
                                std::to_string(n.args.size()) + " given");
                    return static_cast<int>(info->rets);
                }
                else if constexpr (std::is_same_v<T, FunCall>)
                {
                    arguments(n.args);
                    const FunDef* f = function_visible(n.name);
                    if (f == nullptr)
                    {
                        error(AnalysisErrorKind::unbound_variable_candidate, e.span,
                            "function '" + n.name.str() + "' is not visible here");
                        return -1;
                    }
                    if (n.args.size() != f->params.size())
                        error(AnalysisErrorKind::arity_mismatch, e.span,
                            "'" + n.name.str() + "' takes " + std::to_string(f->params.size()) +
                                " argument(s), " + std::to_string(n.args.size()) + " given");
                    return static_cast<int>(f->returns.size());
                }
                else
                    return static_cast<int>(n.values.size());
            },
            e.node);
    }

    void arguments(const std::vector<Expression>& args)
    {
        for (const auto& a : args)
            expect_arity(expression(a), 1, a.span, "argument");
    }

    void statement(const Statement& s)
    {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Block>)
                    block(n);
                else if constexpr (std::is_same_v<T, FunDef>)
                    function(n, s.span);
                else if constexpr (std::is_same_v<T, VarDecl>)
                {
                    expect_arity(expression(n.value), n.targets.size(), s.span, "declaration");
                    for (const auto& t : n.targets)
                        declare_variable(t, s.span);
                }
                else if constexpr (std::is_same_v<T, Assign>)
                {
                    expect_arity(expression(n.value), n.targets.size(), s.span, "assignment");
                    for (const auto& t : n.targets)
                        if (!variable_visible(t))
                            error(AnalysisErrorKind::unbound_variable_candidate, s.span,
                                "assignment to undeclared variable '" + t.str() + "'");
                }
                else if constexpr (std::is_same_v<T, ExprStmt>)
                    expect_arity(expression(n.expr), 0, s.span, "expression statement");
                else if constexpr (std::is_same_v<T, If>)
                {
                    expect_arity(expression(n.cond), 1, n.cond.span, "condition");
                    block(n.body);
                }
                else if constexpr (std::is_same_v<T, Switch>)
                {
                    expect_arity(expression(n.scrutinee), 1, n.scrutinee.span, "switch expression");
                    for (const auto& c : n.cases)
                        block(c.body);
                    block(n.default_body);
                }
                else if constexpr (std::is_same_v<T, For>)
                {
                    push(false);
                    declare_functions(n.init);
                    for (const auto& st : n.init.statements)
                        statement(st);
                    expect_arity(expression(n.cond), 1, n.cond.span, "loop condition");
                    block(n.post);
                    block(n.body);
                    pop();
                }
            },
            s.node);
    }

    void function(const FunDef& f, const SourceSpan& span)
    {
        push(true);
        for (const auto& p : f.params)
            declare_variable(p, span);
        for (const auto& r : f.returns)
            declare_variable(r, span);
        block(f.body);
        pop();
    }

    const Dialect& m_dialect;
    std::vector<Scope> m_scopes;
};
}  // namespace

std::string_view to_string(AnalysisErrorKind kind) noexcept
{
    switch (kind)
    {
    case AnalysisErrorKind::break_outside_loop:
        return "break-outside-loop";
    case AnalysisErrorKind::continue_outside_loop:
        return "continue-outside-loop";
    case AnalysisErrorKind::leave_outside_function:
        return "leave-outside-function";
    case AnalysisErrorKind::duplicate_function:
        return "duplicate-function";
    case AnalysisErrorKind::duplicate_variable:
        return "duplicate-variable";
    case AnalysisErrorKind::unbound_variable_candidate:
        return "unbound-variable-candidate";
    case AnalysisErrorKind::arity_mismatch:
        return "arity-mismatch";
    }
    return "?";
}

nlohmann::json to_json(const AnalysisError& e)
{
    return {{"kind", to_string(e.kind)}, {"message", e.message},
        {"span", {{"start", e.span.start}, {"end", e.span.end}, {"line", e.span.line}, {"column", e.span.column}}}};
}

std::vector<Namespace::Entry> funsof_entries(const Block& block)
{
    std::vector<Namespace::Entry> entries;
    for (const auto& s : block.statements)
    {
        const auto* f = std::get_if<FunDef>(&s.node);
        if (f == nullptr)
            continue;
        if (std::any_of(entries.begin(), entries.end(), [f](const Namespace::Entry& e) { return e.name == f->name; }))
            throw DuplicateFunction{"function '" + f->name.str() + "' is defined twice in one block"};
        entries.push_back({f->name, f});
    }
    return entries;
}

Namespace funsof(const Block& block)
{
    return Namespace{}.extended(funsof_entries(block));
}

std::vector<AnalysisError> check_halting(const Block& program)
{
    HaltingChecker c;
    c.block(program, false, false);
    return std::move(c.errors);
}

std::vector<AnalysisError> check_halting(const Statement& program)
{
    HaltingChecker c;
    c.statement(program, false, false);
    return std::move(c.errors);
}

std::vector<AnalysisError> check_scopes(const Block& program, const Dialect& dialect)
{
    ScopeChecker c{dialect};
    c.block(program);
    return std::move(c.errors);
}

std::vector<AnalysisError> analyze(const Block& program, const Dialect& dialect)
{
    auto errors = check_halting(program);
    auto scope_errors = check_scopes(program, dialect);
    errors.insert(errors.end(), scope_errors.begin(), scope_errors.end());
    return errors;
}
}  // namespace yulsem

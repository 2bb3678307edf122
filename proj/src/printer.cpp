// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/parser.hpp>

namespace yulsem
{
namespace
{
std::string join_names(const std::vector<Identifier>& names)
{
    std::string s;
    for (size_t i = 0; i < names.size(); ++i)
    {
        if (i != 0)
            s += ", ";
        s += names[i].str();
    }
    return s;
}

class Printer
{
public:
    std::string out;

    void block(const Block& b, unsigned indent)
    {
        if (b.statements.empty())
        {
            out += "{ }";
            return;
        }
        out += "{\n";
        for (const auto& s : b.statements)
        {
            pad(indent + 1);
            statement(s, indent + 1);
            out += '\n';
        }
        pad(indent);
        out += '}';
    }

    void statement(const Statement& s, unsigned indent)
    {
        std::visit([&](const auto& n) { node(n, indent); }, s.node);
    }

    void expression(const Expression& e)
    {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, FunCall> || std::is_same_v<T, OpCall>)
                {
                    out += n.name.str();
                    out += '(';
                    for (size_t i = 0; i < n.args.size(); ++i)
                    {
                        if (i != 0)
                            out += ", ";
                        expression(n.args[i]);
                    }
                    out += ')';
                }
                else if constexpr (std::is_same_v<T, Ident>)
                    out += n.name.str();
                else if constexpr (std::is_same_v<T, Lit>)
                    out += n.literal.lexeme;
                else
                    throw HostError{"cannot print runtime-only tuple expression"};
            },
            e.node);
    }

private:
    void pad(unsigned indent) { out.append(static_cast<size_t>(indent) * 4, ' '); }

    void node(const Block& b, unsigned indent) { block(b, indent); }

    void node(const FunDef& f, unsigned indent)
    {
        out += "function " + f.name.str() + "(" + join_names(f.params) + ")";
        if (!f.returns.empty())
            out += " -> " + join_names(f.returns);
        out += ' ';
        block(f.body, indent);
    }

    void node(const VarDecl& d, unsigned)
    {
        out += "let " + join_names(d.targets) + " := ";
        expression(d.value);
    }

    void node(const Assign& a, unsigned)
    {
        out += join_names(a.targets) + " := ";
        expression(a.value);
    }

    void node(const ExprStmt& e, unsigned) { expression(e.expr); }

    void node(const If& i, unsigned indent)
    {
        out += "if ";
        expression(i.cond);
        out += ' ';
        block(i.body, indent);
    }

    void node(const Switch& s, unsigned indent)
    {
        out += "switch ";
        expression(s.scrutinee);
        for (const auto& c : s.cases)
        {
            out += '\n';
            pad(indent);
            out += "case " + c.value.lexeme + " ";
            block(c.body, indent);
        }
        out += '\n';
        pad(indent);
        out += "default ";
        block(s.default_body, indent);
    }

    void node(const For& f, unsigned indent)
    {
        out += "for ";
        block(f.init, indent);
        out += ' ';
        expression(f.cond);
        out += ' ';
        block(f.post, indent);
        out += ' ';
        block(f.body, indent);
    }

    void node(const Break&, unsigned) { out += "break"; }
    void node(const Continue&, unsigned) { out += "continue"; }
    void node(const Leave&, unsigned) { out += "leave"; }

    template <typename T>
    void node(const T&, unsigned)
    {
        throw HostError{"cannot print runtime-only statement"};
    }
};

nlohmann::json span_json(const SourceSpan& s)
{
    return {{"start", s.start}, {"end", s.end}, {"line", s.line}, {"column", s.column}};
}

nlohmann::json names_json(const std::vector<Identifier>& names)
{
    auto arr = nlohmann::json::array();
    for (const auto& n : names)
        arr.push_back(n.str());
    return arr;
}

std::string_view literal_kind_name(LiteralKind k) noexcept
{
    switch (k)
    {
    case LiteralKind::decimal:
        return "decimal";
    case LiteralKind::hex:
        return "hex";
    case LiteralKind::string:
        return "string";
    case LiteralKind::boolean:
        return "boolean";
    }
    return "?";
}

nlohmann::json block_json(const Block& b)
{
    auto stmts = nlohmann::json::array();
    for (const auto& s : b.statements)
        stmts.push_back(ast_to_json(s));
    return {{"kind", "Block"}, {"statements", std::move(stmts)}};
}
}  // namespace

std::string pretty(const Block& block)
{
    Printer p;
    p.block(block, 0);
    return p.out;
}

std::string pretty(const Statement& stmt)
{
    Printer p;
    p.statement(stmt, 0);
    return p.out;
}

std::string pretty(const Expression& expr)
{
    Printer p;
    p.expression(expr);
    return p.out;
}

nlohmann::json ast_to_json(const Expression& expr)
{
    nlohmann::json j = std::visit(
        [](const auto& n) -> nlohmann::json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FunCall> || std::is_same_v<T, OpCall>)
            {
                auto args = nlohmann::json::array();
                for (const auto& a : n.args)
                    args.push_back(ast_to_json(a));
                return {{"kind", std::is_same_v<T, FunCall> ? "FunCall" : "OpCall"}, {"name", n.name.str()},
                    {"args", std::move(args)}};
            }
            else if constexpr (std::is_same_v<T, Ident>)
                return {{"kind", "Ident"}, {"name", n.name.str()}};
            else if constexpr (std::is_same_v<T, Lit>)
                return {{"kind", "Literal"}, {"literalKind", literal_kind_name(n.literal.kind)},
                    {"lexeme", n.literal.lexeme}};
            else
            {
                auto values = nlohmann::json::array();
                for (const auto& v : n.values)
                    values.push_back(v.to_hex());
                return {{"kind", "Tuple"}, {"values", std::move(values)}};
            }
        },
        expr.node);
    j["span"] = span_json(expr.span);
    return j;
}

nlohmann::json ast_to_json(const Block& block)
{
    return block_json(block);
}

nlohmann::json ast_to_json(const Statement& stmt)
{
    nlohmann::json j = std::visit(
        [](const auto& n) -> nlohmann::json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Block>)
                return block_json(n);
            else if constexpr (std::is_same_v<T, FunDef>)
                return {{"kind", "FunDef"}, {"name", n.name.str()}, {"params", names_json(n.params)},
                    {"returns", names_json(n.returns)}, {"body", block_json(n.body)}};
            else if constexpr (std::is_same_v<T, VarDecl>)
                return {{"kind", "VarDecl"}, {"targets", names_json(n.targets)}, {"value", ast_to_json(n.value)}};
            else if constexpr (std::is_same_v<T, Assign>)
                return {{"kind", "Assign"}, {"targets", names_json(n.targets)}, {"value", ast_to_json(n.value)}};
            else if constexpr (std::is_same_v<T, ExprStmt>)
                return {{"kind", "ExprStmt"}, {"expr", ast_to_json(n.expr)}};
            else if constexpr (std::is_same_v<T, If>)
                return {{"kind", "If"}, {"cond", ast_to_json(n.cond)}, {"body", block_json(n.body)}};
            else if constexpr (std::is_same_v<T, Switch>)
            {
                auto cases = nlohmann::json::array();
                for (const auto& c : n.cases)
                    cases.push_back({{"value", c.value.lexeme}, {"body", block_json(c.body)}});
                return {{"kind", "Switch"}, {"scrutinee", ast_to_json(n.scrutinee)}, {"cases", std::move(cases)},
                    {"default", block_json(n.default_body)}};
            }
            else if constexpr (std::is_same_v<T, For>)
                return {{"kind", "For"}, {"init", block_json(n.init)}, {"cond", ast_to_json(n.cond)},
                    {"post", block_json(n.post)}, {"body", block_json(n.body)}};
            else if constexpr (std::is_same_v<T, Break>)
                return {{"kind", "Break"}};
            else if constexpr (std::is_same_v<T, Continue>)
                return {{"kind", "Continue"}};
            else if constexpr (std::is_same_v<T, Leave>)
                return {{"kind", "Leave"}};
            else if constexpr (std::is_same_v<T, ModeStmt>)
                return {{"kind", "Mode"}, {"mode", to_string(n.mode)}};
            else if constexpr (std::is_same_v<T, ScopedBlock>)
            {
                auto stmts = nlohmann::json::array();
                for (const auto& s : n.statements)
                    stmts.push_back(ast_to_json(s));
                return {{"kind", "ScopedBlock"}, {"statements", std::move(stmts)}};
            }
            else if constexpr (std::is_same_v<T, BreakCatcher>)
                return {{"kind", "BreakCatcher"}, {"inner", ast_to_json(*n.inner)}};
            else if constexpr (std::is_same_v<T, ContinueCatcher>)
                return {{"kind", "ContinueCatcher"}, {"inner", ast_to_json(*n.inner)}};
            else
                return {{"kind", "CallFrame"}, {"inner", ast_to_json(*n.inner)},
                    {"returnVars", names_json(n.return_vars)}};
        },
        stmt.node);
    j["span"] = span_json(stmt.span);
    return j;
}
}  // namespace yulsem

// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/syntax.hpp>

#include <algorithm>
#include <mutex>
#include <unordered_set>

namespace yulsem
{
namespace
{
struct Interner
{
    std::mutex mutex;
    std::unordered_set<std::string> names;

    const std::string* intern(std::string_view name)
    {
        const std::lock_guard lock{mutex};
        return &*names.emplace(name).first;
    }
};

Interner& interner()
{
    static Interner instance;
    return instance;
}

const std::string* empty_name()
{
    static const std::string* const name = interner().intern("");
    return name;
}

bool expr_source_level(const Expression& e) noexcept
{
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Tuple>)
                return false;
            else if constexpr (std::is_same_v<T, FunCall> || std::is_same_v<T, OpCall>)
                return std::all_of(n.args.begin(), n.args.end(), expr_source_level);
            else
                return true;
        },
        e.node);
}

bool block_source_level(const Block& b) noexcept
{
    return std::all_of(b.statements.begin(), b.statements.end(),
        [](const Statement& s) { return is_source_level(s); });
}
}  // namespace

Identifier::Identifier() noexcept : m_name{empty_name()} {}

Identifier::Identifier(std::string_view name) : m_name{interner().intern(name)} {}

std::string_view to_string(ModeKind kind) noexcept
{
    switch (kind)
    {
    case ModeKind::regular:
        return "regular";
    case ModeKind::break_:
        return "break";
    case ModeKind::continue_:
        return "continue";
    case ModeKind::leave:
        return "leave";
    case ModeKind::external:
        return "external";
    }
    return "?";
}

std::string to_string(const Mode& mode)
{
    if (mode.is_external())
        return mode.external.tag;
    return std::string{to_string(mode.kind)};
}

LocalStore::LocalStore(std::initializer_list<Entry> entries)
{
    for (const auto& [name, value] : entries)
        declare(name, value);
}

const Value* LocalStore::find(Identifier name) const noexcept
{
    for (const auto& e : m_entries)
        if (e.first == name)
            return &e.second;
    return nullptr;
}

Value* LocalStore::find(Identifier name) noexcept
{
    for (auto& e : m_entries)
        if (e.first == name)
            return &e.second;
    return nullptr;
}

const Value& LocalStore::at(Identifier name) const
{
    if (const auto* v = find(name))
        return *v;
    throw StoreError{"unbound variable '" + name.str() + "'"};
}

void LocalStore::declare(Identifier name, const Value& value)
{
    if (contains(name))
        throw StoreError{"variable '" + name.str() + "' is already declared"};
    m_entries.emplace_back(name, value);
}

void LocalStore::assign(Identifier name, const Value& value)
{
    auto* slot = find(name);
    if (slot == nullptr)
        throw StoreError{"assignment to undeclared variable '" + name.str() + "'"};
    *slot = value;
}

bool LocalStore::same_domain(const LocalStore& other) const noexcept
{
    return size() == other.size() && domain_includes(other);
}

bool LocalStore::domain_includes(const LocalStore& other) const noexcept
{
    if (other.size() <= size())
    {
        bool prefix = true;
        for (size_t i = 0; i < other.size() && prefix; ++i)
            prefix = m_entries[i].first == other.m_entries[i].first;
        if (prefix)
            return true;
    }
    return std::all_of(other.m_entries.begin(), other.m_entries.end(),
        [this](const Entry& e) { return contains(e.first); });
}

bool operator==(const LocalStore& a, const LocalStore& b) noexcept
{
    if (a.size() != b.size())
        return false;
    return std::all_of(a.m_entries.begin(), a.m_entries.end(), [&b](const LocalStore::Entry& e) {
        const auto* v = b.find(e.first);
        return v != nullptr && *v == e.second;
    });
}

LocalStore restrict(const LocalStore& l1, const LocalStore& l0)
{
    const auto& outer = l0.entries();
    const auto& inner = l1.entries();
    if (outer.size() <= inner.size())
    {
        bool prefix = true;
        for (size_t i = 0; i < outer.size() && prefix; ++i)
            prefix = inner[i].first == outer[i].first;
        if (prefix)
        {
            LocalStore r = l1;
            r.truncate(outer.size());
            return r;
        }
    }

    LocalStore r;
    for (const auto& [name, _] : outer)
    {
        const auto* v = l1.find(name);
        if (v == nullptr)
            throw StoreError{"restriction lost variable '" + name.str() + "'"};
        r.declare(name, *v);
    }
    return r;
}

const FunDef* Namespace::find(Identifier name) const noexcept
{
    if (!m_entries)
        return nullptr;
    for (const auto& e : *m_entries)
        if (e.name == name)
            return e.def;
    return nullptr;
}

Namespace Namespace::extended(const std::vector<Entry>& extra) const
{
    if (extra.empty())
        return *this;
    auto merged = std::make_shared<std::vector<Entry>>();
    merged->reserve(size() + extra.size());
    if (m_entries)
        *merged = *m_entries;
    for (const auto& e : extra)
    {
        if (std::any_of(merged->begin(), merged->end(), [&e](const Entry& x) { return x.name == e.name; }))
            throw StoreError{"function '" + e.name.str() + "' is already defined in scope"};
        merged->push_back(e);
    }
    Namespace n;
    n.m_entries = std::move(merged);
    return n;
}

bool operator==(const Namespace& a, const Namespace& b) noexcept
{
    if (a.same_identity(b))
        return true;
    if (a.size() != b.size())
        return false;
    const auto entries = a.entries();
    return std::all_of(entries.begin(), entries.end(),
        [&b](const Namespace::Entry& e) { return b.find(e.name) == e.def; });
}

Result make_result(std::vector<Value> values)
{
    if (values.empty())
        return Mode::regular();
    if (values.size() == 1)
        return values.front();
    return Tuple{std::move(values)};
}

std::optional<std::vector<Value>> result_values(const Result& r)
{
    if (const auto* m = std::get_if<Mode>(&r))
    {
        if (m->is_regular())
            return std::vector<Value>{};
        return std::nullopt;
    }
    if (const auto* v = std::get_if<Value>(&r))
        return std::vector<Value>{*v};
    return std::get<Tuple>(r).values;
}

std::string to_string(const Result& r)
{
    if (const auto* m = std::get_if<Mode>(&r))
        return to_string(*m);
    if (const auto* v = std::get_if<Value>(&r))
        return v->to_hex();
    std::string s = "(";
    const auto& values = std::get<Tuple>(r).values;
    for (size_t i = 0; i < values.size(); ++i)
    {
        if (i != 0)
            s += ", ";
        s += values[i].to_hex();
    }
    return s + ")";
}

bool is_runtime_only(const Statement& s) noexcept
{
    return std::holds_alternative<ModeStmt>(s.node) || std::holds_alternative<ScopedBlock>(s.node) ||
           std::holds_alternative<BreakCatcher>(s.node) ||
           std::holds_alternative<ContinueCatcher>(s.node) || std::holds_alternative<CallFrame>(s.node);
}

bool is_runtime_only(const Expression& e) noexcept
{
    return std::holds_alternative<Tuple>(e.node);
}

bool is_source_level(const Statement& s) noexcept
{
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Block>)
                return block_source_level(n);
            else if constexpr (std::is_same_v<T, FunDef>)
                return block_source_level(n.body);
            else if constexpr (std::is_same_v<T, VarDecl> || std::is_same_v<T, Assign>)
                return expr_source_level(n.value);
            else if constexpr (std::is_same_v<T, ExprStmt>)
                return expr_source_level(n.expr);
            else if constexpr (std::is_same_v<T, If>)
                return expr_source_level(n.cond) && block_source_level(n.body);
            else if constexpr (std::is_same_v<T, Switch>)
                return expr_source_level(n.scrutinee) && block_source_level(n.default_body) &&
                       std::all_of(n.cases.begin(), n.cases.end(),
                           [](const Case& c) { return block_source_level(c.body); });
            else if constexpr (std::is_same_v<T, For>)
                return block_source_level(n.init) && expr_source_level(n.cond) &&
                       block_source_level(n.post) && block_source_level(n.body);
            else if constexpr (std::is_same_v<T, Break> || std::is_same_v<T, Continue> ||
                               std::is_same_v<T, Leave>)
                return true;
            else
                return false;
        },
        s.node);
}

Expression make_ident(std::string_view name)
{
    return Expression{Ident{Identifier{name}}, {}};
}

Expression make_number(uint64_t v)
{
    return make_literal(LiteralKind::decimal, std::to_string(v));
}

Expression make_literal(LiteralKind kind, std::string lexeme)
{
    return Expression{Lit{Literal{kind, std::move(lexeme)}}, {}};
}

Expression make_call(std::string_view name, std::vector<Expression> args)
{
    return Expression{FunCall{Identifier{name}, std::move(args)}, {}};
}

Expression make_opcall(std::string_view name, std::vector<Expression> args)
{
    return Expression{OpCall{Identifier{name}, std::move(args)}, {}};
}

Statement make_stmt(Statement::Node node)
{
    return Statement{std::move(node), {}};
}

std::vector<Identifier> make_identifiers(std::initializer_list<std::string_view> names)
{
    std::vector<Identifier> out;
    out.reserve(names.size());
    for (const auto n : names)
        out.emplace_back(n);
    return out;
}
}  // namespace yulsem

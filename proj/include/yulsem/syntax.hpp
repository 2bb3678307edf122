// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/u256.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace yulsem
{
/// The value type shared by all evaluators: a 256-bit machine word.
using Value = U256;

using Bytes = std::vector<uint8_t>;

/// Interned identifier. Equality is identity of the interned string.
class Identifier
{
public:
    Identifier() noexcept;
    explicit Identifier(std::string_view name);

    [[nodiscard]] const std::string& str() const noexcept { return *m_name; }
    [[nodiscard]] bool empty() const noexcept { return m_name->empty(); }

    friend bool operator==(Identifier a, Identifier b) noexcept { return a.m_name == b.m_name; }
    /// Lexicographic by name, so sorted output is deterministic.
    friend bool operator<(Identifier a, Identifier b) noexcept { return *a.m_name < *b.m_name; }

    [[nodiscard]] size_t hash() const noexcept { return std::hash<const void*>{}(m_name); }

private:
    const std::string* m_name;
};

/// Heap box with value semantics, used where a node directly contains a node of its own type.
template <typename T>
class Box
{
public:
    Box(T value) : m_ptr{std::make_unique<T>(std::move(value))} {}  // NOLINT(google-explicit-constructor)
    Box(const Box& other) : m_ptr{std::make_unique<T>(*other.m_ptr)} {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& other)
    {
        if (this != &other)
            m_ptr = std::make_unique<T>(*other.m_ptr);
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;
    ~Box() = default;

    T& operator*() noexcept { return *m_ptr; }
    const T& operator*() const noexcept { return *m_ptr; }
    T* operator->() noexcept { return m_ptr.get(); }
    const T* operator->() const noexcept { return m_ptr.get(); }

    friend bool operator==(const Box& a, const Box& b) { return *a.m_ptr == *b.m_ptr; }

private:
    std::unique_ptr<T> m_ptr;
};

struct SourceSpan
{
    size_t start = 0;  ///< Byte offset of the first character.
    size_t end = 0;    ///< Byte offset one past the last character.
    unsigned line = 1;
    unsigned column = 1;
};

enum class LiteralKind : uint8_t
{
    decimal,
    hex,
    string,
    boolean,
};

/// A source literal. The lexeme is the exact source text, including quotes for strings.
struct Literal
{
    LiteralKind kind = LiteralKind::decimal;
    std::string lexeme;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Irregular termination raised by a dialect. The tag vocabulary belongs to the dialect;
/// the core only compares and forwards it.
struct ExternalMode
{
    std::string tag;
    Bytes payload;

    friend bool operator==(const ExternalMode&, const ExternalMode&) = default;
};

enum class ModeKind : uint8_t
{
    regular,
    break_,
    continue_,
    leave,
    external,
};

struct Mode
{
    ModeKind kind = ModeKind::regular;
    ExternalMode external;  ///< Meaningful only when kind == external.

    static Mode regular() noexcept { return {}; }
    static Mode break_() noexcept { return {ModeKind::break_, {}}; }
    static Mode continue_() noexcept { return {ModeKind::continue_, {}}; }
    static Mode leave() noexcept { return {ModeKind::leave, {}}; }
    static Mode make_external(ExternalMode m) { return {ModeKind::external, std::move(m)}; }

    [[nodiscard]] bool is_regular() const noexcept { return kind == ModeKind::regular; }
    [[nodiscard]] bool is_external() const noexcept { return kind == ModeKind::external; }

    friend bool operator==(const Mode&, const Mode&) = default;
};

std::string to_string(const Mode& mode);
std::string_view to_string(ModeKind kind) noexcept;

/// Failure of the host implementation, as opposed to a Yul-level irregular mode.
class HostError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an evaluator attempts an operation on the store that no rule permits.
class StoreError : public HostError
{
public:
    using HostError::HostError;
};

/// Finite map from identifiers to values.
///
/// Entries are kept in declaration order; lookup is linear, which is the right trade-off
/// for the handful of variables a Yul scope typically holds.
class LocalStore
{
public:
    using Entry = std::pair<Identifier, Value>;

    LocalStore() = default;
    LocalStore(std::initializer_list<Entry> entries);

    [[nodiscard]] const Value* find(Identifier name) const noexcept;
    [[nodiscard]] Value* find(Identifier name) noexcept;
    [[nodiscard]] bool contains(Identifier name) const noexcept { return find(name) != nullptr; }

    /// Looks up a bound variable; unbound lookup is an error, never a default.
    [[nodiscard]] const Value& at(Identifier name) const;

    /// Adds a fresh binding; the name must be unbound.
    void declare(Identifier name, const Value& value);
    /// Updates an existing binding; the name must be bound.
    void assign(Identifier name, const Value& value);

    [[nodiscard]] size_t size() const noexcept { return m_entries.size(); }
    [[nodiscard]] bool empty() const noexcept { return m_entries.empty(); }
    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return m_entries; }

    [[nodiscard]] bool same_domain(const LocalStore& other) const noexcept;
    /// dom(*this) ⊇ dom(other)
    [[nodiscard]] bool domain_includes(const LocalStore& other) const noexcept;

    /// Order-insensitive map equality.
    friend bool operator==(const LocalStore& a, const LocalStore& b) noexcept;

    /// Keeps only the first n bindings.
    void truncate(size_t n) { m_entries.resize(n); }

private:
    std::vector<Entry> m_entries;
};

/// Sub-map of l1 on exactly dom(l0), with values taken from l1.
/// Throws StoreError if some key of l0 is missing from l1.
LocalStore restrict(const LocalStore& l1, const LocalStore& l0);

struct Expression;
struct Statement;

struct FunCall
{
    Identifier name;
    std::vector<Expression> args;
    friend bool operator==(const FunCall&, const FunCall&) = default;
};

struct OpCall
{
    Identifier name;
    std::vector<Expression> args;
    friend bool operator==(const OpCall&, const OpCall&) = default;
};

struct Ident
{
    Identifier name;
    friend bool operator==(const Ident&, const Ident&) = default;
};

struct Lit
{
    Literal literal;
    friend bool operator==(const Lit&, const Lit&) = default;
};

/// Runtime-only: a multi-value result.
struct Tuple
{
    std::vector<Value> values;
    friend bool operator==(const Tuple&, const Tuple&) = default;
};

struct Expression
{
    using Node = std::variant<FunCall, OpCall, Ident, Lit, Tuple>;

    Node node;
    SourceSpan span;

    /// Structural equality; spans are ignored.
    friend bool operator==(const Expression& a, const Expression& b) { return a.node == b.node; }
};

struct Block
{
    std::vector<Statement> statements;
    friend bool operator==(const Block&, const Block&) = default;
};

struct FunDef
{
    Identifier name;
    std::vector<Identifier> params;
    std::vector<Identifier> returns;
    Block body;
    friend bool operator==(const FunDef&, const FunDef&) = default;
};

/// Map from function names to their source-level definitions.
///
/// Immutable and shared: extending a namespace produces a new one, and a namespace that is
/// not extended keeps its identity, which frame collapsing relies on.
class Namespace
{
public:
    struct Entry
    {
        Identifier name;
        const FunDef* def;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    Namespace() = default;

    [[nodiscard]] const FunDef* find(Identifier name) const noexcept;
    [[nodiscard]] size_t size() const noexcept { return m_entries ? m_entries->size() : 0; }
    [[nodiscard]] std::vector<Entry> entries() const { return m_entries ? *m_entries : std::vector<Entry>{}; }

    /// Disjoint union with additional definitions. Throws StoreError on a name clash.
    /// Returns *this unchanged (same identity) when extra is empty.
    [[nodiscard]] Namespace extended(const std::vector<Entry>& extra) const;

    /// True if both refer to the same underlying map object.
    [[nodiscard]] bool same_identity(const Namespace& other) const noexcept
    {
        return m_entries == other.m_entries;
    }

    friend bool operator==(const Namespace& a, const Namespace& b) noexcept;

private:
    std::shared_ptr<const std::vector<Entry>> m_entries;
};

struct VarDecl
{
    std::vector<Identifier> targets;
    Expression value;
    friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

struct Assign
{
    std::vector<Identifier> targets;
    Expression value;
    friend bool operator==(const Assign&, const Assign&) = default;
};

struct ExprStmt
{
    Expression expr;
    friend bool operator==(const ExprStmt&, const ExprStmt&) = default;
};

struct If
{
    Expression cond;
    Block body;
    friend bool operator==(const If&, const If&) = default;
};

struct Case
{
    Literal value;
    Block body;
    friend bool operator==(const Case&, const Case&) = default;
};

struct Switch
{
    Expression scrutinee;
    std::vector<Case> cases;
    Block default_body;
    friend bool operator==(const Switch&, const Switch&) = default;
};

struct For
{
    Block init;
    Expression cond;
    Block post;
    Block body;
    friend bool operator==(const For&, const For&) = default;
};

struct Break
{
    friend bool operator==(const Break&, const Break&) = default;
};
struct Continue
{
    friend bool operator==(const Continue&, const Continue&) = default;
};
struct Leave
{
    friend bool operator==(const Leave&, const Leave&) = default;
};

// Runtime-only statements. They arise during small-step reduction and never come out of
// the parser.

struct ModeStmt
{
    Mode mode;
    friend bool operator==(const ModeStmt&, const ModeStmt&) = default;
};

/// {S⃗} with the store and namespace to reinstate on exit.
struct ScopedBlock
{
    std::vector<Statement> statements;
    LocalStore saved_locals;
    Namespace saved_functions;
    friend bool operator==(const ScopedBlock&, const ScopedBlock&) = default;
};

struct BreakCatcher
{
    Box<Statement> inner;
    friend bool operator==(const BreakCatcher&, const BreakCatcher&) = default;
};

struct ContinueCatcher
{
    Box<Statement> inner;
    friend bool operator==(const ContinueCatcher&, const ContinueCatcher&) = default;
};

/// A function body in progress, remembering the caller's store and the return variables.
struct CallFrame
{
    Box<Statement> inner;
    LocalStore saved_locals;
    std::vector<Identifier> return_vars;
    friend bool operator==(const CallFrame&, const CallFrame&) = default;
};

struct Statement
{
    using Node = std::variant<Block, FunDef, VarDecl, Assign, ExprStmt, If, Switch, For, Break,
        Continue, Leave, ModeStmt, ScopedBlock, BreakCatcher, ContinueCatcher, CallFrame>;

    Node node;
    SourceSpan span;

    /// Structural equality; spans are ignored.
    friend bool operator==(const Statement& a, const Statement& b) { return a.node == b.node; }
};

/// Result of evaluating a term: a mode (regular doubles as the empty tuple), a single value,
/// or a tuple of two or more values.
using Result = std::variant<Mode, Value, Tuple>;

/// Builds a result from a value list: [] is regular, [v] is v, anything longer is a tuple.
Result make_result(std::vector<Value> values);

/// The value list a result denotes: regular is [], v is [v]. Irregular modes have none.
std::optional<std::vector<Value>> result_values(const Result& r);

std::string to_string(const Result& r);

/// True for statement variants that only exist at run time.
bool is_runtime_only(const Statement& s) noexcept;
bool is_runtime_only(const Expression& e) noexcept;

/// True if neither s nor any nested node is a runtime-only variant.
bool is_source_level(const Statement& s) noexcept;

// Construction helpers, mostly for tests and the program generator.
Expression make_ident(std::string_view name);
Expression make_number(uint64_t v);
Expression make_literal(LiteralKind kind, std::string lexeme);
Expression make_call(std::string_view name, std::vector<Expression> args);
Expression make_opcall(std::string_view name, std::vector<Expression> args);
Statement make_stmt(Statement::Node node);
std::vector<Identifier> make_identifiers(std::initializer_list<std::string_view> names);
}  // namespace yulsem

template <>
struct std::hash<yulsem::Identifier>
{
    size_t operator()(const yulsem::Identifier& id) const noexcept { return id.hash(); }
};

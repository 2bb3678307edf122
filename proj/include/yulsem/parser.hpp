// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/dialect.hpp>
#include <yulsem/syntax.hpp>

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace yulsem
{
enum class TokenKind : uint8_t
{
    identifier,
    keyword,
    decimal,
    hex_number,
    string,
    hex_string,  ///< hex"..." (object mode only)
    boolean,
    lbrace,
    rbrace,
    lparen,
    rparen,
    comma,
    assign,  ///< :=
    arrow,   ///< ->
    end,
};

std::string_view to_string(TokenKind kind) noexcept;

struct Token
{
    TokenKind kind = TokenKind::end;
    std::string text;
    SourceSpan span;
};

class ParseError : public HostError
{
public:
    ParseError(SourceSpan span, std::string message, std::vector<std::string> expected = {});

    [[nodiscard]] const SourceSpan& span() const noexcept { return m_span; }
    [[nodiscard]] const std::string& message() const noexcept { return m_message; }
    [[nodiscard]] const std::vector<std::string>& expected() const noexcept { return m_expected; }

private:
    SourceSpan m_span;
    std::string m_message;
    std::vector<std::string> m_expected;
};

struct LexOptions
{
    bool object_mode = false;  ///< Accepts hex"..." data literals.
};

/// Tokenizes the whole input. The final token is always TokenKind::end.
std::vector<Token> lex(std::string_view source, LexOptions options = {});

/// Parses a single top-level block. The dialect decides which calls are opcodes.
Block parse_program(std::string_view source, const Dialect& dialect);

/// Recursive-descent parser over a token stream; shared with the object parser.
class Parser
{
public:
    Parser(std::vector<Token> tokens, const Dialect& dialect);

    Block parse_block();

    [[nodiscard]] const Token& peek(size_t ahead = 0) const;
    const Token& advance();
    const Token& expect(TokenKind kind, std::string_view what);
    bool accept_keyword(std::string_view kw);
    void expect_end();

private:
    Statement parse_statement();
    Statement parse_function_definition();
    Statement parse_switch();
    Statement parse_for();
    Expression parse_expression();
    Expression parse_call(const Token& name);
    Literal parse_literal_token(const Token& tok);
    std::vector<Identifier> parse_target_list();
    Identifier declared_name(const Token& tok);
    void check_literal(const Literal& lit, const SourceSpan& span) const;

    std::vector<Token> m_tokens;
    size_t m_pos = 0;
    const Dialect& m_dialect;
};

/// Canonical rendering. Throws HostError if the tree holds runtime-only nodes.
std::string pretty(const Block& block);
std::string pretty(const Statement& stmt);
std::string pretty(const Expression& expr);

/// Stable JSON dump: {"kind": ..., children..., "span": {...}}.
nlohmann::json ast_to_json(const Block& block);
nlohmann::json ast_to_json(const Statement& stmt);
nlohmann::json ast_to_json(const Expression& expr);
}  // namespace yulsem

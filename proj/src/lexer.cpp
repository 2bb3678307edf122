// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/parser.hpp>

#include <array>

namespace yulsem
{
namespace
{
constexpr std::array keywords = {
    "let", "function", "if", "switch", "case", "default", "for", "break", "continue", "leave"};

bool is_ident_start(char c) noexcept
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool is_ident_char(char c) noexcept
{
    return is_ident_start(c) || (c >= '0' && c <= '9') || c == '.';
}

bool is_digit(char c) noexcept
{
    return c >= '0' && c <= '9';
}

bool is_hex_digit(char c) noexcept
{
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer
{
public:
    Lexer(std::string_view src, LexOptions options) : m_src{src}, m_options{options} {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;)
        {
            skip_trivia();
            if (m_pos >= m_src.size())
            {
                out.push_back({TokenKind::end, "", here(0)});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    [[nodiscard]] char at(size_t i) const noexcept { return i < m_src.size() ? m_src[i] : '\0'; }

    [[nodiscard]] SourceSpan here(size_t len) const noexcept
    {
        return {m_pos, m_pos + len, m_line, m_column};
    }

    void bump(size_t n = 1)
    {
        for (size_t i = 0; i < n && m_pos < m_src.size(); ++i)
        {
            if (m_src[m_pos] == '\n')
            {
                ++m_line;
                m_column = 1;
            }
            else
                ++m_column;
            ++m_pos;
        }
    }

    void skip_trivia()
    {
        for (;;)
        {
            const char c = at(m_pos);
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
                bump();
            else if (c == '/' && at(m_pos + 1) == '/')
            {
                while (m_pos < m_src.size() && m_src[m_pos] != '\n')
                    bump();
            }
            else if (c == '/' && at(m_pos + 1) == '*')
            {
                const SourceSpan start = here(2);
                bump(2);
                for (;;)
                {
                    if (m_pos >= m_src.size())
                        throw ParseError{start, "unterminated block comment"};
                    if (m_src[m_pos] == '*' && at(m_pos + 1) == '/')
                    {
                        bump(2);
                        break;
                    }
                    bump();
                }
            }
            else
                return;
        }
    }

    Token make(TokenKind kind, size_t start, size_t line, size_t column)
    {
        return {kind, std::string{m_src.substr(start, m_pos - start)},
            {start, m_pos, static_cast<unsigned>(line), static_cast<unsigned>(column)}};
    }

    Token next()
    {
        const size_t start = m_pos;
        const size_t line = m_line;
        const size_t column = m_column;
        const char c = m_src[m_pos];

        if (is_digit(c))
        {
            TokenKind kind = TokenKind::decimal;
            if (c == '0' && at(m_pos + 1) == 'x')
            {
                bump(2);
                if (!is_hex_digit(at(m_pos)))
                    throw ParseError{{start, m_pos, m_line, m_column}, "hex literal without digits"};
                while (is_hex_digit(at(m_pos)))
                    bump();
                kind = TokenKind::hex_number;
            }
            else
            {
                while (is_digit(at(m_pos)))
                    bump();
            }
            if (is_ident_char(at(m_pos)))
                throw ParseError{{start, m_pos + 1, static_cast<unsigned>(line), static_cast<unsigned>(column)},
                    "malformed number literal"};
            return make(kind, start, line, column);
        }

        if (c == '"')
            return lex_string(start, line, column);

        if (is_ident_start(c))
        {
            while (is_ident_char(at(m_pos)))
                bump();
            const auto word = m_src.substr(start, m_pos - start);
            if (m_options.object_mode && word == "hex" && at(m_pos) == '"')
                return lex_hex_string(start, line, column);
            if (word == "true" || word == "false")
                return make(TokenKind::boolean, start, line, column);
            for (const auto* kw : keywords)
                if (word == kw)
                    return make(TokenKind::keyword, start, line, column);
            return make(TokenKind::identifier, start, line, column);
        }

        switch (c)
        {
        case '{':
            bump();
            return make(TokenKind::lbrace, start, line, column);
        case '}':
            bump();
            return make(TokenKind::rbrace, start, line, column);
        case '(':
            bump();
            return make(TokenKind::lparen, start, line, column);
        case ')':
            bump();
            return make(TokenKind::rparen, start, line, column);
        case ',':
            bump();
            return make(TokenKind::comma, start, line, column);
        case ':':
            if (at(m_pos + 1) == '=')
            {
                bump(2);
                return make(TokenKind::assign, start, line, column);
            }
            break;
        case '-':
            if (at(m_pos + 1) == '>')
            {
                bump(2);
                return make(TokenKind::arrow, start, line, column);
            }
            break;
        default:
            break;
        }
        throw ParseError{here(1), std::string{"unexpected character '"} + c + "'"};
    }

    Token lex_string(size_t start, size_t line, size_t column)
    {
        bump();
        for (;;)
        {
            if (m_pos >= m_src.size() || m_src[m_pos] == '\n')
                throw ParseError{{start, m_pos, static_cast<unsigned>(line), static_cast<unsigned>(column)},
                    "unterminated string literal"};
            const char ch = m_src[m_pos];
            if (ch == '\\')
            {
                bump(2);
                continue;
            }
            bump();
            if (ch == '"')
                break;
        }
        Token tok = make(TokenKind::string, start, line, column);
        try
        {
            (void)decode_string_literal(tok.text);
        }
        catch (const LiteralError& e)
        {
            throw ParseError{tok.span, e.what()};
        }
        return tok;
    }

    Token lex_hex_string(size_t start, size_t line, size_t column)
    {
        bump();
        const size_t body = m_pos;
        for (;;)
        {
            if (m_pos >= m_src.size() || m_src[m_pos] == '\n')
                throw ParseError{{start, m_pos, static_cast<unsigned>(line), static_cast<unsigned>(column)},
                    "unterminated hex literal"};
            if (m_src[m_pos] == '"')
                break;
            if (!is_hex_digit(m_src[m_pos]) && m_src[m_pos] != '_')
                throw ParseError{here(1), "malformed hex literal"};
            bump();
        }
        std::string digits;
        for (const char ch : m_src.substr(body, m_pos - body))
            if (ch != '_')
                digits.push_back(ch);
        bump();
        if (digits.size() % 2 != 0)
            throw ParseError{{start, m_pos, static_cast<unsigned>(line), static_cast<unsigned>(column)},
                "hex literal has an odd number of digits"};
        Token tok = make(TokenKind::hex_string, start, line, column);
        tok.text = digits;
        return tok;
    }

    std::string_view m_src;
    LexOptions m_options;
    size_t m_pos = 0;
    unsigned m_line = 1;
    unsigned m_column = 1;
};
}  // namespace

std::string_view to_string(TokenKind kind) noexcept
{
    switch (kind)
    {
    case TokenKind::identifier:
        return "identifier";
    case TokenKind::keyword:
        return "keyword";
    case TokenKind::decimal:
        return "decimal";
    case TokenKind::hex_number:
        return "hex";
    case TokenKind::string:
        return "string";
    case TokenKind::hex_string:
        return "hex-string";
    case TokenKind::boolean:
        return "boolean";
    case TokenKind::lbrace:
        return "'{'";
    case TokenKind::rbrace:
        return "'}'";
    case TokenKind::lparen:
        return "'('";
    case TokenKind::rparen:
        return "')'";
    case TokenKind::comma:
        return "','";
    case TokenKind::assign:
        return "':='";
    case TokenKind::arrow:
        return "'->'";
    case TokenKind::end:
        return "end of input";
    }
    return "?";
}

ParseError::ParseError(SourceSpan span, std::string message, std::vector<std::string> expected)
  : HostError{std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message},
    m_span{span},
    m_message{std::move(message)},
    m_expected{std::move(expected)}
{
    if (m_message.empty())
        m_message = "parse error";
}

std::vector<Token> lex(std::string_view source, LexOptions options)
{
    return Lexer{source, options}.run();
}
}  // namespace yulsem

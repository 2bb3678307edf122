// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/parser.hpp>

#include <algorithm>

namespace yulsem
{
namespace
{
SourceSpan join(const SourceSpan& first, const SourceSpan& last) noexcept
{
    return {first.start, last.end, first.line, first.column};
}

bool is_literal_token(TokenKind k) noexcept
{
    return k == TokenKind::decimal || k == TokenKind::hex_number || k == TokenKind::string ||
           k == TokenKind::boolean;
}
}  // namespace

Parser::Parser(std::vector<Token> tokens, const Dialect& dialect)
  : m_tokens{std::move(tokens)}, m_dialect{dialect}
{
    if (m_tokens.empty() || m_tokens.back().kind != TokenKind::end)
        m_tokens.push_back({TokenKind::end, "", m_tokens.empty() ? SourceSpan{} : m_tokens.back().span});
}

const Token& Parser::peek(size_t ahead) const
{
    return m_tokens[std::min(m_pos + ahead, m_tokens.size() - 1)];
}

const Token& Parser::advance()
{
    const Token& t = m_tokens[m_pos];
    if (m_pos + 1 < m_tokens.size())
        ++m_pos;
    return t;
}

const Token& Parser::expect(TokenKind kind, std::string_view what)
{
    if (peek().kind != kind)
    {
        const auto& t = peek();
        throw ParseError{t.span,
            "expected " + std::string{what} + ", found " +
                (t.kind == TokenKind::end ? std::string{"end of input"} : "'" + t.text + "'"),
            {std::string{what}}};
    }
    return advance();
}

bool Parser::accept_keyword(std::string_view kw)
{
    if (peek().kind == TokenKind::keyword && peek().text == kw)
    {
        advance();
        return true;
    }
    return false;
}

void Parser::expect_end()
{
    expect(TokenKind::end, "end of input");
}

Block Parser::parse_block()
{
    expect(TokenKind::lbrace, "'{'");
    Block block;
    while (peek().kind != TokenKind::rbrace)
    {
        if (peek().kind == TokenKind::end)
            throw ParseError{peek().span, "unterminated block", {"'}'"}};
        if (peek().kind == TokenKind::keyword && peek().text == "let")
        {
            // let a, b (no initializer) becomes one zero-initialized declaration per target.
            const Token& let = advance();
            auto targets = parse_target_list();
            if (peek().kind == TokenKind::assign)
            {
                advance();
                auto value = parse_expression();
                const auto span = join(let.span, m_tokens[m_pos - 1].span);
                block.statements.push_back({VarDecl{std::move(targets), std::move(value)}, span});
            }
            else
            {
                const auto span = join(let.span, m_tokens[m_pos - 1].span);
                for (const auto& t : targets)
                    block.statements.push_back(
                        {VarDecl{{t}, Expression{Lit{{LiteralKind::decimal, "0"}}, span}}, span});
            }
            continue;
        }
        block.statements.push_back(parse_statement());
    }
    advance();
    return block;
}

Identifier Parser::declared_name(const Token& tok)
{
    if (tok.kind != TokenKind::identifier)
        throw ParseError{tok.span, "expected identifier, found '" + tok.text + "'", {"identifier"}};
    if (m_dialect.is_builtin(tok.text))
        throw ParseError{tok.span, "'" + tok.text + "' is a reserved builtin name"};
    return Identifier{tok.text};
}

std::vector<Identifier> Parser::parse_target_list()
{
    std::vector<Identifier> targets;
    for (;;)
    {
        const Token& tok = advance();
        const Identifier id = declared_name(tok);
        if (std::find(targets.begin(), targets.end(), id) != targets.end())
            throw ParseError{tok.span, "duplicate target '" + tok.text + "'"};
        targets.push_back(id);
        if (peek().kind != TokenKind::comma)
            break;
        advance();
    }
    return targets;
}

Statement Parser::parse_statement()
{
    const Token& first = peek();
    const SourceSpan begin = first.span;
    auto finish = [&](Statement::Node node) {
        return Statement{std::move(node), join(begin, m_tokens[m_pos - 1].span)};
    };

    switch (first.kind)
    {
    case TokenKind::lbrace:
        return finish(parse_block());
    case TokenKind::keyword:
    {
        const std::string kw = first.text;
        if (kw == "function")
            return parse_function_definition();
        if (kw == "switch")
            return parse_switch();
        if (kw == "for")
            return parse_for();
        advance();
        if (kw == "if")
        {
            auto cond = parse_expression();
            auto body = parse_block();
            return finish(If{std::move(cond), std::move(body)});
        }
        if (kw == "break")
            return finish(Break{});
        if (kw == "continue")
            return finish(Continue{});
        if (kw == "leave")
            return finish(Leave{});
        throw ParseError{begin, "unexpected keyword '" + kw + "'", {"statement"}};
    }
    case TokenKind::identifier:
    {
        if (peek(1).kind == TokenKind::lparen)
        {
            auto expr = parse_expression();
            return finish(ExprStmt{std::move(expr)});
        }
        if (peek(1).kind == TokenKind::comma || peek(1).kind == TokenKind::assign)
        {
            auto targets = parse_target_list();
            expect(TokenKind::assign, "':='");
            auto value = parse_expression();
            return finish(Assign{std::move(targets), std::move(value)});
        }
        throw ParseError{begin, "expression statement must be a function or opcode call", {"'('", "':='"}};
    }
    default:
        if (is_literal_token(first.kind))
            throw ParseError{begin, "expression statement must be a function or opcode call"};
        throw ParseError{begin, "expected statement, found '" + first.text + "'", {"statement"}};
    }
}

Statement Parser::parse_function_definition()
{
    const Token& kw = advance();
    FunDef def;
    def.name = declared_name(advance());
    expect(TokenKind::lparen, "'('");
    if (peek().kind != TokenKind::rparen)
    {
        for (;;)
        {
            def.params.push_back(declared_name(advance()));
            if (peek().kind != TokenKind::comma)
                break;
            advance();
        }
    }
    expect(TokenKind::rparen, "')'");
    if (peek().kind == TokenKind::arrow)
    {
        advance();
        for (;;)
        {
            def.returns.push_back(declared_name(advance()));
            if (peek().kind != TokenKind::comma)
                break;
            advance();
        }
    }
    def.body = parse_block();
    return {std::move(def), join(kw.span, m_tokens[m_pos - 1].span)};
}

Statement Parser::parse_switch()
{
    const Token& kw = advance();
    Switch sw;
    sw.scrutinee = parse_expression();
    std::vector<Value> seen;
    bool has_default = false;
    while (peek().kind == TokenKind::keyword && (peek().text == "case" || peek().text == "default"))
    {
        const Token& head = advance();
        if (head.text == "case")
        {
            const Token& lit_tok = advance();
            if (!is_literal_token(lit_tok.kind))
                throw ParseError{lit_tok.span, "case value must be a literal", {"literal"}};
            Literal lit = parse_literal_token(lit_tok);
            check_literal(lit, lit_tok.span);
            const Value v = m_dialect.value_of_literal(lit);
            if (std::find(seen.begin(), seen.end(), v) != seen.end())
                throw ParseError{lit_tok.span, "duplicate case value " + lit.lexeme};
            seen.push_back(v);
            sw.cases.push_back({std::move(lit), parse_block()});
        }
        else
        {
            if (has_default)
                throw ParseError{head.span, "duplicate default case"};
            has_default = true;
            sw.default_body = parse_block();
        }
    }
    if (sw.cases.empty() && !has_default)
        throw ParseError{peek().span, "switch needs at least one case or default", {"case", "default"}};
    return {std::move(sw), join(kw.span, m_tokens[m_pos - 1].span)};
}

Statement Parser::parse_for()
{
    const Token& kw = advance();
    For loop;
    loop.init = parse_block();
    loop.cond = parse_expression();
    loop.post = parse_block();
    loop.body = parse_block();
    return {std::move(loop), join(kw.span, m_tokens[m_pos - 1].span)};
}

Literal Parser::parse_literal_token(const Token& tok)
{
    switch (tok.kind)
    {
    case TokenKind::decimal:
        return {LiteralKind::decimal, tok.text};
    case TokenKind::hex_number:
        return {LiteralKind::hex, tok.text};
    case TokenKind::string:
        return {LiteralKind::string, tok.text};
    case TokenKind::boolean:
        return {LiteralKind::boolean, tok.text};
    default:
        throw ParseError{tok.span, "expected literal", {"literal"}};
    }
}

void Parser::check_literal(const Literal& lit, const SourceSpan& span) const
{
    try
    {
        (void)m_dialect.value_of_literal(lit);
    }
    catch (const LiteralError& e)
    {
        throw ParseError{span, e.what()};
    }
}

Expression Parser::parse_expression()
{
    const Token& tok = advance();
    if (is_literal_token(tok.kind))
    {
        Literal lit = parse_literal_token(tok);
        check_literal(lit, tok.span);
        return {Lit{std::move(lit)}, tok.span};
    }
    if (tok.kind == TokenKind::identifier)
    {
        if (peek().kind == TokenKind::lparen)
            return parse_call(tok);
        if (m_dialect.is_builtin(tok.text))
            throw ParseError{tok.span, "builtin '" + tok.text + "' used as a variable"};
        return {Ident{Identifier{tok.text}}, tok.span};
    }
    throw ParseError{tok.span, "expected expression, found '" + tok.text + "'", {"expression"}};
}

Expression Parser::parse_call(const Token& name)
{
    expect(TokenKind::lparen, "'('");
    const BuiltinInfo* info = m_dialect.builtin(name.text);
    std::vector<Expression> args;
    if (peek().kind != TokenKind::rparen)
    {
        for (;;)
        {
            if (info != nullptr && info->literal_args)
            {
                const Token& tok = advance();
                if (tok.kind != TokenKind::string)
                    throw ParseError{tok.span, "'" + name.text + "' expects string literal arguments",
                        {"string"}};
                args.push_back({Lit{{LiteralKind::string, tok.text}}, tok.span});
            }
            else
                args.push_back(parse_expression());
            if (peek().kind != TokenKind::comma)
                break;
            advance();
        }
    }
    const Token& close = expect(TokenKind::rparen, "')'");
    const auto span = join(name.span, close.span);
    const Identifier id{name.text};
    if (info != nullptr)
        return {OpCall{id, std::move(args)}, span};
    return {FunCall{id, std::move(args)}, span};
}

Block parse_program(std::string_view source, const Dialect& dialect)
{
    Parser p{lex(source), dialect};
    Block b = p.parse_block();
    p.expect_end();
    return b;
}
}  // namespace yulsem

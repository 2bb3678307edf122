// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "../support/run.hpp"

#include <yulsem/harness.hpp>

#include <gtest/gtest.h>

using namespace yulsem;

namespace
{
const EvmDialect dialect;

Block parse(std::string_view src)
{
    return parse_program(src, dialect);
}

ParseError parse_error(std::string_view src)
{
    try
    {
        parse(src);
    }
    catch (const ParseError& e)
    {
        return e;
    }
    ADD_FAILURE() << "no parse error for: " << src;
    return ParseError{{}, ""};
}
}  // namespace

TEST(lexer, tokens_and_comments)
{
    const auto toks = lex("{ // line\n let x := 0x1F /* block\n */ \"s\\\"\" }");
    std::vector<TokenKind> kinds;
    for (const auto& t : toks)
        kinds.push_back(t.kind);
    ASSERT_EQ(toks.size(), 8u);
    EXPECT_EQ(toks[2].text, "x");
    EXPECT_EQ(toks[2].span.line, 2u);
    EXPECT_EQ(toks[4].text, "0x1F");
    EXPECT_EQ(toks[5].text, "\"s\\\"\"");
    EXPECT_EQ(kinds.back(), TokenKind::end);
    EXPECT_THROW(lex("{ /* open"), ParseError);
    EXPECT_THROW(lex("{ # }"), ParseError);
    EXPECT_THROW(lex("{ 0x }"), ParseError);
}

TEST(parser, statement_forms)
{
    const auto b = parse(R"({
        function f(a, b) -> r, s { r := a s := b leave }
        let x, y := f(1, 2)
        let z
        x, y := f(y, x)
        if lt(x, y) { pop(x) }
        switch x case 0 { } case "a" { } default { }
        for { let i := 0 } lt(i, 2) { i := add(i, 1) } { break continue }
        { }
    })");
    ASSERT_EQ(b.statements.size(), 8u);
    EXPECT_TRUE(std::holds_alternative<FunDef>(b.statements[0].node));
    const auto& def = std::get<FunDef>(b.statements[0].node);
    EXPECT_EQ(def.params.size(), 2u);
    EXPECT_EQ(def.returns.size(), 2u);
    EXPECT_EQ(std::get<VarDecl>(b.statements[1].node).targets.size(), 2u);
    const auto& decl = std::get<VarDecl>(b.statements[2].node);
    EXPECT_EQ(decl.value, make_number(0));
    EXPECT_TRUE(std::holds_alternative<Assign>(b.statements[3].node));
    const auto& sw = std::get<Switch>(b.statements[5].node);
    EXPECT_EQ(sw.cases.size(), 2u);
    EXPECT_TRUE(std::holds_alternative<For>(b.statements[6].node));

    const auto& call = std::get<VarDecl>(b.statements[1].node).value;
    EXPECT_TRUE(std::holds_alternative<FunCall>(call.node));
    const auto& cond = std::get<If>(b.statements[4].node).cond;
    EXPECT_TRUE(std::holds_alternative<OpCall>(cond.node));
}

TEST(parser, let_without_value_splits)
{
    const auto b = parse("{ let a, b }");
    ASSERT_EQ(b.statements.size(), 2u);
    EXPECT_EQ(std::get<VarDecl>(b.statements[1].node).targets[0].str(), "b");
}

TEST(parser, switch_default_placement)
{
    const auto a = parse("{ switch 1 default { pop(2) } case 1 { pop(1) } }");
    const auto b = parse("{ switch 1 case 1 { pop(1) } default { pop(2) } }");
    EXPECT_EQ(a, b);
    const auto c = parse("{ switch 1 case 1 { } }");
    EXPECT_TRUE(std::get<Switch>(c.statements[0].node).default_body.statements.empty());
    EXPECT_NE(std::string{parse_error("{ switch 1 default { } default { } }").what()}.find("duplicate default"),
        std::string::npos);
    parse_error("{ switch 1 }");
    parse_error("{ switch 1 case 1 { } case 0x1 { } }");
}

TEST(parser, errors_carry_spans)
{
    const auto e = parse_error("{\n  let x := \n}");
    EXPECT_EQ(e.span().line, 3u);
    EXPECT_FALSE(e.expected().empty());

    parse_error("{ let add := 1 }");
    parse_error("{ x }");
    parse_error("{ 1 }");
    parse_error("{ let x := 1 ");
    parse_error("{ } }");
    parse_error("{ let x, x := f() }");
    parse_error("{ let x := " + std::string(80, '9') + " }");
    parse_error("{ pop(mload) }");
    parse_error("{ while }");
}

TEST(parser, ast_json_shape)
{
    const auto j = ast_to_json(parse("{ let x := add(1, 2) }"));
    EXPECT_EQ(j["kind"], "Block");
    EXPECT_EQ(j["statements"][0]["kind"], "VarDecl");
    EXPECT_TRUE(j["statements"][0].contains("span"));
}

TEST(printer, canonical_form)
{
    const auto b = parse("{ let x := add( 1 ,0x02 ) if x { x := 0 } }");
    const auto p = pretty(b);
    EXPECT_EQ(parse(p), b);
    EXPECT_EQ(pretty(parse(p)), p);
    EXPECT_NE(p.find("add(1, 0x02)"), std::string::npos);
}

TEST(printer, runtime_nodes_are_rejected)
{
    Block b;
    b.statements.push_back(make_stmt(ModeStmt{Mode::break_()}));
    EXPECT_THROW(pretty(b), HostError);
}

TEST(printer, round_trip_over_corpus)
{
    for (const auto& entry : std::filesystem::directory_iterator{test::corpus_dir()})
    {
        const auto b = parse(test::read_file(entry.path()));
        const auto p = pretty(b);
        EXPECT_EQ(parse(p), b) << entry.path();
        EXPECT_EQ(pretty(parse(p)), p) << entry.path();
    }
}

TEST(printer, round_trip_over_generated_programs)
{
    for (uint64_t seed = 0; seed < 2000; ++seed)
    {
        GenConfig cfg;
        cfg.seed = seed;
        const auto b = generate(cfg, dialect);
        const auto p = pretty(b);
        ASSERT_EQ(parse(p), b) << "seed " << seed;
        ASSERT_EQ(pretty(parse(p)), p) << "seed " << seed;
    }
}

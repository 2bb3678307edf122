// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/objects.hpp>
#include <yulsem/parser.hpp>

#include <algorithm>
#include <set>

namespace yulsem
{
namespace
{
constexpr int op_datacopy = 1000;
constexpr int op_memoryguard = 1001;
constexpr int op_datasize = 1002;
constexpr int op_dataoffset = 1003;

bool is_word(const Token& tok, std::string_view word)
{
    return tok.kind == TokenKind::identifier && tok.text == word;
}

Bytes hex_bytes(const Token& tok)
{
    const auto nibble = [&](char c) -> uint8_t {
        if (c >= '0' && c <= '9')
            return static_cast<uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f')
            return static_cast<uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F')
            return static_cast<uint8_t>(c - 'A' + 10);
        throw ParseError{tok.span, "malformed hex literal"};
    };
    if (tok.text.size() % 2 != 0)
        throw ParseError{tok.span, "hex literal has an odd number of digits"};
    Bytes out;
    out.reserve(tok.text.size() / 2);
    for (size_t i = 0; i < tok.text.size(); i += 2)
        out.push_back(static_cast<uint8_t>(nibble(tok.text[i]) << 4 | nibble(tok.text[i + 1])));
    return out;
}

std::string string_body(const Token& tok)
{
    try
    {
        const auto bytes = decode_string_literal(tok.text);
        return {bytes.begin(), bytes.end()};
    }
    catch (const LiteralError& e)
    {
        throw ParseError{tok.span, e.what()};
    }
}

YulObject parse_one(Parser& p)
{
    if (!is_word(p.peek(), "object"))
        throw ParseError{p.peek().span, "expected 'object'", {"object"}};
    p.advance();
    YulObject obj;
    obj.name = string_body(p.expect(TokenKind::string, "object name"));
    p.expect(TokenKind::lbrace, "'{'");
    if (!is_word(p.peek(), "code"))
        throw ParseError{p.peek().span, "expected 'code'", {"code"}};
    p.advance();
    obj.code = p.parse_block();

    std::set<std::string, std::less<>> names;
    while (p.peek().kind != TokenKind::rbrace)
    {
        const Token start = p.peek();
        DataItem item;
        if (is_word(start, "object"))
            item.node = Box<YulObject>{parse_one(p)};
        else if (is_word(start, "data"))
        {
            p.advance();
            RawData raw;
            raw.name = string_body(p.expect(TokenKind::string, "data name"));
            const Token& value = p.advance();
            if (value.kind == TokenKind::hex_string)
                raw.bytes = hex_bytes(value);
            else if (value.kind == TokenKind::string)
            {
                const auto body = string_body(value);
                raw.bytes.assign(body.begin(), body.end());
            }
            else
                throw ParseError{value.span, "expected hex or string data", {"hex", "string"}};
            item.node = std::move(raw);
        }
        else
            throw ParseError{start.span, "expected 'object', 'data' or '}'", {"object", "data", "}"}};

        if (std::holds_alternative<Box<YulObject>>(item.node) && item.name().starts_with('.'))
            throw ParseError{start.span, "object names cannot start with a dot"};
        if (!names.insert(item.name()).second)
            throw ParseError{start.span, "duplicate data name '" + item.name() + "'"};
        obj.data.push_back(std::move(item));
    }
    p.advance();
    return obj;
}

Expression resolve(const Expression& e, const DataLayout& layout);

std::vector<Expression> resolve_all(const std::vector<Expression>& args, const DataLayout& layout)
{
    std::vector<Expression> out;
    out.reserve(args.size());
    for (const auto& a : args)
        out.push_back(resolve(a, layout));
    return out;
}

Expression resolve(const Expression& e, const DataLayout& layout)
{
    if (const auto* op = std::get_if<OpCall>(&e.node))
    {
        const bool size = op->name.str() == "datasize";
        if (size || op->name.str() == "dataoffset")
        {
            const auto* lit = op->args.size() == 1 ? std::get_if<Lit>(&op->args[0].node) : nullptr;
            if (lit == nullptr || lit->literal.kind != LiteralKind::string)
                throw HostError{op->name.str() + " expects one string literal"};
            const auto bytes = decode_string_literal(lit->literal.lexeme);
            const std::string name{bytes.begin(), bytes.end()};
            const auto* region = layout.find(name);
            if (region == nullptr)
                throw HostError{"unknown data name '" + name + "'"};
            Expression out = make_number(size ? region->size : region->offset);
            out.span = e.span;
            return out;
        }
        return {OpCall{op->name, resolve_all(op->args, layout)}, e.span};
    }
    if (const auto* fc = std::get_if<FunCall>(&e.node))
        return {FunCall{fc->name, resolve_all(fc->args, layout)}, e.span};
    return e;
}

Block resolve_block(const Block& b, const DataLayout& layout);

Statement resolve_stmt(const Statement& s, const DataLayout& layout)
{
    Statement out = s;
    std::visit(
        [&](auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Block>)
                node = resolve_block(node, layout);
            else if constexpr (std::is_same_v<T, FunDef>)
                node.body = resolve_block(node.body, layout);
            else if constexpr (std::is_same_v<T, VarDecl> || std::is_same_v<T, Assign>)
                node.value = resolve(node.value, layout);
            else if constexpr (std::is_same_v<T, ExprStmt>)
                node.expr = resolve(node.expr, layout);
            else if constexpr (std::is_same_v<T, If>)
            {
                node.cond = resolve(node.cond, layout);
                node.body = resolve_block(node.body, layout);
            }
            else if constexpr (std::is_same_v<T, Switch>)
            {
                node.scrutinee = resolve(node.scrutinee, layout);
                for (auto& c : node.cases)
                    c.body = resolve_block(c.body, layout);
                node.default_body = resolve_block(node.default_body, layout);
            }
            else if constexpr (std::is_same_v<T, For>)
            {
                node.init = resolve_block(node.init, layout);
                node.cond = resolve(node.cond, layout);
                node.post = resolve_block(node.post, layout);
                node.body = resolve_block(node.body, layout);
            }
        },
        out.node);
    return out;
}

Block resolve_block(const Block& b, const DataLayout& layout)
{
    Block out;
    out.statements.reserve(b.statements.size());
    for (const auto& s : b.statements)
        out.statements.push_back(resolve_stmt(s, layout));
    return out;
}
}  // namespace

const std::string& DataItem::name() const noexcept
{
    if (const auto* obj = std::get_if<Box<YulObject>>(&node))
        return (*obj)->name;
    return std::get<RawData>(node).name;
}

const DataRegion* DataLayout::find(std::string_view name) const
{
    const auto it = regions.find(name);
    return it == regions.end() ? nullptr : &it->second;
}

bool is_object_source(std::string_view source)
{
    try
    {
        const auto tokens = lex(source, LexOptions{true});
        return !tokens.empty() && is_word(tokens.front(), "object");
    }
    catch (const ParseError&)
    {
        return false;
    }
}

YulObject parse_object(std::string_view source, const Dialect& dialect)
{
    Parser p{lex(source, LexOptions{true}), dialect};
    YulObject obj = parse_one(p);
    p.expect_end();
    return obj;
}

namespace
{
std::string quoted(const std::string& s)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out = "\"";
    for (const char c : s)
    {
        const auto u = static_cast<unsigned char>(c);
        if (c == '"' || c == '\\')
            out += {'\\', c};
        else if (u < 0x20 || u >= 0x7f)
            out += {'\\', 'x', digits[u >> 4], digits[u & 0xf]};
        else
            out += c;
    }
    return out + "\"";
}

std::string indent(const std::string& text, const std::string& pad)
{
    std::string out;
    size_t start = 0;
    while (start < text.size())
    {
        size_t nl = text.find('\n', start);
        if (nl == std::string::npos)
            nl = text.size();
        out += pad + text.substr(start, nl - start) + "\n";
        start = nl + 1;
    }
    return out;
}
}  // namespace

std::string pretty(const YulObject& obj)
{
    std::string out = "object " + quoted(obj.name) + " {\n";
    out += indent("code " + pretty(obj.code), "    ");
    for (const auto& item : obj.data)
    {
        if (const auto* nested = std::get_if<Box<YulObject>>(&item.node))
            out += indent(pretty(**nested), "    ");
        else
        {
            const auto& raw = std::get<RawData>(item.node);
            out += "    data " + quoted(raw.name) + " hex\"" + to_hex(raw.bytes).substr(2) + "\"\n";
        }
    }
    return out + "}";
}

nlohmann::json object_to_json(const YulObject& obj)
{
    nlohmann::json data = nlohmann::json::array();
    for (const auto& item : obj.data)
    {
        if (const auto* nested = std::get_if<Box<YulObject>>(&item.node))
            data.push_back(object_to_json(**nested));
        else
        {
            const auto& raw = std::get<RawData>(item.node);
            data.push_back({{"kind", "data"}, {"name", raw.name}, {"bytes", to_hex(raw.bytes)}});
        }
    }
    return {{"kind", "object"}, {"name", obj.name}, {"code", ast_to_json(obj.code)}, {"data", std::move(data)}};
}

Bytes serialize(const DataItem& item)
{
    if (const auto* obj = std::get_if<Box<YulObject>>(&item.node))
    {
        const auto text = pretty((*obj)->code);
        return {text.begin(), text.end()};
    }
    return std::get<RawData>(item.node).bytes;
}

DataLayout build_layout(const YulObject& obj)
{
    DataLayout layout;
    for (const auto& item : obj.data)
    {
        const Bytes bytes = serialize(item);
        layout.regions.emplace(item.name(), DataRegion{layout.image.size(), bytes.size()});
        layout.image.insert(layout.image.end(), bytes.begin(), bytes.end());
    }
    return layout;
}

Block resolve_data_functions(const Block& code, const DataLayout& layout)
{
    return resolve_block(code, layout);
}

ObjectDialect::ObjectDialect(GasTable table, DataLayout layout, bool allow_special_copy)
  : EvmDialect{std::move(table)}, m_layout{std::move(layout)}, m_allow_special_copy{allow_special_copy}
{
    add_builtin({"datacopy", 3, 0, false}, op_datacopy);
    add_builtin({"memoryguard", 1, 1, false}, op_memoryguard);
    add_builtin({"datasize", 1, 1, true}, op_datasize);
    add_builtin({"dataoffset", 1, 1, true}, op_dataoffset);
}

OpcodeResult ObjectDialect::eval_opcode(Identifier name, std::span<const Value> args, GlobalState& g) const
{
    if (name == m_memoryguard)
    {
        if (args.size() != 1)
            throw HostError{"memoryguard expects 1 argument"};
        if (!charge(g, "memoryguard", gas_table()["memoryguard"]))
            return OpcodeResult::halt(out_of_gas());
        return OpcodeResult::of(args[0]);
    }
    if (name == m_datasize || name == m_dataoffset)
        throw HostError{name.str() + " must be resolved against the object layout before evaluation"};
    if (!(name == m_datacopy))
        return EvmDialect::eval_opcode(name, args, g);

    if (args.size() != 3)
        throw HostError{"datacopy expects 3 arguments"};
    const Value& dst = args[0];
    const Value& src = args[1];
    const Value& len = args[2];
    if (!len.fits_u64() || len.low_u64() > max_memory_bytes)
    {
        g.gas_remaining = 0;
        return OpcodeResult::halt(out_of_gas());
    }
    const uint64_t n = len.low_u64();
    if (!m_allow_special_copy && n > 0)
    {
        for (const auto& [region_name, region] : m_layout.regions)
        {
            if (!region_name.starts_with('.') || region.size == 0)
                continue;
            const bool disjoint = !src.fits_u64() || src.low_u64() >= region.offset + region.size ||
                                  src.low_u64() + n <= region.offset;
            if (!disjoint)
                throw HostError{"datacopy of special data '" + region_name + "'"};
        }
    }
    const uint64_t cost = gas_table()["datacopy"] + gas_table()["copy_word"] * ((n + 31) / 32);
    if (!charge(g, "datacopy", cost))
        return OpcodeResult::halt(out_of_gas());
    if (!touch_memory(g, dst, len))
        return OpcodeResult::halt(out_of_gas());
    for (uint64_t i = 0; i < n; ++i)
    {
        uint8_t b = 0;
        if (src.fits_u64() && src.low_u64() + i >= src.low_u64() && src.low_u64() + i < m_layout.image.size())
            b = m_layout.image[static_cast<size_t>(src.low_u64() + i)];
        g.memory[static_cast<size_t>(dst.low_u64() + i)] = b;
    }
    return OpcodeResult::none();
}

ObjectRun run_object(const YulObject& obj, GlobalState g, const ObjectRunner& runner, const GasTable& table,
    bool allow_special_copy)
{
    ObjectRun run;
    run.layout = build_layout(obj);
    run.resolved = resolve_data_functions(obj.code, run.layout);
    const ObjectDialect dialect{table, run.layout, allow_special_copy};
    run.outcome = runner(dialect, run.resolved, std::move(g));
    return run;
}
}  // namespace yulsem

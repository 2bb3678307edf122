// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/evm.hpp>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace yulsem
{
namespace
{
enum Op : int
{
    op_add,
    op_sub,
    op_mul,
    op_div,
    op_sdiv,
    op_mod,
    op_smod,
    op_addmod,
    op_mulmod,
    op_exp,
    op_signextend,
    op_lt,
    op_gt,
    op_slt,
    op_sgt,
    op_eq,
    op_iszero,
    op_and,
    op_or,
    op_xor,
    op_not,
    op_byte,
    op_shl,
    op_shr,
    op_sar,
    op_mload,
    op_mstore,
    op_mstore8,
    op_msize,
    op_sload,
    op_sstore,
    op_stop,
    op_return,
    op_revert,
    op_invalid,
    op_pop,
    op_gas,
    op_keccak256,
};

struct OpSpec
{
    const char* name;
    Op op;
    unsigned args;
    unsigned rets;
    uint64_t cost;
};

constexpr OpSpec op_specs[] = {
    {"add", op_add, 2, 1, 3},
    {"sub", op_sub, 2, 1, 3},
    {"mul", op_mul, 2, 1, 5},
    {"div", op_div, 2, 1, 5},
    {"sdiv", op_sdiv, 2, 1, 5},
    {"mod", op_mod, 2, 1, 5},
    {"smod", op_smod, 2, 1, 5},
    {"addmod", op_addmod, 3, 1, 8},
    {"mulmod", op_mulmod, 3, 1, 8},
    {"exp", op_exp, 2, 1, 10},
    {"signextend", op_signextend, 2, 1, 5},
    {"lt", op_lt, 2, 1, 3},
    {"gt", op_gt, 2, 1, 3},
    {"slt", op_slt, 2, 1, 3},
    {"sgt", op_sgt, 2, 1, 3},
    {"eq", op_eq, 2, 1, 3},
    {"iszero", op_iszero, 1, 1, 3},
    {"and", op_and, 2, 1, 3},
    {"or", op_or, 2, 1, 3},
    {"xor", op_xor, 2, 1, 3},
    {"not", op_not, 1, 1, 3},
    {"byte", op_byte, 2, 1, 3},
    {"shl", op_shl, 2, 1, 3},
    {"shr", op_shr, 2, 1, 3},
    {"sar", op_sar, 2, 1, 3},
    {"mload", op_mload, 1, 1, 3},
    {"mstore", op_mstore, 2, 0, 3},
    {"mstore8", op_mstore8, 2, 0, 3},
    {"msize", op_msize, 0, 1, 2},
    {"sload", op_sload, 1, 1, 2100},
    {"sstore", op_sstore, 2, 0, 0},
    {"stop", op_stop, 0, 0, 0},
    {"return", op_return, 2, 0, 0},
    {"revert", op_revert, 2, 0, 0},
    {"invalid", op_invalid, 0, 0, 0},
    {"pop", op_pop, 1, 0, 2},
    {"gas", op_gas, 0, 1, 2},
    {"keccak256", op_keccak256, 2, 1, 30},
};

U256 negate_if(const U256& v, bool neg) noexcept
{
    return neg ? -v : v;
}

U256 abs_signed(const U256& v) noexcept
{
    return negate_if(v, v.is_negative());
}

U256 sdiv(const U256& a, const U256& b) noexcept
{
    if (b.is_zero())
        return {};
    const U256 q = abs_signed(a) / abs_signed(b);
    return negate_if(q, a.is_negative() != b.is_negative());
}

U256 smod(const U256& a, const U256& b) noexcept
{
    if (b.is_zero())
        return {};
    const U256 r = abs_signed(a) % abs_signed(b);
    return negate_if(r, a.is_negative());
}

bool slt(const U256& a, const U256& b) noexcept
{
    if (a.is_negative() != b.is_negative())
        return a.is_negative();
    return a < b;
}

U256 signextend(const U256& b, const U256& x) noexcept
{
    if (!b.fits_u64() || b.low_u64() >= 31)
        return x;
    const auto bit = static_cast<unsigned>(b.low_u64() * 8 + 7);
    const U256 mask = (U256{1} << (bit + 1)) - U256{1};
    if (((x >> bit) & U256{1}).is_zero())
        return x & mask;
    return x | ~mask;
}

unsigned shift_amount(const U256& s) noexcept
{
    return s.fits_u64() && s.low_u64() < 256 ? static_cast<unsigned>(s.low_u64()) : 256;
}

U256 sar(const U256& shift, const U256& v) noexcept
{
    const unsigned s = shift_amount(shift);
    if (!v.is_negative())
        return v >> s;
    if (s >= 256)
        return U256::max();
    return ~((~v) >> s);
}

U256 byte_of(const U256& i, const U256& x) noexcept
{
    if (!i.fits_u64() || i.low_u64() >= 32)
        return {};
    return (x >> static_cast<unsigned>(248 - 8 * i.low_u64())) & U256{0xff};
}

U256 from_bool(bool b) noexcept
{
    return b ? U256{1} : U256{};
}

uint64_t fnv_mix(uint64_t h, std::string_view bytes) noexcept
{
    for (const char c : bytes)
    {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001b3;
    }
    return h;
}

Bytes memory_slice(const GlobalState& g, const Value& offset, const Value& size)
{
    if (size.is_zero())
        return {};
    const auto begin = static_cast<size_t>(offset.low_u64());
    const auto len = static_cast<size_t>(size.low_u64());
    return Bytes(g.memory.begin() + static_cast<std::ptrdiff_t>(begin),
        g.memory.begin() + static_cast<std::ptrdiff_t>(begin + len));
}

int hex_value(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

void append_utf8(Bytes& out, uint32_t cp)
{
    if (cp < 0x80)
        out.push_back(static_cast<uint8_t>(cp));
    else if (cp < 0x800)
    {
        out.push_back(static_cast<uint8_t>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<uint8_t>(0x80 | (cp & 0x3f)));
    }
    else
    {
        out.push_back(static_cast<uint8_t>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<uint8_t>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<uint8_t>(0x80 | (cp & 0x3f)));
    }
}
}  // namespace

std::optional<std::string> first_difference(const GlobalState& a, const GlobalState& b)
{
    if (a.storage != b.storage)
        return "storage";
    if (a.memory != b.memory)
        return "memory";
    if (a.gas_remaining != b.gas_remaining)
        return "gasRemaining";
    if (a.gas_limit != b.gas_limit)
        return "gasLimit";
    if (a.returndata != b.returndata)
        return "returndata";
    if (a.halted != b.halted)
        return "halted";
    if (a.charge_count != b.charge_count)
        return "chargeCount";
    if (a.charge_digest != b.charge_digest)
        return "chargeDigest";
    return std::nullopt;
}

std::optional<ExternalMode> Dialect::on_control(ControlPoint, GlobalState&) const
{
    return std::nullopt;
}

void Dialect::on_return(GlobalState&) const {}

GlobalState Dialect::initial_state(uint64_t gas_limit) const
{
    GlobalState g;
    g.gas_limit = gas_limit;
    g.gas_remaining = gas_limit;
    return g;
}

Bytes decode_string_literal(std::string_view lexeme)
{
    if (lexeme.size() < 2 || lexeme.front() != '"' || lexeme.back() != '"')
        throw LiteralError{"malformed string literal"};
    const auto body = lexeme.substr(1, lexeme.size() - 2);
    Bytes out;
    for (size_t i = 0; i < body.size(); ++i)
    {
        const char c = body[i];
        if (c != '\\')
        {
            out.push_back(static_cast<uint8_t>(c));
            continue;
        }
        if (++i >= body.size())
            throw LiteralError{"dangling escape in string literal"};
        switch (body[i])
        {
        case '\\':
            out.push_back('\\');
            break;
        case '"':
            out.push_back('"');
            break;
        case '\'':
            out.push_back('\'');
            break;
        case 'n':
            out.push_back('\n');
            break;
        case 'r':
            out.push_back('\r');
            break;
        case 't':
            out.push_back('\t');
            break;
        case '0':
            out.push_back(0);
            break;
        case 'x':
        {
            const int hi = i + 1 < body.size() ? hex_value(body[i + 1]) : -1;
            const int lo = i + 2 < body.size() ? hex_value(body[i + 2]) : -1;
            if (hi < 0 || lo < 0)
                throw LiteralError{"malformed \\x escape"};
            out.push_back(static_cast<uint8_t>(hi * 16 + lo));
            i += 2;
            break;
        }
        case 'u':
        {
            uint32_t cp = 0;
            for (size_t k = 1; k <= 4; ++k)
            {
                const int d = i + k < body.size() ? hex_value(body[i + k]) : -1;
                if (d < 0)
                    throw LiteralError{"malformed \\u escape"};
                cp = cp * 16 + static_cast<uint32_t>(d);
            }
            append_utf8(out, cp);
            i += 4;
            break;
        }
        default:
            throw LiteralError{std::string{"unknown escape \\"} + body[i]};
        }
    }
    return out;
}

std::string to_hex(std::span<const uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s = "0x";
    s.reserve(2 + bytes.size() * 2);
    for (const auto b : bytes)
    {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

GasTable GasTable::defaults()
{
    GasTable t;
    for (const auto& spec : op_specs)
        t.m_costs.emplace(spec.name, spec.cost);
    t.m_costs.emplace("$loop", 10);
    t.m_costs.emplace("$call", 16);
    t.m_costs.emplace("memory_word", 3);
    t.m_costs.emplace("memory_quad_divisor", 512);
    t.m_costs.emplace("exp_byte", 50);
    t.m_costs.emplace("copy_word", 3);
    t.m_costs.emplace("sstore_set", 20000);
    t.m_costs.emplace("sstore_reset", 5000);
    t.m_costs.emplace("datacopy", 3);
    t.m_costs.emplace("memoryguard", 0);
    return t;
}

GasTable GasTable::from_json(std::string_view text)
{
    GasTable t = defaults();
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_object())
        throw HostError{"gas table must be a JSON object"};
    for (const auto& [key, value] : doc.items())
    {
        if (!t.m_costs.contains(key))
            throw HostError{"gas table: unknown entry '" + key + "'"};
        if (!value.is_number_unsigned())
            throw HostError{"gas table: entry '" + key + "' must be a non-negative integer"};
        t.m_costs[key] = value.get<uint64_t>();
    }
    if (t["memory_quad_divisor"] == 0)
        throw HostError{"gas table: memory_quad_divisor must be positive"};
    return t;
}

GasTable GasTable::from_file(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw HostError{"cannot open gas table " + path.string()};
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

GasTable GasTable::from_environment()
{
    if (const char* path = std::getenv("YUL_MACHINE_GAS_TABLE"); path != nullptr && *path != '\0')
        return from_file(path);
    return defaults();
}

uint64_t GasTable::operator[](std::string_view key) const
{
    const auto it = m_costs.find(key);
    if (it == m_costs.end())
        throw HostError{"gas table has no entry '" + std::string{key} + "'"};
    return it->second;
}

void GasTable::set(std::string_view key, uint64_t cost)
{
    m_costs.insert_or_assign(std::string{key}, cost);
}

uint64_t memory_cost(const GasTable& table, uint64_t words)
{
    const auto w = static_cast<unsigned __int128>(words);
    const auto cost = w * table["memory_word"] + w * w / table["memory_quad_divisor"];
    return cost > UINT64_MAX ? UINT64_MAX : static_cast<uint64_t>(cost);
}

EvmDialect::EvmDialect(GasTable table, unsigned max_call_depth)
  : m_gas{std::move(table)}, m_max_call_depth{max_call_depth}
{
    for (const auto& spec : op_specs)
        add_builtin({spec.name, spec.args, spec.rets, false}, spec.op);
}

void EvmDialect::add_builtin(BuiltinInfo info, int op)
{
    const Identifier id{info.name};
    m_ops.insert_or_assign(id, op);
    auto key = info.name;
    m_builtins.insert_or_assign(std::move(key), std::move(info));
}

int EvmDialect::opcode_of(Identifier name) const noexcept
{
    const auto it = m_ops.find(name);
    return it == m_ops.end() ? -1 : it->second;
}

const BuiltinInfo* EvmDialect::builtin(std::string_view name) const noexcept
{
    const auto it = m_builtins.find(name);
    return it == m_builtins.end() ? nullptr : &it->second;
}

Value EvmDialect::value_of_literal(const Literal& lit) const
{
    switch (lit.kind)
    {
    case LiteralKind::boolean:
        if (lit.lexeme == "true")
            return U256{1};
        if (lit.lexeme == "false")
            return U256{};
        break;
    case LiteralKind::decimal:
    case LiteralKind::hex:
        if (auto v = U256::from_string(lit.lexeme))
            return *v;
        throw LiteralError{"number literal '" + lit.lexeme + "' does not fit in 256 bits"};
    case LiteralKind::string:
    {
        const auto bytes = decode_string_literal(lit.lexeme);
        if (bytes.size() > 32)
            throw LiteralError{"string literal longer than 32 bytes"};
        std::array<uint8_t, 32> word{};
        std::copy(bytes.begin(), bytes.end(), word.begin());
        return U256::from_be_bytes(word);
    }
    }
    throw LiteralError{"malformed literal '" + lit.lexeme + "'"};
}

ExternalMode EvmDialect::out_of_gas()
{
    return ExternalMode{std::string{tags::out_of_gas}, {}};
}

bool EvmDialect::charge(GlobalState& g, std::string_view label, uint64_t cost) const
{
    if (g.gas_remaining < cost)
    {
        g.gas_remaining = 0;
        return false;
    }
    g.gas_remaining -= cost;
    ++g.charge_count;
    uint8_t cost_bytes[8];
    for (int i = 0; i < 8; ++i)
        cost_bytes[i] = static_cast<uint8_t>(cost >> (8 * i));
    g.charge_digest = fnv_mix(fnv_mix(g.charge_digest, label),
        std::string_view{reinterpret_cast<const char*>(cost_bytes), 8});
    if (g.history)
        g.history->push_back({std::string{label}, cost});
    return true;
}

bool EvmDialect::touch_memory(GlobalState& g, const Value& offset, const Value& size) const
{
    if (size.is_zero())
        return true;
    if (!offset.fits_u64() || !size.fits_u64() || offset.low_u64() > max_memory_bytes ||
        size.low_u64() > max_memory_bytes || offset.low_u64() + size.low_u64() > max_memory_bytes)
    {
        g.gas_remaining = 0;
        return false;
    }
    const uint64_t end = offset.low_u64() + size.low_u64();
    const uint64_t old_words = g.memory.size() / 32;
    const uint64_t new_words = (end + 31) / 32;
    if (new_words <= old_words)
        return true;
    const uint64_t delta = memory_cost(m_gas, new_words) - memory_cost(m_gas, old_words);
    if (!charge(g, "memory", delta))
        return false;
    g.memory.resize(static_cast<size_t>(new_words * 32), 0);
    return true;
}

std::optional<ExternalMode> EvmDialect::on_control(ControlPoint point, GlobalState& g) const
{
    switch (point)
    {
    case ControlPoint::loop_iteration:
        if (!charge(g, "$loop", m_gas["$loop"]))
            return out_of_gas();
        return std::nullopt;
    case ControlPoint::function_call:
        if (g.call_depth >= m_max_call_depth)
        {
            g.gas_remaining = 0;
            return out_of_gas();
        }
        if (!charge(g, "$call", m_gas["$call"]))
            return out_of_gas();
        ++g.call_depth;
        return std::nullopt;
    }
    return std::nullopt;
}

void EvmDialect::on_return(GlobalState& g) const
{
    if (g.call_depth > 0)
        --g.call_depth;
}

GlobalState EvmDialect::initial_state(uint64_t gas_limit) const
{
    return Dialect::initial_state(gas_limit);
}

OpcodeResult EvmDialect::eval_opcode(Identifier name, std::span<const Value> args, GlobalState& g) const
{
    const int op = opcode_of(name);
    if (op < 0)
        throw HostError{"unknown opcode '" + name.str() + "'"};
    const auto& info = m_builtins.find(name.str())->second;
    if (args.size() != info.args)
        throw HostError{"opcode '" + name.str() + "' expects " + std::to_string(info.args) +
                        " arguments, got " + std::to_string(args.size())};
    if (op == op_keccak256)
        throw HostError{"unimplemented-opcode: keccak256"};

    uint64_t cost = m_gas[info.name];
    if (op == op_exp)
        cost += m_gas["exp_byte"] * args[1].byte_length();
    else if (op == op_sstore)
    {
        const auto it = g.storage.find(args[0]);
        const bool was_zero = it == g.storage.end();
        cost = was_zero && !args[1].is_zero() ? m_gas["sstore_set"] : m_gas["sstore_reset"];
    }
    else if (op == op_invalid)
    {
        g.gas_remaining = 0;
        ExternalMode m{std::string{tags::invalid}, {}};
        g.returndata.clear();
        g.halted = m;
        return OpcodeResult::halt(std::move(m));
    }
    if (!charge(g, info.name, cost))
        return OpcodeResult::halt(out_of_gas());
    return eval_known(op, args, g);
}

OpcodeResult EvmDialect::eval_known(int op, std::span<const Value> a, GlobalState& g) const
{
    switch (op)
    {
    case op_add:
        return OpcodeResult::of(a[0] + a[1]);
    case op_sub:
        return OpcodeResult::of(a[0] - a[1]);
    case op_mul:
        return OpcodeResult::of(a[0] * a[1]);
    case op_div:
        return OpcodeResult::of(a[0] / a[1]);
    case op_sdiv:
        return OpcodeResult::of(sdiv(a[0], a[1]));
    case op_mod:
        return OpcodeResult::of(a[0] % a[1]);
    case op_smod:
        return OpcodeResult::of(smod(a[0], a[1]));
    case op_addmod:
        return OpcodeResult::of(addmod(a[0], a[1], a[2]));
    case op_mulmod:
        return OpcodeResult::of(mulmod(a[0], a[1], a[2]));
    case op_exp:
        return OpcodeResult::of(exp(a[0], a[1]));
    case op_signextend:
        return OpcodeResult::of(signextend(a[0], a[1]));
    case op_lt:
        return OpcodeResult::of(from_bool(a[0] < a[1]));
    case op_gt:
        return OpcodeResult::of(from_bool(a[0] > a[1]));
    case op_slt:
        return OpcodeResult::of(from_bool(slt(a[0], a[1])));
    case op_sgt:
        return OpcodeResult::of(from_bool(slt(a[1], a[0])));
    case op_eq:
        return OpcodeResult::of(from_bool(a[0] == a[1]));
    case op_iszero:
        return OpcodeResult::of(from_bool(a[0].is_zero()));
    case op_and:
        return OpcodeResult::of(a[0] & a[1]);
    case op_or:
        return OpcodeResult::of(a[0] | a[1]);
    case op_xor:
        return OpcodeResult::of(a[0] ^ a[1]);
    case op_not:
        return OpcodeResult::of(~a[0]);
    case op_byte:
        return OpcodeResult::of(byte_of(a[0], a[1]));
    case op_shl:
        return OpcodeResult::of(a[1] << shift_amount(a[0]));
    case op_shr:
        return OpcodeResult::of(a[1] >> shift_amount(a[0]));
    case op_sar:
        return OpcodeResult::of(sar(a[0], a[1]));
    case op_mload:
    {
        if (!touch_memory(g, a[0], U256{32}))
            return OpcodeResult::halt(out_of_gas());
        const auto off = static_cast<size_t>(a[0].low_u64());
        return OpcodeResult::of(U256::from_be_bytes(std::span{g.memory}.subspan(off, 32)));
    }
    case op_mstore:
    {
        if (!touch_memory(g, a[0], U256{32}))
            return OpcodeResult::halt(out_of_gas());
        const auto bytes = a[1].to_be_bytes();
        std::copy(bytes.begin(), bytes.end(), g.memory.begin() + static_cast<std::ptrdiff_t>(a[0].low_u64()));
        return OpcodeResult::none();
    }
    case op_mstore8:
    {
        if (!touch_memory(g, a[0], U256{1}))
            return OpcodeResult::halt(out_of_gas());
        g.memory[static_cast<size_t>(a[0].low_u64())] = static_cast<uint8_t>(a[1].low_u64());
        return OpcodeResult::none();
    }
    case op_msize:
        return OpcodeResult::of(U256{g.memory.size()});
    case op_sload:
    {
        const auto it = g.storage.find(a[0]);
        return OpcodeResult::of(it == g.storage.end() ? U256{} : it->second);
    }
    case op_sstore:
        if (a[1].is_zero())
            g.storage.erase(a[0]);
        else
            g.storage.insert_or_assign(a[0], a[1]);
        return OpcodeResult::none();
    case op_stop:
    {
        ExternalMode m{std::string{tags::stop}, {}};
        g.returndata.clear();
        g.halted = m;
        return OpcodeResult::halt(std::move(m));
    }
    case op_return:
    case op_revert:
    {
        if (!touch_memory(g, a[0], a[1]))
            return OpcodeResult::halt(out_of_gas());
        ExternalMode m{std::string{op == op_return ? tags::return_ : tags::revert}, memory_slice(g, a[0], a[1])};
        g.returndata = m.payload;
        g.halted = m;
        return OpcodeResult::halt(std::move(m));
    }
    case op_pop:
        return OpcodeResult::none();
    case op_gas:
        return OpcodeResult::of(U256{g.gas_remaining});
    default:
        throw HostError{"opcode without semantics"};
    }
}
}  // namespace yulsem

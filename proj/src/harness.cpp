// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/analysis.hpp>
#include <yulsem/bigstep.hpp>
#include <yulsem/harness.hpp>

#include <atomic>
#include <mutex>
#include <random>
#include <thread>

namespace yulsem
{
namespace
{
struct FunSig
{
    Identifier name;
    size_t params = 0;
    size_t rets = 0;
};

struct Ctx
{
    std::vector<Identifier> rw;
    std::vector<Identifier> ro;
    std::vector<FunSig> funs;
    bool in_loop_body = false;
    bool in_function = false;
};

class Generator
{
public:
    Generator(const GenConfig& cfg, const Dialect& dialect) : m_cfg{cfg}, m_rng{cfg.seed}
    {
        for (const auto& name : cfg.opcodes)
        {
            const auto* info = dialect.builtin(name);
            if (info == nullptr || info->rets != 1 || info->literal_args)
                continue;
            m_ops.push_back({Identifier{name}, info->args, info->rets});
        }
    }

    Block program()
    {
        Block out;
        const size_t nfuns = m_cfg.max_functions == 0 ? 0 : below(m_cfg.max_functions + 1);
        std::vector<FunSig> defined;
        for (size_t i = 0; i < nfuns; ++i)
        {
            Ctx fctx;
            fctx.funs = defined;
            fctx.in_function = true;
            FunDef def;
            def.name = fresh("f");
            for (size_t p = below(3); p-- > 0;)
                def.params.push_back(fresh("a"));
            for (size_t r = below(3); r-- > 0;)
                def.returns.push_back(fresh("r"));
            fctx.rw = def.params;
            fctx.rw.insert(fctx.rw.end(), def.returns.begin(), def.returns.end());
            def.body = block(fctx, m_cfg.max_depth > 0 ? m_cfg.max_depth - 1 : 0);
            defined.push_back({def.name, def.params.size(), def.returns.size()});
            out.statements.push_back(make_stmt(std::move(def)));
        }
        Ctx main;
        main.funs = defined;
        Block body = block_tail(Block{}, main, m_cfg.max_depth);
        for (const auto& f : defined)
            body.statements.push_back(call_statement(main, f, 2));
        body = block_tail(std::move(body), main, m_cfg.max_depth);
        for (auto& s : body.statements)
            out.statements.push_back(std::move(s));
        return out;
    }

private:
    uint64_t below(uint64_t n) { return n == 0 ? 0 : m_rng() % n; }
    bool chance(double p) { return static_cast<double>(m_rng() >> 11) * 0x1.0p-53 < p; }

    template <typename T>
    const T& pick(const std::vector<T>& v)
    {
        return v[below(v.size())];
    }

    Identifier fresh(std::string_view prefix) { return Identifier{std::string{prefix} + std::to_string(m_next++)}; }

    Block block(Ctx ctx, unsigned depth)
    {
        Block b;
        const size_t n = below(m_cfg.max_block_length + 1);
        for (size_t i = 0; i < n; ++i)
            statement(b, ctx, depth);
        return b;
    }

    Expression masked(Expression e, uint64_t mask) { return make_opcall("and", {std::move(e), make_number(mask)}); }

    Expression literal()
    {
        const uint64_t kind = below(10);
        if (kind < 7)
            return make_number(below(16));
        if (kind < 9)
            return make_number(m_rng());
        U256 v = U256::from_be_bytes({});
        for (int i = 0; i < 4; ++i)
            v = (v << 64) + U256{m_rng()};
        return make_literal(LiteralKind::hex, v.to_hex());
    }

    Expression expression(const Ctx& ctx, unsigned depth)
    {
        const bool have_vars = !ctx.rw.empty() || !ctx.ro.empty();
        if (depth == 0 || chance(0.35))
        {
            if (have_vars && chance(0.6))
            {
                const size_t i = below(ctx.rw.size() + ctx.ro.size());
                return make_ident((i < ctx.rw.size() ? ctx.rw[i] : ctx.ro[i - ctx.rw.size()]).str());
            }
            return literal();
        }
        std::vector<const FunSig*> single;
        for (const auto& f : ctx.funs)
            if (f.rets == 1)
                single.push_back(&f);
        if (!single.empty() && chance(0.15))
        {
            const FunSig& f = *pick(single);
            return make_call(f.name.str(), arguments(ctx, depth - 1, f.params));
        }
        if (m_ops.empty())
            return literal();
        const FunSig& op = pick(m_ops);
        const auto& name = op.name.str();
        if (name == "mload")
            return make_opcall(name, {masked(expression(ctx, depth - 1), 0x3ff)});
        if (name == "sload")
            return make_opcall(name, {masked(expression(ctx, depth - 1), 0xf)});
        return make_opcall(name, arguments(ctx, depth - 1, op.params));
    }

    std::vector<Expression> arguments(const Ctx& ctx, unsigned depth, size_t n)
    {
        std::vector<Expression> args;
        for (size_t i = 0; i < n; ++i)
            args.push_back(expression(ctx, depth));
        return args;
    }

    std::vector<Identifier> distinct_targets(const Ctx& ctx, size_t n)
    {
        std::vector<Identifier> pool = ctx.rw;
        std::vector<Identifier> out;
        for (size_t i = 0; i < n; ++i)
        {
            const size_t k = below(pool.size());
            out.push_back(pool[k]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
        }
        return out;
    }

    Statement call_statement(Ctx& ctx, const FunSig& f, unsigned edepth)
    {
        Expression call = make_call(f.name.str(), arguments(ctx, edepth, f.params));
        if (f.rets == 0)
            return make_stmt(ExprStmt{std::move(call)});
        if (ctx.rw.size() >= f.rets && chance(0.5))
            return make_stmt(Assign{distinct_targets(ctx, f.rets), std::move(call)});
        std::vector<Identifier> targets;
        for (size_t k = 0; k < f.rets; ++k)
            targets.push_back(fresh("v"));
        ctx.rw.insert(ctx.rw.end(), targets.begin(), targets.end());
        return make_stmt(VarDecl{targets, std::move(call)});
    }

    /// Appends up to max_block_length statements generated in ctx itself.
    Block block_tail(Block b, Ctx& ctx, unsigned depth)
    {
        const size_t n = below(m_cfg.max_block_length + 1);
        for (size_t i = 0; i < n; ++i)
            statement(b, ctx, depth);
        return b;
    }

    void statement(Block& b, Ctx& ctx, unsigned depth)
    {
        const unsigned edepth = std::min(depth + 1, 3u);
        struct Choice
        {
            int kind;
            unsigned weight;
        };
        std::vector<Choice> choices{{0, 25}, {2, 15}, {3, 5}};
        if (!ctx.rw.empty())
            choices.push_back({1, 15});
        if (depth > 0)
        {
            choices.push_back({4, 10});
            choices.push_back({5, 4});
            choices.push_back({6, static_cast<unsigned>(m_cfg.loop_probability * 60)});
            choices.push_back({7, 4});
            choices.push_back({8, 3});
        }
        if (!ctx.funs.empty())
            choices.push_back({9, 10});
        if (ctx.in_loop_body)
        {
            choices.push_back({10, 3});
            choices.push_back({11, 3});
        }
        if (ctx.in_function)
            choices.push_back({12, 3});
        choices.push_back({13, 1});

        unsigned total = 0;
        for (const auto& c : choices)
            total += c.weight;
        unsigned r = static_cast<unsigned>(below(total));
        int kind = choices.front().kind;
        for (const auto& c : choices)
        {
            if (r < c.weight)
            {
                kind = c.kind;
                break;
            }
            r -= c.weight;
        }

        switch (kind)
        {
        case 0:
        {
            Expression value = expression(ctx, edepth);
            const Identifier x = fresh("v");
            b.statements.push_back(make_stmt(VarDecl{{x}, std::move(value)}));
            ctx.rw.push_back(x);
            return;
        }
        case 1:
            b.statements.push_back(make_stmt(Assign{{pick(ctx.rw)}, expression(ctx, edepth)}));
            return;
        case 2:
        {
            const uint64_t which = below(3);
            if (which == 2)
                b.statements.push_back(make_stmt(ExprStmt{make_opcall(
                    "sstore", {masked(expression(ctx, edepth), 0xf), expression(ctx, edepth)})}));
            else
                b.statements.push_back(make_stmt(ExprStmt{make_opcall(which == 0 ? "mstore" : "mstore8",
                    {masked(expression(ctx, edepth), 0x3ff), expression(ctx, edepth)})}));
            return;
        }
        case 3:
            b.statements.push_back(make_stmt(ExprStmt{make_opcall("pop", {expression(ctx, edepth)})}));
            return;
        case 4:
            b.statements.push_back(make_stmt(If{expression(ctx, edepth), block(ctx, depth - 1)}));
            return;
        case 5:
        {
            Switch sw{expression(ctx, edepth), {}, {}};
            const size_t ncases = 1 + below(3);
            for (size_t i = 0; i < ncases; ++i)
                sw.cases.push_back({Literal{LiteralKind::decimal, std::to_string(i)}, block(ctx, depth - 1)});
            if (chance(0.7))
                sw.default_body = block(ctx, depth - 1);
            b.statements.push_back(make_stmt(std::move(sw)));
            return;
        }
        case 6:
        {
            const Identifier i = fresh("i");
            const uint64_t k = below(6);
            For f;
            f.init.statements.push_back(make_stmt(VarDecl{{i}, make_number(0)}));
            f.cond = make_opcall("lt", {make_ident(i.str()), make_number(k)});
            f.post.statements.push_back(
                make_stmt(Assign{{i}, make_opcall("add", {make_ident(i.str()), make_number(1)})}));
            Ctx body = ctx;
            body.ro.push_back(i);
            body.in_loop_body = true;
            f.body = block(body, depth - 1);
            b.statements.push_back(make_stmt(std::move(f)));
            return;
        }
        case 7:
            b.statements.push_back(make_stmt(block(ctx, depth - 1)));
            return;
        case 8:
        {
            // A nested block with a local function, called from within the block.
            Ctx fctx;
            fctx.funs = ctx.funs;
            fctx.in_function = true;
            FunDef def;
            def.name = fresh("g");
            def.params.push_back(fresh("a"));
            def.returns.push_back(fresh("r"));
            fctx.rw = {def.params[0], def.returns[0]};
            def.body = block(fctx, depth - 1);
            Ctx inner = ctx;
            inner.funs.push_back({def.name, 1, 1});
            Block nested;
            const Identifier x = fresh("v");
            nested.statements.push_back(
                make_stmt(VarDecl{{x}, make_call(def.name.str(), {expression(ctx, edepth)})}));
            nested.statements.push_back(make_stmt(std::move(def)));
            inner.rw.push_back(x);
            const size_t rest = below(m_cfg.max_block_length);
            for (size_t k = 0; k < rest; ++k)
                statement(nested, inner, depth - 1);
            b.statements.push_back(make_stmt(std::move(nested)));
            return;
        }
        case 9:
            b.statements.push_back(call_statement(ctx, pick(ctx.funs), edepth));
            return;
        case 10:
            b.statements.push_back(make_stmt(Break{}));
            return;
        case 11:
            b.statements.push_back(make_stmt(Continue{}));
            return;
        case 12:
            b.statements.push_back(make_stmt(Leave{}));
            return;
        default:
        {
            const uint64_t which = below(4);
            if (which == 0)
                b.statements.push_back(make_stmt(ExprStmt{make_opcall("stop", {})}));
            else if (which == 1)
                b.statements.push_back(make_stmt(ExprStmt{make_opcall("invalid", {})}));
            else
                b.statements.push_back(make_stmt(ExprStmt{make_opcall(which == 2 ? "return" : "revert",
                    {masked(expression(ctx, edepth), 0x3ff), masked(expression(ctx, edepth), 0x3f)})}));
            return;
        }
        }
    }

    const GenConfig& m_cfg;
    std::mt19937_64 m_rng;
    std::vector<FunSig> m_ops;
    uint64_t m_next = 0;
};

EngineRun run_big(const Block& program, const Dialect& dialect, const DiffOptions& options)
{
    try
    {
        BigStep engine{dialect, EvalOptions{options.fuel, default_depth_limit, options.monitor}};
        return {engine.run(program, dialect.initial_state(options.gas_limit)), {}};
    }
    catch (const HostError& e)
    {
        return {std::nullopt, e.what()};
    }
}

EngineRun run_small(const Block& program, const Dialect& dialect, const DiffOptions& options, bool collapse)
{
    try
    {
        SmallStepOptions so;
        so.fuel = options.fuel;
        so.collapse_frames = collapse;
        so.arg_order = options.small_arg_order;
        Machine m{dialect, so};
        m.inject(program, dialect.initial_state(options.gas_limit));
        return {m.run(), {}};
    }
    catch (const HostError& e)
    {
        return {std::nullopt, e.what()};
    }
}

nlohmann::json store_json(const LocalStore& l)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : l.entries())
        j[k.str()] = v.to_hex();
    return j;
}

class Reducer
{
public:
    explicit Reducer(size_t target) : m_target{target} {}

    [[nodiscard]] bool applied() const noexcept { return m_done; }

    void block(Block& b)
    {
        for (size_t i = 0; i < b.statements.size(); ++i)
            if (hit())
            {
                b.statements.erase(b.statements.begin() + static_cast<std::ptrdiff_t>(i));
                return;
            }
        for (auto& s : b.statements)
        {
            statement(s);
            if (m_done)
                return;
        }
    }

private:
    bool hit()
    {
        if (m_done || m_counter++ != m_target)
            return false;
        m_done = true;
        return true;
    }

    void statement(Statement& s)
    {
        std::visit(
            [&](auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Block>)
                    block(node);
                else if constexpr (std::is_same_v<T, FunDef>)
                    block(node.body);
                else if constexpr (std::is_same_v<T, VarDecl> || std::is_same_v<T, Assign>)
                    expression(node.value);
                else if constexpr (std::is_same_v<T, ExprStmt>)
                    expression(node.expr);
                else if constexpr (std::is_same_v<T, If>)
                {
                    if (hit())
                    {
                        Block body = std::move(node.body);
                        s.node = std::move(body);
                        return;
                    }
                    expression(node.cond);
                    if (!m_done)
                        block(node.body);
                }
                else if constexpr (std::is_same_v<T, Switch>)
                {
                    if (hit())
                    {
                        Block body = std::move(node.default_body);
                        s.node = std::move(body);
                        return;
                    }
                    for (size_t i = 0; i < node.cases.size(); ++i)
                    {
                        if (hit())
                        {
                            Block body = std::move(node.cases[i].body);
                            s.node = std::move(body);
                            return;
                        }
                        if (hit())
                        {
                            node.cases.erase(node.cases.begin() + static_cast<std::ptrdiff_t>(i));
                            return;
                        }
                    }
                    expression(node.scrutinee);
                    for (auto& c : node.cases)
                        if (!m_done)
                            block(c.body);
                    if (!m_done)
                        block(node.default_body);
                }
                else if constexpr (std::is_same_v<T, For>)
                {
                    if (hit())
                    {
                        Block body = std::move(node.body);
                        s.node = std::move(body);
                        return;
                    }
                    block(node.init);
                    if (!m_done)
                        expression(node.cond);
                    if (!m_done)
                        block(node.post);
                    if (!m_done)
                        block(node.body);
                }
            },
            s.node);
    }

    void expression(Expression& e)
    {
        if (const auto* lit = std::get_if<Lit>(&e.node))
        {
            if (lit->literal.kind != LiteralKind::string && lit->literal.lexeme != "0" && hit())
                e = make_number(0);
            return;
        }
        if (std::holds_alternative<Ident>(e.node))
        {
            if (hit())
                e = make_number(0);
            return;
        }
        auto* args = std::holds_alternative<OpCall>(e.node) ? &std::get<OpCall>(e.node).args
                     : std::holds_alternative<FunCall>(e.node) ? &std::get<FunCall>(e.node).args
                                                               : nullptr;
        if (args == nullptr)
            return;
        if (hit())
        {
            e = make_number(0);
            return;
        }
        for (size_t i = 0; i < args->size(); ++i)
            if (hit())
            {
                Expression arg = (*args)[i];
                e = std::move(arg);
                return;
            }
        for (auto& a : *args)
        {
            expression(a);
            if (m_done)
                return;
        }
    }

    size_t m_target;
    size_t m_counter = 0;
    bool m_done = false;
};
}  // namespace

std::vector<std::string> GenConfig::default_opcodes()
{
    return {"add", "sub", "mul", "div", "sdiv", "mod", "smod", "addmod", "mulmod", "exp", "signextend", "lt",
        "gt", "slt", "sgt", "eq", "iszero", "and", "or", "xor", "not", "byte", "shl", "shr", "sar", "mload",
        "sload", "msize", "gas"};
}

Block generate(const GenConfig& cfg, const Dialect& dialect)
{
    return Generator{cfg, dialect}.program();
}

std::string_view to_string(Verdict v) noexcept
{
    switch (v)
    {
    case Verdict::agree:
        return "agree";
    case Verdict::disagree:
        return "disagree";
    case Verdict::both_nonterminating:
        return "both-nonterminating-at-fuel";
    case Verdict::host_error:
        return "host-error";
    }
    return "?";
}

nlohmann::json outcome_json(const Outcome& o)
{
    nlohmann::json storage = nlohmann::json::object();
    for (const auto& [k, v] : o.g.storage)
        storage[k.to_hex()] = v.to_hex();
    nlohmann::json j;
    j["status"] = o.status == Status::finished ? "finished" : "fuel-exhausted";
    j["mode"] = to_string(o.result);
    j["storage"] = std::move(storage);
    j["memory"] = to_hex(o.g.memory);
    j["gasRemaining"] = o.g.gas_remaining;
    j["gasLimit"] = o.g.gas_limit;
    j["gasUsed"] = o.g.gas_limit - o.g.gas_remaining;
    j["returndata"] = to_hex(o.g.returndata);
    j["halted"] = o.g.halted ? nlohmann::json(o.g.halted->tag) : nlohmann::json(nullptr);
    j["chargeCount"] = o.g.charge_count;
    j["chargeDigest"] = o.g.charge_digest;
    j["locals"] = store_json(o.l);
    j["steps"] = o.steps;
    return j;
}

std::optional<std::pair<std::string, std::string>> compare_outcomes(const Outcome& a, const Outcome& b,
    const LocalStore& initial)
{
    if (a.status != b.status)
        return std::pair{std::string{"fuel"}, std::string{a.status == Status::finished ? "finished" : "exhausted"} +
                                                  " vs " + (b.status == Status::finished ? "finished" : "exhausted")};
    const auto ra = to_string(a.result);
    const auto rb = to_string(b.result);
    if (ra != rb)
        return std::pair{std::string{"mode"}, ra + " vs " + rb};
    if (auto field = first_difference(a.g, b.g))
    {
        const auto ja = outcome_json(a);
        const auto jb = outcome_json(b);
        return std::pair{*field, ja.value(*field, nlohmann::json{}).dump() + " vs " +
                                     jb.value(*field, nlohmann::json{}).dump()};
    }
    if (!a.is_external() && a.status == Status::finished)
    {
        try
        {
            const auto la = restrict(a.l, initial);
            const auto lb = restrict(b.l, initial);
            if (!(la == lb))
                return std::pair{std::string{"locals"}, store_json(la).dump() + " vs " + store_json(lb).dump()};
        }
        catch (const StoreError& e)
        {
            return std::pair{std::string{"locals"}, std::string{e.what()}};
        }
    }
    return std::nullopt;
}

DiffVerdict diff_one(const Block& program, const Dialect& dialect, const DiffOptions& options)
{
    DiffVerdict v;
    v.program = program;
    v.big = run_big(program, dialect, options);
    v.small = run_small(program, dialect, options, false);
    v.small_opt = run_small(program, dialect, options, true);

    std::string failed;
    for (const auto& [name, run] :
        {std::pair<std::string_view, const EngineRun*>{"big", &v.big}, {"small", &v.small}, {"small-opt", &v.small_opt}})
        if (!run->outcome)
        {
            failed += failed.empty() ? "" : ",";
            failed += name;
            v.detail += (v.detail.empty() ? "" : "; ") + std::string{name} + ": " + run->error;
        }
    if (!failed.empty())
    {
        v.verdict = Verdict::host_error;
        v.field = failed;
        return v;
    }

    const auto exhausted = [](const EngineRun& r) { return r.outcome->status == Status::fuel_exhausted; };
    if (exhausted(v.big) && exhausted(v.small) && exhausted(v.small_opt))
    {
        v.verdict = Verdict::both_nonterminating;
        return v;
    }
    for (const auto& [left, right, label] : {std::tuple{&v.big, &v.small, "big/small"},
             std::tuple{&v.small, &v.small_opt, "small/small-opt"}})
        if (auto diff = compare_outcomes(*left->outcome, *right->outcome))
        {
            v.verdict = Verdict::disagree;
            v.field = diff->first;
            v.detail = std::string{label} + ": " + diff->second;
            return v;
        }
    v.verdict = Verdict::agree;
    return v;
}

nlohmann::json to_json(const DiffVerdict& v)
{
    nlohmann::json j;
    j["verdict"] = to_string(v.verdict);
    if (!v.field.empty())
        j["field"] = v.field;
    if (!v.detail.empty())
        j["detail"] = v.detail;
    for (const auto& [name, run] : {std::pair<const char*, const EngineRun*>{"big", &v.big}, {"small", &v.small},
             {"smallOpt", &v.small_opt}})
        j[name] = run->outcome ? outcome_json(*run->outcome) : nlohmann::json{{"error", run->error}};
    return j;
}

Block shrink(const Block& program, const Dialect& dialect, const DiffOptions& options)
{
    const DiffVerdict base = diff_one(program, dialect, options);
    if (!base.failing())
        return program;

    Block current = program;
    for (bool improved = true; improved;)
    {
        improved = false;
        for (size_t k = 0;; ++k)
        {
            Block candidate = current;
            Reducer r{k};
            r.block(candidate);
            if (!r.applied())
                break;
            if (!analyze(candidate, dialect).empty())
                continue;
            if (diff_one(candidate, dialect, options).verdict == base.verdict)
            {
                current = std::move(candidate);
                improved = true;
                break;
            }
        }
    }
    return current;
}

void DiffSummary::add(const SeedResult& r)
{
    switch (r.verdict)
    {
    case Verdict::agree:
        ++agree;
        break;
    case Verdict::disagree:
        ++disagree;
        break;
    case Verdict::both_nonterminating:
        ++both_nonterminating;
        break;
    case Verdict::host_error:
        ++host_error;
        break;
    }
    results.push_back(r);
}

DiffSummary run_seeds(uint64_t first, uint64_t last, const GenConfig& base, const Dialect& dialect,
    const DiffOptions& options, unsigned jobs)
{
    DiffSummary summary;
    if (last < first)
        return summary;
    const uint64_t count = last - first + 1;
    std::vector<SeedResult> results(count);
    std::vector<char> rejected(count, 0);
    std::atomic<uint64_t> next{0};
    std::mutex mutex;

    auto worker = [&] {
        LemmaMonitor monitor;
        DiffOptions local = options;
        local.monitor = &monitor;
        for (uint64_t i; (i = next.fetch_add(1)) < count;)
        {
            GenConfig cfg = base;
            cfg.seed = first + i;
            const Block program = generate(cfg, dialect);
            SeedResult& r = results[i];
            r.seed = cfg.seed;
            if (const auto errors = analyze(program, dialect); !errors.empty())
            {
                rejected[i] = 1;
                r.verdict = Verdict::host_error;
                r.field = "analysis: " + errors.front().message;
                DiffVerdict v;
                v.program = program;
                v.verdict = Verdict::host_error;
                v.field = r.field;
                r.failure = std::move(v);
                continue;
            }
            DiffVerdict v = diff_one(program, dialect, local);
            r.verdict = v.verdict;
            r.field = v.field;
            if (v.failing())
                r.failure = std::move(v);
        }
        const std::lock_guard lock{mutex};
        summary.monitor.merge(monitor);
    };

    jobs = std::max(1u, jobs);
    if (jobs == 1)
        worker();
    else
    {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t)
            threads.emplace_back(worker);
        for (auto& t : threads)
            t.join();
    }
    for (uint64_t i = 0; i < count; ++i)
    {
        summary.generator_rejects += static_cast<uint64_t>(rejected[i]);
        summary.add(results[i]);
    }
    return summary;
}
}  // namespace yulsem

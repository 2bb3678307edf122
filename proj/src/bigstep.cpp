// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/analysis.hpp>
#include <yulsem/bigstep.hpp>

namespace yulsem
{
namespace
{
struct DepthGuard
{
    size_t& depth;
    DepthGuard(size_t& d, size_t limit) : depth{d}
    {
        if (++depth > limit)
        {
            --depth;
            throw HostError{"evaluation depth limit of " + std::to_string(limit) + " exceeded"};
        }
    }
    ~DepthGuard() { --depth; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
};
}  // namespace

BigStep::BigStep(const Dialect& dialect, EvalOptions options) : m_dialect{dialect}, m_options{options} {}

void BigStep::tick()
{
    ++m_steps;
    if (m_options.fuel && m_steps > *m_options.fuel)
        throw FuelOut{};
}

template <typename F>
Outcome BigStep::guarded(GlobalState g, LocalStore l, Namespace n, F&& f)
{
    Outcome out;
    const LocalStore input = l;
    try
    {
        out.result = f(g, l, n);
        out.l = std::move(l);
    }
    catch (const ExternalAbort& abort)
    {
        out.result = Mode::make_external(abort.mode);
        out.l = input;
    }
    catch (const FuelOut&)
    {
        out.status = Status::fuel_exhausted;
        out.l = input;
    }
    g.call_depth = 0;
    out.g = std::move(g);
    out.n = std::move(n);
    out.steps = m_steps;
    return out;
}

Outcome BigStep::run(const Block& program, GlobalState g, LocalStore l, Namespace n)
{
    return guarded(std::move(g), std::move(l), std::move(n),
        [&](GlobalState& g1, LocalStore& l1, const Namespace& n1) -> Result { return block(program, g1, l1, n1); });
}

Outcome BigStep::eval_stmt(const Statement& s, GlobalState g, LocalStore l, Namespace n)
{
    return guarded(std::move(g), std::move(l), std::move(n),
        [&](GlobalState& g1, LocalStore& l1, const Namespace& n1) -> Result { return stmt(s, g1, l1, n1); });
}

Outcome BigStep::eval_seq(const std::vector<Statement>& stmts, GlobalState g, LocalStore l, Namespace n)
{
    return guarded(std::move(g), std::move(l), std::move(n),
        [&](GlobalState& g1, LocalStore& l1, const Namespace& n1) -> Result { return seq(stmts, g1, l1, n1); });
}

Outcome BigStep::eval_exp(const Expression& e, GlobalState g, LocalStore l, Namespace n)
{
    return guarded(std::move(g), std::move(l), std::move(n),
        [&](GlobalState& g1, LocalStore& l1, const Namespace& n1) { return exp(e, g1, l1, n1); });
}

Mode BigStep::block(const Block& b, GlobalState& g, LocalStore& l, const Namespace& n)
{
    tick();
    if (b.statements.empty())
        return Mode::regular();
    const DepthGuard guard{m_depth, m_options.depth_limit};
    const Namespace inner = n.extended(funsof_entries(b));
    const LocalStore saved = l;
    const Mode m = seq(b.statements, g, l, inner);
    l = restrict(l, saved);
    return m;
}

Mode BigStep::seq(const std::vector<Statement>& stmts, GlobalState& g, LocalStore& l, const Namespace& n)
{
    for (const auto& s : stmts)
    {
        tick();
        Mode m = stmt(s, g, l, n);
        if (!m.is_regular())
            return m;
    }
    return Mode::regular();
}

Mode BigStep::stmt(const Statement& s, GlobalState& g, LocalStore& l, const Namespace& n)
{
    tick();
    auto* monitor = m_options.monitor;
    const size_t before_size = l.size();
    std::optional<LocalStore> before;
    if (monitor != nullptr)
        before = l;

    Mode m = std::visit(
        [&](const auto& node) -> Mode {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Block>)
                return block(node, g, l, n);
            else if constexpr (std::is_same_v<T, FunDef>)
                return Mode::regular();
            else if constexpr (std::is_same_v<T, VarDecl> || std::is_same_v<T, Assign>)
            {
                const auto values = result_values(exp(node.value, g, l, n));
                if (!values || values->size() != node.targets.size())
                    throw HostError{"arity mismatch: " + std::to_string(node.targets.size()) +
                                    " target(s) for " + (values ? std::to_string(values->size()) : "no") +
                                    " value(s)"};
                for (size_t i = 0; i < node.targets.size(); ++i)
                {
                    if constexpr (std::is_same_v<T, VarDecl>)
                        l.declare(node.targets[i], (*values)[i]);
                    else
                        l.assign(node.targets[i], (*values)[i]);
                }
                return Mode::regular();
            }
            else if constexpr (std::is_same_v<T, ExprStmt>)
            {
                const Result r = exp(node.expr, g, l, n);
                const auto* mode = std::get_if<Mode>(&r);
                if (mode == nullptr || !mode->is_regular())
                    throw HostError{"expression statement produced a value"};
                return Mode::regular();
            }
            else if constexpr (std::is_same_v<T, If>)
            {
                if (m_dialect.falsy(single(node.cond, g, l, n)))
                    return Mode::regular();
                return block(node.body, g, l, n);
            }
            else if constexpr (std::is_same_v<T, Switch>)
            {
                const Value v = single(node.scrutinee, g, l, n);
                for (const auto& c : node.cases)
                    if (m_dialect.value_of_literal(c.value) == v)
                        return block(c.body, g, l, n);
                return block(node.default_body, g, l, n);
            }
            else if constexpr (std::is_same_v<T, For>)
                return for_stmt(node, g, l, n);
            else if constexpr (std::is_same_v<T, Break>)
                return Mode::break_();
            else if constexpr (std::is_same_v<T, Continue>)
                return Mode::continue_();
            else if constexpr (std::is_same_v<T, Leave>)
                return Mode::leave();
            else
                throw HostError{"big-step evaluation of a runtime-only statement"};
        },
        s.node);

    if (monitor != nullptr)
        monitor->store_lower_bound.record(l.size() >= before_size && l.domain_includes(*before));
    return m;
}

Mode BigStep::for_stmt(const For& f, GlobalState& g, LocalStore& l, const Namespace& n)
{
    const LocalStore* check = nullptr;
    std::optional<LocalStore> before;
    if (m_options.monitor != nullptr)
    {
        before = l;
        check = &*before;
    }

    Mode m;
    if (f.init.statements.empty())
        m = loop(f, g, l, n);
    else
    {
        // The init statements and the init-free loop form one block.
        tick();
        const DepthGuard guard{m_depth, m_options.depth_limit};
        const Namespace inner = n.extended(funsof_entries(f.init));
        const LocalStore saved = l;
        m = seq(f.init.statements, g, l, inner);
        if (m.is_regular())
        {
            tick();
            m = loop(f, g, l, inner);
        }
        l = restrict(l, saved);
    }

    if (check != nullptr)
    {
        m_options.monitor->loop_domain.record(l.same_domain(*check));
        m_options.monitor->loop_containment.record(
            m.kind != ModeKind::break_ && m.kind != ModeKind::continue_);
    }
    return m;
}

Mode BigStep::loop(const For& f, GlobalState& g, LocalStore& l, const Namespace& n)
{
    for (;;)
    {
        tick();
        if (auto abort = m_dialect.on_control(ControlPoint::loop_iteration, g))
            throw ExternalAbort{std::move(*abort)};
        if (m_dialect.falsy(single(f.cond, g, l, n)))
            return Mode::regular();
        const Mode body = block(f.body, g, l, n);
        if (body.kind == ModeKind::break_)
            return Mode::regular();
        if (body.kind == ModeKind::leave)
            return body;
        const Mode post = block(f.post, g, l, n);
        if (post.kind == ModeKind::leave)
            return post;
        if (!post.is_regular())
            throw HostError{"loop post block ended in " + to_string(post)};
    }
}

Value BigStep::single(const Expression& e, GlobalState& g, LocalStore& l, const Namespace& n)
{
    const Result r = exp(e, g, l, n);
    if (const auto* v = std::get_if<Value>(&r))
        return *v;
    throw HostError{"expected a single value, got " + to_string(r)};
}

std::vector<Value> BigStep::arguments(const std::vector<Expression>& args, GlobalState& g, LocalStore& l,
    const Namespace& n)
{
    std::vector<Value> values(args.size());
    for (size_t i = args.size(); i-- > 0;)
        values[i] = single(args[i], g, l, n);
    return values;
}

Result BigStep::exp(const Expression& e, GlobalState& g, LocalStore& l, const Namespace& n)
{
    tick();
    return std::visit(
        [&](const auto& node) -> Result {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Ident>)
                return l.at(node.name);
            else if constexpr (std::is_same_v<T, Lit>)
                return m_dialect.value_of_literal(node.literal);
            else if constexpr (std::is_same_v<T, OpCall>)
            {
                const size_t size_before = l.size();
                const auto values = arguments(node.args, g, l, n);
                if (m_options.monitor != nullptr)
                    m_options.monitor->expression_store.record(l.size() == size_before);
                auto r = m_dialect.eval_opcode(node.name, values, g);
                if (r.irregular)
                    throw ExternalAbort{std::move(*r.irregular)};
                return make_result(std::move(r.values));
            }
            else if constexpr (std::is_same_v<T, FunCall>)
            {
                const FunDef* def = n.find(node.name);
                if (def == nullptr)
                    throw HostError{"call to unknown function '" + node.name.str() + "'"};
                if (def->params.size() != node.args.size())
                    throw HostError{"function '" + node.name.str() + "' called with " +
                                    std::to_string(node.args.size()) + " argument(s), expects " +
                                    std::to_string(def->params.size())};
                const size_t size_before = l.size();
                const auto values = arguments(node.args, g, l, n);
                if (m_options.monitor != nullptr)
                    m_options.monitor->expression_store.record(l.size() == size_before);
                if (auto abort = m_dialect.on_control(ControlPoint::function_call, g))
                    throw ExternalAbort{std::move(*abort)};

                const DepthGuard guard{m_depth, m_options.depth_limit};
                LocalStore lf;
                for (size_t i = 0; i < def->params.size(); ++i)
                    lf.declare(def->params[i], values[i]);
                for (const auto& z : def->returns)
                    lf.declare(z, Value{});
                const Mode m = block(def->body, g, lf, n);
                if (!m.is_regular() && m.kind != ModeKind::leave)
                    throw HostError{"function body of '" + node.name.str() + "' ended in " + to_string(m)};
                m_dialect.on_return(g);
                std::vector<Value> rets;
                rets.reserve(def->returns.size());
                for (const auto& z : def->returns)
                    rets.push_back(lf.at(z));
                return make_result(std::move(rets));
            }
            else
                return node;
        },
        e.node);
}
}  // namespace yulsem

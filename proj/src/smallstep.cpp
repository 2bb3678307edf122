// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/analysis.hpp>
#include <yulsem/parser.hpp>
#include <yulsem/smallstep.hpp>

#include <sstream>
#include <unordered_map>

namespace yulsem
{
/// Runtime terms built from a loop: the ForInit block, or the unrolled ⟦if M {⟦Sb⟧cnt Sp for{} M Sp Sb}⟧brk.
struct Machine::LoopTerms
{
    Statement term;
};

struct LoopCache
{
    std::unordered_map<const For*, std::shared_ptr<Machine::LoopTerms>> terms;
};

namespace
{
template <typename... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};

bool statement_context(const Frame& f) noexcept
{
    return std::holds_alternative<BlockRest>(f) || std::holds_alternative<ContinueCatch>(f) ||
           std::holds_alternative<BreakCatch>(f) || std::holds_alternative<CallReturn>(f);
}

bool scope_frame(const Frame& f) noexcept
{
    return statement_context(f);
}

Expression value_expression(const Value& v)
{
    return make_literal(LiteralKind::hex, v.to_hex());
}
}  // namespace

std::string_view frame_name(const Frame& f) noexcept
{
    return std::visit(Overloaded{
                          [](const BlockRest&) { return std::string_view{"block"}; },
                          [](const DeclTargets&) { return std::string_view{"let"}; },
                          [](const AssignTargets&) { return std::string_view{"assign"}; },
                          [](const ExprStmtHole&) { return std::string_view{"expr"}; },
                          [](const ContinueCatch&) { return std::string_view{"cnt"}; },
                          [](const BreakCatch&) { return std::string_view{"brk"}; },
                          [](const IfThen&) { return std::string_view{"if"}; },
                          [](const SwitchCases&) { return std::string_view{"switch"}; },
                          [](const CallArgs&) { return std::string_view{"args"}; },
                          [](const CallReturn&) { return std::string_view{"call"}; },
                      },
        f);
}

Machine::Machine(const Dialect& dialect, SmallStepOptions options)
  : m_dialect{dialect}, m_options{std::move(options)}, m_cache{std::make_shared<LoopCache>()}
{}

void Machine::reset(GlobalState g, LocalStore l, Namespace n)
{
    m_stack.clear();
    m_g = std::move(g);
    m_l = std::move(l);
    m_n = std::move(n);
    m_steps = 0;
    m_scope_depth = m_max_scope_depth = m_max_stack_depth = 0;
    m_dropped = 0;
    m_cache->terms.clear();
}

void Machine::inject(const Block& program, GlobalState g, LocalStore l, Namespace n)
{
    reset(std::move(g), std::move(l), std::move(n));
    m_focus = &program;
}

void Machine::inject(const Statement& program, GlobalState g, LocalStore l, Namespace n)
{
    reset(std::move(g), std::move(l), std::move(n));
    m_focus = &program;
}

void Machine::inject(const Expression& program, GlobalState g, LocalStore l, Namespace n)
{
    reset(std::move(g), std::move(l), std::move(n));
    m_focus = &program;
}

bool Machine::terminal() const noexcept
{
    if (!m_stack.empty())
        return false;
    return std::holds_alternative<Mode>(m_focus) || std::holds_alternative<Value>(m_focus) ||
           std::holds_alternative<Tuple>(m_focus);
}

bool Machine::fuel_exhausted() const noexcept
{
    return m_options.fuel && m_steps >= *m_options.fuel && !terminal();
}

void Machine::push(Frame f)
{
    if (scope_frame(f))
        m_max_scope_depth = std::max(m_max_scope_depth, ++m_scope_depth);
    m_stack.push_back(std::move(f));
    m_max_stack_depth = std::max(m_max_stack_depth, m_stack.size());
}

void Machine::pop()
{
    if (scope_frame(m_stack.back()))
        --m_scope_depth;
    m_stack.pop_back();
}

void Machine::stuck(std::string_view why) const
{
    throw StuckState{"stuck: " + std::string{why} + "\n" + dump()};
}

std::string_view Machine::step()
{
    if (terminal())
        return "terminal";
    if (fuel_exhausted())
        return "fuel-exhausted";
    ++m_steps;

    const std::string_view rule = std::visit(Overloaded{
                                                 [&](const Statement* s) { return step_statement(*s); },
                                                 [&](const Block* b) { return step_block(*b, "Block"); },
                                                 [&](const Expression* e) { return step_expression(*e); },
                                                 [&](const Mode& m) {
                                                     if (m.is_external() || statement_context(m_stack.back()))
                                                         return step_mode(m);
                                                     return step_result(m);
                                                 },
                                                 [&](const Value& v) { return step_result(v); },
                                                 [&](const Tuple& t) { return step_result(t); },
                                             },
        m_focus);

    if (m_options.trace)
        m_options.trace(TraceEvent{m_steps, rule, focus_summary(), m_stack.size(), m_g.gas_remaining});
    return rule;
}

Outcome Machine::run()
{
    while (!terminal())
    {
        if (fuel_exhausted())
        {
            Outcome out;
            out.status = Status::fuel_exhausted;
            out.g = m_g;
            out.g.call_depth = 0;
            out.l = m_l;
            out.n = m_n;
            out.steps = m_steps;
            return out;
        }
        step();
    }
    Outcome out;
    out.g = m_g;
    out.g.call_depth = 0;
    out.l = m_l;
    out.n = m_n;
    out.steps = m_steps;
    out.result = std::visit(Overloaded{
                                [](const Mode& m) -> Result { return m; },
                                [](const Value& v) -> Result { return v; },
                                [](const Tuple& t) -> Result { return t; },
                                [](const auto&) -> Result { return Mode::regular(); },
                            },
        m_focus);
    return out;
}

const Machine::LoopTerms& Machine::loop_terms(const For& f)
{
    auto& slot = m_cache->terms[&f];
    if (slot)
        return *slot;

    auto terms = std::make_shared<LoopTerms>();
    For bare{Block{}, f.cond, f.post, f.body};
    if (!f.init.statements.empty())
    {
        Block b = f.init;
        b.statements.push_back(make_stmt(std::move(bare)));
        terms->term = make_stmt(std::move(b));
        slot = terms;
        return *slot;
    }

    Block body;
    body.statements.push_back(make_stmt(ContinueCatcher{make_stmt(f.body)}));
    body.statements.push_back(make_stmt(f.post));
    body.statements.push_back(make_stmt(std::move(bare)));
    terms->term = make_stmt(BreakCatcher{make_stmt(If{f.cond, std::move(body)})});

    // The copy of the loop inside the unrolled term unrolls to the same term.
    const auto& unrolled = std::get<If>(std::get<BreakCatcher>(terms->term.node).inner->node);
    const auto* copy = &std::get<For>(unrolled.body.statements.back().node);
    slot = terms;
    m_cache->terms[copy] = terms;
    return *terms;
}

std::string_view Machine::step_block(const Block& b, std::string_view rule)
{
    if (b.statements.empty())
    {
        m_focus = Mode::regular();
        return "BlockEmpty";
    }
    push(BlockRest{&b.statements, 1, m_l, m_n});
    m_n = m_n.extended(funsof_entries(b));
    m_focus = &b.statements.front();
    if (b.statements.size() == 1)
        try_drop_block();
    return rule;
}

std::string_view Machine::step_statement(const Statement& s)
{
    return std::visit(
        [&](const auto& node) -> std::string_view {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Block>)
                return step_block(node, "Block");
            else if constexpr (std::is_same_v<T, FunDef>)
            {
                m_focus = Mode::regular();
                return "FunDef";
            }
            else if constexpr (std::is_same_v<T, VarDecl>)
            {
                push(DeclTargets{&node});
                m_focus = &node.value;
                return "VarDecl";
            }
            else if constexpr (std::is_same_v<T, Assign>)
            {
                push(AssignTargets{&node});
                m_focus = &node.value;
                return "Assign";
            }
            else if constexpr (std::is_same_v<T, ExprStmt>)
            {
                push(ExprStmtHole{});
                m_focus = &node.expr;
                return "ExprStmt";
            }
            else if constexpr (std::is_same_v<T, If>)
            {
                push(IfThen{&node});
                m_focus = &node.cond;
                return "If";
            }
            else if constexpr (std::is_same_v<T, Switch>)
            {
                push(SwitchCases{&node});
                m_focus = &node.scrutinee;
                return "Switch";
            }
            else if constexpr (std::is_same_v<T, For>)
            {
                const auto& terms = loop_terms(node);
                if (!node.init.statements.empty())
                {
                    m_focus = &terms.term;
                    return "ForInit";
                }
                if (auto abort = m_dialect.on_control(ControlPoint::loop_iteration, m_g))
                {
                    m_focus = Mode::make_external(std::move(*abort));
                    return "ForGas";
                }
                m_focus = &terms.term;
                return "ForUnroll";
            }
            else if constexpr (std::is_same_v<T, Break>)
            {
                m_focus = Mode::break_();
                return "Break";
            }
            else if constexpr (std::is_same_v<T, Continue>)
            {
                m_focus = Mode::continue_();
                return "Continue";
            }
            else if constexpr (std::is_same_v<T, Leave>)
            {
                m_focus = Mode::leave();
                return "Leave";
            }
            else if constexpr (std::is_same_v<T, ModeStmt>)
            {
                m_focus = node.mode;
                return "Mode";
            }
            else if constexpr (std::is_same_v<T, BreakCatcher>)
            {
                m_focus = &*node.inner;
                if (m_options.collapse_frames && break_catch_redundant())
                {
                    ++m_dropped;
                    return "BreakDrop";
                }
                push(BreakCatch{});
                return "BreakEnter";
            }
            else if constexpr (std::is_same_v<T, ContinueCatcher>)
            {
                push(ContinueCatch{});
                m_focus = &*node.inner;
                return "ContinueEnter";
            }
            else
                stuck("cannot resume a reconstructed runtime term");
        },
        s.node);
}

std::string_view Machine::step_expression(const Expression& e)
{
    return std::visit(
        [&](const auto& node) -> std::string_view {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Ident>)
            {
                m_focus = m_l.at(node.name);
                return "Var";
            }
            else if constexpr (std::is_same_v<T, Lit>)
            {
                m_focus = m_dialect.value_of_literal(node.literal);
                return "Lit";
            }
            else if constexpr (std::is_same_v<T, Tuple>)
            {
                m_focus = node;
                return "Tuple";
            }
            else
            {
                if (node.args.empty())
                    return apply_call(e, {});
                const size_t first = m_options.arg_order == ArgOrder::right_to_left ? node.args.size() - 1 : 0;
                push(CallArgs{&e, first, std::vector<Value>(node.args.size())});
                m_focus = &node.args[first];
                return "Arg";
            }
        },
        e.node);
}

std::string_view Machine::apply_call(const Expression& call, std::vector<Value> args)
{
    if (const auto* op = std::get_if<OpCall>(&call.node))
    {
        auto r = m_dialect.eval_opcode(op->name, args, m_g);
        if (r.irregular)
            m_focus = Mode::make_external(std::move(*r.irregular));
        else
            std::visit([&](auto&& v) { m_focus = std::forward<decltype(v)>(v); }, make_result(std::move(r.values)));
        return "OpCall";
    }

    const auto& fc = std::get<FunCall>(call.node);
    const FunDef* def = m_n.find(fc.name);
    if (def == nullptr)
        throw HostError{"call to unknown function '" + fc.name.str() + "'"};
    if (def->params.size() != args.size())
        throw HostError{"function '" + fc.name.str() + "' called with " + std::to_string(args.size()) +
                        " argument(s), expects " + std::to_string(def->params.size())};
    if (auto abort = m_dialect.on_control(ControlPoint::function_call, m_g))
    {
        m_focus = Mode::make_external(std::move(*abort));
        return "CallGas";
    }
    LocalStore lf;
    for (size_t i = 0; i < def->params.size(); ++i)
        lf.declare(def->params[i], args[i]);
    for (const auto& z : def->returns)
        lf.declare(z, Value{});
    push(CallReturn{std::move(m_l), def});
    m_l = std::move(lf);
    m_focus = &def->body;
    return "FunCall";
}

std::string_view Machine::step_mode(Mode m)
{
    if (m.is_external())
    {
        while (!m_stack.empty())
            pop();
        m_g.call_depth = 0;
        return "External";
    }

    Frame& top = m_stack.back();
    if (auto* br = std::get_if<BlockRest>(&top))
    {
        if (m.is_regular() && !br->empty())
        {
            m_focus = &(*br->items)[br->next++];
            if (br->empty())
                try_drop_block();
            return "Seq";
        }
        m_l = restrict(m_l, br->saved_l);
        m_n = br->saved_n;
        pop();
        return m.is_regular() ? "BlockExit" : "BlockAbort";
    }
    if (std::holds_alternative<ContinueCatch>(top))
    {
        pop();
        if (m.kind == ModeKind::continue_)
            m_focus = Mode::regular();
        return "ContinueExit";
    }
    if (std::holds_alternative<BreakCatch>(top))
    {
        if (m.kind == ModeKind::continue_)
            stuck("continue reached a break catcher");
        pop();
        if (m.kind == ModeKind::break_)
            m_focus = Mode::regular();
        return "BreakExit";
    }
    auto& ret = std::get<CallReturn>(top);
    if (!m.is_regular() && m.kind != ModeKind::leave)
        stuck("function body ended in " + to_string(m));
    std::vector<Value> values;
    values.reserve(ret.def->returns.size());
    for (const auto& z : ret.def->returns)
        values.push_back(m_l.at(z));
    m_l = std::move(ret.saved_l);
    pop();
    m_dialect.on_return(m_g);
    std::visit([&](auto&& v) { m_focus = std::forward<decltype(v)>(v); }, make_result(std::move(values)));
    return "Return";
}

std::string_view Machine::step_result(Result r)
{
    if (m_stack.empty())
        stuck("result without a context");
    Frame& top = m_stack.back();

    auto single = [&]() -> Value {
        if (const auto* v = std::get_if<Value>(&r))
            return *v;
        throw HostError{"expected a single value, got " + to_string(r)};
    };

    if (auto* args = std::get_if<CallArgs>(&top))
    {
        args->collected[args->pending] = single();
        const size_t n = args->collected.size();
        const auto& call_args = std::holds_alternative<OpCall>(args->call->node)
                                    ? std::get<OpCall>(args->call->node).args
                                    : std::get<FunCall>(args->call->node).args;
        const bool done =
            m_options.arg_order == ArgOrder::right_to_left ? args->pending == 0 : args->pending + 1 == n;
        if (!done)
        {
            args->pending = m_options.arg_order == ArgOrder::right_to_left ? args->pending - 1 : args->pending + 1;
            m_focus = &call_args[args->pending];
            return "Arg";
        }
        const Expression* call = args->call;
        std::vector<Value> values = std::move(args->collected);
        pop();
        return apply_call(*call, std::move(values));
    }
    if (std::holds_alternative<DeclTargets>(top) || std::holds_alternative<AssignTargets>(top))
    {
        const bool decl = std::holds_alternative<DeclTargets>(top);
        const auto& targets =
            decl ? std::get<DeclTargets>(top).decl->targets : std::get<AssignTargets>(top).assign->targets;
        const auto values = result_values(r);
        if (!values || values->size() != targets.size())
            throw HostError{"arity mismatch: " + std::to_string(targets.size()) + " target(s) for " +
                            (values ? std::to_string(values->size()) : "no") + " value(s)"};
        for (size_t i = 0; i < targets.size(); ++i)
        {
            if (decl)
                m_l.declare(targets[i], (*values)[i]);
            else
                m_l.assign(targets[i], (*values)[i]);
        }
        pop();
        m_focus = Mode::regular();
        return decl ? "VarDeclBind" : "AssignBind";
    }
    if (std::holds_alternative<ExprStmtHole>(top))
    {
        const auto* mode = std::get_if<Mode>(&r);
        if (mode == nullptr || !mode->is_regular())
            throw HostError{"expression statement produced a value"};
        pop();
        m_focus = Mode::regular();
        return "ExprStmtDone";
    }
    if (auto* it = std::get_if<IfThen>(&top))
    {
        const If* stmt = it->stmt;
        const Value v = single();
        pop();
        if (m_dialect.falsy(v))
        {
            m_focus = Mode::regular();
            return "IfFalse";
        }
        m_focus = &stmt->body;
        return "IfTrue";
    }
    if (auto* sw = std::get_if<SwitchCases>(&top))
    {
        const Switch* stmt = sw->stmt;
        const Value v = single();
        pop();
        for (const auto& c : stmt->cases)
            if (m_dialect.value_of_literal(c.value) == v)
            {
                m_focus = &c.body;
                return "SwitchCase";
            }
        m_focus = &stmt->default_body;
        return "SwitchDefault";
    }
    stuck("result in statement position");
}

bool Machine::break_catch_redundant() const
{
    const BlockRest* first = nullptr;
    for (auto it = m_stack.rbegin(); it != m_stack.rend(); ++it)
    {
        if (std::holds_alternative<BreakCatch>(*it))
            return true;
        const auto* br = std::get_if<BlockRest>(&*it);
        if (br == nullptr || !br->empty())
            return false;
        if (first == nullptr)
            first = br;
        else if (!br->saved_n.same_identity(first->saved_n) || !br->saved_l.same_domain(first->saved_l))
            return false;
    }
    return false;
}

void Machine::try_drop_block()
{
    if (!m_options.collapse_frames || m_stack.size() < 2)
        return;
    const auto& top = std::get<BlockRest>(m_stack.back());
    for (auto it = m_stack.rbegin() + 1; it != m_stack.rend(); ++it)
    {
        if (std::holds_alternative<BreakCatch>(*it))
            continue;
        const auto* below = std::get_if<BlockRest>(&*it);
        if (below != nullptr && below->empty() && below->saved_n.same_identity(top.saved_n) &&
            below->saved_l.same_domain(top.saved_l))
        {
            pop();
            ++m_dropped;
        }
        return;
    }
}

std::string Machine::focus_summary() const
{
    return std::visit(Overloaded{
                          [](const Statement* s) {
                              try
                              {
                                  auto text = pretty(*s);
                                  if (auto nl = text.find('\n'); nl != std::string::npos)
                                      text = text.substr(0, nl) + " ...";
                                  return text;
                              }
                              catch (const HostError&)
                              {
                                  return std::string{"<runtime term>"};
                              }
                          },
                          [](const Block* b) {
                              return b->statements.empty() ? std::string{"{ }"} : std::string{"{ ... }"};
                          },
                          [](const Expression* e) { return pretty(*e); },
                          [](const Mode& m) { return to_string(m); },
                          [](const Value& v) { return v.to_hex(); },
                          [](const Tuple& t) { return to_string(Result{t}); },
                      },
        m_focus);
}

std::string Machine::dump() const
{
    std::ostringstream os;
    os << "focus: " << focus_summary() << "\nframes:";
    for (const auto& f : m_stack)
        os << ' ' << frame_name(f);
    os << "\nsteps: " << m_steps;
    return os.str();
}

Statement Machine::to_term() const
{
    std::variant<Statement, Expression> cur = std::visit(
        Overloaded{
            [](const Statement* s) -> std::variant<Statement, Expression> { return *s; },
            [](const Block* b) -> std::variant<Statement, Expression> { return make_stmt(*b); },
            [](const Expression* e) -> std::variant<Statement, Expression> { return *e; },
            [](const Mode& m) -> std::variant<Statement, Expression> { return make_stmt(ModeStmt{m}); },
            [](const Value& v) -> std::variant<Statement, Expression> { return value_expression(v); },
            [](const Tuple& t) -> std::variant<Statement, Expression> { return Expression{t, {}}; },
        },
        m_focus);

    auto as_stmt = [](std::variant<Statement, Expression>& c) -> Statement {
        if (auto* s = std::get_if<Statement>(&c))
            return std::move(*s);
        return make_stmt(ExprStmt{std::move(std::get<Expression>(c))});
    };
    auto as_expr = [](std::variant<Statement, Expression>& c) -> Expression {
        if (auto* e = std::get_if<Expression>(&c))
            return std::move(*e);
        return Expression{Tuple{}, {}};
    };

    for (auto it = m_stack.rbegin(); it != m_stack.rend(); ++it)
    {
        cur = std::visit(
            Overloaded{
                [&](const BlockRest& f) -> std::variant<Statement, Expression> {
                    ScopedBlock sb{{}, f.saved_l, f.saved_n};
                    sb.statements.push_back(as_stmt(cur));
                    for (size_t i = f.next; i < f.items->size(); ++i)
                        sb.statements.push_back((*f.items)[i]);
                    return make_stmt(std::move(sb));
                },
                [&](const DeclTargets& f) -> std::variant<Statement, Expression> {
                    return make_stmt(VarDecl{f.decl->targets, as_expr(cur)});
                },
                [&](const AssignTargets& f) -> std::variant<Statement, Expression> {
                    return make_stmt(Assign{f.assign->targets, as_expr(cur)});
                },
                [&](const ExprStmtHole&) -> std::variant<Statement, Expression> {
                    return make_stmt(ExprStmt{as_expr(cur)});
                },
                [&](const ContinueCatch&) -> std::variant<Statement, Expression> {
                    return make_stmt(ContinueCatcher{as_stmt(cur)});
                },
                [&](const BreakCatch&) -> std::variant<Statement, Expression> {
                    return make_stmt(BreakCatcher{as_stmt(cur)});
                },
                [&](const IfThen& f) -> std::variant<Statement, Expression> {
                    return make_stmt(If{as_expr(cur), f.stmt->body});
                },
                [&](const SwitchCases& f) -> std::variant<Statement, Expression> {
                    return make_stmt(Switch{as_expr(cur), f.stmt->cases, f.stmt->default_body});
                },
                [&](const CallArgs& f) -> std::variant<Statement, Expression> {
                    Expression e = *f.call;
                    auto& args = std::holds_alternative<OpCall>(e.node) ? std::get<OpCall>(e.node).args
                                                                        : std::get<FunCall>(e.node).args;
                    const bool rtl = m_options.arg_order == ArgOrder::right_to_left;
                    for (size_t i = 0; i < args.size(); ++i)
                        if (rtl ? i > f.pending : i < f.pending)
                            args[i] = value_expression(f.collected[i]);
                    args[f.pending] = as_expr(cur);
                    return e;
                },
                [&](const CallReturn& f) -> std::variant<Statement, Expression> {
                    return make_stmt(CallFrame{as_stmt(cur), f.saved_l, f.def->returns});
                },
            },
            *it);
    }
    return as_stmt(cur);
}
}  // namespace yulsem

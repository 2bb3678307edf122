// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/analysis.hpp>
#include <yulsem/bigstep.hpp>
#include <yulsem/evm.hpp>
#include <yulsem/parser.hpp>
#include <yulsem/smallstep.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace yulsem::test
{
enum class Engine
{
    big,
    small,
    small_opt,
};

inline const char* engine_name(Engine e)
{
    switch (e)
    {
    case Engine::big:
        return "big";
    case Engine::small:
        return "small";
    default:
        return "small-opt";
    }
}

inline std::filesystem::path corpus_dir()
{
    return YULSEM_CORPUS_DIR;
}

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in{p};
    if (!in)
        throw std::runtime_error{"cannot open " + p.string()};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string corpus(std::string_view name)
{
    return read_file(corpus_dir() / name);
}

struct RunConfig
{
    uint64_t gas = default_gas_limit;
    std::optional<uint64_t> fuel;
    LemmaMonitor* monitor = nullptr;
    bool history = false;
    ArgOrder order = ArgOrder::right_to_left;
};

inline Outcome run_from(const Block& program, Engine e, const Dialect& dialect, GlobalState g,
    const RunConfig& cfg = {})
{
    if (e == Engine::big)
    {
        Outcome out;
        run_with_stack([&] {
            BigStep engine{dialect, EvalOptions{cfg.fuel, default_depth_limit, cfg.monitor}};
            out = engine.run(program, g);
        });
        return out;
    }
    Machine m{dialect, SmallStepOptions{cfg.fuel, e == Engine::small_opt, cfg.order, {}}};
    m.inject(program, g);
    return m.run();
}

inline Outcome run_block(const Block& program, Engine e, const Dialect& dialect, const RunConfig& cfg = {})
{
    GlobalState g = dialect.initial_state(cfg.gas);
    if (cfg.history)
        g.history = std::make_shared<std::vector<Charge>>();
    return run_from(program, e, dialect, std::move(g), cfg);
}

inline Outcome run_source(std::string_view source, Engine e, const RunConfig& cfg = {})
{
    static const EvmDialect dialect;
    const Block program = parse_program(source, dialect);
    return run_block(program, e, dialect, cfg);
}
}  // namespace yulsem::test

// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/engine.hpp>
#include <yulsem/evm.hpp>

#include <json.hpp>

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace yulsem
{
struct YulObject;

struct RawData
{
    std::string name;
    Bytes bytes;
    friend bool operator==(const RawData&, const RawData&) = default;
};

struct DataItem
{
    std::variant<RawData, Box<YulObject>> node;

    [[nodiscard]] const std::string& name() const noexcept;
    friend bool operator==(const DataItem&, const DataItem&) = default;
};

/// object "name" { code { ... } data* }
struct YulObject
{
    std::string name;
    Block code;
    std::vector<DataItem> data;
    friend bool operator==(const YulObject&, const YulObject&) = default;
};

struct DataRegion
{
    uint64_t offset = 0;
    uint64_t size = 0;
    friend bool operator==(const DataRegion&, const DataRegion&) = default;
};

/// Δ: the immediate children of an object laid out back to back from offset 0.
struct DataLayout
{
    std::map<std::string, DataRegion, std::less<>> regions;
    Bytes image;

    [[nodiscard]] const DataRegion* find(std::string_view name) const;
};

/// True if the first token of source is the keyword-like identifier `object`.
bool is_object_source(std::string_view source);

/// Parses object notation. Code fragments are parsed against dialect.
YulObject parse_object(std::string_view source, const Dialect& dialect);

/// Canonical rendering of an object tree.
std::string pretty(const YulObject& obj);
nlohmann::json object_to_json(const YulObject& obj);

/// The bytes a data item contributes to its parent's layout. A nested object contributes
/// its pretty-printed code as UTF-8 text.
Bytes serialize(const DataItem& item);

DataLayout build_layout(const YulObject& obj);

/// Replaces datasize("x") and dataoffset("x") with number literals. Throws HostError on
/// an unknown name.
Block resolve_data_functions(const Block& code, const DataLayout& layout);

/// The EVM dialect extended with datacopy, datasize, dataoffset and memoryguard.
class ObjectDialect : public EvmDialect
{
public:
    explicit ObjectDialect(GasTable table = GasTable::defaults(), DataLayout layout = {},
        bool allow_special_copy = false);

    [[nodiscard]] std::string_view name() const noexcept override { return "evm-object"; }

    OpcodeResult eval_opcode(Identifier name, std::span<const Value> args, GlobalState& g) const override;

    [[nodiscard]] const DataLayout& layout() const noexcept { return m_layout; }

private:
    DataLayout m_layout;
    bool m_allow_special_copy;
    Identifier m_datacopy{"datacopy"};
    Identifier m_memoryguard{"memoryguard"};
    Identifier m_datasize{"datasize"};
    Identifier m_dataoffset{"dataoffset"};
};

struct ObjectRun
{
    Outcome outcome;
    DataLayout layout;
    Block resolved;
};

/// Evaluates the object's code with empty L and N, the data functions bound to its layout.
/// runner performs the evaluation with the engine of the caller's choice.
using ObjectRunner = std::function<Outcome(const Dialect&, const Block&, GlobalState)>;

ObjectRun run_object(const YulObject& obj, GlobalState g, const ObjectRunner& runner,
    const GasTable& table = GasTable::defaults(), bool allow_special_copy = false);
}  // namespace yulsem

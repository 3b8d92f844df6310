#ifndef GZARISKI_INSTANCE_HPP
#define GZARISKI_INSTANCE_HPP

#include <optional>
#include <string>
#include <string_view>

#include "gzariski/graded_module.hpp"
#include "gzariski/spectrum.hpp"

namespace gz {

struct InstanceOptions {
    RingQpSemantics semantics = RingQpSemantics::radical;
    bool require_primeful = true;
    std::uint32_t ring_cap = 4096;
    int group_cap = 16;
    std::size_t ideal_cap = std::size_t{1} << 16;
    std::size_t submodule_cap = std::size_t{1} << 16;

    bool operator==(const InstanceOptions&) const = default;
};

// Parsed instance: group, ring, optional module (absent means the harness
// uses the regular module M = R), plus option overrides.
struct InstanceDesc {
    std::string name;
    RingDesc ring;
    std::optional<ModuleDesc> module;
    InstanceOptions options;
};

// Line-oriented UTF-8 format with `#` comments and [group]/[ring]/[module]/
// [options] sections; returns the first error with line/column.
Expected<InstanceDesc> parse_instance(std::string_view text);

// Canonical serialization: fixed section/key order, symmetrized and sorted
// structure constants, zero products omitted. serialize(parse(serialize(d)))
// is byte-identical to serialize(d).
std::string serialize_instance(const InstanceDesc& desc);

// FNV-1a over the canonical serialization plus the derived options; used as
// the spectra cache key.
std::string instance_content_hash(const InstanceDesc& desc);

} // namespace gz

#endif

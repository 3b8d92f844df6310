#include "gzariski/corpus.hpp"

namespace gz {
namespace {

RingDesc f2_ring() {
    RingDesc r;
    r.group = GroupDesc::trivial();
    r.components = {{2}};
    r.mul.push_back({0, 0, 0, 0, {1}, -1});
    r.one_component = 0;
    r.one_tuple = {1};
    return r;
}

InstanceDesc inst_a() {
    InstanceDesc d;
    d.name = "INST-A";
    d.ring.group = GroupDesc::cyclic(2);
    d.ring.components = {{2}, {2}};
    d.ring.mul.push_back({0, 0, 0, 0, {1}, -1}); // 1*1 = 1
    d.ring.mul.push_back({0, 1, 0, 0, {1}, -1}); // 1*x = x
    // x*x = 0: omitted
    d.ring.one_component = 0;
    d.ring.one_tuple = {1};
    return d;
}

InstanceDesc inst_b() {
    InstanceDesc d;
    d.name = "INST-B";
    d.ring.group = GroupDesc::trivial();
    d.ring.components = {{4}};
    d.ring.mul.push_back({0, 0, 0, 0, {1}, -1});
    d.ring.one_component = 0;
    d.ring.one_tuple = {1};
    return d;
}

InstanceDesc inst_c() {
    InstanceDesc d;
    d.name = "INST-C";
    d.ring = f2_ring();
    ModuleDesc m;
    m.components = {{2, 2}};
    m.act.push_back({0, 0, 0, 0, {1, 0}, -1});
    m.act.push_back({0, 0, 0, 1, {0, 1}, -1});
    d.module = std::move(m);
    return d;
}

InstanceDesc inst_d() {
    InstanceDesc d;
    d.name = "INST-D";
    d.ring.group = GroupDesc::trivial();
    d.ring.components = {{6}};
    d.ring.mul.push_back({0, 0, 0, 0, {1}, -1});
    d.ring.one_component = 0;
    d.ring.one_tuple = {1};
    return d;
}

InstanceDesc inst_e() {
    InstanceDesc d;
    d.name = "INST-E";
    d.ring = f2_ring();
    ModuleDesc m;
    m.components = {{2, 2, 2}};
    m.act.push_back({0, 0, 0, 0, {1, 0, 0}, -1});
    m.act.push_back({0, 0, 0, 1, {0, 1, 0}, -1});
    m.act.push_back({0, 0, 0, 2, {0, 0, 1}, -1});
    d.module = std::move(m);
    return d;
}

InstanceDesc inst_s() {
    InstanceDesc d;
    d.name = "INST-S";
    d.ring = f2_ring();
    ModuleDesc m;
    m.components = {{2}};
    m.act.push_back({0, 0, 0, 0, {1}, -1});
    d.module = std::move(m);
    return d;
}

InstanceDesc inst_z() {
    InstanceDesc d;
    d.name = "INST-Z";
    d.ring = f2_ring();
    ModuleDesc m;
    m.components = {{1}};
    d.module = std::move(m);
    return d;
}

} // namespace

const std::vector<InstanceDesc>& builtin_corpus() {
    static const std::vector<InstanceDesc> corpus = {
        inst_a(), inst_b(), inst_c(), inst_d(), inst_e(), inst_s(), inst_z(),
    };
    return corpus;
}

const InstanceDesc* find_instance(const std::string& name) {
    for (const auto& d : builtin_corpus())
        if (d.name == name) return &d;
    return nullptr;
}

} // namespace gz

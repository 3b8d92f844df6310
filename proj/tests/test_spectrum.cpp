#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gzariski/corpus.hpp"
#include "gzariski/spectrum.hpp"

using namespace gz;

namespace {

struct World {
    GradedRing ring;
    GradedModule module;
    std::vector<ElementSet> ideals;
    std::vector<ElementSet> subs;
};

World world_of(const char* name) {
    const InstanceDesc* d = find_instance(name);
    REQUIRE(d != nullptr);
    auto r = GradedRing::validate(d->ring);
    REQUIRE(r.ok());
    World w{std::move(r.value()), {}, {}, {}};
    if (d->module) {
        auto m = GradedModule::validate(w.ring, *d->module);
        REQUIRE(m.ok());
        w.module = std::move(m.value());
    } else {
        w.module = GradedModule::regular(w.ring);
    }
    auto ideals = enumerate_graded_ideals(w.ring);
    REQUIRE(ideals.ok());
    w.ideals = std::move(ideals.value());
    auto subs = enumerate_graded_submodules(w.module);
    REQUIRE(subs.ok());
    w.subs = std::move(subs.value());
    return w;
}

SpectrumSpace space_of(const World& w, SpaceKind kind) {
    auto sp = build_spectrum(w.ring, &w.module, kind, {});
    REQUIRE(sp.ok());
    return std::move(sp.value());
}

std::vector<std::string> point_prints(const SpectrumSpace& sp) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < sp.count(); ++i) out.push_back(sp.point_print(static_cast<int>(i)));
    return out;
}

ElementSet mod_set(const GradedModule& m, std::initializer_list<const char*> prints) {
    ElementSet s(m.size());
    for (const char* p : prints) {
        bool found = false;
        for (Elem e = 0; e < m.size() && !found; ++e)
            if (m.print(e) == p) {
                s.set(e);
                found = true;
            }
        REQUIRE(found);
    }
    return s;
}

} // namespace

TEST_CASE("spectra filter the enumerated lattices by classification") {
    World a = world_of("INST-A");
    CHECK(space_of(a, SpaceKind::qpspec_ring).count() == 2);
    CHECK(space_of(a, SpaceKind::spec_ring).count() == 1);
    CHECK(space_of(a, SpaceKind::qpspec_module).count() == 2);

    World c = world_of("INST-C");
    CHECK(space_of(c, SpaceKind::qpspec_module).count() == 4);
    CHECK(space_of(c, SpaceKind::spec_module).count() == 4);

    World d = world_of("INST-D");
    SpectrumSpace qp_d = space_of(d, SpaceKind::qpspec_module);
    CHECK(point_prints(qp_d) == std::vector<std::string>{"(3)", "(2)"});

    World z = world_of("INST-Z");
    CHECK(space_of(z, SpaceKind::qpspec_module).count() == 0);
    CHECK(space_of(z, SpaceKind::spec_module).count() == 0);
}

TEST_CASE("varieties follow the per-kind membership rules") {
    World a = world_of("INST-A");
    SpectrumSpace qp = space_of(a, SpaceKind::qpspec_module);
    ElementSet zero = mod_set(a.module, {"0,0"});
    CHECK(variety(qp, zero) == ElementSet::full(qp.count()));
    CHECK(variety(qp, ElementSet::full(a.module.size())).none());
    // the whole space is the variety of the zero seed on every instance
    for (const auto& desc : builtin_corpus()) {
        World w = world_of(desc.name.c_str());
        SpectrumSpace sp = space_of(w, SpaceKind::qpspec_module);
        ElementSet z(w.module.size());
        z.set(w.module.zero());
        CHECK(variety(sp, z) == ElementSet::full(sp.count()));
        CHECK(variety(sp, ElementSet::full(w.module.size())).none());
    }
    World c = world_of("INST-C"); // |R| = 2 differs from |M| = 4
    SpectrumSpace qpc = space_of(c, SpaceKind::qpspec_module);
    ElementSet ring_sized(c.ring.size());
    CHECK_THROWS_AS((void)variety(qpc, ring_sized), PreconditionError);
    SpectrumSpace ringc = space_of(c, SpaceKind::qpspec_ring);
    ElementSet module_sized(c.module.size());
    CHECK_THROWS_AS((void)variety(ringc, module_sized), PreconditionError);
}

TEST_CASE("ring qp-varieties honor the semantics switch") {
    World b = world_of("INST-B");
    SpectrumSpace qp = space_of(b, SpaceKind::qpspec_ring);
    REQUIRE(qp.count() == 2); // (0) and (2)
    const ElementSet& two = b.ideals[1];
    PointSubset rad = variety(qp, two, RingQpSemantics::radical);
    PointSubset cont = variety(qp, two, RingQpSemantics::containment);
    CHECK(rad == ElementSet::full(2)); // Gr((0)) = (2) contains Gr((2))
    CHECK(cont.count() == 1);          // only (2) contains (2)
}

TEST_CASE("topologies come with verified axioms and witness seeds") {
    World d = world_of("INST-D");
    SpectrumSpace qp = space_of(d, SpaceKind::qpspec_module);
    FiniteTopology t = build_topology(qp, d.subs);
    CHECK(t.closed.size() == 4); // discrete on two points
    CHECK(t.axiom_issues.empty());
    CHECK(t.seed_of.size() == t.closed.size());
    for (std::size_t i = 0; i < t.closed.size(); ++i)
        CHECK(variety(qp, d.subs[static_cast<std::size_t>(t.seed_of[i])]) == t.closed[i]);

    World c = world_of("INST-C");
    SpectrumSpace qpc = space_of(c, SpaceKind::qpspec_module);
    FiniteTopology tc = build_topology(qpc, c.subs);
    CHECK(tc.closed.size() == 2); // indiscrete
    CHECK(tc.axiom_issues.empty());

    World a = world_of("INST-A");
    SpectrumSpace qpa = space_of(a, SpaceKind::qpspec_module);
    CHECK(build_topology(qpa, a.subs).closed.size() == 2);
}

TEST_CASE("closure picks the smallest closed superset") {
    World d = world_of("INST-D");
    SpectrumSpace qp = space_of(d, SpaceKind::qpspec_module);
    FiniteTopology t = build_topology(qp, d.subs);
    for (std::size_t i = 0; i < qp.count(); ++i)
        CHECK(closure(t, PointSubset::singleton(qp.count(), static_cast<Elem>(i))).count() == 1);

    World c = world_of("INST-C");
    SpectrumSpace qpc = space_of(c, SpaceKind::qpspec_module);
    FiniteTopology tc = build_topology(qpc, c.subs);
    int line = qpc.find_point(mod_set(c.module, {"0,0", "1,0"}));
    REQUIRE(line >= 0);
    CHECK(closure(tc, PointSubset::singleton(qpc.count(), static_cast<Elem>(line))) ==
          ElementSet::full(qpc.count()));
    CHECK(closure(tc, ElementSet::full(qpc.count())) == ElementSet::full(qpc.count()));
}

TEST_CASE("closure is extensive, monotone and idempotent on small spaces") {
    for (const char* name : {"INST-A", "INST-B", "INST-C", "INST-D", "INST-S"}) {
        CAPTURE(name);
        World w = world_of(name);
        SpectrumSpace sp = space_of(w, SpaceKind::qpspec_module);
        FiniteTopology t = build_topology(sp, w.subs);
        const std::size_t n = sp.count();
        REQUIRE(n <= 6);
        for (std::uint32_t ma = 0; ma < (1u << n); ++ma) {
            PointSubset ya(n);
            for (std::size_t b = 0; b < n; ++b)
                if (ma & (1u << b)) ya.set(static_cast<Elem>(b));
            PointSubset ca = closure(t, ya);
            CHECK(ya.subset_of(ca));
            CHECK(closure(t, ca) == ca);
            for (std::uint32_t mb = 0; mb < (1u << n); ++mb) {
                PointSubset yb(n);
                for (std::size_t b = 0; b < n; ++b)
                    if (mb & (1u << b)) yb.set(static_cast<Elem>(b));
                if (ya.subset_of(yb)) CHECK(ca.subset_of(closure(t, yb)));
            }
        }
    }
}

TEST_CASE("closure stays extensive, monotone and idempotent on sampled subsets") {
    // the fifteen-point instance is beyond the exhaustive bound
    World w = world_of("INST-E");
    SpectrumSpace sp = space_of(w, SpaceKind::qpspec_module);
    FiniteTopology t = build_topology(sp, w.subs);
    const std::size_t n = sp.count();
    REQUIRE(n > 12);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&]() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    std::vector<PointSubset> sample;
    for (int i = 0; i < 256; ++i) {
        PointSubset y(n);
        for (std::size_t b = 0; b < n; ++b)
            if (next() & 1) y.set(static_cast<Elem>(b));
        sample.push_back(std::move(y));
    }
    for (const auto& ya : sample) {
        PointSubset ca = closure(t, ya);
        CHECK(ya.subset_of(ca));
        CHECK(closure(t, ca) == ca);
        for (const auto& yb : sample)
            if (ya.subset_of(yb)) CHECK(ca.subset_of(closure(t, yb)));
    }
}

TEST_CASE("intersection of points falls back to the whole carrier") {
    World c = world_of("INST-C");
    SpectrumSpace qp = space_of(c, SpaceKind::qpspec_module);
    PointSubset lines(qp.count());
    for (std::size_t i = 0; i < qp.count(); ++i)
        if (qp.points[i].count() == 2) lines.set(static_cast<Elem>(i));
    REQUIRE(lines.count() == 3);
    CHECK(intersection_of_points(qp, lines) == mod_set(c.module, {"0,0"}));
    PointSubset one(qp.count());
    one.set(0);
    CHECK(intersection_of_points(qp, one) == qp.points[0]);
    CHECK(intersection_of_points(qp, PointSubset(qp.count())) == ElementSet::full(c.module.size()));
}

TEST_CASE("basic opens complement the cyclic varieties") {
    World d = world_of("INST-D");
    SpectrumSpace qp = space_of(d, SpaceKind::qpspec_module);
    Elem two = 2, zero = 0, one = 1;
    PointSubset gx2 = basic_open(qp, two);
    CHECK(gx2.count() == 1);
    CHECK(qp.point_print(static_cast<int>(gx2.members()[0])) == "(3)");
    CHECK(basic_open(qp, zero).none());
    CHECK(basic_open(qp, one) == ElementSet::full(qp.count()));
    for (const auto& desc : builtin_corpus()) {
        World w = world_of(desc.name.c_str());
        SpectrumSpace sp = space_of(w, SpaceKind::qpspec_module);
        CHECK(basic_open(sp, w.ring.zero()).none());
        CHECK(basic_open(sp, w.ring.one()) == ElementSet::full(sp.count()));
    }
    World a = world_of("INST-A");
    SpectrumSpace qpa = space_of(a, SpaceKind::qpspec_module);
    Elem mixed = a.ring.add(a.ring.one(), 1);
    if (!a.ring.is_homogeneous(mixed)) CHECK_THROWS_AS((void)basic_open(qpa, mixed), PreconditionError);
}

TEST_CASE("Zqp radicals intersect the variety members") {
    World d = world_of("INST-D");
    SpectrumSpace qp = space_of(d, SpaceKind::qpspec_module);
    ElementSet zero = mod_set(d.module, {"0"});
    CHECK(zqp_radical(qp, zero) == zero); // (2) meet (3) = 0
    CHECK(is_zqp_radical_submodule(qp, zero));
    CHECK(zqp_radical(qp, ElementSet::full(d.module.size())) == ElementSet::full(d.module.size()));

    World a = world_of("INST-A");
    SpectrumSpace qpa = space_of(a, SpaceKind::qpspec_module);
    CHECK(zqp_radical(qpa, mod_set(a.module, {"0,0"})) == mod_set(a.module, {"0,0"}));
}

TEST_CASE("topology profiles match the derived instances") {
    World d = world_of("INST-D");
    SpectrumSpace qp = space_of(d, SpaceKind::qpspec_module);
    TopologyProfile pd = topology_profile(build_topology(qp, d.subs));
    CHECK(pd.is_t0);
    CHECK(pd.is_t1);
    CHECK(!pd.is_connected);
    CHECK(!pd.is_irreducible_space);
    CHECK(pd.is_noetherian);
    CHECK(pd.is_quasi_compact);
    CHECK(pd.is_spectral);
    CHECK(pd.irreducible_components.size() == 2);
    CHECK(pd.hochster_t0);
    CHECK(pd.hochster_quasi_compact);
    CHECK(pd.hochster_qc_base);
    CHECK(pd.hochster_generic_points);

    World c = world_of("INST-C");
    SpectrumSpace qpc = space_of(c, SpaceKind::qpspec_module);
    TopologyProfile pc = topology_profile(build_topology(qpc, c.subs));
    CHECK(!pc.is_t0);
    CHECK(pc.is_connected);
    CHECK(pc.is_irreducible_space);
    CHECK(!pc.is_spectral);
    REQUIRE(pc.irreducible_components.size() == 1);
    CHECK(pc.irreducible_components[0] == ElementSet::full(qpc.count()));
    // every point of the indiscrete space is generic for the full set
    REQUIRE(pc.generic_point.size() == 1);
    CHECK(pc.generic_point[0] >= 0);

    World s = world_of("INST-S");
    SpectrumSpace qps = space_of(s, SpaceKind::qpspec_module);
    TopologyProfile ps = topology_profile(build_topology(qps, s.subs));
    CHECK(ps.is_t0);
    CHECK(ps.is_t1);
    CHECK(ps.is_connected);
    CHECK(ps.is_irreducible_space);
    CHECK(ps.is_spectral);

    World z = world_of("INST-Z");
    SpectrumSpace qpz = space_of(z, SpaceKind::qpspec_module);
    TopologyProfile pz = topology_profile(build_topology(qpz, z.subs));
    CHECK(pz.is_t0);
    CHECK(pz.is_connected);
    CHECK(!pz.is_irreducible_space);
    CHECK(pz.is_spectral); // all four conditions hold vacuously on the empty space
}

TEST_CASE("varieties are anti-monotone and factor through the radical colon") {
    for (const auto& desc : builtin_corpus()) {
        CAPTURE(desc.name);
        World w = world_of(desc.name.c_str());
        SpectrumSpace sp = space_of(w, SpaceKind::qpspec_module);
        std::vector<PointSubset> vars;
        for (const auto& k : w.subs) vars.push_back(variety(sp, k));
        for (std::size_t i = 0; i < w.subs.size(); ++i) {
            ElementSet seed = ideal_times_module(w.module, graded_radical(w.ring, colon_ideal(w.module, w.subs[i])));
            CHECK(variety(sp, seed) == vars[i]);
            for (std::size_t j = 0; j < w.subs.size(); ++j)
                if (w.subs[i].subset_of(w.subs[j])) CHECK(vars[j].subset_of(vars[i]));
        }
    }
}

TEST_CASE("greedy subcovers certify quasi-compactness of every open") {
    for (const char* name : {"INST-A", "INST-C", "INST-D", "INST-E"}) {
        CAPTURE(name);
        World w = world_of(name);
        SpectrumSpace sp = space_of(w, SpaceKind::qpspec_module);
        FiniteTopology t = build_topology(sp, w.subs);
        for (const auto& c : t.closed) {
            PointSubset u = c.complement();
            auto cover = basic_subcover(t, u);
            REQUIRE(cover.has_value());
            PointSubset acc(sp.count());
            for (int b : *cover) acc |= t.basic[static_cast<std::size_t>(b)];
            CHECK(acc == u);
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gzariski/checks.hpp"

using namespace gz;

namespace {

std::unique_ptr<InstanceModel> model_of(const char* name) {
    const InstanceDesc* d = find_instance(name);
    REQUIRE(d != nullptr);
    auto m = build_model(*d);
    REQUIRE(m.ok());
    return std::move(m.value());
}

} // namespace

TEST_CASE("the natural map collapses the nilpotent instance") {
    auto m = model_of("INST-A");
    REQUIRE(m->qpM.count() == 2);
    CHECK(m->maps.phi.well_defined());
    CHECK(m->maps.phi.to[0] == m->maps.phi.to[1]); // both points hit (x)-bar
    CHECK(m->specRbar.point_print(m->maps.phi.to[0]) == "(0,1)");
    CHECK(!m->prof_phi.injective);
    CHECK(m->prof_phi.surjective);
    CHECK(m->prof_phi.continuous);
}

TEST_CASE("annihilator-free instances keep psi_q verbatim") {
    auto m = model_of("INST-A"); // Ann(M) = 0, so the quotient is the identity copy
    REQUIRE(m->quotient.ring.size() == m->R->size());
    for (std::size_t i = 0; i < m->qpM.count(); ++i) {
        int t = m->maps.psi_q.to[static_cast<std::size_t>(i)];
        REQUIRE(t >= 0);
        CHECK(m->qpRbar.points[static_cast<std::size_t>(t)] == m->qpM.colons[i]);
    }
}

TEST_CASE("the natural map is a homeomorphism on the discrete instance") {
    auto m = model_of("INST-D");
    CHECK(m->prof_phi.injective);
    CHECK(m->prof_phi.surjective);
    CHECK(m->prof_phi.continuous);
    CHECK(m->prof_phi.closed_map);
    CHECK(m->prof_phi.open_map);
    CHECK(m->prof_phi.homeomorphism);
}

TEST_CASE("the product module collapses every point onto the zero prime") {
    auto m = model_of("INST-C");
    CHECK(!m->prof_phi.injective);
    CHECK(m->prof_phi.continuous);
    CHECK(m->prof_phi.surjective);
    REQUIRE(m->fibers.size() == 1);
    CHECK(m->fibers[0].second.count() == 4);
}

TEST_CASE("identity maps profile as homeomorphisms") {
    auto m = model_of("INST-D");
    SpectrumMap id;
    id.name = "id";
    id.src = id.dst = &m->qpM;
    id.src_topo = id.dst_topo = &m->qpM_topo;
    for (std::size_t i = 0; i < m->qpM.count(); ++i) id.to.push_back(static_cast<int>(i));
    MapProfile p = map_profile(id);
    CHECK(p.injective);
    CHECK(p.surjective);
    CHECK(p.continuous);
    CHECK(p.closed_map);
    CHECK(p.open_map);
    CHECK(p.homeomorphism);
}

TEST_CASE("phi_R is surjective, closed and open on every corpus instance") {
    for (const auto& d : builtin_corpus()) {
        CAPTURE(d.name);
        auto m = model_of(d.name.c_str());
        CHECK(m->maps.phi_r.well_defined());
        CHECK(m->prof_phi_r.surjective);
        CHECK(m->prof_phi_r.closed_map);
        CHECK(m->prof_phi_r.open_map);
        CHECK(m->prof_phi_r.continuous);
    }
}

TEST_CASE("both evaluation routes of the natural map agree everywhere") {
    for (const auto& d : builtin_corpus()) {
        CAPTURE(d.name);
        auto m = model_of(d.name.c_str());
        CHECK(m->maps.phi.well_defined());
        CHECK(m->maps.psi_q.well_defined());
        CHECK(m->maps.psi.well_defined());
        for (std::size_t i = 0; i < m->qpM.count(); ++i)
            CHECK(m->maps.phi.to[i] == m->maps.phi_via_composition[i]);
    }
}

TEST_CASE("fibers partition the qp spectrum over the graded primes") {
    for (const auto& d : builtin_corpus()) {
        CAPTURE(d.name);
        auto m = model_of(d.name.c_str());
        PointSubset seen(m->qpM.count());
        for (const auto& [p, fiber] : m->fibers) {
            CHECK(!seen.intersects(fiber));
            seen |= fiber;
        }
        CHECK(seen == ElementSet::full(m->qpM.count()));
    }
}

TEST_CASE("module profile: quasi-primaryful matches phi surjectivity") {
    auto d = model_of("INST-D");
    CHECK(d->mprof.quasi_primaryful);
    CHECK(d->prof_phi.surjective);

    auto c = model_of("INST-C");
    CHECK(c->mprof.quasi_primaryful); // the single prime (0)-bar is hit by every point

    auto z = model_of("INST-Z");
    CHECK(z->mprof.quasi_primaryful); // zero module, degenerate clause
    CHECK(z->qpM.count() == 0);
    CHECK(z->prof_phi.surjective); // empty map onto the empty spectrum of the zero ring

    for (const auto& desc : builtin_corpus()) {
        CAPTURE(desc.name);
        auto m = model_of(desc.name.c_str());
        CHECK(m->mprof.quasi_primaryful == m->prof_phi.surjective);
        CHECK(m->mprof.graded_primeful_module);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gzariski/corpus.hpp"
#include "oracle.hpp"

using namespace gz;

namespace {

GradedRing ring_of(const char* name) {
    const InstanceDesc* d = find_instance(name);
    REQUIRE(d != nullptr);
    auto r = GradedRing::validate(d->ring);
    REQUIRE(r.ok());
    return std::move(r.value());
}

Elem by_print(const GradedRing& r, const std::string& p) {
    for (Elem e = 0; e < r.size(); ++e)
        if (r.print(e) == p) return e;
    REQUIRE(false);
    return 0;
}

ElementSet set_of(const GradedRing& r, std::initializer_list<const char*> prints) {
    ElementSet s(r.size());
    for (const char* p : prints) s.set(by_print(r, p));
    return s;
}

std::vector<ElementSet> ideals_of(const GradedRing& r) {
    auto e = enumerate_graded_ideals(r);
    REQUIRE(e.ok());
    return std::move(e.value());
}

} // namespace

TEST_CASE("parity-graded nilpotent extension validates with all four elements") {
    GradedRing r = ring_of("INST-A");
    CHECK(r.size() == 4);
    CHECK(r.group().order() == 2);
    Elem one = r.one(), x = by_print(r, "0,1");
    CHECK(r.print(one) == "1,0");
    CHECK(r.mul(x, x) == r.zero());
    CHECK(r.mul(r.add(one, x), r.add(one, x)) == one); // (1+x)^2 = 1
    CHECK(r.is_homogeneous(x));
    CHECK(!r.is_homogeneous(r.add(one, x)));
}

TEST_CASE("trivially graded Z4 validates") {
    GradedRing r = ring_of("INST-B");
    CHECK(r.size() == 4);
    CHECK(r.homogeneous_list().size() == 4);
    CHECK(r.mul(by_print(r, "2"), by_print(r, "2")) == r.zero());
}

TEST_CASE("structure constants claiming the wrong component are rejected") {
    RingDesc d = find_instance("INST-A")->ring;
    d.mul.push_back({1, 1, 0, 0, {1}, 1}); // x*x redirected outside component e
    auto r = GradedRing::validate(d);
    REQUIRE(!r.ok());
    CHECK(r.defect().kind == DefectKind::grading_violation);
}

TEST_CASE("image tuple arity mismatches are grading violations") {
    RingDesc d = find_instance("INST-A")->ring;
    d.mul.push_back({1, 1, 0, 0, {1, 0}, -1}); // component e has one factor
    auto r = GradedRing::validate(d);
    REQUIRE(!r.ok());
    CHECK(r.defect().kind == DefectKind::grading_violation);
}

TEST_CASE("non-associative constants are rejected with a witness triple") {
    RingDesc d;
    d.group = GroupDesc::trivial();
    d.components = {{2, 2}};
    d.mul.push_back({0, 0, 0, 0, {0, 1}, -1}); // e1*e1 = e2
    d.mul.push_back({0, 0, 1, 1, {1, 0}, -1}); // e2*e2 = e1
    d.one_component = 0;
    d.one_tuple = {1, 0};
    auto r = GradedRing::validate(d);
    REQUIRE(!r.ok());
    CHECK(r.defect().kind == DefectKind::non_associative);
    CHECK(!r.defect().detail.empty());
}

TEST_CASE("asymmetric constants are rejected as non-commutative") {
    RingDesc d;
    d.group = GroupDesc::trivial();
    d.components = {{2, 2}};
    d.mul.push_back({0, 0, 0, 1, {1, 0}, -1});
    d.mul.push_back({0, 0, 1, 0, {0, 1}, -1});
    d.one_component = 0;
    d.one_tuple = {1, 0};
    auto r = GradedRing::validate(d);
    REQUIRE(!r.ok());
    CHECK(r.defect().kind == DefectKind::non_commutative);
}

TEST_CASE("an element that fails to act as identity is a bad unity") {
    RingDesc d = find_instance("INST-B")->ring;
    d.one_tuple = {0};
    auto r = GradedRing::validate(d);
    REQUIRE(!r.ok());
    CHECK(r.defect().kind == DefectKind::bad_unity);
}

TEST_CASE("order-incompatible constants are rejected before the element scans") {
    RingDesc d;
    d.group = GroupDesc::trivial();
    d.components = {{2, 4}};
    d.mul.push_back({0, 0, 0, 0, {0, 1}, -1}); // order-2 generator with an order-4 image
    d.one_component = 0;
    d.one_tuple = {1, 0};
    auto r = GradedRing::validate(d);
    REQUIRE(!r.ok());
    CHECK(r.defect().kind == DefectKind::ill_formed_constants);
}

TEST_CASE("homogeneous elements are exactly the single-component ones") {
    GradedRing a = ring_of("INST-A");
    CHECK(homogeneous_elements(a) == set_of(a, {"0,0", "0,1", "1,0"}));
    GradedRing b = ring_of("INST-B");
    CHECK(homogeneous_elements(b).count() == 4);
    for (const auto& d : builtin_corpus()) {
        GradedRing r = ring_of(d.name.c_str());
        CHECK(r.homogeneous_set().test(r.zero()));
        CHECK(r.homogeneous_set().test(r.one()));
    }
}

TEST_CASE("ideal generation closes under addition and ring multiplication") {
    GradedRing a = ring_of("INST-A");
    Elem x = by_print(a, "0,1");
    Elem gens[1] = {x};
    CHECK(ideal_generated_by(a, gens) == set_of(a, {"0,0", "0,1"}));
    CHECK(ideal_generated_by(a, std::span<const Elem>{}) == set_of(a, {"0,0"}));

    GradedRing b = ring_of("INST-B");
    Elem two[1] = {by_print(b, "2")};
    CHECK(ideal_generated_by(b, two) == set_of(b, {"0", "2"}));

    Elem mixed[1] = {a.add(a.one(), x)};
    CHECK_THROWS_AS((void)ideal_generated_by(a, mixed), PreconditionError);
}

TEST_CASE("graded ideal enumeration returns the canonical lattice") {
    GradedRing a = ring_of("INST-A");
    auto la = ideals_of(a);
    REQUIRE(la.size() == 3);
    CHECK(la[0] == set_of(a, {"0,0"}));
    CHECK(la[1] == set_of(a, {"0,0", "0,1"}));
    CHECK(la[2] == ElementSet::full(a.size()));

    GradedRing b = ring_of("INST-B");
    auto lb = ideals_of(b);
    REQUIRE(lb.size() == 3);
    CHECK(lb[1] == set_of(b, {"0", "2"}));

    GradedRing f2 = ring_of("INST-C");
    CHECK(ideals_of(f2).size() == 2);

    auto capped = enumerate_graded_ideals(b, 2);
    REQUIRE(!capped.ok());
    CHECK(capped.defect().kind == DefectKind::budget_exceeded);
}

TEST_CASE("graded radical matches the per-component power search") {
    GradedRing a = ring_of("INST-A");
    CHECK(graded_radical(a, set_of(a, {"0,0"})) == set_of(a, {"0,0", "0,1"}));
    GradedRing b = ring_of("INST-B");
    CHECK(graded_radical(b, set_of(b, {"0"})) == set_of(b, {"0", "2"}));
    for (const auto& d : builtin_corpus()) {
        GradedRing r = ring_of(d.name.c_str());
        CHECK(graded_radical(r, ElementSet::full(r.size())) == ElementSet::full(r.size()));
    }
}

TEST_CASE("ideal classification flags match the homogeneous definitions") {
    GradedRing a = ring_of("INST-A");
    auto la = ideals_of(a);
    IdealClass cx = classify_graded_ideal(a, set_of(a, {"0,0", "0,1"}), &la);
    CHECK(cx.proper);
    CHECK(cx.graded_prime);
    CHECK(cx.graded_quasi_primary);
    CHECK(cx.graded_maximal);
    IdealClass c0 = classify_graded_ideal(a, set_of(a, {"0,0"}), &la);
    CHECK(c0.proper);
    CHECK(!c0.graded_prime);        // x*x = 0
    CHECK(c0.graded_quasi_primary); // Gr((0)) = (x) is prime
    CHECK(!c0.graded_maximal);
    IdealClass cr = classify_graded_ideal(a, ElementSet::full(a.size()), &la);
    CHECK(!cr.proper);
    CHECK(!cr.graded_quasi_primary);

    GradedRing z6 = ring_of("INST-D");
    IdealClass z0 = classify_graded_ideal(z6, set_of(z6, {"0"}));
    CHECK(z0.proper);
    CHECK(!z0.graded_prime);         // 2*3 = 0
    CHECK(!z0.graded_quasi_primary); // Gr((0)) = (0) is not prime
}

TEST_CASE("quotients carry verified projections") {
    GradedRing b = ring_of("INST-B");
    auto q = quotient_ring(b, set_of(b, {"0", "2"}));
    REQUIRE(q.ok());
    CHECK(q.value().ring.size() == 2);
    ElementSet kernel(b.size());
    for (Elem e = 0; e < b.size(); ++e)
        if (q.value().project[e] == q.value().ring.zero()) kernel.set(e);
    CHECK(kernel == set_of(b, {"0", "2"}));

    ElementSet zero(b.size());
    zero.set(b.zero());
    auto qz = quotient_ring(b, zero);
    REQUIRE(qz.ok());
    CHECK(qz.value().ring.size() == b.size());
    for (Elem e = 0; e < b.size(); ++e) CHECK(qz.value().project[e] == e);

    GradedRing a = ring_of("INST-A");
    auto qa = quotient_ring(a, set_of(a, {"0,0", "0,1"}));
    REQUIRE(qa.ok());
    CHECK(qa.value().ring.size() == 2);
    CHECK(qa.value().ring.factors(0) == std::vector<int>{2});
    CHECK(qa.value().ring.factors(1) == std::vector<int>{1});

    auto improper = quotient_ring(a, ElementSet::full(a.size()));
    REQUIRE(!improper.ok());
    CHECK(improper.defect().kind == DefectKind::improper_ideal);

    RingQuotient total = quotient_ring_total(a, ElementSet::full(a.size()));
    CHECK(total.ring.size() == 1);
}

TEST_CASE("quotients with multi-factor components reduce through Smith form") {
    // F2[u]/(u^2) presented on two cyclic factors; quotient by (u) is F2.
    RingDesc d;
    d.group = GroupDesc::trivial();
    d.components = {{2, 2}};
    d.mul.push_back({0, 0, 0, 0, {1, 0}, -1}); // 1*1 = 1
    d.mul.push_back({0, 0, 0, 1, {0, 1}, -1}); // 1*u = u
    d.one_component = 0;
    d.one_tuple = {1, 0};
    auto r = GradedRing::validate(d);
    REQUIRE(r.ok());
    ElementSet u_ideal(r.value().size());
    u_ideal.set(r.value().zero());
    u_ideal.set(by_print(r.value(), "0,1"));
    auto q = quotient_ring(r.value(), u_ideal);
    REQUIRE(q.ok());
    CHECK(q.value().ring.size() == 2);

    // Z2 x Z4 as a product ring; quotient by the first factor is Z4.
    RingDesc p;
    p.group = GroupDesc::trivial();
    p.components = {{2, 4}};
    p.mul.push_back({0, 0, 0, 0, {1, 0}, -1}); // e1*e1 = e1
    p.mul.push_back({0, 0, 1, 1, {0, 1}, -1}); // e2*e2 = e2
    p.one_component = 0;
    p.one_tuple = {1, 1};
    auto rp = GradedRing::validate(p);
    REQUIRE(rp.ok());
    ElementSet e1_ideal(rp.value().size());
    e1_ideal.set(rp.value().zero());
    e1_ideal.set(by_print(rp.value(), "1,0"));
    auto qp = quotient_ring(rp.value(), e1_ideal);
    REQUIRE(qp.ok());
    CHECK(qp.value().ring.size() == 4);
    CHECK(qp.value().ring.factors(0) == std::vector<int>{4});
}

TEST_CASE("radical and lattice properties hold on every corpus ring") {
    for (const auto& d : builtin_corpus()) {
        CAPTURE(d.name);
        GradedRing r = ring_of(d.name.c_str());
        auto lattice = ideals_of(r);
        const ElementSet full = ElementSet::full(r.size());

        std::vector<ElementSet> radicals;
        std::vector<IdealClass> cls;
        for (const auto& ideal : lattice) {
            radicals.push_back(graded_radical(r, ideal));
            cls.push_back(classify_graded_ideal(r, ideal, &lattice));
        }
        auto find = [&](const ElementSet& s) {
            for (std::size_t i = 0; i < lattice.size(); ++i)
                if (lattice[i] == s) return static_cast<int>(i);
            return -1;
        };
        for (std::size_t i = 0; i < lattice.size(); ++i) {
            CHECK(lattice[i].subset_of(radicals[i]));
            CHECK(find(radicals[i]) >= 0);
            CHECK(graded_radical(r, radicals[i]) == radicals[i]);
            // Gr(I) is the intersection of the graded primes containing I,
            // the whole ring when there are none.
            ElementSet meet = full;
            for (std::size_t j = 0; j < lattice.size(); ++j)
                if (cls[j].graded_prime && lattice[i].subset_of(lattice[j])) meet &= lattice[j];
            CHECK(radicals[i] == meet);
            if (cls[i].graded_maximal) CHECK(cls[i].graded_prime);
            if (cls[i].graded_prime) CHECK(cls[i].graded_quasi_primary);
            for (std::size_t j = 0; j <= i; ++j) {
                CHECK(find(ideal_sum(r, lattice[i], lattice[j])) >= 0);
                CHECK(find(lattice[i] & lattice[j]) >= 0);
                CHECK(graded_radical(r, lattice[i] & lattice[j]) == (radicals[i] & radicals[j]));
            }
        }
    }
}

TEST_CASE("enumeration and radical agree with the brute-force oracle") {
    for (const auto& d : builtin_corpus()) {
        CAPTURE(d.name);
        GradedRing r = ring_of(d.name.c_str());
        REQUIRE(r.size() <= 64);
        auto lattice = ideals_of(r);
        auto reference = oracle::graded_ideals(r);
        CHECK(lattice == reference);
        for (const auto& ideal : lattice)
            CHECK(graded_radical(r, ideal) == oracle::graded_radical(r, ideal));
    }
}

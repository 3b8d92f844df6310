#include "gzariski/spectral_maps.hpp"

namespace gz {

bool SpectrumMap::well_defined() const {
    for (int t : to)
        if (t < 0) return false;
    return true;
}

PointSubset SpectrumMap::image(const PointSubset& y) const {
    PointSubset out(dst->count());
    y.for_each([&](Elem p) {
        if (to[p] >= 0) out.set(static_cast<Elem>(to[p]));
    });
    return out;
}

PointSubset SpectrumMap::preimage(const PointSubset& y) const {
    PointSubset out(src->count());
    for (std::size_t i = 0; i < to.size(); ++i)
        if (to[i] >= 0 && y.test(static_cast<Elem>(to[i]))) out.set(static_cast<Elem>(i));
    return out;
}

MapProfile map_profile(const SpectrumMap& f) {
    MapProfile p;
    if (!f.well_defined()) return p;

    p.injective = true;
    for (std::size_t i = 0; i < f.to.size() && p.injective; ++i)
        for (std::size_t j = i + 1; j < f.to.size(); ++j)
            if (f.to[i] == f.to[j]) {
                p.injective = false;
                break;
            }
    PointSubset img(f.dst->count());
    for (int t : f.to) img.set(static_cast<Elem>(t));
    p.surjective = img == ElementSet::full(f.dst->count());

    p.continuous = true;
    for (const auto& c : f.dst_topo->closed)
        if (!f.src_topo->is_closed(f.preimage(c))) {
            p.continuous = false;
            break;
        }
    p.closed_map = true;
    for (const auto& c : f.src_topo->closed)
        if (!f.dst_topo->is_closed(f.image(c))) {
            p.closed_map = false;
            break;
        }
    p.open_map = true;
    for (const auto& c : f.src_topo->closed)
        if (!f.dst_topo->is_open(f.image(c.complement()))) {
            p.open_map = false;
            break;
        }
    // For a bijection, continuity of the inverse is exactly closedness.
    p.homeomorphism = p.injective && p.surjective && p.continuous && p.closed_map;
    return p;
}

ElementSet push_ideal(const RingQuotient& q, const ElementSet& ideal) {
    ElementSet out(q.ring.size());
    ideal.for_each([&](Elem a) { out.set(q.project[a]); });
    return out;
}

NaturalMaps natural_maps(const GradedModule& m, const std::vector<ElementSet>& all_subs,
                         const RingQuotient& quotient,
                         const SpectrumSpace& qp_m, const FiniteTopology& qp_m_topo,
                         const SpectrumSpace& spec_m, const FiniteTopology& spec_m_topo,
                         const SpectrumSpace& qp_rbar, const FiniteTopology& qp_rbar_topo,
                         const SpectrumSpace& spec_rbar, const FiniteTopology& spec_rbar_topo) {
    NaturalMaps n;

    n.psi_q = {"psi_q", &qp_m, &qp_m_topo, &qp_rbar, &qp_rbar_topo, {}, {}};
    for (std::size_t i = 0; i < qp_m.count(); ++i) {
        ElementSet bar = push_ideal(quotient, qp_m.colons[i]);
        int t = qp_rbar.find_point(bar);
        if (t < 0)
            n.psi_q.defects.push_back("psi_q(" + qp_m.point_print(static_cast<int>(i)) +
                                      ") is not a graded quasi-primary ideal of the quotient");
        n.psi_q.to.push_back(t);
    }

    n.phi_r = {"phi_R", &qp_rbar, &qp_rbar_topo, &spec_rbar, &spec_rbar_topo, {}, {}};
    for (std::size_t i = 0; i < qp_rbar.count(); ++i) {
        int t = spec_rbar.find_point(qp_rbar.radicals[i]);
        if (t < 0)
            n.phi_r.defects.push_back("phi_R(" + qp_rbar.point_print(static_cast<int>(i)) +
                                      ") is not a graded prime ideal of the quotient");
        n.phi_r.to.push_back(t);
    }

    n.phi = {"phi", &qp_m, &qp_m_topo, &spec_rbar, &spec_rbar_topo, {}, {}};
    for (std::size_t i = 0; i < qp_m.count(); ++i) {
        ElementSet grm = graded_submodule_radical(m, qp_m.points[i], &all_subs);
        ElementSet bar = push_ideal(quotient, colon_ideal(m, grm));
        int t = spec_rbar.find_point(bar);
        if (t < 0)
            n.phi.defects.push_back("phi(" + qp_m.point_print(static_cast<int>(i)) +
                                    ") is not a graded prime ideal of the quotient");
        n.phi.to.push_back(t);
        int via = -1;
        if (n.psi_q.to[i] >= 0) via = n.phi_r.to[static_cast<std::size_t>(n.psi_q.to[i])];
        n.phi_via_composition.push_back(via);
    }

    n.psi = {"psi", &spec_m, &spec_m_topo, &spec_rbar, &spec_rbar_topo, {}, {}};
    for (std::size_t i = 0; i < spec_m.count(); ++i) {
        ElementSet bar = push_ideal(quotient, spec_m.colons[i]);
        int t = spec_rbar.find_point(bar);
        if (t < 0)
            n.psi.defects.push_back("psi(" + spec_m.point_print(static_cast<int>(i)) +
                                    ") is not a graded prime ideal of the quotient");
        n.psi.to.push_back(t);
    }
    return n;
}

ModuleProfile module_profile(const GradedModule& m, const std::vector<ElementSet>& ideals,
                             const std::vector<ElementSet>& subs, const SpectrumSpace& qp_m) {
    ModuleProfile p;
    if (m.is_zero_module()) {
        p.quasi_primaryful = true;
        p.graded_primeful_module = true;
        return p;
    }
    const GradedRing& r = m.ring();
    ElementSet ann = annihilator(m);

    p.quasi_primaryful = true;
    for (const auto& q : ideals) {
        if (!ann.subset_of(q) || q == ElementSet::full(r.size())) continue;
        ElementSet rad = graded_radical(r, q);
        if (!is_graded_prime_ideal(r, rad)) continue; // not quasi-primary
        bool hit = false;
        for (std::size_t i = 0; i < qp_m.count() && !hit; ++i)
            if (qp_m.radicals[i] == rad) hit = true;
        if (!hit) {
            p.quasi_primaryful = false;
            break;
        }
    }

    ClassifyContext ctx;
    ctx.ideals = &ideals;
    ctx.submodules = &subs;
    ElementSet zero(m.size());
    zero.set(m.zero());
    p.graded_primeful_module = classify_graded_submodule(m, zero, ctx).graded_primeful;
    return p;
}

} // namespace gz

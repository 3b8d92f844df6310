#include "gzariski/spectrum.hpp"

#include <algorithm>
#include <unordered_map>

namespace gz {

const char* space_kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::spec_ring: return "spec-ring";
        case SpaceKind::qpspec_ring: return "qp-ring";
        case SpaceKind::spec_module: return "spec-module";
        case SpaceKind::qpspec_module: return "qp-module";
    }
    return "?";
}

const char* semantics_name(RingQpSemantics s) {
    return s == RingQpSemantics::radical ? "radical" : "containment";
}

std::string SpectrumSpace::point_print(int i) const {
    if (module) return print_generators(*module, points[static_cast<std::size_t>(i)]);
    return print_generators(*ring, points[static_cast<std::size_t>(i)]);
}

std::string SpectrumSpace::subset_print(const PointSubset& y) const {
    std::vector<std::string> parts;
    y.for_each([&](Elem p) { parts.push_back(point_print(static_cast<int>(p))); });
    std::sort(parts.begin(), parts.end());
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ';';
        out += parts[i];
    }
    out += '}';
    return out;
}

int SpectrumSpace::find_point(const ElementSet& p) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == p) return static_cast<int>(i);
    return -1;
}

Expected<SpectrumSpace> build_spectrum(const GradedRing& r, const GradedModule* m, SpaceKind kind,
                                       const SpectrumOptions& opt) {
    SpectrumSpace sp;
    sp.kind = kind;
    sp.ring = &r;
    const bool module_kind = kind == SpaceKind::spec_module || kind == SpaceKind::qpspec_module;
    if (module_kind) {
        if (!m) throw PreconditionError("KindMismatch: module spectrum requested without a module");
        sp.module = m;
        auto subs = enumerate_graded_submodules(*m, opt.cap);
        if (!subs.ok()) return subs.defect();
        auto ideals = enumerate_graded_ideals(r, opt.cap);
        if (!ideals.ok()) return ideals.defect();
        std::vector<ElementSet> colons;
        std::vector<char> prime;
        for (const auto& k : subs.value()) {
            colons.push_back(colon_ideal(*m, k));
            prime.push_back(is_prime_submodule(*m, k) ? 1 : 0);
        }
        ClassifyContext ctx;
        ctx.ideals = &ideals.value();
        ctx.submodules = &subs.value();
        ctx.colons = &colons;
        ctx.prime = &prime;
        ctx.require_primeful = opt.require_primeful;
        const ElementSet full = ElementSet::full(m->size());
        for (std::size_t i = 0; i < subs.value().size(); ++i) {
            const ElementSet& k = subs.value()[i];
            bool in;
            if (kind == SpaceKind::spec_module) {
                in = k != full && prime[i];
            } else {
                in = classify_graded_submodule(*m, k, ctx).in_qp_spec;
            }
            if (in) {
                sp.points.push_back(k);
                sp.radicals.push_back(graded_radical(r, colons[i]));
                sp.colons.push_back(colons[i]);
            }
        }
    } else {
        auto ideals = enumerate_graded_ideals(r, opt.cap);
        if (!ideals.ok()) return ideals.defect();
        const ElementSet full = ElementSet::full(r.size());
        for (const auto& ideal : ideals.value()) {
            if (ideal == full) continue;
            ElementSet rad = graded_radical(r, ideal);
            bool in = kind == SpaceKind::spec_ring ? is_graded_prime_ideal(r, ideal)
                                                   : is_graded_prime_ideal(r, rad);
            if (in) {
                sp.points.push_back(ideal);
                sp.radicals.push_back(std::move(rad));
            }
        }
    }
    return sp;
}

PointSubset variety(const SpectrumSpace& space, const ElementSet& seed, RingQpSemantics sem) {
    PointSubset out(space.count());
    switch (space.kind) {
        case SpaceKind::spec_ring: {
            if (seed.universe() != space.ring->size()) throw PreconditionError("KindMismatch: seed is not an ideal");
            for (std::size_t i = 0; i < space.count(); ++i)
                if (seed.subset_of(space.points[i])) out.set(static_cast<Elem>(i));
            break;
        }
        case SpaceKind::qpspec_ring: {
            if (seed.universe() != space.ring->size()) throw PreconditionError("KindMismatch: seed is not an ideal");
            if (sem == RingQpSemantics::containment) {
                for (std::size_t i = 0; i < space.count(); ++i)
                    if (seed.subset_of(space.points[i])) out.set(static_cast<Elem>(i));
            } else {
                ElementSet rad = graded_radical(*space.ring, seed);
                for (std::size_t i = 0; i < space.count(); ++i)
                    if (rad.subset_of(space.radicals[i])) out.set(static_cast<Elem>(i));
            }
            break;
        }
        case SpaceKind::spec_module: {
            if (seed.universe() != space.module->size()) throw PreconditionError("KindMismatch: seed is not a submodule");
            ElementSet colon = colon_ideal(*space.module, seed);
            for (std::size_t i = 0; i < space.count(); ++i)
                if (colon.subset_of(space.colons[i])) out.set(static_cast<Elem>(i));
            break;
        }
        case SpaceKind::qpspec_module: {
            if (seed.universe() != space.module->size()) throw PreconditionError("KindMismatch: seed is not a submodule");
            ElementSet rad = graded_radical(*space.ring, colon_ideal(*space.module, seed));
            for (std::size_t i = 0; i < space.count(); ++i)
                if (rad.subset_of(space.radicals[i])) out.set(static_cast<Elem>(i));
            break;
        }
    }
    return out;
}

bool FiniteTopology::is_closed(const PointSubset& y) const {
    return std::find(closed.begin(), closed.end(), y) != closed.end();
}

bool FiniteTopology::is_open(const PointSubset& y) const { return is_closed(y.complement()); }

std::vector<PointSubset> FiniteTopology::open_sets() const {
    std::vector<PointSubset> out;
    out.reserve(closed.size());
    for (const auto& c : closed) out.push_back(c.complement());
    return out;
}

FiniteTopology build_topology(const SpectrumSpace& space, const std::vector<ElementSet>& seeds,
                              RingQpSemantics sem, const std::vector<ElementSet>* hom_cyclic) {
    FiniteTopology t;
    t.space = &space;
    t.semantics = sem;

    std::unordered_map<ElementSet, int, ElementSetHash> seen;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        PointSubset v = variety(space, seeds[i], sem);
        if (seen.emplace(v, static_cast<int>(i)).second) {
            t.closed.push_back(std::move(v));
            t.seed_of.push_back(static_cast<int>(i));
        }
    }
    // Canonical family order: by cardinality, then printed subset form.
    {
        std::vector<std::size_t> idx(t.closed.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::vector<std::string> key(t.closed.size());
        for (std::size_t i = 0; i < idx.size(); ++i) key[i] = space.subset_print(t.closed[i]);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            std::size_t ca = t.closed[a].count(), cb = t.closed[b].count();
            if (ca != cb) return ca < cb;
            return key[a] < key[b];
        });
        std::vector<PointSubset> c2;
        std::vector<int> s2;
        for (std::size_t i : idx) {
            c2.push_back(t.closed[i]);
            s2.push_back(t.seed_of[i]);
        }
        t.closed = std::move(c2);
        t.seed_of = std::move(s2);
    }

    const PointSubset empty(space.count());
    const PointSubset full = ElementSet::full(space.count());
    if (!t.is_closed(empty)) t.axiom_issues.push_back({"empty set not closed", ""});
    if (!t.is_closed(full)) t.axiom_issues.push_back({"full point set not closed", ""});
    for (std::size_t i = 0; i < t.closed.size() && t.axiom_issues.size() < 4; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            if (!t.is_closed(t.closed[i] | t.closed[j])) {
                t.axiom_issues.push_back({"union of closed sets not closed",
                                          space.subset_print(t.closed[i]) + "," + space.subset_print(t.closed[j])});
                break;
            }
            if (!t.is_closed(t.closed[i] & t.closed[j])) {
                t.axiom_issues.push_back({"intersection of closed sets not closed",
                                          space.subset_print(t.closed[i]) + "," + space.subset_print(t.closed[j])});
                break;
            }
        }

    // Basic opens, deduplicated in homogeneous canonical order.
    std::unordered_map<ElementSet, int, ElementSetHash> bseen;
    const auto& homs = space.ring->homogeneous_list();
    for (std::size_t hi = 0; hi < homs.size(); ++hi) {
        Elem r = homs[hi];
        PointSubset b = hom_cyclic ? variety(space, (*hom_cyclic)[hi], sem).complement()
                                   : basic_open(space, r, sem);
        if (bseen.emplace(b, static_cast<int>(t.basic.size())).second) {
            t.basic.push_back(std::move(b));
            t.basic_rep.push_back(r);
        }
    }
    return t;
}

PointSubset closure(const FiniteTopology& t, const PointSubset& y) {
    PointSubset acc = ElementSet::full(t.space->count());
    for (const auto& c : t.closed)
        if (y.subset_of(c)) acc &= c;
    return acc;
}

ElementSet intersection_of_points(const SpectrumSpace& space, const PointSubset& y) {
    ElementSet acc = ElementSet::full(space.carrier_size());
    y.for_each([&](Elem p) { acc &= space.points[p]; });
    return acc;
}

PointSubset basic_open(const SpectrumSpace& space, Elem r, RingQpSemantics sem) {
    if (!space.ring->is_homogeneous(r))
        throw PreconditionError("NonHomogeneous: " + space.ring->print(r));
    ElementSet seed;
    if (space.module) {
        std::vector<Elem> gens;
        for (Elem x : space.module->homogeneous_list()) {
            Elem p = space.module->act(r, x);
            if (p != space.module->zero()) gens.push_back(p);
        }
        seed = submodule_generated_by(*space.module, gens);
    } else {
        Elem gen[1] = {r};
        seed = ideal_generated_by(*space.ring, gen);
    }
    return variety(space, seed, sem).complement();
}

ElementSet zqp_radical(const SpectrumSpace& qp_module_space, const ElementSet& k) {
    if (qp_module_space.kind != SpaceKind::qpspec_module)
        throw PreconditionError("KindMismatch: Zqp radical needs the qp module spectrum");
    return intersection_of_points(qp_module_space, variety(qp_module_space, k));
}

bool is_zqp_radical_submodule(const SpectrumSpace& qp_module_space, const ElementSet& k) {
    return zqp_radical(qp_module_space, k) == k;
}

std::optional<std::vector<int>> basic_subcover(const FiniteTopology& t, const PointSubset& target) {
    std::vector<int> candidates;
    for (std::size_t i = 0; i < t.basic.size(); ++i)
        if (t.basic[i].subset_of(target)) candidates.push_back(static_cast<int>(i));
    PointSubset uncovered = target;
    std::vector<int> cover;
    while (uncovered.any()) {
        int best = -1;
        std::size_t gain = 0;
        for (int c : candidates) {
            std::size_t g = (t.basic[static_cast<std::size_t>(c)] & uncovered).count();
            if (g > gain) {
                gain = g;
                best = c;
            }
        }
        if (best < 0) return std::nullopt;
        cover.push_back(best);
        uncovered.subtract(t.basic[static_cast<std::size_t>(best)]);
    }
    return cover;
}

bool is_quasi_compact(const FiniteTopology& t, const PointSubset& open_set) {
    return basic_subcover(t, open_set).has_value();
}

bool is_irreducible_subset(const FiniteTopology& t, const PointSubset& y) {
    if (y.none()) return false;
    for (std::size_t i = 0; i < t.closed.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (y.subset_of(t.closed[i] | t.closed[j]) && !y.subset_of(t.closed[i]) && !y.subset_of(t.closed[j]))
                return false;
    return true;
}

TopologyProfile topology_profile(const FiniteTopology& t) {
    TopologyProfile p;
    const std::size_t n = t.space->count();
    const PointSubset full = ElementSet::full(n);

    std::vector<PointSubset> point_closure;
    point_closure.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        point_closure.push_back(closure(t, PointSubset::singleton(n, static_cast<Elem>(i))));

    p.is_t0 = true;
    for (std::size_t i = 0; i < n && p.is_t0; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (point_closure[i] == point_closure[j]) {
                p.is_t0 = false;
                break;
            }
    p.is_t1 = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!t.is_closed(PointSubset::singleton(n, static_cast<Elem>(i)))) {
            p.is_t1 = false;
            break;
        }

    p.is_connected = true;
    for (const auto& c : t.closed)
        if (c.any() && c != full && t.is_closed(c.complement())) {
            p.is_connected = false;
            break;
        }

    p.is_irreducible_space = is_irreducible_subset(t, full);

    for (const auto& c : t.closed)
        if (is_irreducible_subset(t, c)) p.irreducible_closed.push_back(c);

    for (const auto& c : p.irreducible_closed) {
        int best = -1;
        std::string best_key;
        c.for_each([&](Elem pt) {
            if (point_closure[pt] != c) return;
            std::string key = t.space->point_print(static_cast<int>(pt));
            if (best < 0 || key < best_key) {
                best = static_cast<int>(pt);
                best_key = key;
            }
        });
        p.generic_point.push_back(best);
    }

    for (const auto& c : p.irreducible_closed) {
        bool maximal = true;
        for (const auto& d : p.irreducible_closed)
            if (c != d && c.subset_of(d)) {
                maximal = false;
                break;
            }
        if (maximal) p.irreducible_components.push_back(c);
    }

    // Longest strictly descending chain in the closed family; finite by
    // construction, which is the whole content of the Noetherian check here.
    {
        std::vector<std::size_t> order(t.closed.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return t.closed[a].count() < t.closed[b].count(); });
        std::vector<int> depth(t.closed.size(), 1);
        int best = t.closed.empty() ? 0 : 1;
        for (std::size_t ii = 0; ii < order.size(); ++ii)
            for (std::size_t jj = 0; jj < ii; ++jj) {
                std::size_t i = order[ii], j = order[jj];
                if (t.closed[j] != t.closed[i] && t.closed[j].subset_of(t.closed[i]))
                    depth[i] = std::max(depth[i], depth[j] + 1);
                best = std::max(best, depth[i]);
            }
        p.longest_closed_chain = best;
        p.is_noetherian = true;
        p.note = "finite-instance:vacuously-true";
    }

    p.is_quasi_compact = is_quasi_compact(t, full);

    p.hochster_t0 = p.is_t0;
    p.hochster_quasi_compact = p.is_quasi_compact;
    p.hochster_qc_base = true;
    {
        std::vector<PointSubset> qc_opens;
        for (const auto& c : t.closed) {
            PointSubset u = c.complement();
            if (is_quasi_compact(t, u)) qc_opens.push_back(u);
        }
        for (const auto& a : qc_opens) {
            for (const auto& b : qc_opens) {
                PointSubset ab = a & b;
                if (!t.is_open(ab) || !is_quasi_compact(t, ab)) {
                    p.hochster_qc_base = false;
                    break;
                }
            }
            if (!p.hochster_qc_base) break;
        }
        if (p.hochster_qc_base)
            for (const auto& c : t.closed) {
                PointSubset u = c.complement();
                PointSubset acc(n);
                for (const auto& q : qc_opens)
                    if (q.subset_of(u)) acc |= q;
                if (acc != u) {
                    p.hochster_qc_base = false;
                    break;
                }
            }
    }
    p.hochster_generic_points = true;
    for (std::size_t i = 0; i < p.irreducible_closed.size(); ++i)
        if (p.generic_point[i] < 0) {
            p.hochster_generic_points = false;
            break;
        }
    p.is_spectral = p.hochster_t0 && p.hochster_quasi_compact && p.hochster_qc_base && p.hochster_generic_points;
    return p;
}

} // namespace gz

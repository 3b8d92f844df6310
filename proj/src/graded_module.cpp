#include "gzariski/graded_module.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace gz {

Elem GradedModule::from_residues(std::span<const int> res) const {
    Elem e = 0;
    for (int s = 0; s < slot_count(); ++s)
        e += static_cast<Elem>(res[static_cast<std::size_t>(s)]) * stride_[static_cast<std::size_t>(s)];
    return e;
}

Elem GradedModule::add_slow(Elem a, Elem b) const {
    Elem e = 0;
    for (int s = 0; s < slot_count(); ++s) {
        int m = slot_mod_[static_cast<std::size_t>(s)];
        int v = (residue(a, s) + residue(b, s)) % m;
        e += static_cast<Elem>(v) * stride_[static_cast<std::size_t>(s)];
    }
    return e;
}

Elem GradedModule::scalar(long long k, Elem a) const {
    Elem e = 0;
    for (int s = 0; s < slot_count(); ++s) {
        int m = slot_mod_[static_cast<std::size_t>(s)];
        long long v = (k * residue(a, s)) % m;
        if (v < 0) v += m;
        e += static_cast<Elem>(v) * stride_[static_cast<std::size_t>(s)];
    }
    return e;
}

Elem GradedModule::act_slow(Elem r, Elem m) const {
    Elem acc = 0;
    const int nr = ring_->slot_count();
    const int nm = slot_count();
    for (int s = 0; s < nr; ++s) {
        int ra = ring_->residue(r, s);
        if (ra == 0) continue;
        for (int t = 0; t < nm; ++t) {
            int rb = residue(m, t);
            if (rb == 0) continue;
            Elem basis = act_slot_[static_cast<std::size_t>(s) * nm + t];
            if (basis == 0) continue;
            acc = add_slow(acc, scalar(static_cast<long long>(ra) * rb, basis));
        }
    }
    return acc;
}

bool GradedModule::is_homogeneous(Elem e) const {
    int comp = -1;
    for (int s = 0; s < slot_count(); ++s)
        if (residue(e, s) != 0) {
            int g = slot_comp_[static_cast<std::size_t>(s)];
            if (comp >= 0 && comp != g) return false;
            comp = g;
        }
    return true;
}

int GradedModule::homogeneous_component(Elem e) const {
    for (int s = 0; s < slot_count(); ++s)
        if (residue(e, s) != 0) return slot_comp_[static_cast<std::size_t>(s)];
    return ring_->group().identity();
}

Elem GradedModule::component_part(Elem e, int g) const {
    Elem out = 0;
    for (int s = 0; s < slot_count(); ++s)
        if (slot_comp_[static_cast<std::size_t>(s)] == g)
            out += static_cast<Elem>(residue(e, s)) * stride_[static_cast<std::size_t>(s)];
    return out;
}

void GradedModule::build_caches() {
    neg_table_.resize(size_);
    for (Elem a = 0; a < size_; ++a) neg_table_[a] = scalar(-1, a);

    if (static_cast<std::uint64_t>(size_) * ring_->size() <= (std::uint64_t{1} << 20)) {
        add_table_.resize(static_cast<std::size_t>(size_) * size_);
        for (Elem a = 0; a < size_; ++a)
            for (Elem b = 0; b < size_; ++b) add_table_[static_cast<std::size_t>(a) * size_ + b] = add_slow(a, b);
        act_table_.resize(static_cast<std::size_t>(ring_->size()) * size_);
        for (Elem r = 0; r < ring_->size(); ++r)
            for (Elem m = 0; m < size_; ++m) act_table_[static_cast<std::size_t>(r) * size_ + m] = act_slow(r, m);
    }

    prints_.resize(size_);
    for (Elem a = 0; a < size_; ++a) {
        std::string p;
        for (int s = 0; s < slot_count(); ++s) {
            if (s) p += ',';
            p += std::to_string(residue(a, s));
        }
        prints_[a] = std::move(p);
    }
    canon_order_.resize(size_);
    std::iota(canon_order_.begin(), canon_order_.end(), 0u);
    std::sort(canon_order_.begin(), canon_order_.end(),
              [&](Elem x, Elem y) { return prints_[x] < prints_[y]; });
    hom_set_ = ElementSet(size_);
    for (Elem a : canon_order_)
        if (is_homogeneous(a)) {
            hom_list_.push_back(a);
            hom_set_.set(a);
        }
}

Expected<GradedModule> GradedModule::validate(const GradedRing& ring, const ModuleDesc& desc) {
    const FiniteGroup& G = ring.group();
    if (static_cast<int>(desc.components.size()) != G.order())
        return Defect{DefectKind::ill_formed_constants, "need one module component per group element"};

    GradedModule m;
    m.ring_ = &ring;
    m.factors_ = desc.components;
    std::uint64_t size = 1;
    for (int g = 0; g < G.order(); ++g) {
        const auto& fac = m.factors_[static_cast<std::size_t>(g)];
        if (fac.empty())
            return Defect{DefectKind::ill_formed_constants, "module component " + std::to_string(g) + " has no factors"};
        m.comp_first_slot_.push_back(static_cast<int>(m.slot_mod_.size()));
        for (int d : fac) {
            if (d < 1)
                return Defect{DefectKind::ill_formed_constants,
                              "cyclic order " + std::to_string(d) + " in module component " + std::to_string(g)};
            m.slot_comp_.push_back(g);
            m.slot_mod_.push_back(d);
            size *= static_cast<std::uint64_t>(d);
            if (size > desc.max_module_size)
                return Defect{DefectKind::budget_exceeded,
                              "module size exceeds cap " + std::to_string(desc.max_module_size)};
        }
    }
    m.size_ = static_cast<std::uint32_t>(size);
    const int nm = m.slot_count();
    m.stride_.assign(static_cast<std::size_t>(nm), 1);
    for (int s = nm - 2; s >= 0; --s)
        m.stride_[static_cast<std::size_t>(s)] =
            m.stride_[static_cast<std::size_t>(s) + 1] * static_cast<std::uint32_t>(m.slot_mod_[static_cast<std::size_t>(s) + 1]);

    const int nr = ring.slot_count();
    std::vector<char> given(static_cast<std::size_t>(nr) * nm, 0);
    m.act_slot_.assign(static_cast<std::size_t>(nr) * nm, 0);
    for (const auto& e : desc.act) {
        if (e.g < 0 || e.g >= G.order() || e.h < 0 || e.h >= G.order())
            return Defect{DefectKind::ill_formed_constants, "act entry references unknown component"};
        const auto& fg = ring.factors(e.g);
        const auto& fh = m.factors_[static_cast<std::size_t>(e.h)];
        if (e.i < 0 || e.i >= static_cast<int>(fg.size()) || e.j < 0 || e.j >= static_cast<int>(fh.size()))
            return Defect{DefectKind::ill_formed_constants, "act entry references unknown cyclic factor"};
        int gh = G.op(e.g, e.h);
        if (e.image_component >= 0 && e.image_component != gh)
            return Defect{DefectKind::grading_violation,
                          "action of component " + std::to_string(e.g) + " on " + std::to_string(e.h) +
                              " must land in module component " + std::to_string(gh)};
        const auto& fgh = m.factors_[static_cast<std::size_t>(gh)];
        if (e.image.size() != fgh.size())
            return Defect{DefectKind::grading_violation,
                          "action image arity " + std::to_string(e.image.size()) + " does not match module component " +
                              std::to_string(gh)};
        Elem img = 0;
        for (std::size_t t = 0; t < fgh.size(); ++t) {
            if (e.image[t] < 0 || e.image[t] >= fgh[t])
                return Defect{DefectKind::ill_formed_constants, "action image residue out of range"};
            img += static_cast<Elem>(e.image[t]) *
                   m.stride_[static_cast<std::size_t>(m.slot_of(gh, static_cast<int>(t)))];
        }
        int dg = fg[static_cast<std::size_t>(e.i)];
        int dh = fh[static_cast<std::size_t>(e.j)];
        if (dg == 1 || dh == 1) {
            if (img != 0)
                return Defect{DefectKind::ill_formed_constants, "nonzero action constant on an order-1 factor"};
            continue;
        }
        if (m.scalar(dg, img) != 0 || m.scalar(dh, img) != 0)
            return Defect{DefectKind::ill_formed_constants, "order incompatibility in action constant"};
        int s = ring.slot_of(e.g, e.i);
        int t = m.slot_of(e.h, e.j);
        if (given[static_cast<std::size_t>(s) * nm + t])
            return Defect{DefectKind::ill_formed_constants, "duplicate act entry"};
        given[static_cast<std::size_t>(s) * nm + t] = 1;
        m.act_slot_[static_cast<std::size_t>(s) * nm + t] = img;
    }

    m.build_caches();

    const std::uint32_t nM = m.size_;
    const std::uint32_t nR = ring.size();
    for (Elem r = 0; r < nR; ++r)
        for (Elem x = 0; x < nM; ++x) {
            for (Elem y = 0; y < nM; ++y)
                if (m.act(r, m.add(x, y)) != m.add(m.act(r, x), m.act(r, y)))
                    return Defect{DefectKind::ill_formed_constants,
                                  "action not distributive over module addition: r=" + ring.print(r) +
                                      " x=" + m.print(x) + " y=" + m.print(y)};
            for (Elem s = 0; s < nR; ++s)
                if (m.act(ring.add(r, s), x) != m.add(m.act(r, x), m.act(s, x)))
                    return Defect{DefectKind::ill_formed_constants,
                                  "action not distributive over ring addition: r=" + ring.print(r) +
                                      " s=" + ring.print(s) + " x=" + m.print(x)};
        }
    for (Elem r = 0; r < nR; ++r)
        for (Elem s = 0; s < nR; ++s) {
            Elem rs = ring.mul(r, s);
            for (Elem x = 0; x < nM; ++x)
                if (m.act(rs, x) != m.act(r, m.act(s, x)))
                    return Defect{DefectKind::action_not_associative,
                                  "r=" + ring.print(r) + " s=" + ring.print(s) + " x=" + m.print(x)};
        }
    for (Elem x = 0; x < nM; ++x)
        if (m.act(ring.one(), x) != x)
            return Defect{DefectKind::not_unital, "witness " + m.print(x)};
    for (Elem r : ring.homogeneous_list())
        for (Elem x : m.hom_list_) {
            Elem p = m.act(r, x);
            if (p == 0) continue;
            int gh = G.op(ring.homogeneous_component(r), m.homogeneous_component(x));
            if (!m.is_homogeneous(p) || m.homogeneous_component(p) != gh)
                return Defect{DefectKind::grading_violation,
                              "r=" + ring.print(r) + " x=" + m.print(x)};
        }
    return m;
}

GradedModule GradedModule::regular(const GradedRing& ring) {
    RingDesc rd = ring.to_desc();
    ModuleDesc md;
    md.components = rd.components;
    md.max_module_size = std::max<std::uint32_t>(rd.caps.max_ring_size, ring.size());
    for (const auto& e : rd.mul) {
        ActEntry a;
        a.g = e.g;
        a.h = e.h;
        a.i = e.i;
        a.j = e.j;
        a.image = e.image;
        md.act.push_back(std::move(a));
    }
    auto v = validate(ring, md);
    if (!v.ok()) throw InternalError("regular module construction failed: " + v.defect().to_string());
    return std::move(v.value());
}

ElementSet submodule_generated_by(const GradedModule& m, std::span<const Elem> gens) {
    for (Elem g : gens)
        if (!m.is_homogeneous(g))
            throw PreconditionError("NonHomogeneousGenerator: " + m.print(g));
    ElementSet s(m.size());
    s.set(m.zero());
    std::deque<Elem> work;
    auto push = [&](Elem e) {
        if (!s.test(e)) {
            s.set(e);
            work.push_back(e);
        }
    };
    for (Elem g : gens) push(g);
    while (!work.empty()) {
        Elem x = work.front();
        work.pop_front();
        for (Elem r = 0; r < m.ring().size(); ++r) push(m.act(r, x));
        std::vector<Elem> cur = s.members();
        for (Elem y : cur) push(m.add(x, y));
    }
    return s;
}

ElementSet submodule_sum(const GradedModule& m, const ElementSet& a, const ElementSet& b) {
    ElementSet out(m.size());
    a.for_each([&](Elem x) { b.for_each([&](Elem y) { out.set(m.add(x, y)); }); });
    return out;
}

Expected<std::vector<ElementSet>> enumerate_graded_submodules(const GradedModule& m, std::size_t cap) {
    std::vector<ElementSet> found;
    std::unordered_map<ElementSet, int, ElementSetHash> seen;
    auto add = [&](const ElementSet& s) -> bool {
        if (seen.emplace(s, static_cast<int>(found.size())).second) found.push_back(s);
        return found.size() <= cap;
    };
    ElementSet zero(m.size());
    zero.set(m.zero());
    add(zero);
    for (Elem h : m.homogeneous_list()) {
        Elem gen[1] = {h};
        if (!add(submodule_generated_by(m, gen)))
            return Defect{DefectKind::budget_exceeded, "graded submodule count exceeds cap"};
    }
    for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!add(submodule_sum(m, found[i], found[j])))
                return Defect{DefectKind::budget_exceeded, "graded submodule count exceeds cap"};

    std::vector<std::pair<std::string, std::size_t>> keys;
    keys.reserve(found.size());
    for (std::size_t i = 0; i < found.size(); ++i) keys.emplace_back(print_element_set(m, found[i]), i);
    std::sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
        std::size_t cx = found[x.second].count(), cy = found[y.second].count();
        if (cx != cy) return cx < cy;
        return x.first < y.first;
    });
    std::vector<ElementSet> out;
    out.reserve(found.size());
    for (auto& [k, i] : keys) out.push_back(found[i]);
    return out;
}

ElementSet colon_ideal(const GradedModule& m, const ElementSet& k) {
    ElementSet out(m.ring().size());
    for (Elem r = 0; r < m.ring().size(); ++r) {
        bool in = true;
        for (Elem x = 0; x < m.size() && in; ++x)
            if (!k.test(m.act(r, x))) in = false;
        if (in) out.set(r);
    }
    return out;
}

ElementSet annihilator(const GradedModule& m) {
    ElementSet zero(m.size());
    zero.set(m.zero());
    return colon_ideal(m, zero);
}

ElementSet ideal_times_module(const GradedModule& m, const ElementSet& ideal) {
    std::vector<Elem> gens;
    ideal.for_each([&](Elem a) {
        if (!m.ring().is_homogeneous(a)) return;
        for (Elem x : m.homogeneous_list()) {
            Elem p = m.act(a, x);
            if (p != m.zero()) gens.push_back(p);
        }
    });
    return submodule_generated_by(m, gens);
}

bool is_graded_submodule(const GradedModule& m, const ElementSet& s) {
    if (!s.test(m.zero())) return false;
    bool ok = true;
    s.for_each([&](Elem a) {
        if (!ok) return;
        s.for_each([&](Elem b) {
            if (!s.test(m.add(a, b))) ok = false;
        });
        if (!ok) return;
        for (Elem r = 0; r < m.ring().size(); ++r)
            if (!s.test(m.act(r, a))) {
                ok = false;
                return;
            }
        for (int g = 0; g < m.component_count(); ++g)
            if (!s.test(m.component_part(a, g))) {
                ok = false;
                return;
            }
    });
    return ok;
}

bool is_prime_submodule(const GradedModule& m, const ElementSet& k) {
    if (k == ElementSet::full(m.size())) return false;
    ElementSet colon = colon_ideal(m, k);
    for (Elem r : m.ring().homogeneous_list())
        for (Elem x : m.homogeneous_list())
            if (k.test(m.act(r, x)) && !k.test(x) && !colon.test(r)) return false;
    return true;
}

ElementSet graded_submodule_radical(const GradedModule& m, const ElementSet& k,
                                    const std::vector<ElementSet>* all_subs) {
    std::vector<ElementSet> enumerated;
    if (!all_subs) {
        auto e = enumerate_graded_submodules(m);
        if (!e.ok()) throw InternalError("submodule enumeration exceeded cap");
        enumerated = std::move(e.value());
        all_subs = &enumerated;
    }
    ElementSet out = ElementSet::full(m.size());
    for (const auto& p : *all_subs)
        if (k.subset_of(p) && is_prime_submodule(m, p)) out &= p;
    return out;
}

SubmoduleClass classify_graded_submodule(const GradedModule& m, const ElementSet& k,
                                         const ClassifyContext& ctx) {
    std::vector<ElementSet> sub_store;
    const std::vector<ElementSet>* subs = ctx.submodules;
    if (!subs) {
        auto e = enumerate_graded_submodules(m);
        if (!e.ok()) throw InternalError("submodule enumeration exceeded cap");
        sub_store = std::move(e.value());
        subs = &sub_store;
    }
    std::vector<ElementSet> ideal_store;
    const std::vector<ElementSet>* ideals = ctx.ideals;
    if (!ideals) {
        auto e = enumerate_graded_ideals(m.ring());
        if (!e.ok()) throw InternalError("ideal enumeration exceeded cap");
        ideal_store = std::move(e.value());
        ideals = &ideal_store;
    }

    SubmoduleClass c;
    const ElementSet full = ElementSet::full(m.size());
    c.proper = k != full;
    if (!c.proper) return c;

    // Optional memoized tables (parallel to *subs) shave the quadratic
    // colon recomputation off the primeful scan.
    auto colon_of = [&](std::size_t i) {
        return ctx.colons ? (*ctx.colons)[i] : colon_ideal(m, (*subs)[i]);
    };
    auto prime_of = [&](std::size_t i) {
        return ctx.prime ? (*ctx.prime)[i] != 0 : is_prime_submodule(m, (*subs)[i]);
    };

    ElementSet colon = colon_ideal(m, k);
    c.graded_prime = is_prime_submodule(m, k);

    ElementSet gr_colon = graded_radical(m.ring(), colon);
    ElementSet grm = full;
    for (std::size_t i = 0; i < subs->size(); ++i)
        if (k.subset_of((*subs)[i]) && prime_of(i)) grm &= (*subs)[i];
    c.graded_quasi_primary = true;
    for (Elem r : m.ring().homogeneous_list()) {
        for (Elem x : m.homogeneous_list())
            if (k.test(m.act(r, x)) && !gr_colon.test(r) && !grm.test(x)) {
                c.graded_quasi_primary = false;
                break;
            }
        if (!c.graded_quasi_primary) break;
    }

    c.graded_primeful = true;
    for (const auto& p : *ideals) {
        if (!colon.subset_of(p) || !is_graded_prime_ideal(m.ring(), p)) continue;
        bool realized = false;
        for (std::size_t i = 0; i < subs->size() && !realized; ++i)
            if (k.subset_of((*subs)[i]) && prime_of(i) && colon_of(i) == p) realized = true;
        if (!realized) {
            c.graded_primeful = false;
            break;
        }
    }

    c.maximal = true;
    for (const auto& j : *subs)
        if (k != j && j != full && k.subset_of(j)) {
            c.maximal = false;
            break;
        }

    c.in_qp_spec = c.proper && c.graded_quasi_primary && (c.graded_primeful || !ctx.require_primeful);
    return c;
}

bool is_multiplication_module(const GradedModule& m, const std::vector<ElementSet>* all_subs) {
    std::vector<ElementSet> store;
    if (!all_subs) {
        auto e = enumerate_graded_submodules(m);
        if (!e.ok()) throw InternalError("submodule enumeration exceeded cap");
        store = std::move(e.value());
        all_subs = &store;
    }
    for (const auto& k : *all_subs)
        if (ideal_times_module(m, colon_ideal(m, k)) != k) return false;
    return true;
}

std::vector<ElementSet> graded_maximal_submodules(const GradedModule& m,
                                                  const std::vector<ElementSet>* all_subs) {
    std::vector<ElementSet> store;
    if (!all_subs) {
        auto e = enumerate_graded_submodules(m);
        if (!e.ok()) throw InternalError("submodule enumeration exceeded cap");
        store = std::move(e.value());
        all_subs = &store;
    }
    const ElementSet full = ElementSet::full(m.size());
    std::vector<ElementSet> out;
    for (const auto& k : *all_subs) {
        if (k == full) continue;
        bool maximal = true;
        for (const auto& j : *all_subs)
            if (j != k && j != full && k.subset_of(j)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(k);
    }
    return out;
}

std::vector<Elem> min_homogeneous_generators(const GradedModule& m, const ElementSet& sub) {
    std::vector<Elem> gens;
    ElementSet cur(m.size());
    cur.set(m.zero());
    for (Elem h = 0; h < m.size(); ++h) {
        if (cur == sub) break;
        if (m.is_homogeneous(h) && sub.test(h) && !cur.test(h)) {
            gens.push_back(h);
            cur = submodule_generated_by(m, gens);
        }
    }
    return gens;
}

std::string print_element_set(const GradedModule& m, const ElementSet& s) {
    std::vector<std::string> parts;
    s.for_each([&](Elem e) { parts.push_back(m.print(e)); });
    std::sort(parts.begin(), parts.end());
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ';';
        out += parts[i];
    }
    out += '}';
    return out;
}

std::string print_generators(const GradedModule& m, const ElementSet& sub) {
    std::vector<Elem> gens = min_homogeneous_generators(m, sub);
    if (gens.empty()) return "(" + m.print(m.zero()) + ")";
    std::string out = "(";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) out += ';';
        out += m.print(gens[i]);
    }
    out += ')';
    return out;
}

} // namespace gz

#include "oracle.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace gz::oracle {

ElementSet additive_closure(std::uint32_t size, const AddFn& add, const std::vector<Elem>& seed) {
    ElementSet s(size);
    s.set(0);
    std::deque<Elem> work;
    for (Elem e : seed)
        if (!s.test(e)) {
            s.set(e);
            work.push_back(e);
        }
    while (!work.empty()) {
        Elem x = work.front();
        work.pop_front();
        std::vector<Elem> cur = s.members();
        for (Elem y : cur) {
            Elem z = add(x, y);
            if (!s.test(z)) {
                s.set(z);
                work.push_back(z);
            }
        }
    }
    return s;
}

std::vector<ElementSet> all_subgroups(std::uint32_t size, const AddFn& add) {
    std::vector<ElementSet> found;
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::deque<ElementSet> work;
    ElementSet zero(size);
    zero.set(0);
    seen.insert(zero);
    found.push_back(zero);
    work.push_back(zero);
    while (!work.empty()) {
        ElementSet s = work.front();
        work.pop_front();
        for (Elem e = 0; e < size; ++e) {
            if (s.test(e)) continue;
            std::vector<Elem> seed = s.members();
            seed.push_back(e);
            ElementSet bigger = additive_closure(size, add, seed);
            if (seen.insert(bigger).second) {
                found.push_back(bigger);
                work.push_back(bigger);
            }
        }
    }
    return found;
}

namespace {

// Same canonical order as the library enumerators so vectors compare directly.
template <class Carrier>
void canonical_sort(const Carrier& c, std::vector<ElementSet>& sets) {
    std::vector<std::pair<std::string, std::size_t>> keys;
    keys.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) keys.emplace_back(print_element_set(c, sets[i]), i);
    std::sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
        std::size_t cx = sets[x.second].count(), cy = sets[y.second].count();
        if (cx != cy) return cx < cy;
        return x.first < y.first;
    });
    std::vector<ElementSet> out;
    out.reserve(sets.size());
    for (auto& [k, i] : keys) out.push_back(sets[i]);
    sets = std::move(out);
}

} // namespace

std::vector<ElementSet> graded_ideals(const GradedRing& r) {
    auto subgroups = all_subgroups(r.size(), [&](Elem a, Elem b) { return r.add(a, b); });
    std::vector<ElementSet> out;
    for (const auto& s : subgroups) {
        bool ok = true;
        s.for_each([&](Elem a) {
            if (!ok) return;
            for (Elem x = 0; x < r.size(); ++x)
                if (!s.test(r.mul(x, a))) {
                    ok = false;
                    return;
                }
            for (int g = 0; g < r.component_count(); ++g)
                if (!s.test(r.component_part(a, g))) {
                    ok = false;
                    return;
                }
        });
        if (ok) out.push_back(s);
    }
    canonical_sort(r, out);
    return out;
}

std::vector<ElementSet> graded_submodules(const GradedModule& m) {
    auto subgroups = all_subgroups(m.size(), [&](Elem a, Elem b) { return m.add(a, b); });
    std::vector<ElementSet> out;
    for (const auto& s : subgroups) {
        bool ok = true;
        s.for_each([&](Elem a) {
            if (!ok) return;
            for (Elem x = 0; x < m.ring().size(); ++x)
                if (!s.test(m.act(x, a))) {
                    ok = false;
                    return;
                }
            for (int g = 0; g < m.component_count(); ++g)
                if (!s.test(m.component_part(a, g))) {
                    ok = false;
                    return;
                }
        });
        if (ok) out.push_back(s);
    }
    canonical_sort(m, out);
    return out;
}

ElementSet graded_radical(const GradedRing& r, const ElementSet& ideal) {
    auto hom_power_in = [&](Elem h) {
        Elem cur = h;
        for (std::uint32_t n = 0; n < r.size(); ++n) {
            if (ideal.test(cur)) return true;
            cur = r.mul(cur, h);
        }
        return false;
    };
    ElementSet out(r.size());
    for (Elem a = 0; a < r.size(); ++a) {
        bool in = true;
        for (int g = 0; g < r.component_count() && in; ++g)
            if (!hom_power_in(r.component_part(a, g))) in = false;
        if (in) out.set(a);
    }
    return out;
}

} // namespace gz::oracle

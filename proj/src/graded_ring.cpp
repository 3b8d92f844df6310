#include "gzariski/graded_ring.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace gz {
namespace {

constexpr std::uint32_t kTableLimit = 1024; // full op tables below this size

std::string witness2(const GradedRing& r, Elem a, Elem b) {
    return "a=" + r.print(a) + " b=" + r.print(b);
}
std::string witness3(const GradedRing& r, Elem a, Elem b, Elem c) {
    return witness2(r, a, b) + " c=" + r.print(c);
}

} // namespace

Elem GradedRing::from_residues(std::span<const int> res) const {
    Elem e = 0;
    for (int s = 0; s < slot_count(); ++s)
        e += static_cast<Elem>(res[static_cast<std::size_t>(s)]) * stride_[static_cast<std::size_t>(s)];
    return e;
}

Elem GradedRing::add_slow(Elem a, Elem b) const {
    Elem e = 0;
    for (int s = 0; s < slot_count(); ++s) {
        int m = slot_mod_[static_cast<std::size_t>(s)];
        int v = (residue(a, s) + residue(b, s)) % m;
        e += static_cast<Elem>(v) * stride_[static_cast<std::size_t>(s)];
    }
    return e;
}

Elem GradedRing::scalar(long long k, Elem a) const {
    Elem e = 0;
    for (int s = 0; s < slot_count(); ++s) {
        int m = slot_mod_[static_cast<std::size_t>(s)];
        long long v = (k * residue(a, s)) % m;
        if (v < 0) v += m;
        e += static_cast<Elem>(v) * stride_[static_cast<std::size_t>(s)];
    }
    return e;
}

Elem GradedRing::mul_slow(Elem a, Elem b) const {
    Elem acc = 0;
    const int ns = slot_count();
    for (int s = 0; s < ns; ++s) {
        int ra = residue(a, s);
        if (ra == 0) continue;
        for (int t = 0; t < ns; ++t) {
            int rb = residue(b, t);
            if (rb == 0) continue;
            Elem basis = mul_slot_[static_cast<std::size_t>(s) * ns + t];
            if (basis == 0) continue;
            acc = add_slow(acc, scalar(static_cast<long long>(ra) * rb, basis));
        }
    }
    return acc;
}

bool GradedRing::is_homogeneous(Elem e) const {
    int comp = -1;
    for (int s = 0; s < slot_count(); ++s)
        if (residue(e, s) != 0) {
            int g = slot_comp_[static_cast<std::size_t>(s)];
            if (comp >= 0 && comp != g) return false;
            comp = g;
        }
    return true;
}

int GradedRing::homogeneous_component(Elem e) const {
    for (int s = 0; s < slot_count(); ++s)
        if (residue(e, s) != 0) return slot_comp_[static_cast<std::size_t>(s)];
    return group_.identity();
}

Elem GradedRing::component_part(Elem e, int g) const {
    Elem out = 0;
    for (int s = 0; s < slot_count(); ++s)
        if (slot_comp_[static_cast<std::size_t>(s)] == g)
            out += static_cast<Elem>(residue(e, s)) * stride_[static_cast<std::size_t>(s)];
    return out;
}

void GradedRing::build_caches() {
    neg_table_.resize(size_);
    for (Elem a = 0; a < size_; ++a) neg_table_[a] = scalar(-1, a);

    if (size_ <= kTableLimit) {
        add_table_.resize(static_cast<std::size_t>(size_) * size_);
        mul_table_.resize(static_cast<std::size_t>(size_) * size_);
        for (Elem a = 0; a < size_; ++a)
            for (Elem b = 0; b < size_; ++b) {
                add_table_[static_cast<std::size_t>(a) * size_ + b] = add_slow(a, b);
                mul_table_[static_cast<std::size_t>(a) * size_ + b] = mul_slow(a, b);
            }
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

Expected<GradedRing> GradedRing::validate(const RingDesc& desc) {
    auto grp = FiniteGroup::validate(desc.group);
    if (!grp.ok()) return grp.defect();
    const FiniteGroup& G = grp.value();
    if (G.order() > desc.caps.max_group_order)
        return Defect{DefectKind::budget_exceeded,
                      "group order " + std::to_string(G.order()) + " exceeds cap " + std::to_string(desc.caps.max_group_order)};
    if (static_cast<int>(desc.components.size()) != G.order())
        return Defect{DefectKind::ill_formed_constants, "need one component per group element"};

    GradedRing r;
    r.group_ = G;
    r.factors_ = desc.components;
    std::uint64_t size = 1;
    for (int g = 0; g < G.order(); ++g) {
        const auto& fac = r.factors_[static_cast<std::size_t>(g)];
        if (fac.empty())
            return Defect{DefectKind::ill_formed_constants, "component " + std::to_string(g) + " has no factors"};
        r.comp_first_slot_.push_back(static_cast<int>(r.slot_mod_.size()));
        for (int d : fac) {
            if (d < 1)
                return Defect{DefectKind::ill_formed_constants,
                              "cyclic order " + std::to_string(d) + " in component " + std::to_string(g)};
            r.slot_comp_.push_back(g);
            r.slot_mod_.push_back(d);
            size *= static_cast<std::uint64_t>(d);
            if (size > desc.caps.max_ring_size)
                return Defect{DefectKind::budget_exceeded,
                              "ring size exceeds cap " + std::to_string(desc.caps.max_ring_size)};
        }
    }
    r.size_ = static_cast<std::uint32_t>(size);

    const int ns = r.slot_count();
    r.stride_.assign(static_cast<std::size_t>(ns), 1);
    for (int s = ns - 2; s >= 0; --s)
        r.stride_[static_cast<std::size_t>(s)] =
            r.stride_[static_cast<std::size_t>(s) + 1] * static_cast<std::uint32_t>(r.slot_mod_[static_cast<std::size_t>(s) + 1]);

    // Structure constants on generator pairs; the missing orientation of a
    // commutative product is filled in from the given one.
    std::vector<char> given(static_cast<std::size_t>(ns) * ns, 0);
    r.mul_slot_.assign(static_cast<std::size_t>(ns) * ns, 0);
    for (const auto& e : desc.mul) {
        if (e.g < 0 || e.g >= G.order() || e.h < 0 || e.h >= G.order())
            return Defect{DefectKind::ill_formed_constants, "mul entry references unknown component"};
        const auto& fg = r.factors_[static_cast<std::size_t>(e.g)];
        const auto& fh = r.factors_[static_cast<std::size_t>(e.h)];
        if (e.i < 0 || e.i >= static_cast<int>(fg.size()) || e.j < 0 || e.j >= static_cast<int>(fh.size()))
            return Defect{DefectKind::ill_formed_constants, "mul entry references unknown cyclic factor"};
        int gh = G.op(e.g, e.h);
        if (e.image_component >= 0 && e.image_component != gh)
            return Defect{DefectKind::grading_violation,
                          "product of components " + std::to_string(e.g) + "," + std::to_string(e.h) +
                              " must land in component " + std::to_string(gh)};
        const auto& fgh = r.factors_[static_cast<std::size_t>(gh)];
        if (e.image.size() != fgh.size())
            return Defect{DefectKind::grading_violation,
                          "image tuple arity " + std::to_string(e.image.size()) + " does not match component " +
                              std::to_string(gh)};
        Elem img = 0;
        for (std::size_t t = 0; t < fgh.size(); ++t) {
            if (e.image[t] < 0 || e.image[t] >= fgh[t])
                return Defect{DefectKind::ill_formed_constants, "image residue out of range"};
            img += static_cast<Elem>(e.image[t]) *
                   r.stride_[static_cast<std::size_t>(r.slot_of(gh, static_cast<int>(t)))];
        }
        int dg = fg[static_cast<std::size_t>(e.i)];
        int dh = fh[static_cast<std::size_t>(e.j)];
        if (dg == 1 || dh == 1) {
            if (img != 0)
                return Defect{DefectKind::ill_formed_constants, "nonzero constant on an order-1 factor"};
            continue;
        }
        // Bilinear extension is well-defined only if the image is killed by
        // both generator orders.
        if (r.scalar(dg, img) != 0 || r.scalar(dh, img) != 0)
            return Defect{DefectKind::ill_formed_constants,
                          "order incompatibility: image of (" + std::to_string(e.g) + "." + std::to_string(e.i) +
                              ")*(" + std::to_string(e.h) + "." + std::to_string(e.j) + ") not annihilated by generator orders"};
        int s = r.slot_of(e.g, e.i);
        int t = r.slot_of(e.h, e.j);
        if (given[static_cast<std::size_t>(s) * ns + t])
            return Defect{DefectKind::ill_formed_constants, "duplicate mul entry"};
        given[static_cast<std::size_t>(s) * ns + t] = 1;
        r.mul_slot_[static_cast<std::size_t>(s) * ns + t] = img;
    }
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < ns; ++t)
            if (!given[static_cast<std::size_t>(s) * ns + t] && given[static_cast<std::size_t>(t) * ns + s])
                r.mul_slot_[static_cast<std::size_t>(s) * ns + t] = r.mul_slot_[static_cast<std::size_t>(t) * ns + s];

    if (desc.one_component < 0 || desc.one_component >= G.order())
        return Defect{DefectKind::bad_unity, "unity references unknown component"};
    if (desc.one_component != G.identity())
        return Defect{DefectKind::bad_unity, "unity must lie in the identity component"};
    const auto& fe = r.factors_[static_cast<std::size_t>(G.identity())];
    if (desc.one_tuple.size() != fe.size())
        return Defect{DefectKind::bad_unity, "unity tuple arity mismatch"};
    r.one_ = 0;
    for (std::size_t t = 0; t < fe.size(); ++t) {
        if (desc.one_tuple[t] < 0 || desc.one_tuple[t] >= fe[t])
            return Defect{DefectKind::bad_unity, "unity residue out of range"};
        r.one_ += static_cast<Elem>(desc.one_tuple[t]) *
                  r.stride_[static_cast<std::size_t>(r.slot_of(G.identity(), static_cast<int>(t)))];
    }

    r.build_caches();

    const std::uint32_t n = r.size_;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = a; b < n; ++b)
            if (r.mul(a, b) != r.mul(b, a))
                return Defect{DefectKind::non_commutative, witness2(r, a, b)};
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            Elem ab = r.mul(a, b);
            for (Elem c = 0; c < n; ++c)
                if (r.mul(ab, c) != r.mul(a, r.mul(b, c)))
                    return Defect{DefectKind::non_associative, witness3(r, a, b, c)};
        }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            Elem ab = r.add(a, b);
            for (Elem c = 0; c < n; ++c)
                if (r.mul(c, ab) != r.add(r.mul(c, a), r.mul(c, b)))
                    return Defect{DefectKind::ill_formed_constants,
                                  "distributivity failed: " + witness3(r, a, b, c)};
        }
    for (Elem a = 0; a < n; ++a)
        if (r.mul(r.one_, a) != a || r.mul(a, r.one_) != a)
            return Defect{DefectKind::bad_unity, "witness " + r.print(a)};
    for (Elem a : r.hom_list_)
        for (Elem b : r.hom_list_) {
            Elem p = r.mul(a, b);
            if (p == 0) continue;
            int gh = r.group_.op(r.homogeneous_component(a), r.homogeneous_component(b));
            if (!r.is_homogeneous(p) || r.homogeneous_component(p) != gh)
                return Defect{DefectKind::grading_violation, witness2(r, a, b)};
        }

    return r;
}

RingDesc GradedRing::to_desc() const {
    RingDesc d;
    d.group.order = group_.order();
    d.group.identity = group_.identity();
    d.group.table.assign(static_cast<std::size_t>(group_.order()), std::vector<int>(static_cast<std::size_t>(group_.order())));
    for (int a = 0; a < group_.order(); ++a)
        for (int b = 0; b < group_.order(); ++b)
            d.group.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = group_.op(a, b);
    d.components = factors_;
    const int ns = slot_count();
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < ns; ++t) {
            Elem img = mul_slot_[static_cast<std::size_t>(s) * ns + t];
            if (img == 0) continue;
            MulEntry e;
            e.g = slot_comp_[static_cast<std::size_t>(s)];
            e.h = slot_comp_[static_cast<std::size_t>(t)];
            e.i = s - comp_first_slot_[static_cast<std::size_t>(e.g)];
            e.j = t - comp_first_slot_[static_cast<std::size_t>(e.h)];
            int gh = group_.op(e.g, e.h);
            for (std::size_t f = 0; f < factors_[static_cast<std::size_t>(gh)].size(); ++f)
                e.image.push_back(residue(img, slot_of(gh, static_cast<int>(f))));
            d.mul.push_back(std::move(e));
        }
    d.one_component = group_.identity();
    for (std::size_t f = 0; f < factors_[static_cast<std::size_t>(group_.identity())].size(); ++f)
        d.one_tuple.push_back(residue(one_, slot_of(group_.identity(), static_cast<int>(f))));
    return d;
}

ElementSet ideal_generated_by(const GradedRing& r, std::span<const Elem> gens) {
    for (Elem g : gens)
        if (!r.is_homogeneous(g))
            throw PreconditionError("NonHomogeneousGenerator: " + r.print(g));

    ElementSet s(r.size());
    s.set(r.zero());
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
        for (Elem a = 0; a < r.size(); ++a) push(r.mul(a, x));
        std::vector<Elem> cur = s.members();
        for (Elem y : cur) push(r.add(x, y));
    }
    return s;
}

ElementSet ideal_sum(const GradedRing& r, const ElementSet& a, const ElementSet& b) {
    ElementSet out(r.size());
    a.for_each([&](Elem x) { b.for_each([&](Elem y) { out.set(r.add(x, y)); }); });
    return out;
}

Expected<std::vector<ElementSet>> enumerate_graded_ideals(const GradedRing& r, std::size_t cap) {
    std::vector<ElementSet> found;
    std::unordered_map<ElementSet, int, ElementSetHash> seen;
    auto add = [&](const ElementSet& s) -> bool {
        if (seen.emplace(s, static_cast<int>(found.size())).second) found.push_back(s);
        return found.size() <= cap;
    };

    ElementSet zero(r.size());
    zero.set(r.zero());
    add(zero);
    for (Elem h : r.homogeneous_list()) {
        Elem gen[1] = {h};
        if (!add(ideal_generated_by(r, gen)))
            return Defect{DefectKind::budget_exceeded, "graded ideal count exceeds cap"};
    }
    for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!add(ideal_sum(r, found[i], found[j])))
                return Defect{DefectKind::budget_exceeded, "graded ideal count exceeds cap"};

    std::vector<std::pair<std::string, std::size_t>> keys;
    keys.reserve(found.size());
    for (std::size_t i = 0; i < found.size(); ++i) keys.emplace_back(print_element_set(r, found[i]), i);
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

namespace {

// Does some power of the homogeneous element h land in I? The power sequence
// cycles inside a finite ring, so the first repeated value is a sound stop.
bool power_in(const GradedRing& r, Elem h, const ElementSet& ideal) {
    ElementSet seen(r.size());
    Elem cur = h;
    while (true) {
        if (ideal.test(cur)) return true;
        if (seen.test(cur)) return false;
        seen.set(cur);
        cur = r.mul(cur, h);
    }
}

} // namespace

ElementSet graded_radical(const GradedRing& r, const ElementSet& ideal) {
    std::vector<char> hom_rad(r.size(), 0);
    for (Elem h : r.homogeneous_list()) hom_rad[h] = power_in(r, h, ideal) ? 1 : 0;
    ElementSet out(r.size());
    for (Elem a = 0; a < r.size(); ++a) {
        bool in = true;
        for (int g = 0; g < r.component_count() && in; ++g)
            if (!hom_rad[r.component_part(a, g)]) in = false;
        if (in) out.set(a);
    }
    return out;
}

bool is_graded_ideal(const GradedRing& r, const ElementSet& s) {
    if (!s.test(r.zero())) return false;
    bool ok = true;
    s.for_each([&](Elem a) {
        if (!ok) return;
        s.for_each([&](Elem b) {
            if (!s.test(r.add(a, b))) ok = false;
        });
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
    return ok;
}

bool is_graded_prime_ideal(const GradedRing& r, const ElementSet& s) {
    if (s == ElementSet::full(r.size())) return false;
    for (Elem a : r.homogeneous_list())
        for (Elem b : r.homogeneous_list())
            if (s.test(r.mul(a, b)) && !s.test(a) && !s.test(b)) return false;
    return true;
}

bool is_nilpotent(const GradedRing& r, Elem a) {
    ElementSet zero(r.size());
    zero.set(r.zero());
    return power_in(r, a, zero);
}

bool is_unit(const GradedRing& r, Elem a) {
    for (Elem b = 0; b < r.size(); ++b)
        if (r.mul(a, b) == r.one()) return true;
    return false;
}

IdealClass classify_graded_ideal(const GradedRing& r, const ElementSet& ideal,
                                 const std::vector<ElementSet>* all_ideals) {
    IdealClass c;
    const ElementSet full = ElementSet::full(r.size());
    c.proper = ideal != full;

    const auto& homs = r.homogeneous_list();
    auto prime_of = [&](const ElementSet& s) {
        if (s == full) return false;
        for (Elem a : homs)
            for (Elem b : homs)
                if (s.test(r.mul(a, b)) && !s.test(a) && !s.test(b)) return false;
        return true;
    };
    c.graded_prime = c.proper && prime_of(ideal);

    ElementSet rad = graded_radical(r, ideal);
    bool qp_pairs = c.proper;
    if (qp_pairs)
        for (Elem a : homs) {
            for (Elem b : homs)
                if (ideal.test(r.mul(a, b)) && !rad.test(a) && !rad.test(b)) {
                    qp_pairs = false;
                    break;
                }
            if (!qp_pairs) break;
        }
    bool qp_radical_route = c.proper && prime_of(rad);
    if (qp_pairs != qp_radical_route)
        throw InternalError("quasi-primary routes disagree on " + print_element_set(r, ideal));
    c.graded_quasi_primary = qp_pairs;

    std::vector<ElementSet> enumerated;
    const std::vector<ElementSet>* lattice = all_ideals;
    if (!lattice) {
        auto e = enumerate_graded_ideals(r);
        if (!e.ok()) throw InternalError("ideal enumeration exceeded cap during classification");
        enumerated = std::move(e.value());
        lattice = &enumerated;
    }
    c.graded_maximal = c.proper;
    if (c.graded_maximal)
        for (const auto& j : *lattice)
            if (ideal != j && j != full && ideal.subset_of(j)) {
                c.graded_maximal = false;
                break;
            }
    return c;
}

std::vector<Elem> min_homogeneous_generators(const GradedRing& r, const ElementSet& ideal) {
    std::vector<Elem> gens;
    ElementSet cur(r.size());
    cur.set(r.zero());
    for (Elem h = 0; h < r.size(); ++h) {
        if (cur == ideal) break;
        if (r.is_homogeneous(h) && ideal.test(h) && !cur.test(h)) {
            gens.push_back(h);
            cur = ideal_generated_by(r, gens);
        }
    }
    return gens;
}

std::string print_element_set(const GradedRing& r, const ElementSet& s) {
    std::vector<std::string> parts;
    s.for_each([&](Elem e) { parts.push_back(r.print(e)); });
    std::sort(parts.begin(), parts.end());
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ';';
        out += parts[i];
    }
    out += '}';
    return out;
}

std::string print_generators(const GradedRing& r, const ElementSet& ideal) {
    std::vector<Elem> gens = min_homogeneous_generators(r, ideal);
    if (gens.empty()) return "(" + r.print(r.zero()) + ")";
    std::string out = "(";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) out += ';';
        out += r.print(gens[i]);
    }
    out += ')';
    return out;
}

namespace {

// Smith normal form of a k x n integer matrix, tracking U and U^-1 with
// U*A*V = D. Entries stay tiny at the sizes seen here; int64 is ample.
struct Snf {
    int k = 0;
    std::vector<long long> diag;
    std::vector<long long> U, Uinv;
};

Snf smith(std::vector<long long> A, int k, int n) {
    Snf s;
    s.k = k;
    s.U.assign(static_cast<std::size_t>(k) * k, 0);
    s.Uinv.assign(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) s.U[static_cast<std::size_t>(i) * k + i] = s.Uinv[static_cast<std::size_t>(i) * k + i] = 1;

    auto a = [&](int i, int j) -> long long& { return A[static_cast<std::size_t>(i) * n + j]; };
    auto row_addmul = [&](int dst, int src, long long c) {
        for (int j = 0; j < n; ++j) a(dst, j) += c * a(src, j);
        for (int j = 0; j < k; ++j) s.U[static_cast<std::size_t>(dst) * k + j] += c * s.U[static_cast<std::size_t>(src) * k + j];
        for (int i = 0; i < k; ++i) s.Uinv[static_cast<std::size_t>(i) * k + src] -= c * s.Uinv[static_cast<std::size_t>(i) * k + dst];
    };
    auto row_swap = [&](int x, int y) {
        for (int j = 0; j < n; ++j) std::swap(a(x, j), a(y, j));
        for (int j = 0; j < k; ++j) std::swap(s.U[static_cast<std::size_t>(x) * k + j], s.U[static_cast<std::size_t>(y) * k + j]);
        for (int i = 0; i < k; ++i) std::swap(s.Uinv[static_cast<std::size_t>(i) * k + x], s.Uinv[static_cast<std::size_t>(i) * k + y]);
    };
    auto row_negate = [&](int x) {
        for (int j = 0; j < n; ++j) a(x, j) = -a(x, j);
        for (int j = 0; j < k; ++j) s.U[static_cast<std::size_t>(x) * k + j] = -s.U[static_cast<std::size_t>(x) * k + j];
        for (int i = 0; i < k; ++i) s.Uinv[static_cast<std::size_t>(i) * k + x] = -s.Uinv[static_cast<std::size_t>(i) * k + x];
    };
    auto col_addmul = [&](int dst, int src, long long c) {
        for (int i = 0; i < k; ++i) a(i, dst) += c * a(i, src);
    };
    auto col_swap = [&](int x, int y) {
        for (int i = 0; i < k; ++i) std::swap(a(i, x), a(i, y));
    };

    const int m = std::min(k, n);
    auto reduce_pivot = [&](int p) {
        while (true) {
            int pi = -1, pj = -1;
            long long best = 0;
            for (int i = p; i < k; ++i)
                for (int j = p; j < n; ++j)
                    if (a(i, j) != 0 && (pi < 0 || std::abs(a(i, j)) < best)) {
                        best = std::abs(a(i, j));
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return;
            if (pi != p) row_swap(pi, p);
            if (pj != p) col_swap(pj, p);
            if (a(p, p) < 0) row_negate(p);

            bool dirty = false;
            for (int i = p + 1; i < k; ++i)
                if (a(i, p) != 0) {
                    row_addmul(i, p, -(a(i, p) / a(p, p)));
                    if (a(i, p) != 0) dirty = true;
                }
            for (int j = p + 1; j < n; ++j)
                if (a(p, j) != 0) {
                    col_addmul(j, p, -(a(p, j) / a(p, p)));
                    if (a(p, j) != 0) dirty = true;
                }
            if (!dirty) return;
        }
    };
    auto diagonalize = [&](int from) {
        for (int p = from; p < m; ++p) reduce_pivot(p);
    };
    diagonalize(0);
    // Divisibility chain: merging column q into column p strictly shrinks the
    // pivot towards gcd(a(p,p), a(q,q)); re-diagonalizing from p clears the
    // fill-in that the merge and its row swaps introduce further down.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int p = 0; p + 1 < m && !changed; ++p)
            for (int q = p + 1; q < m && !changed; ++q) {
                if (a(q, q) == 0) continue;
                if (a(p, p) != 0 && a(q, q) % a(p, p) == 0) continue;
                col_addmul(p, q, 1);
                diagonalize(p);
                changed = true;
            }
    }
    s.diag.resize(static_cast<std::size_t>(k), 0);
    for (int p = 0; p < m; ++p) s.diag[static_cast<std::size_t>(p)] = a(p, p);
    return s;
}

} // namespace

RingQuotient quotient_ring_total(const GradedRing& r, const ElementSet& ideal) {
    ElementSet zero(r.size());
    zero.set(r.zero());
    if (ideal == zero) {
        RingQuotient q{r, {}};
        q.project.resize(r.size());
        for (Elem a = 0; a < r.size(); ++a) q.project[a] = a;
        return q;
    }

    const int ng = r.component_count();
    RingDesc qd;
    qd.group = r.to_desc().group;
    qd.caps.max_group_order = std::max(qd.caps.max_group_order, ng);
    qd.components.resize(static_cast<std::size_t>(ng));

    struct CompData {
        Snf snf;
        std::vector<int> kept;          // indices of invariant factors > 1
        std::vector<long long> orders;  // full invariant factor list
    };
    std::vector<CompData> comp(static_cast<std::size_t>(ng));

    for (int g = 0; g < ng; ++g) {
        const auto& fac = r.factors(g);
        const int k = static_cast<int>(fac.size());
        std::vector<Elem> members;
        ideal.for_each([&](Elem a) {
            if (r.component_part(a, g) == a) members.push_back(a);
        });
        const int n = k + static_cast<int>(members.size());
        std::vector<long long> A(static_cast<std::size_t>(k) * n, 0);
        for (int i = 0; i < k; ++i) A[static_cast<std::size_t>(i) * n + i] = fac[static_cast<std::size_t>(i)];
        for (std::size_t c = 0; c < members.size(); ++c)
            for (int i = 0; i < k; ++i)
                A[static_cast<std::size_t>(i) * n + k + static_cast<int>(c)] = r.residue(members[c], r.slot_of(g, i));
        auto& cd = comp[static_cast<std::size_t>(g)];
        cd.snf = smith(std::move(A), k, n);
        cd.orders = cd.snf.diag;
        for (int i = 0; i < k; ++i)
            if (cd.orders[static_cast<std::size_t>(i)] > 1) cd.kept.push_back(i);
        if (cd.kept.empty())
            qd.components[static_cast<std::size_t>(g)] = {1};
        else
            for (int i : cd.kept)
                qd.components[static_cast<std::size_t>(g)].push_back(static_cast<int>(cd.orders[static_cast<std::size_t>(i)]));
    }

    // Projection of a component tuple via U, then the whole-element map.
    auto project_comp = [&](int g, Elem part, std::vector<int>& out) {
        const auto& cd = comp[static_cast<std::size_t>(g)];
        const int k = static_cast<int>(r.factors(g).size());
        out.assign(cd.kept.empty() ? 1 : cd.kept.size(), 0);
        if (cd.kept.empty()) return;
        for (std::size_t oi = 0; oi < cd.kept.size(); ++oi) {
            int i = cd.kept[oi];
            long long acc = 0;
            for (int j = 0; j < k; ++j)
                acc += cd.snf.U[static_cast<std::size_t>(i) * k + j] * r.residue(part, r.slot_of(g, j));
            long long e = cd.orders[static_cast<std::size_t>(i)];
            acc %= e;
            if (acc < 0) acc += e;
            out[oi] = static_cast<int>(acc);
        }
    };
    // Lift of the oi-th kept quotient generator back into R.
    auto rep_of = [&](int g, std::size_t oi) -> Elem {
        const auto& cd = comp[static_cast<std::size_t>(g)];
        const int k = static_cast<int>(r.factors(g).size());
        int i = cd.kept[oi];
        std::vector<int> res(static_cast<std::size_t>(r.slot_count()), 0);
        for (int j = 0; j < k; ++j) {
            long long v = cd.snf.Uinv[static_cast<std::size_t>(j) * k + i];
            int m = r.slot_modulus(r.slot_of(g, j));
            v %= m;
            if (v < 0) v += m;
            res[static_cast<std::size_t>(r.slot_of(g, j))] = static_cast<int>(v);
        }
        return r.from_residues(res);
    };

    for (int g = 0; g < ng; ++g) {
        const auto& cg = comp[static_cast<std::size_t>(g)];
        for (int h = 0; h < ng; ++h) {
            const auto& ch = comp[static_cast<std::size_t>(h)];
            int gh = r.group().op(g, h);
            for (std::size_t i = 0; i < cg.kept.size(); ++i)
                for (std::size_t j = 0; j < ch.kept.size(); ++j) {
                    Elem p = r.mul(rep_of(g, i), rep_of(h, j));
                    std::vector<int> img;
                    project_comp(gh, r.component_part(p, gh), img);
                    bool nonzero = false;
                    for (int v : img) nonzero |= (v != 0);
                    if (!nonzero) continue;
                    MulEntry e;
                    e.g = g;
                    e.h = h;
                    e.i = static_cast<int>(i);
                    e.j = static_cast<int>(j);
                    e.image = img;
                    qd.mul.push_back(std::move(e));
                }
        }
    }
    qd.one_component = r.group().identity();
    project_comp(r.group().identity(), r.component_part(r.one(), r.group().identity()), qd.one_tuple);

    auto validated = GradedRing::validate(qd);
    if (!validated.ok())
        throw InternalError("quotient construction produced an invalid ring: " + validated.defect().to_string());
    RingQuotient q{std::move(validated.value()), {}};

    q.project.resize(r.size());
    std::vector<int> qres(static_cast<std::size_t>(q.ring.slot_count()), 0);
    std::vector<int> part;
    for (Elem a = 0; a < r.size(); ++a) {
        std::fill(qres.begin(), qres.end(), 0);
        for (int g = 0; g < ng; ++g) {
            project_comp(g, r.component_part(a, g), part);
            for (std::size_t oi = 0; oi < part.size(); ++oi)
                qres[static_cast<std::size_t>(q.ring.slot_of(g, static_cast<int>(oi)))] = part[oi];
        }
        q.project[a] = q.ring.from_residues(qres);
    }

    // The projection must be a surjective grading-preserving homomorphism
    // with kernel exactly I; anything else is a construction bug.
    ElementSet image(q.ring.size());
    for (Elem a = 0; a < r.size(); ++a) {
        image.set(q.project[a]);
        if ((q.project[a] == q.ring.zero()) != ideal.test(a))
            throw InternalError("quotient kernel mismatch");
    }
    if (image.count() != q.ring.size()) throw InternalError("quotient projection not surjective");
    if (q.project[r.one()] != q.ring.one()) throw InternalError("quotient unity mismatch");
    for (Elem a = 0; a < r.size(); ++a)
        for (Elem b = 0; b < r.size(); ++b) {
            if (q.project[r.add(a, b)] != q.ring.add(q.project[a], q.project[b]))
                throw InternalError("quotient projection not additive");
            if (q.project[r.mul(a, b)] != q.ring.mul(q.project[a], q.project[b]))
                throw InternalError("quotient projection not multiplicative");
        }
    return q;
}

Expected<RingQuotient> quotient_ring(const GradedRing& r, const ElementSet& ideal) {
    if (ideal == ElementSet::full(r.size()))
        return Defect{DefectKind::improper_ideal, "cannot quotient by the whole ring"};
    return quotient_ring_total(r, ideal);
}

} // namespace gz

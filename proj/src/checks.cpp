#include "gzariski/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace gz {

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::skipped: return "SKIPPED";
    }
    return "?";
}

int InstanceModel::find_sub(const ElementSet& s) const {
    auto it = sub_idx.find(s);
    return it == sub_idx.end() ? -1 : it->second;
}
int InstanceModel::find_ideal(const ElementSet& s) const {
    auto it = ideal_idx.find(s);
    return it == ideal_idx.end() ? -1 : it->second;
}
int InstanceModel::find_ideal_bar(const ElementSet& s) const {
    auto it = ideal_bar_idx.find(s);
    return it == ideal_bar_idx.end() ? -1 : it->second;
}

namespace {

CheckOutcome pass() { return {}; }
CheckOutcome fail(std::string witness, std::string note = "") {
    CheckOutcome o;
    o.status = CheckStatus::fail;
    o.witness = std::move(witness);
    o.note = std::move(note);
    return o;
}
CheckOutcome skip(std::string note) {
    CheckOutcome o;
    o.status = CheckStatus::skipped;
    o.note = std::move(note);
    return o;
}
void add_note(CheckOutcome& o, const std::string& n) {
    if (n.empty()) return;
    if (!o.note.empty()) o.note += ',';
    o.note += n;
}
std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ' ' || c == '\t' || c == '\n') c = '_';
    return s;
}

std::string iw(const InstanceModel& m, int ideal) { return print_generators(*m.R, m.ideals[static_cast<std::size_t>(ideal)]); }
std::string ibw(const InstanceModel& m, int ideal) {
    return print_generators(m.quotient.ring, m.ideals_bar[static_cast<std::size_t>(ideal)]);
}
std::string sw(const InstanceModel& m, int sub) { return print_generators(*m.M, m.subs[static_cast<std::size_t>(sub)]); }
std::string pair_w(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }
std::string bool01(bool b) { return b ? "1" : "0"; }

const std::vector<PointSubset>& qp_ring_vars(const InstanceModel& m, RingQpSemantics sem) {
    return sem == RingQpSemantics::radical ? m.var_qpR : m.var_qpR_cont;
}
const std::vector<PointSubset>& qp_rbar_vars(const InstanceModel& m, RingQpSemantics sem) {
    return sem == RingQpSemantics::radical ? m.var_qpRbar : m.var_qpRbar_cont;
}

struct SplitMix {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

struct SubsetSample {
    std::vector<PointSubset> subsets;
    bool sampled = false;
};

SubsetSample sample_subsets(const FiniteTopology& topo) {
    const std::size_t n = topo.space->count();
    SubsetSample out;
    if (n <= 12) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            PointSubset y(n);
            for (std::size_t b = 0; b < n; ++b)
                if (mask & (1u << b)) y.set(static_cast<Elem>(b));
            out.subsets.push_back(std::move(y));
        }
        return out;
    }
    out.sampled = true;
    out.subsets.push_back(PointSubset(n));
    out.subsets.push_back(ElementSet::full(n));
    for (std::size_t i = 0; i < n; ++i) out.subsets.push_back(PointSubset::singleton(n, static_cast<Elem>(i)));
    for (const auto& c : topo.closed) out.subsets.push_back(c);
    SplitMix rng{kSampleSeed};
    while (out.subsets.size() < kSampleCount) {
        PointSubset y(n);
        for (std::size_t b = 0; b < n; ++b)
            if (rng.next() & 1) y.set(static_cast<Elem>(b));
        out.subsets.push_back(std::move(y));
    }
    return out;
}

std::string sample_note(const SubsetSample& s) {
    if (!s.sampled) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "sample:seed=%016llx;count=%llu",
                  static_cast<unsigned long long>(kSampleSeed),
                  static_cast<unsigned long long>(kSampleCount));
    return buf;
}

// ---------------------------------------------------------------------------
// Checks. Every check recomputes both sides of its claim from the memoized
// primitives; none assumes an earlier check passed.
// ---------------------------------------------------------------------------

CheckOutcome chk_t3_1(const InstanceModel& m) {
    const std::size_t n = m.qpM.count();
    const PointSubset empty(n);
    const PointSubset full = ElementSet::full(n);
    if (!m.qpM_topo.is_closed(empty)) return fail("empty-set-missing");
    if (!m.qpM_topo.is_closed(full)) return fail("full-set-missing");
    for (std::size_t a = 0; a < m.subs.size(); ++a)
        for (std::size_t b = 0; b <= a; ++b) {
            int inter = m.find_sub(m.subs[a] & m.subs[b]);
            if (inter < 0) return fail(pair_w(sw(m, static_cast<int>(a)), sw(m, static_cast<int>(b))),
                                       "submodule-lattice-not-intersection-closed");
            if ((m.var_qpM[a] | m.var_qpM[b]) != m.var_qpM[static_cast<std::size_t>(inter)])
                return fail(pair_w(sw(m, static_cast<int>(a)), sw(m, static_cast<int>(b))), "union-axiom");
            ElementSet colon_sum = ideal_sum(*m.R, m.ideals[static_cast<std::size_t>(m.sub_colon[a])],
                                             m.ideals[static_cast<std::size_t>(m.sub_colon[b])]);
            int csum = m.find_ideal(colon_sum);
            if (csum < 0) return fail(pair_w(sw(m, static_cast<int>(a)), sw(m, static_cast<int>(b))),
                                      "colon-sum-not-in-lattice");
            int im = m.itm_of_ideal[static_cast<std::size_t>(csum)];
            if ((m.var_qpM[a] & m.var_qpM[b]) != m.var_qpM[static_cast<std::size_t>(im)])
                return fail(pair_w(sw(m, static_cast<int>(a)), sw(m, static_cast<int>(b))), "intersection-axiom");
        }
    return pass();
}

CheckOutcome chk_p3_2_1(const InstanceModel& m) {
    for (std::size_t a = 0; a < m.subs.size(); ++a)
        for (std::size_t b = 0; b < m.subs.size(); ++b)
            if (m.subs[a].subset_of(m.subs[b]) && !m.var_qpM[b].subset_of(m.var_qpM[a]))
                return fail(pair_w(sw(m, static_cast<int>(a)), sw(m, static_cast<int>(b))));
    return pass();
}

CheckOutcome chk_p3_2_2(const InstanceModel& m) {
    CheckOutcome o = pass();
    for (std::size_t k = 0; k < m.subs.size(); ++k) {
        const auto& vgrm = m.var_qpM[static_cast<std::size_t>(m.sub_grm[k])];
        if (!vgrm.subset_of(m.var_qpM[k])) return fail(sw(m, static_cast<int>(k)), "subset-clause");
        if (m.mult_module && vgrm != m.var_qpM[k]) return fail(sw(m, static_cast<int>(k)), "equality-clause");
    }
    if (!m.mult_module) add_note(o, "equality-clause-hypothesis-unmet:multiplication-module");
    return o;
}

CheckOutcome chk_p3_2_3(const InstanceModel& m) {
    for (std::size_t k = 0; k < m.subs.size(); ++k) {
        int rad = m.ideal_radical[static_cast<std::size_t>(m.sub_colon[k])];
        int im = m.itm_of_ideal[static_cast<std::size_t>(rad)];
        if (m.var_qpM[k] != m.var_qpM[static_cast<std::size_t>(im)]) return fail(sw(m, static_cast<int>(k)));
    }
    return pass();
}

CheckOutcome chk_p3_2_4(const InstanceModel& m) {
    auto rc = [&](std::size_t k) { return m.ideal_radical[static_cast<std::size_t>(m.sub_colon[k])]; };
    for (std::size_t a = 0; a < m.subs.size(); ++a)
        for (std::size_t b = 0; b < m.subs.size(); ++b)
            if (rc(a) == rc(b) && m.var_qpM[a] != m.var_qpM[b])
                return fail(pair_w(sw(m, static_cast<int>(a)), sw(m, static_cast<int>(b))), "forward");
    for (std::size_t i = 0; i < m.qpM.count(); ++i)
        for (std::size_t j = 0; j < m.qpM.count(); ++j) {
            std::size_t a = static_cast<std::size_t>(m.qpM_pt[i]), b = static_cast<std::size_t>(m.qpM_pt[j]);
            if (m.var_qpM[a] == m.var_qpM[b] && rc(a) != rc(b))
                return fail(pair_w(m.qpM.point_print(static_cast<int>(i)), m.qpM.point_print(static_cast<int>(j))),
                            "converse");
        }
    return pass();
}

CheckOutcome chk_p3_2_5(const InstanceModel& m) {
    for (std::size_t k = 0; k < m.subs.size(); ++k) {
        PointSubset acc(m.qpM.count());
        for (const auto& [p, fiber] : m.fibers)
            if (m.ideals[static_cast<std::size_t>(m.sub_colon[k])].subset_of(m.ideals[static_cast<std::size_t>(p)]))
                acc |= fiber;
        if (acc != m.var_qpM[k]) return fail(sw(m, static_cast<int>(k)));
    }
    return pass();
}

CheckOutcome chk_p3_2_6(const InstanceModel& m) {
    SubsetSample ys = sample_subsets(m.qpM_topo);
    CheckOutcome o = pass();
    add_note(o, sample_note(ys));
    for (const auto& y : ys.subsets) {
        int iy = m.find_sub(intersection_of_points(m.qpM, y));
        if (iy < 0) return fail("intersection-not-in-lattice");
        int ry = m.ideal_radical[static_cast<std::size_t>(m.sub_colon[static_cast<std::size_t>(iy)])];
        for (std::size_t k = 0; k < m.subs.size(); ++k) {
            int rk = m.ideal_radical[static_cast<std::size_t>(m.sub_colon[k])];
            bool lhs = y.subset_of(m.var_qpM[k]);
            bool rhs = m.ideals[static_cast<std::size_t>(rk)].subset_of(m.ideals[static_cast<std::size_t>(ry)]);
            if (lhs != rhs) {
                CheckOutcome f = fail(pair_w(m.qpM.subset_print(y), sw(m, static_cast<int>(k))));
                f.note = o.note;
                return f;
            }
        }
    }
    return o;
}

CheckOutcome chk_p3_4_1(const InstanceModel& m) {
    CheckOutcome o = pass();
    add_note(o, std::string("semantics:") + semantics_name(m.semantics()));
    const auto& vars = qp_rbar_vars(m, m.semantics());
    for (std::size_t i = 0; i < m.ideals_bar.size(); ++i)
        if (m.maps.phi_r.preimage(m.var_specRbar[i]) != vars[i]) {
            CheckOutcome f = fail(ibw(m, static_cast<int>(i)));
            f.note = o.note;
            return f;
        }
    return o;
}

CheckOutcome chk_p3_4_2(const InstanceModel& m) {
    CheckOutcome o = pass();
    add_note(o, std::string("semantics:") + semantics_name(m.semantics()));
    const auto& vars = qp_rbar_vars(m, m.semantics());
    for (std::size_t i = 0; i < m.ideals_bar.size(); ++i) {
        if (m.maps.phi_r.image(vars[i]) != m.var_specRbar[i]) {
            CheckOutcome f = fail(ibw(m, static_cast<int>(i)), "closed-image");
            add_note(f, o.note);
            return f;
        }
        if (m.maps.phi_r.image(vars[i].complement()) != m.var_specRbar[i].complement()) {
            CheckOutcome f = fail(ibw(m, static_cast<int>(i)), "open-image");
            add_note(f, o.note);
            return f;
        }
    }
    if (!m.prof_phi_r.surjective) return fail("phi_R-not-surjective");
    if (!m.prof_phi_r.closed_map || !m.prof_phi_r.open_map)
        return fail(std::string("closed=") + bool01(m.prof_phi_r.closed_map) + ";open=" + bool01(m.prof_phi_r.open_map));
    return o;
}

CheckOutcome chk_r3_6(const InstanceModel& m) {
    for (std::size_t i = 0; i < m.qpM.count(); ++i) {
        if (m.maps.phi.to[i] < 0) return fail(m.qpM.point_print(static_cast<int>(i)), "phi-image-not-a-graded-prime");
        if (m.maps.phi.to[i] != m.maps.phi_via_composition[i])
            return fail(m.qpM.point_print(static_cast<int>(i)), "two-phi-routes-disagree");
        std::size_t k = static_cast<std::size_t>(m.qpM_pt[i]);
        int grm = m.sub_grm[k];
        int colon_grm = m.sub_colon[static_cast<std::size_t>(grm)];
        int rad_colon = m.ideal_radical[static_cast<std::size_t>(m.sub_colon[k])];
        if (colon_grm != rad_colon)
            return fail(m.qpM.point_print(static_cast<int>(i)), "colon-of-radical-differs-from-radical-of-colon");
        if (!m.ideal_class[static_cast<std::size_t>(colon_grm)].graded_prime)
            return fail(m.qpM.point_print(static_cast<int>(i)), "colon-of-radical-not-prime");
    }
    return pass();
}

bool variety_equality_implies_point_equality(const InstanceModel& m, std::string* witness) {
    for (std::size_t i = 0; i < m.qpM.count(); ++i)
        for (std::size_t j = i + 1; j < m.qpM.count(); ++j)
            if (m.var_qpM[static_cast<std::size_t>(m.qpM_pt[i])] == m.var_qpM[static_cast<std::size_t>(m.qpM_pt[j])]) {
                if (witness)
                    *witness = pair_w(m.qpM.point_print(static_cast<int>(i)), m.qpM.point_print(static_cast<int>(j)));
                return false;
            }
    return true;
}

bool fibers_at_most_one(const InstanceModel& m) {
    for (const auto& [p, fiber] : m.fibers)
        if (fiber.count() > 1) return false;
    return true;
}

CheckOutcome chk_t3_7(const InstanceModel& m) {
    bool b1 = variety_equality_implies_point_equality(m, nullptr);
    bool b2 = fibers_at_most_one(m);
    bool b3 = m.prof_phi.injective;
    if (b1 != b2 || b2 != b3)
        return fail("separation=" + bool01(b1) + ";fibers<=1=" + bool01(b2) + ";phi-injective=" + bool01(b3));
    return pass();
}

CheckOutcome chk_r3_10(const InstanceModel& m) {
    bool direct = m.mprof.quasi_primaryful;
    bool surj = m.prof_phi.surjective;
    if (direct != surj) return fail("quasi-primaryful=" + bool01(direct) + ";phi-surjective=" + bool01(surj));
    return pass();
}

CheckOutcome chk_t3_11(const InstanceModel& m) {
    CheckOutcome o = pass();
    add_note(o, std::string("semantics:") + semantics_name(m.semantics()));
    const auto& vars_bar = qp_rbar_vars(m, m.semantics());
    for (std::size_t i = 0; i < m.ideals.size(); ++i) {
        if (!m.ideals[static_cast<std::size_t>(m.ann_idx)].subset_of(m.ideals[i])) continue;
        std::size_t bar = static_cast<std::size_t>(m.ideal_bar_of[i]);
        PointSubset a = m.maps.phi.preimage(m.var_specRbar[bar]);
        PointSubset b = m.maps.psi_q.preimage(vars_bar[bar]);
        const PointSubset& c = m.var_qpM[static_cast<std::size_t>(m.itm_of_ideal[i])];
        if (a != c || b != c) {
            CheckOutcome f = fail(iw(m, static_cast<int>(i)));
            add_note(f, o.note);
            return f;
        }
    }
    if (!m.prof_phi.continuous) return fail("phi-not-continuous");
    return o;
}

CheckOutcome chk_t3_12(const InstanceModel& m) {
    if (!m.mprof.quasi_primaryful) return skip("hypothesis:quasi_primaryful");
    for (std::size_t k = 0; k < m.subs.size(); ++k) {
        int rad = m.ideal_radical[static_cast<std::size_t>(m.sub_colon[k])];
        std::size_t bar = static_cast<std::size_t>(m.ideal_bar_of[static_cast<std::size_t>(rad)]);
        if (m.maps.phi.image(m.var_qpM[k]) != m.var_specRbar[bar])
            return fail(sw(m, static_cast<int>(k)), "closed-image");
        if (m.maps.phi.image(m.var_qpM[k].complement()) != m.var_specRbar[bar].complement())
            return fail(sw(m, static_cast<int>(k)), "open-image");
    }
    if (!m.prof_phi.closed_map || !m.prof_phi.open_map)
        return fail(std::string("closed=") + bool01(m.prof_phi.closed_map) + ";open=" + bool01(m.prof_phi.open_map));
    return pass();
}

CheckOutcome chk_c3_13(const InstanceModel& m) {
    bool bij = m.prof_phi.injective && m.prof_phi.surjective;
    bool homeo = m.prof_phi.homeomorphism;
    if (bij != homeo) return fail("bijective=" + bool01(bij) + ";homeomorphism=" + bool01(homeo));
    return pass();
}

CheckOutcome chk_t3_14(const InstanceModel& m) {
    for (const auto& c : m.qpM_topo.closed) {
        PointSubset u = c.complement();
        PointSubset acc(m.qpM.count());
        for (const auto& b : m.qpM_topo.basic)
            if (b.subset_of(u)) acc |= b;
        if (acc != u) return fail(m.qpM.subset_print(u));
    }
    return pass();
}

// T3.15.*: evaluated under both ring qp-variety semantics; the active one
// decides the status, the other is noted.
CheckOutcome both_semantics(const InstanceModel& m,
                            CheckOutcome (*eval)(const InstanceModel&, RingQpSemantics)) {
    CheckOutcome active = eval(m, m.semantics());
    CheckOutcome alt = eval(m, m.alt_semantics());
    add_note(active, std::string("semantics:") + semantics_name(m.semantics()));
    add_note(active, std::string("alt:") + semantics_name(m.alt_semantics()) + "=" +
                         (alt.status == CheckStatus::pass ? "PASS" : "FAIL"));
    return active;
}

CheckOutcome eval_t3_15_1(const InstanceModel& m, RingQpSemantics sem) {
    for (Elem r : m.R->homogeneous_list()) {
        bool empty = m.gx_ring(r, sem).none();
        if (empty != is_nilpotent(*m.R, r)) return fail(m.R->print(r));
    }
    return pass();
}
CheckOutcome chk_t3_15_1(const InstanceModel& m) { return both_semantics(m, eval_t3_15_1); }

CheckOutcome eval_t3_15_2(const InstanceModel& m, RingQpSemantics sem) {
    const PointSubset full = ElementSet::full(m.qpR.count());
    for (Elem r : m.R->homogeneous_list()) {
        bool whole = m.gx_ring(r, sem) == full;
        if (whole != is_unit(*m.R, r)) return fail(m.R->print(r));
    }
    return pass();
}
CheckOutcome chk_t3_15_2(const InstanceModel& m) { return both_semantics(m, eval_t3_15_2); }

CheckOutcome eval_t3_15_3(const InstanceModel& m, RingQpSemantics sem) {
    const auto& vars = qp_ring_vars(m, sem);
    for (std::size_t i = 0; i < m.ideals.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            bool same_open = vars[i] == vars[j];
            bool same_radical = m.ideal_radical[i] == m.ideal_radical[j];
            if (same_open != same_radical) return fail(pair_w(iw(m, static_cast<int>(i)), iw(m, static_cast<int>(j))));
        }
    return pass();
}
CheckOutcome chk_t3_15_3(const InstanceModel& m) { return both_semantics(m, eval_t3_15_3); }

CheckOutcome eval_t3_15_4(const InstanceModel& m, RingQpSemantics sem) {
    for (Elem r : m.R->homogeneous_list())
        for (Elem s : m.R->homogeneous_list()) {
            const PointSubset& lhs = m.gx_ring(m.R->mul(r, s), sem);
            PointSubset rhs = m.gx_ring(r, sem) & m.gx_ring(s, sem);
            if (lhs != rhs) return fail("r=" + m.R->print(r) + ";s=" + m.R->print(s));
        }
    return pass();
}
CheckOutcome chk_t3_15_4(const InstanceModel& m) { return both_semantics(m, eval_t3_15_4); }

CheckOutcome eval_t3_15_5(const InstanceModel& m, RingQpSemantics sem) {
    const FiniteTopology& topo = sem == m.qpR_topo.semantics ? m.qpR_topo : m.qpR_topo_alt;
    if (!is_quasi_compact(topo, ElementSet::full(m.qpR.count()))) return fail("no-finite-subcover");
    return pass();
}
CheckOutcome chk_t3_15_5(const InstanceModel& m) { return both_semantics(m, eval_t3_15_5); }

CheckOutcome eval_t3_15_6(const InstanceModel& m, RingQpSemantics sem) {
    const FiniteTopology& topo = sem == m.qpR_topo.semantics ? m.qpR_topo : m.qpR_topo_alt;
    const std::size_t n = m.qpR.count();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (closure(topo, PointSubset::singleton(n, static_cast<Elem>(i))) ==
                closure(topo, PointSubset::singleton(n, static_cast<Elem>(j))))
                return fail(pair_w(m.qpR.point_print(static_cast<int>(i)), m.qpR.point_print(static_cast<int>(j))));
    return pass();
}
CheckOutcome chk_t3_15_6(const InstanceModel& m) { return both_semantics(m, eval_t3_15_6); }

CheckOutcome chk_p3_16_1(const InstanceModel& m) {
    CheckOutcome o = pass();
    add_note(o, std::string("semantics:") + semantics_name(m.semantics()));
    for (Elem r : m.R->homogeneous_list()) {
        PointSubset lhs = m.maps.psi_q.preimage(m.gx_rbar(m.quotient.project[r], m.semantics()));
        const PointSubset& rhs = m.gx_module(r);
        if (lhs != rhs) {
            CheckOutcome f = fail(m.R->print(r));
            add_note(f, o.note);
            return f;
        }
    }
    return o;
}

CheckOutcome chk_p3_16_2(const InstanceModel& m) {
    CheckOutcome o = pass();
    add_note(o, std::string("semantics:") + semantics_name(m.semantics()));
    for (Elem r : m.R->homogeneous_list()) {
        PointSubset img = m.maps.psi_q.image(m.gx_module(r));
        const PointSubset& bar = m.gx_rbar(m.quotient.project[r], m.semantics());
        if (!img.subset_of(bar)) {
            CheckOutcome f = fail(m.R->print(r), "containment");
            add_note(f, o.note);
            return f;
        }
        if (m.prof_psi_q.surjective && img != bar) {
            CheckOutcome f = fail(m.R->print(r), "equality-under-surjectivity");
            add_note(f, o.note);
            return f;
        }
    }
    if (!m.prof_psi_q.surjective) add_note(o, "equality-clause-hypothesis-unmet:psi_q-surjective");
    return o;
}

CheckOutcome chk_p3_16_3(const InstanceModel& m) {
    for (Elem r : m.R->homogeneous_list())
        for (Elem s : m.R->homogeneous_list()) {
            const PointSubset& lhs = m.gx_module(m.R->mul(r, s));
            PointSubset rhs = m.gx_module(r) & m.gx_module(s);
            if (lhs != rhs) return fail("r=" + m.R->print(r) + ";s=" + m.R->print(s));
        }
    return pass();
}

CheckOutcome chk_t3_16(const InstanceModel& m) {
    if (!m.prof_psi_q.surjective) return skip("hypothesis:psi_q-surjective");
    for (Elem r : m.R->homogeneous_list())
        if (!is_quasi_compact(m.qpM_topo, m.gx_module(r))) return fail(m.R->print(r));
    if (!is_quasi_compact(m.qpM_topo, ElementSet::full(m.qpM.count()))) return fail("whole-space");
    return pass();
}

CheckOutcome chk_t3_17(const InstanceModel& m) {
    if (!m.prof_psi_q.surjective) return skip("hypothesis:psi_q-surjective");
    std::vector<PointSubset> qc_opens;
    for (const auto& c : m.qpM_topo.closed) {
        PointSubset u = c.complement();
        if (is_quasi_compact(m.qpM_topo, u)) qc_opens.push_back(u);
    }
    for (const auto& a : qc_opens)
        for (const auto& b : qc_opens) {
            PointSubset ab = a & b;
            if (!m.qpM_topo.is_open(ab))
                return fail(pair_w(m.qpM.subset_print(a), m.qpM.subset_print(b)), "intersection-not-open");
            if (!is_quasi_compact(m.qpM_topo, ab))
                return fail(pair_w(m.qpM.subset_print(a), m.qpM.subset_print(b)), "intersection-not-quasi-compact");
        }
    for (const auto& c : m.qpM_topo.closed) {
        PointSubset u = c.complement();
        PointSubset acc(m.qpM.count());
        for (const auto& q : qc_opens)
            if (q.subset_of(u)) acc |= q;
        if (acc != u) return fail(m.qpM.subset_print(u), "not-a-base");
    }
    return pass();
}

CheckOutcome chk_t4_1(const InstanceModel& m) {
    if (!m.mprof.quasi_primaryful) return skip("hypothesis:quasi_primaryful");
    bool c1 = m.tp_specRbar.is_connected;
    bool c2 = m.tp_qpRbar.is_connected;
    bool c3 = m.tp_qpM.is_connected;
    bool c4 = m.tp_specM.is_connected;
    std::string profile =
        "spec-rbar=" + bool01(c1) + ";qp-rbar=" + bool01(c2) + ";qp-module=" + bool01(c3) + ";spec-module=" + bool01(c4);
    if (c1 != c2 || c2 != c3) return fail(profile, "equivalence-1-2-3");
    if (c3 && !c4) return fail(profile, "implication-3-to-4");
    CheckOutcome o = pass();
    if (m.mprof.graded_primeful_module) {
        if (c4 && !c1) return fail(profile, "primeful-converse-4-to-1");
    } else {
        add_note(o, "converse-clause-hypothesis-unmet:graded-primeful");
    }
    return o;
}

CheckOutcome chk_t4_2_1(const InstanceModel& m) {
    SubsetSample ys = sample_subsets(m.qpM_topo);
    CheckOutcome o = pass();
    add_note(o, sample_note(ys));
    for (const auto& y : ys.subsets) {
        int iy = m.find_sub(intersection_of_points(m.qpM, y));
        if (iy < 0) return fail("intersection-not-in-lattice");
        if (closure(m.qpM_topo, y) != m.var_qpM[static_cast<std::size_t>(iy)]) {
            CheckOutcome f = fail(m.qpM.subset_print(y));
            f.note = o.note;
            return f;
        }
    }
    return o;
}

int zero_point_index(const InstanceModel& m) {
    ElementSet zero(m.M->size());
    zero.set(m.M->zero());
    return m.qpM.find_point(zero);
}

CheckOutcome chk_t4_2_2(const InstanceModel& m) {
    int z = zero_point_index(m);
    if (z < 0) return skip("hypothesis:zero-submodule-not-a-point");
    SubsetSample ys = sample_subsets(m.qpM_topo);
    CheckOutcome o = pass();
    add_note(o, sample_note(ys));
    const PointSubset full = ElementSet::full(m.qpM.count());
    for (const auto& y : ys.subsets) {
        if (!y.test(static_cast<Elem>(z))) continue;
        if (closure(m.qpM_topo, y) != full) {
            CheckOutcome f = fail(m.qpM.subset_print(y));
            f.note = o.note;
            return f;
        }
    }
    return o;
}

bool radical_colon_maximal(const InstanceModel& m, std::size_t point) {
    int rc = m.radical_colon(static_cast<int>(point));
    for (std::size_t j = 0; j < m.qpM.count(); ++j) {
        int rj = m.radical_colon(static_cast<int>(j));
        if (rj != rc && m.ideals[static_cast<std::size_t>(rc)].subset_of(m.ideals[static_cast<std::size_t>(rj)]))
            return false;
    }
    return true;
}

CheckOutcome chk_t4_2_3(const InstanceModel& m) {
    const std::size_t n = m.qpM.count();
    for (std::size_t i = 0; i < n; ++i) {
        bool closed_pt = m.qpM_topo.is_closed(PointSubset::singleton(n, static_cast<Elem>(i)));
        int rc = m.radical_colon(static_cast<int>(i));
        bool fiber_single = true;
        for (const auto& [p, fiber] : m.fibers)
            if (p == rc && fiber.count() != 1) fiber_single = false;
        bool rhs = radical_colon_maximal(m, i) && fiber_single;
        if (closed_pt != rhs)
            return fail(m.qpM.point_print(static_cast<int>(i)),
                        "closed=" + bool01(closed_pt) + ";maximal-and-unique-fiber=" + bool01(rhs));
    }
    return pass();
}

CheckOutcome chk_t4_2_4(const InstanceModel& m) {
    const std::size_t n = m.qpM.count();
    for (std::size_t i = 0; i < n; ++i) {
        if (!m.qpM_topo.is_closed(PointSubset::singleton(n, static_cast<Elem>(i)))) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && m.qpM.points[i] != m.qpM.points[j] && m.qpM.points[i].subset_of(m.qpM.points[j]))
                return fail(pair_w(m.qpM.point_print(static_cast<int>(i)), m.qpM.point_print(static_cast<int>(j))));
    }
    return pass();
}

CheckOutcome chk_t4_3(const InstanceModel& m) {
    bool t0 = m.tp_qpM.is_t0;
    bool sep = variety_equality_implies_point_equality(m, nullptr);
    bool fib = fibers_at_most_one(m);
    bool inj = m.prof_phi.injective;
    if (t0 != sep || sep != fib || fib != inj)
        return fail("t0=" + bool01(t0) + ";separation=" + bool01(sep) + ";fibers<=1=" + bool01(fib) +
                    ";phi-injective=" + bool01(inj));
    return pass();
}

CheckOutcome chk_c4_4_1(const InstanceModel& m) {
    bool rhs = m.tp_qpM.is_t0;
    for (std::size_t i = 0; i < m.qpM.count() && rhs; ++i)
        if (!radical_colon_maximal(m, i)) rhs = false;
    if (m.tp_qpM.is_t1 != rhs) return fail("t1=" + bool01(m.tp_qpM.is_t1) + ";t0-and-maximal-radicals=" + bool01(rhs));
    return pass();
}

bool point_maximal_in_spectrum(const InstanceModel& m, std::size_t i) {
    for (std::size_t j = 0; j < m.qpM.count(); ++j)
        if (i != j && m.qpM.points[i] != m.qpM.points[j] && m.qpM.points[i].subset_of(m.qpM.points[j])) return false;
    return true;
}

CheckOutcome chk_c4_4_2(const InstanceModel& m) {
    bool rhs = m.tp_qpM.is_t0;
    for (std::size_t i = 0; i < m.qpM.count() && rhs; ++i)
        if (!point_maximal_in_spectrum(m, i)) rhs = false;
    if (m.tp_qpM.is_t1 != rhs) return fail("t1=" + bool01(m.tp_qpM.is_t1) + ";t0-and-maximal-points=" + bool01(rhs));
    return pass();
}

CheckOutcome chk_c4_4_3(const InstanceModel& m) {
    int z = zero_point_index(m);
    if (z < 0) return skip("hypothesis:zero-submodule-not-a-point");
    bool only_zero = m.qpM.count() == 1;
    if (m.tp_qpM.is_t1 != only_zero)
        return fail("t1=" + bool01(m.tp_qpM.is_t1) + ";spectrum-is-zero-only=" + bool01(only_zero));
    return pass();
}

bool spectrum_equals_maximal_submodules(const InstanceModel& m) {
    std::vector<ElementSet> maxes = graded_maximal_submodules(*m.M, &m.subs);
    if (maxes.size() != m.qpM.count()) return false;
    for (const auto& k : maxes)
        if (m.qpM.find_point(k) < 0) return false;
    return true;
}

CheckOutcome chk_c4_4_4(const InstanceModel& m) {
    if (!(m.tp_qpM.is_t0 && spectrum_equals_maximal_submodules(m)))
        return skip("hypothesis:t0-and-max-spectrum-unmet");
    if (!m.tp_qpM.is_t1) return fail("t1=0");
    return pass();
}

CheckOutcome chk_t4_5(const InstanceModel& m) {
    bool t1 = m.tp_qpM.is_t1;
    bool eq = spectrum_equals_maximal_submodules(m);
    if (t1 != eq) return fail("t1=" + bool01(t1) + ";spectrum-equals-max=" + bool01(eq),
                              "finite-instance:finitely-generated-automatic");
    CheckOutcome o = pass();
    add_note(o, "finite-instance:finitely-generated-automatic");
    if (t1) {
        if (m.specM.count() != m.qpM.count()) return fail("qp-and-prime-spectra-differ");
        for (std::size_t i = 0; i < m.specM.count(); ++i)
            if (m.qpM.find_point(m.specM.points[i]) < 0) return fail("qp-and-prime-spectra-differ");
    }
    return o;
}

CheckOutcome chk_t4_6(const InstanceModel& m) {
    for (std::size_t i = 0; i < m.qpM.count(); ++i) {
        const PointSubset& v = m.var_qpM[static_cast<std::size_t>(m.qpM_pt[i])];
        if (!m.qpM_topo.is_closed(v)) return fail(m.qpM.point_print(static_cast<int>(i)), "not-closed");
        if (!is_irreducible_subset(m.qpM_topo, v)) return fail(m.qpM.point_print(static_cast<int>(i)), "not-irreducible");
    }
    return pass();
}

CheckOutcome chk_t4_7(const InstanceModel& m) {
    SubsetSample ys = sample_subsets(m.qpM_topo);
    CheckOutcome o = pass();
    add_note(o, sample_note(ys));
    if (!m.mult_module) add_note(o, "converse-clause-hypothesis-unmet:multiplication-module");
    for (const auto& y : ys.subsets) {
        int iy = m.find_sub(intersection_of_points(m.qpM, y));
        if (iy < 0) return fail("intersection-not-in-lattice");
        const SubmoduleClass& cls = m.sub_class[static_cast<std::size_t>(iy)];
        bool irr = is_irreducible_subset(m.qpM_topo, y);
        if (cls.graded_quasi_primary && !irr) {
            CheckOutcome f = fail(m.qpM.subset_print(y), "forward");
            add_note(f, o.note);
            return f;
        }
        if (m.mult_module && irr && cls.graded_primeful && !cls.graded_quasi_primary) {
            CheckOutcome f = fail(m.qpM.subset_print(y), "converse");
            add_note(f, o.note);
            return f;
        }
    }
    return o;
}

CheckOutcome chk_l4_8(const InstanceModel& m) {
    SubsetSample ys = sample_subsets(m.specR_topo);
    CheckOutcome o = pass();
    add_note(o, sample_note(ys));
    for (const auto& y : ys.subsets) {
        ElementSet meet = intersection_of_points(m.specR, y);
        bool irr = is_irreducible_subset(m.specR_topo, y);
        bool prime = is_graded_prime_ideal(*m.R, meet);
        if (irr != prime) {
            CheckOutcome f = fail(m.specR.subset_print(y),
                                  "irreducible=" + bool01(irr) + ";meet-prime=" + bool01(prime));
            add_note(f, o.note);
            return f;
        }
    }
    return o;
}

CheckOutcome chk_t4_9(const InstanceModel& m) {
    if (!m.mprof.quasi_primaryful) return skip("hypothesis:quasi_primaryful");
    std::vector<PointSubset> point_varieties;
    for (std::size_t i = 0; i < m.qpM.count(); ++i) {
        const PointSubset& v = m.var_qpM[static_cast<std::size_t>(m.qpM_pt[i])];
        if (std::find(point_varieties.begin(), point_varieties.end(), v) == point_varieties.end())
            point_varieties.push_back(v);
    }
    for (const auto& v : point_varieties)
        if (std::find(m.tp_qpM.irreducible_closed.begin(), m.tp_qpM.irreducible_closed.end(), v) ==
            m.tp_qpM.irreducible_closed.end())
            return fail(m.qpM.subset_print(v), "point-variety-not-irreducible-closed");
    for (std::size_t i = 0; i < m.tp_qpM.irreducible_closed.size(); ++i) {
        const auto& y = m.tp_qpM.irreducible_closed[i];
        if (std::find(point_varieties.begin(), point_varieties.end(), y) == point_varieties.end())
            return fail(m.qpM.subset_print(y), "irreducible-closed-not-a-point-variety");
        if (m.tp_qpM.generic_point[i] < 0) return fail(m.qpM.subset_print(y), "no-generic-point");
    }
    return pass();
}

CheckOutcome chk_c4_10(const InstanceModel& m) {
    if (!m.prof_phi.surjective) return skip("hypothesis:phi-surjective");
    std::vector<int> minimal_primes;
    for (std::size_t i = 0; i < m.specRbar.count(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < m.specRbar.count(); ++j)
            if (i != j && m.specRbar.points[j].subset_of(m.specRbar.points[i]) &&
                m.specRbar.points[j] != m.specRbar.points[i])
                minimal = false;
        if (minimal) minimal_primes.push_back(static_cast<int>(i));
    }
    std::vector<int> targets;
    for (const auto& comp : m.tp_qpM.irreducible_components) {
        int target = -1;
        for (std::size_t i = 0; i < m.qpM.count(); ++i) {
            if (m.var_qpM[static_cast<std::size_t>(m.qpM_pt[i])] != comp) continue;
            if (target < 0) target = m.maps.phi.to[i];
            else if (target != m.maps.phi.to[i])
                return fail(m.qpM.subset_print(comp), "component-image-not-well-defined");
        }
        if (target < 0) return fail(m.qpM.subset_print(comp), "component-is-not-a-point-variety");
        if (std::find(minimal_primes.begin(), minimal_primes.end(), target) == minimal_primes.end())
            return fail(m.qpM.subset_print(comp), "image-not-a-minimal-prime");
        if (std::find(targets.begin(), targets.end(), target) != targets.end())
            return fail(m.qpM.subset_print(comp), "correspondence-not-injective");
        targets.push_back(target);
    }
    if (targets.size() != minimal_primes.size()) return fail("correspondence-not-surjective");
    return pass();
}

CheckOutcome chk_t4_11(const InstanceModel& m) {
    if (!m.mprof.quasi_primaryful) return skip("hypothesis:quasi_primaryful");
    const ElementSet& ann = m.ideals[static_cast<std::size_t>(m.ann_idx)];
    auto prime_minimal_over_ann = [&](int p) {
        if (!m.ideal_class[static_cast<std::size_t>(p)].graded_prime) return false;
        if (!ann.subset_of(m.ideals[static_cast<std::size_t>(p)])) return false;
        for (std::size_t q = 0; q < m.ideals.size(); ++q)
            if (static_cast<int>(q) != p && m.ideal_class[q].graded_prime && ann.subset_of(m.ideals[q]) &&
                m.ideals[q].subset_of(m.ideals[static_cast<std::size_t>(p)]) &&
                m.ideals[q] != m.ideals[static_cast<std::size_t>(p)])
                return false;
        return true;
    };
    std::vector<PointSubset> phi_family;
    for (std::size_t q = 0; q < m.ideals.size(); ++q) {
        if (!m.ideal_class[q].graded_quasi_primary) continue;
        if (!ann.subset_of(m.ideals[q])) continue;
        int rad = m.ideal_radical[q];
        if (!prime_minimal_over_ann(rad)) continue;
        const PointSubset& v =
            m.var_qpM[static_cast<std::size_t>(m.itm_of_ideal[static_cast<std::size_t>(rad)])];
        if (std::find(phi_family.begin(), phi_family.end(), v) == phi_family.end()) phi_family.push_back(v);
    }
    for (const auto& v : phi_family)
        if (std::find(m.tp_qpM.irreducible_components.begin(), m.tp_qpM.irreducible_components.end(), v) ==
            m.tp_qpM.irreducible_components.end())
            return fail(m.qpM.subset_print(v), "family-member-not-a-component");
    for (const auto& c : m.tp_qpM.irreducible_components)
        if (std::find(phi_family.begin(), phi_family.end(), c) == phi_family.end())
            return fail(m.qpM.subset_print(c), "component-not-in-family");
    return pass();
}

int longest_chain(const std::vector<ElementSet>& sets) {
    std::vector<std::size_t> order(sets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return sets[a].count() < sets[b].count(); });
    std::vector<int> depth(sets.size(), 1);
    int best = sets.empty() ? 0 : 1;
    for (std::size_t ii = 0; ii < order.size(); ++ii)
        for (std::size_t jj = 0; jj < ii; ++jj) {
            std::size_t i = order[ii], j = order[jj];
            if (sets[j] != sets[i] && sets[j].subset_of(sets[i])) depth[i] = std::max(depth[i], depth[j] + 1);
            best = std::max(best, depth[i]);
        }
    return best;
}

CheckOutcome chk_t4_13(const InstanceModel& m) {
    bool noeth = m.tp_qpM.is_noetherian;
    std::vector<ElementSet> zqp_radicals;
    for (std::size_t k = 0; k < m.subs.size(); ++k) {
        ElementSet z = intersection_of_points(m.qpM, m.var_qpM[k]);
        if (z == m.subs[k]) zqp_radicals.push_back(z);
    }
    // Finitely many Zqp-radical submodules: every ascending chain tops out.
    bool acc = longest_chain(zqp_radicals) <= static_cast<int>(zqp_radicals.size());
    if (noeth != acc) return fail("noetherian=" + bool01(noeth) + ";acc=" + bool01(acc));
    CheckOutcome o = pass();
    add_note(o, "finite-instance:vacuously-true");
    return o;
}

CheckOutcome chk_t4_14_1(const InstanceModel& m) {
    if (!m.mprof.quasi_primaryful) return skip("hypothesis:quasi_primaryful");
    if (!m.tp_qpM.is_noetherian) return skip("hypothesis:noetherian");
    if (!m.prof_phi.injective) return skip("hypothesis:phi-injective");
    std::vector<ElementSet> qp_subs;
    for (std::size_t k = 0; k < m.subs.size(); ++k)
        if (m.sub_class[k].graded_quasi_primary) qp_subs.push_back(m.subs[k]);
    if (longest_chain(qp_subs) > static_cast<int>(qp_subs.size())) return fail("non-stationary-chain");
    CheckOutcome o = pass();
    add_note(o, "finite-instance:vacuously-true");
    return o;
}

CheckOutcome chk_t4_14_2(const InstanceModel& m) {
    if (!m.mprof.quasi_primaryful) return skip("hypothesis:quasi_primaryful");
    if (!m.tp_qpM.is_noetherian) return skip("hypothesis:noetherian");
    std::size_t minimal = 0;
    for (std::size_t p = 0; p < m.ideals.size(); ++p) {
        if (!m.ideal_class[p].graded_prime) continue;
        bool is_min = true;
        for (std::size_t q = 0; q < m.ideals.size(); ++q)
            if (p != q && m.ideal_class[q].graded_prime && m.ideals[q].subset_of(m.ideals[p]) &&
                m.ideals[q] != m.ideals[p])
                is_min = false;
        if (is_min) ++minimal;
    }
    CheckOutcome o = pass();
    add_note(o, "finite-instance:vacuously-true");
    add_note(o, "minimal-primes=" + std::to_string(minimal));
    return o;
}

CheckOutcome chk_t4_15(const InstanceModel& m) {
    if (!m.prof_psi_q.surjective) return skip("hypothesis:psi_q-surjective");
    bool s1 = m.tp_qpM.is_spectral;
    bool s2 = m.tp_qpM.is_t0;
    bool s3 = m.prof_phi.injective;
    bool s4 = variety_equality_implies_point_equality(m, nullptr);
    bool s5 = fibers_at_most_one(m);
    bool s6 = m.prof_phi.homeomorphism;
    if (s1 != s2 || s2 != s3 || s3 != s4 || s4 != s5 || s5 != s6)
        return fail("spectral=" + bool01(s1) + ";t0=" + bool01(s2) + ";phi-injective=" + bool01(s3) +
                    ";separation=" + bool01(s4) + ";fibers<=1=" + bool01(s5) + ";homeomorphism=" + bool01(s6));
    CheckOutcome o = pass();
    add_note(o, std::string("hochster:t0=") + bool01(m.tp_qpM.hochster_t0) + ";qc=" +
                    bool01(m.tp_qpM.hochster_quasi_compact) + ";qc-base=" + bool01(m.tp_qpM.hochster_qc_base) +
                    ";generic=" + bool01(m.tp_qpM.hochster_generic_points));
    return o;
}

} // namespace

const std::vector<CheckDef>& check_catalog() {
    static const std::vector<CheckDef> catalog = {
        {"T3.1", "closed-set axioms of the quasi-Zariski variety family", chk_t3_1},
        {"P3.2.1", "variety anti-monotonicity", chk_p3_2_1},
        {"P3.2.2", "variety of the submodule radical", chk_p3_2_2},
        {"P3.2.3", "variety determined by the radical colon", chk_p3_2_3},
        {"P3.2.4", "equal radical colons give equal varieties", chk_p3_2_4},
        {"P3.2.5", "variety as a union of fibers", chk_p3_2_5},
        {"P3.2.6", "subset-of-variety criterion", chk_p3_2_6},
        {"P3.4.1", "phi_R preimages of quotient varieties", chk_p3_4_1},
        {"P3.4.2", "phi_R is surjective, closed and open", chk_p3_4_2},
        {"R3.6", "the two routes to the natural map agree", chk_r3_6},
        {"T3.7", "separation / fiber-size / injectivity equivalence", chk_t3_7},
        {"R3.10", "quasi-primaryful iff phi surjective", chk_r3_10},
        {"T3.11", "phi is continuous with explicit preimages", chk_t3_11},
        {"T3.12", "phi is closed and open on quasi-primaryful modules", chk_t3_12},
        {"C3.13", "bijective iff homeomorphism", chk_c3_13},
        {"T3.14", "basic opens form a base", chk_t3_14},
        {"T3.15.1", "empty basic open iff nilpotent", chk_t3_15_1},
        {"T3.15.2", "full basic open iff unit", chk_t3_15_2},
        {"T3.15.3", "equal ring opens iff equal radicals", chk_t3_15_3},
        {"T3.15.4", "basic opens multiplicative", chk_t3_15_4},
        {"T3.15.5", "ring qp space quasi-compact", chk_t3_15_5},
        {"T3.15.6", "ring qp space T0", chk_t3_15_6},
        {"P3.16.1", "psi_q preimages of basic opens", chk_p3_16_1},
        {"P3.16.2", "psi_q images of basic opens", chk_p3_16_2},
        {"P3.16.3", "module basic opens multiplicative", chk_p3_16_3},
        {"T3.16", "basic opens quasi-compact", chk_t3_16},
        {"T3.17", "quasi-compact opens closed under intersection", chk_t3_17},
        {"T4.1", "connectedness equivalences", chk_t4_1},
        {"T4.2.1", "closure equals variety of the intersection", chk_t4_2_1},
        {"T4.2.2", "subsets containing the zero point are dense", chk_t4_2_2},
        {"T4.2.3", "closed points via maximal radicals and singleton fibers", chk_t4_2_3},
        {"T4.2.4", "closed points are maximal spectrum elements", chk_t4_2_4},
        {"T4.3", "T0 four-way equivalence", chk_t4_3},
        {"C4.4.1", "T1 via maximal radical colons", chk_c4_4_1},
        {"C4.4.2", "T1 via maximal spectrum elements", chk_c4_4_2},
        {"C4.4.3", "T1 with the zero point", chk_c4_4_3},
        {"C4.4.4", "T0 plus maximal spectrum gives T1", chk_c4_4_4},
        {"T4.5", "T1 iff spectrum equals maximal submodules", chk_t4_5},
        {"T4.6", "point varieties are irreducible closed", chk_t4_6},
        {"T4.7", "quasi-primary intersections give irreducible subsets", chk_t4_7},
        {"L4.8", "irreducible iff prime intersection on the prime spectrum", chk_l4_8},
        {"T4.9", "irreducible closed sets are point varieties", chk_t4_9},
        {"C4.10", "components correspond to minimal primes", chk_c4_10},
        {"T4.11", "components from minimal radicals over the annihilator", chk_t4_11},
        {"T4.13", "noetherian iff ACC on Zqp-radical submodules", chk_t4_13},
        {"T4.14.1", "chains of quasi-primary submodules stationary", chk_t4_14_1},
        {"T4.14.2", "finitely many minimal primes", chk_t4_14_2},
        {"T4.15", "spectral-space equivalences", chk_t4_15},
    };
    return catalog;
}

bool is_known_check_id(const std::string& id) {
    for (const auto& def : check_catalog())
        if (id == def.id) return true;
    return false;
}

Expected<std::unique_ptr<InstanceModel>> build_model(const InstanceDesc& desc) {
    auto m = std::make_unique<InstanceModel>();
    m->desc = desc;
    m->opt = desc.options;
    m->desc.ring.caps.max_ring_size = m->opt.ring_cap;
    m->desc.ring.caps.max_group_order = m->opt.group_cap;

    auto ring = GradedRing::validate(m->desc.ring);
    if (!ring.ok()) return ring.defect();
    m->R = std::make_unique<GradedRing>(std::move(ring.value()));

    if (m->desc.module) {
        ModuleDesc md = *m->desc.module;
        md.max_module_size = m->opt.ring_cap;
        auto mod = GradedModule::validate(*m->R, md);
        if (!mod.ok()) return mod.defect();
        m->M = std::make_unique<GradedModule>(std::move(mod.value()));
    } else {
        m->M = std::make_unique<GradedModule>(GradedModule::regular(*m->R));
    }

    auto ideals = enumerate_graded_ideals(*m->R, m->opt.ideal_cap);
    if (!ideals.ok()) return ideals.defect();
    m->ideals = std::move(ideals.value());
    auto subs = enumerate_graded_submodules(*m->M, m->opt.submodule_cap);
    if (!subs.ok()) return subs.defect();
    m->subs = std::move(subs.value());
    for (std::size_t i = 0; i < m->ideals.size(); ++i) m->ideal_idx.emplace(m->ideals[i], static_cast<int>(i));
    for (std::size_t i = 0; i < m->subs.size(); ++i) m->sub_idx.emplace(m->subs[i], static_cast<int>(i));

    for (std::size_t i = 0; i < m->ideals.size(); ++i) {
        int rad = m->find_ideal(graded_radical(*m->R, m->ideals[i]));
        if (rad < 0) throw InternalError("radical escaped the graded ideal lattice");
        m->ideal_radical.push_back(rad);
        m->ideal_class.push_back(classify_graded_ideal(*m->R, m->ideals[i], &m->ideals));
    }

    std::vector<ElementSet> colon_table;
    std::vector<char> prime_table;
    for (std::size_t k = 0; k < m->subs.size(); ++k) {
        ElementSet colon = colon_ideal(*m->M, m->subs[k]);
        int idx = m->find_ideal(colon);
        if (idx < 0) throw InternalError("colon ideal escaped the graded ideal lattice");
        m->sub_colon.push_back(idx);
        colon_table.push_back(std::move(colon));
    }
    for (std::size_t k = 0; k < m->subs.size(); ++k)
        prime_table.push_back(is_prime_submodule(*m->M, m->subs[k]) ? 1 : 0);
    ClassifyContext ctx;
    ctx.ideals = &m->ideals;
    ctx.submodules = &m->subs;
    ctx.colons = &colon_table;
    ctx.prime = &prime_table;
    ctx.require_primeful = m->opt.require_primeful;
    for (std::size_t k = 0; k < m->subs.size(); ++k) {
        ElementSet grm = ElementSet::full(m->M->size());
        for (std::size_t j = 0; j < m->subs.size(); ++j)
            if (prime_table[j] && m->subs[k].subset_of(m->subs[j])) grm &= m->subs[j];
        int grm_idx = m->find_sub(grm);
        if (grm_idx < 0) throw InternalError("submodule radical escaped the lattice");
        m->sub_grm.push_back(grm_idx);
        m->sub_class.push_back(classify_graded_submodule(*m->M, m->subs[k], ctx));
    }
    m->mult_module = is_multiplication_module(*m->M, &m->subs);
    m->ann_idx = m->find_ideal(annihilator(*m->M));
    if (m->ann_idx < 0) throw InternalError("annihilator escaped the graded ideal lattice");

    m->quotient = quotient_ring_total(*m->R, m->ideals[static_cast<std::size_t>(m->ann_idx)]);
    auto ideals_bar = enumerate_graded_ideals(m->quotient.ring, m->opt.ideal_cap);
    if (!ideals_bar.ok()) return ideals_bar.defect();
    m->ideals_bar = std::move(ideals_bar.value());
    for (std::size_t i = 0; i < m->ideals_bar.size(); ++i) m->ideal_bar_idx.emplace(m->ideals_bar[i], static_cast<int>(i));
    for (std::size_t i = 0; i < m->ideals.size(); ++i) {
        int bar = m->find_ideal_bar(push_ideal(m->quotient, m->ideals[i]));
        if (bar < 0) throw InternalError("pushforward ideal escaped the quotient lattice");
        m->ideal_bar_of.push_back(bar);
    }
    for (std::size_t i = 0; i < m->ideals_bar.size(); ++i) {
        int rad = m->find_ideal_bar(graded_radical(m->quotient.ring, m->ideals_bar[i]));
        if (rad < 0) throw InternalError("quotient radical escaped the lattice");
        m->ideal_bar_radical.push_back(rad);
    }

    for (std::size_t i = 0; i < m->ideals_bar.size(); ++i)
        m->ideal_bar_class.push_back(classify_graded_ideal(m->quotient.ring, m->ideals_bar[i], &m->ideals_bar));

    // Spectra come straight from the classified lattices.
    m->qpM.kind = SpaceKind::qpspec_module;
    m->specM.kind = SpaceKind::spec_module;
    m->qpM.ring = m->specM.ring = m->R.get();
    m->qpM.module = m->specM.module = m->M.get();
    const ElementSet module_full = ElementSet::full(m->M->size());
    for (std::size_t k = 0; k < m->subs.size(); ++k) {
        const ElementSet& colon = m->ideals[static_cast<std::size_t>(m->sub_colon[k])];
        const ElementSet& rad = m->ideals[static_cast<std::size_t>(m->ideal_radical[static_cast<std::size_t>(m->sub_colon[k])])];
        if (m->sub_class[k].in_qp_spec) {
            m->qpM.points.push_back(m->subs[k]);
            m->qpM.colons.push_back(colon);
            m->qpM.radicals.push_back(rad);
            m->qpM_pt.push_back(static_cast<int>(k));
        }
        if (m->sub_class[k].graded_prime && m->subs[k] != module_full) {
            m->specM.points.push_back(m->subs[k]);
            m->specM.colons.push_back(colon);
            m->specM.radicals.push_back(rad);
            m->specM_pt.push_back(static_cast<int>(k));
        }
    }
    m->qpR.kind = SpaceKind::qpspec_ring;
    m->specR.kind = SpaceKind::spec_ring;
    m->qpR.ring = m->specR.ring = m->R.get();
    for (std::size_t i = 0; i < m->ideals.size(); ++i) {
        const ElementSet& rad = m->ideals[static_cast<std::size_t>(m->ideal_radical[i])];
        if (m->ideal_class[i].graded_quasi_primary) {
            m->qpR.points.push_back(m->ideals[i]);
            m->qpR.radicals.push_back(rad);
            m->qpR_pt.push_back(static_cast<int>(i));
        }
        if (m->ideal_class[i].graded_prime) {
            m->specR.points.push_back(m->ideals[i]);
            m->specR.radicals.push_back(rad);
            m->specR_pt.push_back(static_cast<int>(i));
        }
    }
    m->qpRbar.kind = SpaceKind::qpspec_ring;
    m->specRbar.kind = SpaceKind::spec_ring;
    m->qpRbar.ring = m->specRbar.ring = &m->quotient.ring;
    for (std::size_t i = 0; i < m->ideals_bar.size(); ++i) {
        const ElementSet& rad = m->ideals_bar[static_cast<std::size_t>(m->ideal_bar_radical[i])];
        if (m->ideal_bar_class[i].graded_quasi_primary) {
            m->qpRbar.points.push_back(m->ideals_bar[i]);
            m->qpRbar.radicals.push_back(rad);
            m->qpRbar_pt.push_back(static_cast<int>(i));
        }
        if (m->ideal_bar_class[i].graded_prime) {
            m->specRbar.points.push_back(m->ideals_bar[i]);
            m->specRbar.radicals.push_back(rad);
            m->specRbar_pt.push_back(static_cast<int>(i));
        }
    }

    // Variety tables straight from the memoized radicals/colons.
    auto subset_ideal = [&](int a, int b) {
        return m->ideals[static_cast<std::size_t>(a)].subset_of(m->ideals[static_cast<std::size_t>(b)]);
    };
    auto subset_ideal_bar = [&](int a, int b) {
        return m->ideals_bar[static_cast<std::size_t>(a)].subset_of(m->ideals_bar[static_cast<std::size_t>(b)]);
    };
    for (std::size_t k = 0; k < m->subs.size(); ++k) {
        int rk = m->ideal_radical[static_cast<std::size_t>(m->sub_colon[k])];
        PointSubset vq(m->qpM.count());
        for (std::size_t i = 0; i < m->qpM.count(); ++i)
            if (subset_ideal(rk, m->radical_colon(static_cast<int>(i)))) vq.set(static_cast<Elem>(i));
        m->var_qpM.push_back(std::move(vq));
        PointSubset vs(m->specM.count());
        for (std::size_t i = 0; i < m->specM.count(); ++i)
            if (subset_ideal(m->sub_colon[k], m->sub_colon[static_cast<std::size_t>(m->specM_pt[i])]))
                vs.set(static_cast<Elem>(i));
        m->var_specM.push_back(std::move(vs));
    }
    for (std::size_t a = 0; a < m->ideals.size(); ++a) {
        PointSubset vr(m->qpR.count()), vc(m->qpR.count()), vp(m->specR.count());
        for (std::size_t i = 0; i < m->qpR.count(); ++i) {
            int pt = m->qpR_pt[i];
            if (subset_ideal(m->ideal_radical[a], m->ideal_radical[static_cast<std::size_t>(pt)]))
                vr.set(static_cast<Elem>(i));
            if (subset_ideal(static_cast<int>(a), pt)) vc.set(static_cast<Elem>(i));
        }
        for (std::size_t i = 0; i < m->specR.count(); ++i)
            if (subset_ideal(static_cast<int>(a), m->specR_pt[i])) vp.set(static_cast<Elem>(i));
        m->var_qpR.push_back(std::move(vr));
        m->var_qpR_cont.push_back(std::move(vc));
        m->var_specR.push_back(std::move(vp));
    }
    for (std::size_t a = 0; a < m->ideals_bar.size(); ++a) {
        PointSubset vr(m->qpRbar.count()), vc(m->qpRbar.count()), vp(m->specRbar.count());
        for (std::size_t i = 0; i < m->qpRbar.count(); ++i) {
            int pt = m->qpRbar_pt[i];
            if (subset_ideal_bar(m->ideal_bar_radical[a], m->ideal_bar_radical[static_cast<std::size_t>(pt)]))
                vr.set(static_cast<Elem>(i));
            if (subset_ideal_bar(static_cast<int>(a), pt)) vc.set(static_cast<Elem>(i));
        }
        for (std::size_t i = 0; i < m->specRbar.count(); ++i)
            if (subset_ideal_bar(static_cast<int>(a), m->specRbar_pt[i])) vp.set(static_cast<Elem>(i));
        m->var_qpRbar.push_back(std::move(vr));
        m->var_qpRbar_cont.push_back(std::move(vc));
        m->var_specRbar.push_back(std::move(vp));
    }

    // Element-level memos feeding the basic opens and the product identities.
    for (std::size_t i = 0; i < m->ideals.size(); ++i) {
        int im = m->find_sub(ideal_times_module(*m->M, m->ideals[i]));
        if (im < 0) throw InternalError("I*M escaped the submodule lattice");
        m->itm_of_ideal.push_back(im);
    }
    m->hom_index_R.assign(m->R->size(), -1);
    const auto& homs_r = m->R->homogeneous_list();
    for (std::size_t hi = 0; hi < homs_r.size(); ++hi) {
        m->hom_index_R[homs_r[hi]] = static_cast<int>(hi);
        Elem gen[1] = {homs_r[hi]};
        int ci = m->find_ideal(ideal_generated_by(*m->R, gen));
        if (ci < 0) throw InternalError("cyclic ideal escaped the lattice");
        m->cyc_R.push_back(ci);
    }
    m->hom_index_Rbar.assign(m->quotient.ring.size(), -1);
    const auto& homs_rbar = m->quotient.ring.homogeneous_list();
    for (std::size_t hi = 0; hi < homs_rbar.size(); ++hi) {
        m->hom_index_Rbar[homs_rbar[hi]] = static_cast<int>(hi);
        // r-bar Rbar is the pushforward of rR for any homogeneous preimage r.
        int ci = -1;
        for (std::size_t hj = 0; hj < homs_r.size() && ci < 0; ++hj)
            if (m->quotient.project[homs_r[hj]] == homs_rbar[hi])
                ci = m->ideal_bar_of[static_cast<std::size_t>(m->cyc_R[hj])];
        if (ci < 0) throw InternalError("homogeneous element of the quotient has no homogeneous preimage");
        m->cyc_Rbar.push_back(ci);
    }
    for (std::size_t hi = 0; hi < homs_r.size(); ++hi) {
        m->gx_qpR_rad.push_back(m->var_qpR[static_cast<std::size_t>(m->cyc_R[hi])].complement());
        m->gx_qpR_cont.push_back(m->var_qpR_cont[static_cast<std::size_t>(m->cyc_R[hi])].complement());
        m->gx_qpM.push_back(
            m->var_qpM[static_cast<std::size_t>(m->itm_of_ideal[static_cast<std::size_t>(m->cyc_R[hi])])].complement());
    }
    for (std::size_t hi = 0; hi < homs_rbar.size(); ++hi) {
        m->gx_qpRbar_rad.push_back(m->var_qpRbar[static_cast<std::size_t>(m->cyc_Rbar[hi])].complement());
        m->gx_qpRbar_cont.push_back(m->var_qpRbar_cont[static_cast<std::size_t>(m->cyc_Rbar[hi])].complement());
    }

    std::vector<ElementSet> cyc_r_sets, cyc_m_sets, cyc_rbar_sets;
    for (std::size_t hi = 0; hi < homs_r.size(); ++hi) {
        cyc_r_sets.push_back(m->ideals[static_cast<std::size_t>(m->cyc_R[hi])]);
        cyc_m_sets.push_back(m->subs[static_cast<std::size_t>(m->itm_of_ideal[static_cast<std::size_t>(m->cyc_R[hi])])]);
    }
    for (std::size_t hi = 0; hi < homs_rbar.size(); ++hi)
        cyc_rbar_sets.push_back(m->ideals_bar[static_cast<std::size_t>(m->cyc_Rbar[hi])]);

    const RingQpSemantics sem = m->opt.semantics;
    const RingQpSemantics alt =
        sem == RingQpSemantics::radical ? RingQpSemantics::containment : RingQpSemantics::radical;
    m->qpM_topo = build_topology(m->qpM, m->subs, sem, &cyc_m_sets);
    m->specM_topo = build_topology(m->specM, m->subs, sem, &cyc_m_sets);
    m->qpR_topo = build_topology(m->qpR, m->ideals, sem, &cyc_r_sets);
    m->qpR_topo_alt = build_topology(m->qpR, m->ideals, alt, &cyc_r_sets);
    m->specR_topo = build_topology(m->specR, m->ideals, sem, &cyc_r_sets);
    m->qpRbar_topo = build_topology(m->qpRbar, m->ideals_bar, sem, &cyc_rbar_sets);
    m->specRbar_topo = build_topology(m->specRbar, m->ideals_bar, sem, &cyc_rbar_sets);

    for (std::size_t p = 0; p < m->ideals.size(); ++p) {
        if (!m->ideal_class[p].graded_prime) continue;
        PointSubset fiber(m->qpM.count());
        for (std::size_t i = 0; i < m->qpM.count(); ++i)
            if (m->radical_colon(static_cast<int>(i)) == static_cast<int>(p)) fiber.set(static_cast<Elem>(i));
        m->fibers.emplace_back(static_cast<int>(p), std::move(fiber));
    }

    m->maps = natural_maps(*m->M, m->subs, m->quotient, m->qpM, m->qpM_topo, m->specM, m->specM_topo, m->qpRbar,
                           m->qpRbar_topo, m->specRbar, m->specRbar_topo);
    m->prof_phi = map_profile(m->maps.phi);
    m->prof_phi_r = map_profile(m->maps.phi_r);
    m->prof_psi_q = map_profile(m->maps.psi_q);
    m->prof_psi = map_profile(m->maps.psi);
    m->mprof = module_profile(*m->M, m->ideals, m->subs, m->qpM);

    m->tp_qpM = topology_profile(m->qpM_topo);
    m->tp_specM = topology_profile(m->specM_topo);
    m->tp_qpR = topology_profile(m->qpR_topo);
    m->tp_qpR_alt = topology_profile(m->qpR_topo_alt);
    m->tp_qpRbar = topology_profile(m->qpRbar_topo);
    m->tp_specRbar = topology_profile(m->specRbar_topo);
    return m;
}

Expected<CheckReport> run_check_suite(const InstanceDesc& desc) {
    auto model = build_model(desc);
    if (!model.ok()) return model.defect();
    const InstanceModel& m = *model.value();
    CheckReport rep;
    rep.instance = desc.name.empty() ? "unnamed" : desc.name;
    for (const auto& def : check_catalog()) {
        auto start = std::chrono::steady_clock::now();
        CheckOutcome out = def.fn(m);
        out.micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
        out.witness = sanitize(out.witness);
        out.note = sanitize(out.note);
        rep.results.push_back({def.id, std::move(out)});
    }
    return rep;
}

std::string render_machine_line(const std::string& instance, const CheckResult& r) {
    std::string line = "check " + r.id + " " + instance + " " + check_status_name(r.out.status);
    if (!r.out.witness.empty()) line += " witness=" + r.out.witness;
    if (!r.out.note.empty()) line += " note=" + r.out.note;
    return line;
}

namespace {

bool parse_machine_line(const std::string& line, std::string& id, std::string& instance, CheckOutcome& out) {
    std::istringstream in(line);
    std::string tag, status;
    if (!(in >> tag >> id >> instance >> status) || tag != "check") return false;
    if (status == "PASS") out.status = CheckStatus::pass;
    else if (status == "FAIL") out.status = CheckStatus::fail;
    else if (status == "SKIPPED") out.status = CheckStatus::skipped;
    else return false;
    std::string kv;
    while (in >> kv) {
        if (kv.rfind("witness=", 0) == 0) out.witness = kv.substr(8);
        else if (kv.rfind("note=", 0) == 0) out.note = kv.substr(5);
        else return false;
    }
    return true;
}

} // namespace

Expected<CheckReport> run_check_suite_cached(const InstanceDesc& desc, const std::string& cache_dir) {
    if (cache_dir.empty()) return run_check_suite(desc);
    std::string key = instance_content_hash(desc);
    std::filesystem::path path = std::filesystem::path(cache_dir) / (key + ".gzcache");
    std::string canonical = serialize_instance(desc);

    std::ifstream in(path);
    if (in) {
        std::string header;
        std::getline(in, header);
        if (header == "gzariski-cache 1 " + key) {
            std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            std::string marker = "\n%%\n";
            std::size_t sep = body.find(marker);
            if (sep != std::string::npos && body.substr(0, sep + 1) == canonical) {
                CheckReport rep;
                rep.instance = desc.name.empty() ? "unnamed" : desc.name;
                std::istringstream lines(body.substr(sep + marker.size()));
                std::string line;
                bool ok = true;
                std::size_t idx = 0;
                const auto& catalog = check_catalog();
                while (std::getline(lines, line)) {
                    if (line.empty()) continue;
                    std::string id, instance;
                    CheckOutcome out;
                    if (!parse_machine_line(line, id, instance, out) || idx >= catalog.size() ||
                        id != catalog[idx].id || instance != rep.instance) {
                        ok = false;
                        break;
                    }
                    rep.results.push_back({id, std::move(out)});
                    ++idx;
                }
                if (ok && idx == catalog.size()) return rep;
            }
        }
    }

    auto rep = run_check_suite(desc);
    if (!rep.ok()) return rep;
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    // Unique scratch name per writer; the final rename is what publishes.
    static std::atomic<unsigned> counter{0};
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(static_cast<unsigned long long>(
               std::hash<std::thread::id>{}(std::this_thread::get_id()))) +
           "-" + std::to_string(counter.fetch_add(1));
    {
        std::ofstream outf(tmp, std::ios::trunc);
        outf << "gzariski-cache 1 " << key << "\n" << canonical << "%%\n";
        for (const auto& r : rep.value().results) outf << render_machine_line(rep.value().instance, r) << "\n";
    }
    std::filesystem::rename(tmp, path, ec);
    return rep;
}

namespace {

bool selected(const std::string& id, const std::vector<std::string>& selection) {
    if (selection.empty()) return true;
    return std::find(selection.begin(), selection.end(), id) != selection.end();
}

} // namespace

std::string emit_report(const std::vector<CheckReport>& reports, ReportFormat format,
                        const std::vector<std::string>& selection) {
    std::ostringstream out;
    if (format == ReportFormat::machine) {
        for (const auto& rep : reports)
            for (const auto& r : rep.results)
                if (selected(r.id, selection)) out << render_machine_line(rep.instance, r) << "\n";
        return out.str();
    }

    out << "# gzariski verify report\n";
    out << "# convention: for a graded ideal I containing Ann(M), I-bar is its image in R/Ann(M)\n";
    out << "# ring qp-variety semantics default: radical (see the semantics notes on affected checks)\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "# subset quantifiers: exhaustive up to 12 points, else sampled (seed=%016llx, count=%llu)\n",
                  static_cast<unsigned long long>(kSampleSeed), static_cast<unsigned long long>(kSampleCount));
    out << buf;
    out << "# not checked: the preimage identity for the undefined comparison map into the prime submodule spectrum\n";
    std::size_t npass = 0, nfail = 0, nskip = 0;
    for (const auto& rep : reports) {
        out << "\ninstance " << rep.instance << "\n";
        for (const auto& r : rep.results) {
            if (!selected(r.id, selection)) continue;
            switch (r.out.status) {
                case CheckStatus::pass: ++npass; break;
                case CheckStatus::fail: ++nfail; break;
                case CheckStatus::skipped: ++nskip; break;
            }
            out << "  " << r.id;
            for (std::size_t pad = r.id.size(); pad < 9; ++pad) out << ' ';
            out << check_status_name(r.out.status);
            if (!r.out.witness.empty()) out << "  witness=" << r.out.witness;
            if (!r.out.note.empty()) out << "  note=" << r.out.note;
            out << "\n";
        }
    }
    out << "\nsummary: " << npass << " pass, " << nfail << " fail, " << nskip << " skipped\n";
    return out.str();
}

int report_exit_code(const std::vector<CheckReport>& reports, const std::vector<std::string>& selection) {
    for (const auto& rep : reports)
        for (const auto& r : rep.results)
            if (selected(r.id, selection) && r.out.status == CheckStatus::fail) return 1;
    return 0;
}

} // namespace gz

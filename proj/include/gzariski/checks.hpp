#ifndef GZARISKI_CHECKS_HPP
#define GZARISKI_CHECKS_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gzariski/corpus.hpp"
#include "gzariski/instance.hpp"
#include "gzariski/spectral_maps.hpp"

namespace gz {

enum class CheckStatus { pass, fail, skipped };
const char* check_status_name(CheckStatus s);

struct CheckOutcome {
    CheckStatus status = CheckStatus::pass;
    std::string witness;
    std::string note;
    std::int64_t micros = 0;
};

struct CheckResult {
    std::string id;
    CheckOutcome out;
};

struct CheckReport {
    std::string instance;
    std::vector<CheckResult> results; // fixed catalog order
};

// Everything computed once per instance and shared by the checks: carriers,
// lattices with per-member classification, the six spectra with their
// topologies, memoized variety tables, fibers, and the natural maps.
struct InstanceModel {
    InstanceDesc desc;
    InstanceOptions opt;

    std::unique_ptr<GradedRing> R;
    std::unique_ptr<GradedModule> M;

    std::vector<ElementSet> ideals;
    std::vector<ElementSet> subs;
    std::unordered_map<ElementSet, int, ElementSetHash> ideal_idx, sub_idx;

    std::vector<int> ideal_radical;   // ideal index -> ideal index
    std::vector<IdealClass> ideal_class;
    std::vector<int> sub_colon;       // submodule index -> ideal index
    std::vector<int> sub_grm;         // submodule index -> submodule index (Gr_M)
    std::vector<SubmoduleClass> sub_class;
    bool mult_module = false;
    int ann_idx = -1;

    RingQuotient quotient;
    std::vector<ElementSet> ideals_bar;
    std::unordered_map<ElementSet, int, ElementSetHash> ideal_bar_idx;
    std::vector<int> ideal_bar_of;      // R ideal index -> Rbar ideal index
    std::vector<int> ideal_bar_radical; // Rbar ideal index -> Rbar ideal index
    std::vector<IdealClass> ideal_bar_class;

    SpectrumSpace qpM, specM, qpR, specR, qpRbar, specRbar;
    FiniteTopology qpM_topo, specM_topo, qpR_topo, qpR_topo_alt, specR_topo, qpRbar_topo, specRbar_topo;
    std::vector<int> qpM_pt, specM_pt;       // point -> submodule index
    std::vector<int> qpR_pt, specR_pt;       // point -> R ideal index
    std::vector<int> qpRbar_pt, specRbar_pt; // point -> Rbar ideal index

    std::vector<PointSubset> var_qpM, var_specM;           // per submodule index
    std::vector<PointSubset> var_qpR, var_qpR_cont, var_specR;       // per R ideal index
    std::vector<PointSubset> var_qpRbar, var_qpRbar_cont, var_specRbar; // per Rbar ideal index

    std::vector<std::pair<int, PointSubset>> fibers; // (prime ideal index, qp-spectrum fiber)

    // Element-level memos: I*M per ideal, cyclic seeds rR / rM / r-bar-Rbar,
    // and the basic opens they generate on the three qp spaces.
    std::vector<int> itm_of_ideal;   // ideal index -> submodule index of I*M
    std::vector<int> hom_index_R;    // element -> position in R's homogeneous list, -1 otherwise
    std::vector<int> hom_index_Rbar;
    std::vector<int> cyc_R;          // per R hom position: ideal index of rR
    std::vector<int> cyc_Rbar;       // per Rbar hom position: ideal index of r-bar Rbar
    std::vector<PointSubset> gx_qpR_rad, gx_qpR_cont; // per R hom position
    std::vector<PointSubset> gx_qpM;                  // per R hom position
    std::vector<PointSubset> gx_qpRbar_rad, gx_qpRbar_cont; // per Rbar hom position

    NaturalMaps maps;
    MapProfile prof_phi, prof_phi_r, prof_psi_q, prof_psi;
    ModuleProfile mprof;
    TopologyProfile tp_qpM, tp_specM, tp_qpR, tp_qpR_alt, tp_qpRbar, tp_specRbar;

    const PointSubset& gx_ring(Elem r, RingQpSemantics sem) const {
        int hi = hom_index_R[static_cast<std::size_t>(r)];
        return (sem == RingQpSemantics::radical ? gx_qpR_rad : gx_qpR_cont)[static_cast<std::size_t>(hi)];
    }
    const PointSubset& gx_module(Elem r) const {
        return gx_qpM[static_cast<std::size_t>(hom_index_R[static_cast<std::size_t>(r)])];
    }
    const PointSubset& gx_rbar(Elem rbar, RingQpSemantics sem) const {
        int hi = hom_index_Rbar[static_cast<std::size_t>(rbar)];
        return (sem == RingQpSemantics::radical ? gx_qpRbar_rad : gx_qpRbar_cont)[static_cast<std::size_t>(hi)];
    }

    RingQpSemantics semantics() const { return opt.semantics; }
    RingQpSemantics alt_semantics() const {
        return opt.semantics == RingQpSemantics::radical ? RingQpSemantics::containment : RingQpSemantics::radical;
    }
    int radical_colon(int point) const { return ideal_radical[static_cast<std::size_t>(sub_colon[static_cast<std::size_t>(qpM_pt[static_cast<std::size_t>(point)])])]; }
    int find_sub(const ElementSet& s) const;
    int find_ideal(const ElementSet& s) const;
    int find_ideal_bar(const ElementSet& s) const;
};

Expected<std::unique_ptr<InstanceModel>> build_model(const InstanceDesc& desc);

struct CheckDef {
    const char* id;
    const char* title;
    CheckOutcome (*fn)(const InstanceModel&);
};

// Fixed catalog; report lines are emitted in this order.
const std::vector<CheckDef>& check_catalog();
bool is_known_check_id(const std::string& id);

Expected<CheckReport> run_check_suite(const InstanceDesc& desc);

// Content-addressed spectra/report cache; a hit is verified against the
// canonical serialization and never changes a report byte.
Expected<CheckReport> run_check_suite_cached(const InstanceDesc& desc, const std::string& cache_dir);

enum class ReportFormat { text, machine };

std::string emit_report(const std::vector<CheckReport>& reports, ReportFormat format,
                        const std::vector<std::string>& selection = {});

// 0 = all PASS/SKIPPED, 1 = any FAIL (restricted to the selection if given).
int report_exit_code(const std::vector<CheckReport>& reports, const std::vector<std::string>& selection = {});

std::string render_machine_line(const std::string& instance, const CheckResult& r);

// Deterministic subset sampling policy: exhaustive up to 12 points, else a
// fixed-seed pseudo-random sample alongside the structured subsets.
inline constexpr std::uint64_t kSampleSeed = 0x9e3779b97f4a7c15ull;
inline constexpr std::size_t kSampleCount = 4096;

} // namespace gz

#endif

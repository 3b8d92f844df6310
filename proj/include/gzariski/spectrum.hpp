#ifndef GZARISKI_SPECTRUM_HPP
#define GZARISKI_SPECTRUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "gzariski/graded_module.hpp"

namespace gz {

enum class SpaceKind { spec_ring, qpspec_ring, spec_module, qpspec_module };

// The ring qp-variety has two readings that genuinely disagree on finite
// instances: membership by containment (I subset q) or by radical
// (Gr(q) contains Gr(I)). Module qp-varieties always compare radicals of
// colons and ignore this switch.
enum class RingQpSemantics { radical, containment };

const char* space_kind_name(SpaceKind k);
const char* semantics_name(RingQpSemantics s);

struct SpectrumOptions {
    bool require_primeful = true; // qp-spectrum membership gate; drop for sensitivity runs
    std::size_t cap = std::size_t{1} << 16;
};

using PointSubset = ElementSet; // bitset over space points

// A named finite point set: graded prime / quasi-primary ideals of a ring, or
// graded prime / quasi-primary-primeful submodules of a module, each point
// carrying its radical metadata (Gr(q), resp. Gr((Q:_R M))).
struct SpectrumSpace {
    SpaceKind kind = SpaceKind::spec_ring;
    const GradedRing* ring = nullptr;     // ideal carrier (for module kinds: the base ring)
    const GradedModule* module = nullptr; // null for ring kinds
    std::vector<ElementSet> points;
    std::vector<ElementSet> colons;   // module kinds: (Q :_R M) per point
    std::vector<ElementSet> radicals; // Gr(q) or Gr((Q:_R M)) per point

    std::size_t count() const { return points.size(); }
    std::size_t carrier_size() const { return module ? module->size() : ring->size(); }
    std::string point_print(int i) const;
    std::string subset_print(const PointSubset& y) const;
    int find_point(const ElementSet& p) const;
};

Expected<SpectrumSpace> build_spectrum(const GradedRing& r, const GradedModule* m, SpaceKind kind,
                                       const SpectrumOptions& opt = {});

// Membership per the space kind: containment for Spec_g(R), colon containment
// for Spec_g(M), radical/containment per `sem` for qp.Spec_g(R), and
// Gr((Q:M)) >= Gr((K:M)) for qp.Spec_g(M).
PointSubset variety(const SpectrumSpace& space, const ElementSet& seed,
                    RingQpSemantics sem = RingQpSemantics::radical);

struct AxiomIssue {
    std::string what;
    std::string witness;
};

// Explicit closed-set family: the varieties of every graded ideal/submodule.
// Axiom verification results are data, not errors.
struct FiniteTopology {
    const SpectrumSpace* space = nullptr;
    RingQpSemantics semantics = RingQpSemantics::radical;
    std::vector<PointSubset> closed; // deduplicated, canonical order
    std::vector<int> seed_of;        // index into the seed lattice witnessing each closed set
    std::vector<PointSubset> basic;  // deduplicated basic opens GX_r, r homogeneous
    std::vector<Elem> basic_rep;     // witness r per basic open
    std::vector<AxiomIssue> axiom_issues;

    bool is_closed(const PointSubset& y) const;
    bool is_open(const PointSubset& y) const;
    std::vector<PointSubset> open_sets() const;
};

// `hom_cyclic`, when given, supplies the cyclic seed (rR or rM) per entry of
// the ring's homogeneous list so basic opens need not re-close them.
FiniteTopology build_topology(const SpectrumSpace& space, const std::vector<ElementSet>& seeds,
                              RingQpSemantics sem = RingQpSemantics::radical,
                              const std::vector<ElementSet>* hom_cyclic = nullptr);

// Smallest member of the closed family containing Y.
PointSubset closure(const FiniteTopology& t, const PointSubset& y);

// Elementwise intersection of the points in Y; whole carrier when Y is empty.
ElementSet intersection_of_points(const SpectrumSpace& space, const PointSubset& y);

// Complement of the variety of rR (ring spaces) or rM (module spaces).
PointSubset basic_open(const SpectrumSpace& space, Elem r, RingQpSemantics sem = RingQpSemantics::radical);

// Intersection of the qp-spectrum points lying in the variety of K; M when
// the variety is empty.
ElementSet zqp_radical(const SpectrumSpace& qp_module_space, const ElementSet& k);
bool is_zqp_radical_submodule(const SpectrumSpace& qp_module_space, const ElementSet& k);

// Greedy finite subcover of `target` drawn from the basic opens contained in
// it; nullopt when they fail to cover (a base-property violation).
std::optional<std::vector<int>> basic_subcover(const FiniteTopology& t, const PointSubset& target);
bool is_quasi_compact(const FiniteTopology& t, const PointSubset& open_set);

bool is_irreducible_subset(const FiniteTopology& t, const PointSubset& y);

struct TopologyProfile {
    bool is_t0 = false;
    bool is_t1 = false;
    bool is_connected = false;
    bool is_irreducible_space = false;
    bool is_noetherian = false;
    bool is_quasi_compact = false;
    bool is_spectral = false;
    // Hochster's four conditions, evaluated independently.
    bool hochster_t0 = false;
    bool hochster_quasi_compact = false;
    bool hochster_qc_base = false;
    bool hochster_generic_points = false;
    std::vector<PointSubset> irreducible_closed;
    std::vector<int> generic_point; // per irreducible closed set; -1 = none
    std::vector<PointSubset> irreducible_components;
    int longest_closed_chain = 0;
    std::string note;
};

TopologyProfile topology_profile(const FiniteTopology& t);

} // namespace gz

#endif

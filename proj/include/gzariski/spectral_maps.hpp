#ifndef GZARISKI_SPECTRAL_MAPS_HPP
#define GZARISKI_SPECTRAL_MAPS_HPP

#include <string>
#include <vector>

#include "gzariski/spectrum.hpp"

namespace gz {

// Finite function between spectrum spaces; profile flags are computed purely
// set-theoretically against the explicit topologies.
struct SpectrumMap {
    std::string name;
    const SpectrumSpace* src = nullptr;
    const FiniteTopology* src_topo = nullptr;
    const SpectrumSpace* dst = nullptr;
    const FiniteTopology* dst_topo = nullptr;
    std::vector<int> to;               // -1 marks a well-definedness failure
    std::vector<std::string> defects;  // reported as check data, never thrown

    bool well_defined() const;
    PointSubset image(const PointSubset& y) const;
    PointSubset preimage(const PointSubset& y) const;
};

struct MapProfile {
    bool injective = false;
    bool surjective = false;
    bool continuous = false;
    bool closed_map = false;
    bool open_map = false;
    bool homeomorphism = false;
};

MapProfile map_profile(const SpectrumMap& f);

// Image of an ideal of R in the quotient ring.
ElementSet push_ideal(const RingQuotient& q, const ElementSet& ideal);

struct NaturalMaps {
    SpectrumMap psi_q; // qp.Spec_g(M)   -> qp.Spec_g(R/Ann),  Q |-> (Q:M)-bar
    SpectrumMap phi_r; // qp.Spec_g(R/Ann) -> Spec_g(R/Ann),   q |-> Gr(q)
    SpectrumMap phi;   // qp.Spec_g(M)   -> Spec_g(R/Ann),     Q |-> (Gr_M(Q):M)-bar
    SpectrumMap psi;   // Spec_g(M)      -> Spec_g(R/Ann),     P |-> (P:M)-bar
    std::vector<int> phi_via_composition; // phi_r after psi_q; compared against phi by the checks
};

NaturalMaps natural_maps(const GradedModule& m, const std::vector<ElementSet>& all_subs,
                         const RingQuotient& quotient,
                         const SpectrumSpace& qp_m, const FiniteTopology& qp_m_topo,
                         const SpectrumSpace& spec_m, const FiniteTopology& spec_m_topo,
                         const SpectrumSpace& qp_rbar, const FiniteTopology& qp_rbar_topo,
                         const SpectrumSpace& spec_rbar, const FiniteTopology& spec_rbar_topo);

struct ModuleProfile {
    bool quasi_primaryful = false;
    bool graded_primeful_module = false;
};

// Direct quantifier evaluation; the surjectivity cross-check lives in the
// check suite, not here.
ModuleProfile module_profile(const GradedModule& m, const std::vector<ElementSet>& ideals,
                             const std::vector<ElementSet>& subs, const SpectrumSpace& qp_m);

} // namespace gz

#endif

#ifndef GZARISKI_GRADED_MODULE_HPP
#define GZARISKI_GRADED_MODULE_HPP

#include <span>
#include <string>
#include <vector>

#include "gzariski/graded_ring.hpp"

namespace gz {

// Action constant: i-th generator of ring component g applied to the j-th
// generator of module component h, landing in module component g*h.
struct ActEntry {
    int g = 0;
    int h = 0;
    int i = 0;
    int j = 0;
    std::vector<int> image;
    int image_component = -1;
};

struct ModuleDesc {
    std::vector<std::vector<int>> components;
    std::vector<ActEntry> act;
    std::uint32_t max_module_size = 4096;
};

// Finite graded module over a validated GradedRing. Same dense tuple
// encoding as the ring; the scalar action is checked exhaustively.
class GradedModule {
public:
    static Expected<GradedModule> validate(const GradedRing& ring, const ModuleDesc& desc);
    static GradedModule regular(const GradedRing& ring); // M = R over itself

    const GradedRing& ring() const { return *ring_; }
    int component_count() const { return ring_->component_count(); }
    const std::vector<int>& factors(int g) const { return factors_[static_cast<std::size_t>(g)]; }

    int slot_count() const { return static_cast<int>(slot_mod_.size()); }
    int slot_component(int s) const { return slot_comp_[static_cast<std::size_t>(s)]; }
    int slot_of(int g, int i) const { return comp_first_slot_[static_cast<std::size_t>(g)] + i; }

    std::uint32_t size() const { return size_; }
    bool is_zero_module() const { return size_ == 1; }

    Elem zero() const { return 0; }
    int residue(Elem e, int s) const {
        return static_cast<int>((e / stride_[static_cast<std::size_t>(s)]) % static_cast<std::uint32_t>(slot_mod_[static_cast<std::size_t>(s)]));
    }
    Elem from_residues(std::span<const int> r) const;

    Elem add(Elem a, Elem b) const {
        return add_table_.empty() ? add_slow(a, b) : add_table_[static_cast<std::size_t>(a) * size_ + b];
    }
    Elem neg(Elem a) const { return neg_table_[a]; }
    Elem act(Elem r, Elem m) const {
        return act_table_.empty() ? act_slow(r, m) : act_table_[static_cast<std::size_t>(r) * size_ + m];
    }
    Elem scalar(long long k, Elem a) const;

    bool is_homogeneous(Elem e) const;
    int homogeneous_component(Elem e) const;
    Elem component_part(Elem e, int g) const;

    const std::vector<Elem>& homogeneous_list() const { return hom_list_; }
    const ElementSet& homogeneous_set() const { return hom_set_; }
    const std::vector<Elem>& canonical_order() const { return canon_order_; }
    const std::string& print(Elem e) const { return prints_[e]; }

    GradedModule() = default; // empty until validate() fills it

private:
    Elem add_slow(Elem a, Elem b) const;
    Elem act_slow(Elem r, Elem m) const;
    void build_caches();

    const GradedRing* ring_ = nullptr;
    std::vector<std::vector<int>> factors_;
    std::vector<int> slot_comp_;
    std::vector<int> slot_mod_;
    std::vector<int> comp_first_slot_;
    std::vector<std::uint32_t> stride_;
    std::uint32_t size_ = 0;
    std::vector<Elem> act_slot_; // ring_slot x module_slot basis actions

    std::vector<Elem> add_table_;
    std::vector<Elem> act_table_;
    std::vector<Elem> neg_table_;
    std::vector<Elem> hom_list_;
    ElementSet hom_set_;
    std::vector<Elem> canon_order_;
    std::vector<std::string> prints_;
};

ElementSet submodule_generated_by(const GradedModule& m, std::span<const Elem> gens);
ElementSet submodule_sum(const GradedModule& m, const ElementSet& a, const ElementSet& b);

Expected<std::vector<ElementSet>> enumerate_graded_submodules(const GradedModule& m,
                                                              std::size_t cap = std::size_t{1} << 16);

// (K :_R M) = scalars sending all of M into K; a graded ideal of R.
// The annihilator is the K = 0 case.
ElementSet colon_ideal(const GradedModule& m, const ElementSet& k);
ElementSet annihilator(const GradedModule& m);

// IM: submodule generated by homogeneous products a*x, a in I, x in h(M).
ElementSet ideal_times_module(const GradedModule& m, const ElementSet& ideal);

bool is_graded_submodule(const GradedModule& m, const ElementSet& s);
bool is_prime_submodule(const GradedModule& m, const ElementSet& k);

// Gr_M(K): intersection of all graded prime submodules containing K,
// the whole module when none exist.
ElementSet graded_submodule_radical(const GradedModule& m, const ElementSet& k,
                                    const std::vector<ElementSet>* all_subs = nullptr);

struct SubmoduleClass {
    bool proper = false;
    bool graded_prime = false;
    bool graded_quasi_primary = false;
    bool graded_primeful = false;
    bool maximal = false;
    bool in_qp_spec = false;
};

struct ClassifyContext {
    const std::vector<ElementSet>* ideals = nullptr;     // graded ideals of the ring
    const std::vector<ElementSet>* submodules = nullptr; // graded submodules of M
    const std::vector<ElementSet>* colons = nullptr;     // optional, parallel to submodules
    const std::vector<char>* prime = nullptr;            // optional, parallel to submodules
    bool require_primeful = true;                        // sensitivity switch for qp-spectrum membership
};

SubmoduleClass classify_graded_submodule(const GradedModule& m, const ElementSet& k,
                                         const ClassifyContext& ctx = {});

bool is_multiplication_module(const GradedModule& m, const std::vector<ElementSet>* all_subs = nullptr);
std::vector<ElementSet> graded_maximal_submodules(const GradedModule& m,
                                                  const std::vector<ElementSet>* all_subs = nullptr);

std::vector<Elem> min_homogeneous_generators(const GradedModule& m, const ElementSet& sub);
std::string print_element_set(const GradedModule& m, const ElementSet& s);
std::string print_generators(const GradedModule& m, const ElementSet& sub);

} // namespace gz

#endif

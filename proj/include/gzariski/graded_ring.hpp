#ifndef GZARISKI_GRADED_RING_HPP
#define GZARISKI_GRADED_RING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gzariski/element_set.hpp"
#include "gzariski/expected.hpp"
#include "gzariski/finite_group.hpp"

namespace gz {

// One structure constant: product of the i-th cyclic generator of component g
// with the j-th cyclic generator of component h, given as a residue tuple in
// component g*h. `image_component` other than -1 asserts where the product is
// claimed to land; anything but g*h is a grading violation.
struct MulEntry {
    int g = 0;
    int h = 0;
    int i = 0;
    int j = 0;
    std::vector<int> image;
    int image_component = -1;
};

struct RingCaps {
    std::uint32_t max_ring_size = 4096;
    int max_group_order = 16;
};

struct RingDesc {
    GroupDesc group;
    std::vector<std::vector<int>> components; // per group element: cyclic orders >= 1
    std::vector<MulEntry> mul;                // omitted generator pairs multiply to zero
    int one_component = 0;
    std::vector<int> one_tuple;
    RingCaps caps;
};

// Finite G-graded commutative ring with unity. Elements are dense residue
// tuples over the cyclic factors of all components, addressed as mixed-radix
// indices; every axiom (commutativity, associativity, distributivity, unity,
// grading) is checked exhaustively by validate().
class GradedRing {
public:
    static Expected<GradedRing> validate(const RingDesc& desc);

    const FiniteGroup& group() const { return group_; }
    int component_count() const { return group_.order(); }
    const std::vector<int>& factors(int g) const { return factors_[static_cast<std::size_t>(g)]; }

    int slot_count() const { return static_cast<int>(slot_mod_.size()); }
    int slot_component(int s) const { return slot_comp_[static_cast<std::size_t>(s)]; }
    int slot_modulus(int s) const { return slot_mod_[static_cast<std::size_t>(s)]; }
    int slot_of(int g, int i) const { return comp_first_slot_[static_cast<std::size_t>(g)] + i; }

    std::uint32_t size() const { return size_; }
    bool is_zero_ring() const { return size_ == 1; }

    Elem zero() const { return 0; }
    Elem one() const { return one_; }

    int residue(Elem e, int s) const {
        return static_cast<int>((e / stride_[static_cast<std::size_t>(s)]) % static_cast<std::uint32_t>(slot_mod_[static_cast<std::size_t>(s)]));
    }
    Elem from_residues(std::span<const int> r) const;

    Elem add(Elem a, Elem b) const {
        return add_table_.empty() ? add_slow(a, b) : add_table_[static_cast<std::size_t>(a) * size_ + b];
    }
    Elem neg(Elem a) const { return neg_table_[a]; }
    Elem mul(Elem a, Elem b) const {
        return mul_table_.empty() ? mul_slow(a, b) : mul_table_[static_cast<std::size_t>(a) * size_ + b];
    }
    Elem scalar(long long k, Elem a) const;

    bool is_homogeneous(Elem e) const;
    // Component of a homogeneous element; zero reports the identity component.
    int homogeneous_component(Elem e) const;
    Elem component_part(Elem e, int g) const;

    const std::vector<Elem>& homogeneous_list() const { return hom_list_; }
    const ElementSet& homogeneous_set() const { return hom_set_; }
    // All elements ordered by canonical print form.
    const std::vector<Elem>& canonical_order() const { return canon_order_; }
    const std::string& print(Elem e) const { return prints_[e]; }

    RingDesc to_desc() const;

    GradedRing() = default; // empty until validate() fills it

private:
    Elem add_slow(Elem a, Elem b) const;
    Elem mul_slow(Elem a, Elem b) const;
    void build_caches();

    FiniteGroup group_;
    std::vector<std::vector<int>> factors_;
    std::vector<int> slot_comp_;
    std::vector<int> slot_mod_;
    std::vector<int> comp_first_slot_;
    std::vector<std::uint32_t> stride_;
    std::uint32_t size_ = 0;
    Elem one_ = 0;
    std::vector<Elem> mul_slot_; // slot_count^2 basis products

    std::vector<Elem> add_table_;
    std::vector<Elem> mul_table_;
    std::vector<Elem> neg_table_;
    std::vector<Elem> hom_list_;
    ElementSet hom_set_;
    std::vector<Elem> canon_order_;
    std::vector<std::string> prints_;
};

inline const ElementSet& homogeneous_elements(const GradedRing& r) { return r.homogeneous_set(); }

// Smallest subset containing `gens` that is closed under addition and under
// multiplication by every ring element. Throws PreconditionError on a
// non-homogeneous generator.
ElementSet ideal_generated_by(const GradedRing& r, std::span<const Elem> gens);

// Complete list of graded ideals: closure of the homogeneous-cyclic ideals
// plus (0) under ideal sum, in canonical order (cardinality, then print).
Expected<std::vector<ElementSet>> enumerate_graded_ideals(const GradedRing& r, std::size_t cap = std::size_t{1} << 16);

ElementSet ideal_sum(const GradedRing& r, const ElementSet& a, const ElementSet& b);

// Gr(I): elements all of whose homogeneous components have some power in I.
// The power search walks a^1, a^2, ... and stops at the first repeat.
ElementSet graded_radical(const GradedRing& r, const ElementSet& ideal);

struct IdealClass {
    bool proper = false;
    bool graded_prime = false;
    bool graded_quasi_primary = false;
    bool graded_maximal = false;
};

// Flags computed from the homogeneous-element definitions. quasi_primary is
// additionally cross-checked against primality of Gr(I); a mismatch throws
// InternalError. `all_ideals` avoids re-enumerating for the maximality scan.
IdealClass classify_graded_ideal(const GradedRing& r, const ElementSet& ideal,
                                 const std::vector<ElementSet>* all_ideals = nullptr);

bool is_graded_ideal(const GradedRing& r, const ElementSet& s);
bool is_graded_prime_ideal(const GradedRing& r, const ElementSet& s);
bool is_nilpotent(const GradedRing& r, Elem a);
bool is_unit(const GradedRing& r, Elem a);

std::vector<Elem> min_homogeneous_generators(const GradedRing& r, const ElementSet& ideal);
std::string print_element_set(const GradedRing& r, const ElementSet& s);
std::string print_generators(const GradedRing& r, const ElementSet& ideal);

struct RingQuotient {
    GradedRing ring;
    std::vector<Elem> project; // element of R -> element of quotient
};

// R/I with components R_g/(I cap R_g); the projection is verified to be a
// surjective grading-preserving ring homomorphism with kernel I.
Expected<RingQuotient> quotient_ring(const GradedRing& r, const ElementSet& ideal);
// Same, but permits I = R (quotient is the one-element zero ring).
RingQuotient quotient_ring_total(const GradedRing& r, const ElementSet& ideal);

} // namespace gz

#endif

#ifndef GZARISKI_TESTS_ORACLE_HPP
#define GZARISKI_TESTS_ORACLE_HPP

#include <functional>
#include <vector>

#include "gzariski/graded_module.hpp"

// Brute-force references, kept independent of the library's enumeration and
// radical code paths: the main enumerators close homogeneous-cyclic pieces
// under sums, the oracle filters every additive subgroup; the main radical
// stops at the first repeated power, the oracle walks n = 1..|R| exhaustively.
namespace gz::oracle {

using AddFn = std::function<Elem(Elem, Elem)>;

ElementSet additive_closure(std::uint32_t size, const AddFn& add, const std::vector<Elem>& seed);
std::vector<ElementSet> all_subgroups(std::uint32_t size, const AddFn& add);

std::vector<ElementSet> graded_ideals(const GradedRing& r);
std::vector<ElementSet> graded_submodules(const GradedModule& m);

ElementSet graded_radical(const GradedRing& r, const ElementSet& ideal);

} // namespace gz::oracle

#endif

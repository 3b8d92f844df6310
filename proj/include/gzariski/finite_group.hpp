#ifndef GZARISKI_FINITE_GROUP_HPP
#define GZARISKI_FINITE_GROUP_HPP

#include <vector>

#include "gzariski/expected.hpp"

namespace gz {

struct GroupDesc {
    int order = 0;
    int identity = 0;
    std::vector<std::vector<int>> table; // order x order, element indices

    static GroupDesc cyclic(int n);
    static GroupDesc trivial() { return cyclic(1); }
};

// Finite group given by its Cayley table. Associativity, the two-sided
// identity and two-sided inverses are verified exhaustively at construction.
class FiniteGroup {
public:
    static Expected<FiniteGroup> validate(const GroupDesc& desc);

    int order() const { return order_; }
    int identity() const { return identity_; }
    int op(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    int inverse(int a) const { return inverse_[a]; }

    FiniteGroup() = default; // empty until validate() fills it

private:
    int order_ = 0;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
};

} // namespace gz

#endif

#include "gzariski/finite_group.hpp"

#include <string>

namespace gz {

const char* defect_kind_name(DefectKind k) {
    switch (k) {
        case DefectKind::group_malformed: return "GroupMalformed";
        case DefectKind::group_not_associative: return "GroupNotAssociative";
        case DefectKind::group_bad_identity: return "GroupBadIdentity";
        case DefectKind::group_bad_inverse: return "GroupBadInverse";
        case DefectKind::ill_formed_constants: return "IllFormedConstants";
        case DefectKind::grading_violation: return "GradingViolation";
        case DefectKind::non_commutative: return "NonCommutative";
        case DefectKind::non_associative: return "NonAssociative";
        case DefectKind::bad_unity: return "BadUnity";
        case DefectKind::action_not_associative: return "ActionNotAssociative";
        case DefectKind::not_unital: return "NotUnital";
        case DefectKind::improper_ideal: return "ImproperIdeal";
        case DefectKind::budget_exceeded: return "BudgetExceeded";
        case DefectKind::syntax_error: return "SyntaxError";
        case DefectKind::semantic_error: return "SemanticError";
        case DefectKind::duplicate_section: return "DuplicateSection";
        case DefectKind::internal_error: return "InternalError";
    }
    return "Unknown";
}

std::string Defect::to_string() const {
    std::string s = defect_kind_name(kind);
    if (line >= 0) {
        s += " at line " + std::to_string(line);
        if (col >= 0) s += ", col " + std::to_string(col);
    }
    if (!detail.empty()) {
        s += ": ";
        s += detail;
    }
    return s;
}

GroupDesc GroupDesc::cyclic(int n) {
    GroupDesc d;
    d.order = n;
    d.identity = 0;
    d.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) d.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return d;
}

Expected<FiniteGroup> FiniteGroup::validate(const GroupDesc& desc) {
    const int n = desc.order;
    if (n <= 0)
        return Defect{DefectKind::group_malformed, "order must be positive"};
    if (desc.identity < 0 || desc.identity >= n)
        return Defect{DefectKind::group_malformed, "identity index out of range"};
    if (static_cast<int>(desc.table.size()) != n)
        return Defect{DefectKind::group_malformed, "cayley table must have `order` rows"};
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(desc.table[static_cast<std::size_t>(r)].size()) != n)
            return Defect{DefectKind::group_malformed, "cayley row " + std::to_string(r) + " has wrong length"};
        for (int c = 0; c < n; ++c) {
            int v = desc.table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (v < 0 || v >= n)
                return Defect{DefectKind::group_malformed,
                              "cayley entry (" + std::to_string(r) + "," + std::to_string(c) + ") out of range"};
        }
    }

    FiniteGroup g;
    g.order_ = n;
    g.identity_ = desc.identity;
    g.table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g.table_[static_cast<std::size_t>(a) * n + b] = desc.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
                    return Defect{DefectKind::group_not_associative,
                                  "witness (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")"};

    for (int a = 0; a < n; ++a)
        if (g.op(g.identity_, a) != a || g.op(a, g.identity_) != a)
            return Defect{DefectKind::group_bad_identity, "witness " + std::to_string(a)};

    g.inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g.op(a, b) == g.identity_ && g.op(b, a) == g.identity_) {
                g.inverse_[static_cast<std::size_t>(a)] = b;
                break;
            }
        if (g.inverse_[static_cast<std::size_t>(a)] < 0)
            return Defect{DefectKind::group_bad_inverse, "no two-sided inverse for " + std::to_string(a)};
    }
    return g;
}

} // namespace gz

#ifndef GZARISKI_EXPECTED_HPP
#define GZARISKI_EXPECTED_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace gz {

enum class DefectKind {
    group_malformed,
    group_not_associative,
    group_bad_identity,
    group_bad_inverse,
    ill_formed_constants,
    grading_violation,
    non_commutative,
    non_associative,
    bad_unity,
    action_not_associative,
    not_unital,
    improper_ideal,
    budget_exceeded,
    syntax_error,
    semantic_error,
    duplicate_section,
    internal_error,
};

const char* defect_kind_name(DefectKind k);

// First-violation diagnostic: what failed plus a printable witness.
// Parse defects carry a 1-based line/column.
struct Defect {
    DefectKind kind;
    std::string detail;
    int line = -1;
    int col = -1;

    std::string to_string() const;
};

// Internal invariant breakage (e.g. the two quasi-primary routes disagree).
// Signals an implementation bug, never a property of the input instance.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

// Caller violated a documented precondition (non-homogeneous generator,
// seed/space kind mismatch, ...).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class T>
class Expected {
public:
    Expected(T v) : v_(std::move(v)) {}
    Expected(Defect d) : v_(std::move(d)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    T& value() { return std::get<T>(v_); }
    const T& value() const { return std::get<T>(v_); }
    const Defect& defect() const { return std::get<Defect>(v_); }

private:
    std::variant<T, Defect> v_;
};

} // namespace gz

#endif

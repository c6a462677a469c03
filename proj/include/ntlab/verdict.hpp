#pragma once

#include <string_view>

namespace ntlab {

enum class Verdict { consistent, violation, indeterminate };

constexpr std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::violation: return "violation";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

/// Violation dominates indeterminate, which dominates consistent.
constexpr Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::violation || b == Verdict::violation) return Verdict::violation;
    if (a == Verdict::indeterminate || b == Verdict::indeterminate) return Verdict::indeterminate;
    return Verdict::consistent;
}

}  // namespace ntlab

#pragma once

#include <string_view>

namespace ntlab {

/// Where a solution tuple came from.
enum class Provenance { closed_form, search };

constexpr std::string_view to_string(Provenance p) {
    return p == Provenance::closed_form ? "closed_form" : "search";
}

}  // namespace ntlab

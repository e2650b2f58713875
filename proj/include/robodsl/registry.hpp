#pragma once

#include <span>
#include <string_view>

#include "robodsl/verify.hpp"

namespace robodsl {

/// Kernels generated from the bundled corpus at build time.
std::span<const GeneratedEntry> generated_entries();

/// Looks up by robot name and variant ("self", "self-noprecompute", "c99").
const GeneratedEntry* find_generated(std::string_view model_name, std::string_view variant = "self");

}  // namespace robodsl

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace fakenews {

enum class Label : std::uint8_t { Real = 0, Fake = 1 };

inline constexpr Label kLabels[] = {Label::Real, Label::Fake};

constexpr std::size_t index_of(Label label) noexcept { return static_cast<std::size_t>(label); }

constexpr Label opposite(Label label) noexcept { return label == Label::Real ? Label::Fake : Label::Real; }

/// Lowercase wire form: "real" / "fake".
std::string_view to_string(Label label) noexcept;

/// Case-insensitive parse, surrounding whitespace ignored.
std::optional<Label> try_parse_label(std::string_view text) noexcept;

/// Throws Error{BadLabel} on anything other than real/fake.
Label parse_label(std::string_view text);

}  // namespace fakenews

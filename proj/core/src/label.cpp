#include "fakenews/label.hpp"

#include <string>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"

namespace fakenews {

std::string_view to_string(Label label) noexcept { return label == Label::Real ? "real" : "fake"; }

std::optional<Label> try_parse_label(std::string_view text) noexcept {
    const std::string lowered = io::ascii_lower(io::trim(text));
    if (lowered == "real") {
        return Label::Real;
    }
    if (lowered == "fake") {
        return Label::Fake;
    }
    return std::nullopt;
}

Label parse_label(std::string_view text) {
    if (auto label = try_parse_label(text)) {
        return *label;
    }
    throw Error(Errc::BadLabel, "corpus", "unknown label '" + std::string(text) + "'");
}

}  // namespace fakenews

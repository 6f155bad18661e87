#include "fakenews/error.hpp"

namespace fakenews {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::DuplicateId:
            return "DuplicateId";
        case Errc::BadLabel:
            return "BadLabel";
        case Errc::EmptyText:
            return "EmptyText";
        case Errc::BadFormat:
            return "BadFormat";
        case Errc::Io:
            return "Io";
        case Errc::BadUrl:
            return "BadUrl";
        case Errc::UnlabeledItem:
            return "UnlabeledItem";
        case Errc::ZeroSupport:
            return "ZeroSupport";
        case Errc::DegenerateTraining:
            return "DegenerateTraining";
        case Errc::NoModels:
            return "NoModels";
        case Errc::IdSetMismatch:
            return "IdSetMismatch";
        case Errc::BadProbabilities:
            return "BadProbabilities";
        case Errc::LengthMismatch:
            return "LengthMismatch";
        case Errc::EmptyInput:
            return "EmptyInput";
        case Errc::BadConfig:
            return "BadConfig";
    }
    return "Unknown";
}

namespace {

std::string compose(Errc code, const std::string& module, const std::string& message,
                    std::optional<std::uint64_t> item_id) {
    std::string out = module;
    out += ": ";
    out += to_string(code);
    if (item_id) {
        out += " (id ";
        out += std::to_string(*item_id);
        out += ")";
    }
    if (!message.empty()) {
        out += ": ";
        out += message;
    }
    return out;
}

}  // namespace

Error::Error(Errc code, std::string module, const std::string& message, std::optional<std::uint64_t> item_id)
    : std::runtime_error(compose(code, module, message, item_id)),
      code_(code),
      module_(std::move(module)),
      item_id_(item_id) {}

}  // namespace fakenews

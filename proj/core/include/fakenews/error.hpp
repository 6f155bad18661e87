#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fakenews {

enum class Errc {
    DuplicateId,
    BadLabel,
    EmptyText,
    BadFormat,
    Io,
    BadUrl,
    UnlabeledItem,
    ZeroSupport,
    DegenerateTraining,
    NoModels,
    IdSetMismatch,
    BadProbabilities,
    LengthMismatch,
    EmptyInput,
    BadConfig,
};

std::string_view to_string(Errc code) noexcept;

// Data-level failure raised by the pipeline modules. `module()` names the
// stage that rejected the input and `item_id()` is set when a single record
// is at fault.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string module, const std::string& message,
          std::optional<std::uint64_t> item_id = std::nullopt);

    Errc code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }
    std::optional<std::uint64_t> item_id() const noexcept { return item_id_; }

private:
    Errc code_;
    std::string module_;
    std::optional<std::uint64_t> item_id_;
};

}  // namespace fakenews

#pragma once

#include "vaxeff/classical.hpp"
#include "vaxeff/types.hpp"

#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

namespace vaxeff::cli {

nlohmann::json to_json(const EfficacyEstimate& est);
nlohmann::json to_json(const RiskRatioInterval& rr);

/// Either the given stream or a file opened for writing. Files are written in
/// binary mode so line endings stay LF.
class OutputSink {
public:
    OutputSink(std::ostream& fallback, const std::optional<std::string>& path);
    std::ostream& stream() noexcept { return file_ ? *file_ : fallback_; }

private:
    std::ostream& fallback_;
    std::unique_ptr<std::ofstream> file_;
};

}  // namespace vaxeff::cli

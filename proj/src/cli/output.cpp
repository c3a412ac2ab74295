#include "cli/output.hpp"

#include "vaxeff/error.hpp"

#include <ostream>

namespace vaxeff::cli {

nlohmann::json to_json(const EfficacyEstimate& est) {
    return {{"method", std::string(to_string(est.method))},
            {"point", est.point},
            {"lower", est.lower},
            {"upper", est.upper},
            {"level", est.level},
            {"warnings", est.warnings}};
}

nlohmann::json to_json(const RiskRatioInterval& rr) {
    nlohmann::json j = to_json(rr.efficacy);
    j["rr"] = {{"ratio", rr.ratio},
               {"lower", rr.lower},
               {"upper", rr.upper},
               {"lower_undetermined", rr.lower_undetermined}};
    return j;
}

OutputSink::OutputSink(std::ostream& fallback, const std::optional<std::string>& path)
    : fallback_(fallback) {
    if (!path) return;
    file_ = std::make_unique<std::ofstream>(*path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw DomainError("cannot open output file '" + *path + "'");
    file_->imbue(std::locale::classic());
}

}  // namespace vaxeff::cli

#include "lptensor/compress/compress.hpp"

#include <json.hpp>

namespace lpt::compress {

std::string to_json(const CompressionResult& r, int indent) {
    nlohmann::json doc;
    doc["success"] = r.success;
    doc["sigma"] = r.sigma.maps();
    doc["lambda"] = r.lambda;
    doc["residual"] = {{"lower", r.residual.lower},
                       {"upper", r.residual.upper},
                       {"certified", r.residual.certified},
                       {"method", r.residual.method},
                       {"coefficient_mass", r.residual_mass}};
    if (r.residual_estimate)
        doc["residual"]["estimate"] = {{"lower", r.residual_estimate->lower},
                                       {"upper", r.residual_estimate->upper},
                                       {"method", r.residual_estimate->method}};
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : r.trace) {
        trace.push_back({{"step", t.step},
                         {"budget", t.budget},
                         {"perturbation", t.perturbation},
                         {"ok", t.ok},
                         {"detail", t.detail}});
    }
    doc["trace"] = trace;
    if (!r.cluster.empty()) {
        doc["cluster"] = r.cluster;
        doc["cluster_width"] = r.cluster_width;
    }
    doc["failure"] = r.failure;
    doc["deepest_step"] = r.deepest_step;
    doc["seed"] = r.seed;
    return doc.dump(indent);
}

}  // namespace lpt::compress

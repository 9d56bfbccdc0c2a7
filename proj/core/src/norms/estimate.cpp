#include "lptensor/norms/estimate.hpp"

#include <json.hpp>

namespace lpt::norms {

namespace {
std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }
}  // namespace

std::string to_json(const NormEstimate& e, int indent) {
    nlohmann::json doc;
    doc["lower"] = e.lower;
    doc["upper"] = e.upper;
    doc["certified"] = e.certified;
    doc["converged"] = e.converged;
    doc["seed"] = e.seed;
    doc["method"] = e.method;
    nlohmann::json w = nlohmann::json::object();
    if (!e.witness.factors.empty()) {
        nlohmann::json fs = nlohmann::json::array();
        for (const auto& f : e.witness.factors) fs.push_back(to_vec(f));
        w["factors"] = fs;
    }
    if (e.witness.decomposition) {
        nlohmann::json atoms = nlohmann::json::array();
        for (const auto& a : e.witness.decomposition->atoms) {
            nlohmann::json fs = nlohmann::json::array();
            for (const auto& f : a.factors) fs.push_back(to_vec(f));
            atoms.push_back({{"weight", a.weight}, {"factors", fs}});
        }
        w["decomposition"] = {{"atoms", atoms}, {"residual", e.witness.decomposition->residual}};
    }
    if (e.witness.functional) {
        w["functional"] = to_vec(*e.witness.functional);
        w["functional_norm"] = e.witness.functional_norm;
    }
    doc["witness"] = w;
    return doc.dump(indent);
}

}  // namespace lpt::norms

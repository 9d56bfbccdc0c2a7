#include "lptensor/core/interchange.hpp"

#include "lptensor/core/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lpt {

using nlohmann::json;

namespace {

json signature_json(const Signature& sig) {
    json fs = json::array();
    for (const auto& f : sig.factors()) fs.push_back(json::array({f.dim, f.exp.interchange()}));
    return fs;
}

Signature parse_signature(const json& doc) {
    if (!doc.contains("signature") || !doc["signature"].is_array()) throw ParseError("missing \"signature\" array");
    std::vector<Factor> fs;
    for (const auto& f : doc["signature"]) {
        if (!f.is_array() || f.size() != 2) throw ParseError("signature entries must be [dim, exponent]");
        if (!f[0].is_number_unsigned() && !(f[0].is_number_integer() && f[0].get<long long>() > 0)) {
            throw ParseError("signature dimension must be a positive integer");
        }
        Exponent p = f[1].is_string() ? Exponent::parse(f[1].get<std::string>())
                                      : Exponent::parse(f[1].dump());
        fs.push_back({f[0].get<std::size_t>(), p});
    }
    NormTag tag = NormTag::projective;
    if (doc.contains("norm")) tag = parse_norm_tag(doc["norm"].get<std::string>());
    return Signature(std::move(fs), tag);
}

json parse_doc(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Eigen::VectorXd parse_coeffs(const json& doc, std::size_t expected) {
    if (!doc.contains("coeffs") || !doc["coeffs"].is_array()) throw ParseError("missing \"coeffs\" array");
    const auto& c = doc["coeffs"];
    if (c.size() != expected) {
        throw DimensionError("coeffs has " + std::to_string(c.size()) + " entries, expected " + std::to_string(expected));
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(expected));
    for (std::size_t k = 0; k < expected; ++k) {
        if (!c[k].is_number()) throw ParseError("coeffs must be numbers");
        v[static_cast<Eigen::Index>(k)] = c[k].get<double>();
    }
    return v;
}

}  // namespace

std::string tensor_to_json(const Tensor& x, int indent) {
    json doc;
    doc["signature"] = signature_json(x.signature());
    doc["norm"] = to_string(x.signature().tag());
    doc["coeffs"] = std::vector<double>(x.coeffs().data(), x.coeffs().data() + x.coeffs().size());
    return doc.dump(indent);
}

Tensor tensor_from_json(std::string_view text) {
    json doc = parse_doc(text);
    Signature sig = parse_signature(doc);
    return Tensor(sig, parse_coeffs(doc, sig.size()));
}

Signature signature_from_json(std::string_view text) { return parse_signature(parse_doc(text)); }

std::string signature_to_json(const Signature& sig, int indent) {
    json doc;
    doc["signature"] = signature_json(sig);
    doc["norm"] = to_string(sig.tag());
    return doc.dump(indent);
}

std::string operator_to_json(const OperatorMatrix& op, int indent) {
    json doc;
    doc["kind"] = "operator";
    doc["signature"] = signature_json(op.domain());
    doc["norm"] = to_string(op.domain().tag());
    if (!(op.codomain() == op.domain())) {
        doc["codomain"] = {{"signature", signature_json(op.codomain())}, {"norm", to_string(op.codomain().tag())}};
    }
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(op.entries().size()));
    for (Eigen::Index r = 0; r < op.entries().rows(); ++r) {
        for (Eigen::Index c = 0; c < op.entries().cols(); ++c) flat.push_back(op.entries()(r, c));
    }
    doc["coeffs"] = std::move(flat);
    return doc.dump(indent);
}

OperatorMatrix operator_from_json(std::string_view text) {
    json doc = parse_doc(text);
    Signature dom = parse_signature(doc);
    Signature cod = doc.contains("codomain") ? parse_signature(doc["codomain"]) : dom;
    Eigen::VectorXd flat = parse_coeffs(doc, dom.size() * cod.size());
    Eigen::MatrixXd m(static_cast<Eigen::Index>(cod.size()), static_cast<Eigen::Index>(dom.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = flat[r * m.cols() + c];
    }
    return OperatorMatrix(dom, cod, std::move(m));
}

std::string selection_to_json(const SubsetSelection& sigma) { return json(sigma.maps()).dump(); }

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

}  // namespace lpt

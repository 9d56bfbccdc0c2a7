#include "lptensor/harness/harness.hpp"

#include "lptensor/core/error.hpp"
#include "lptensor/operators/operators.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <thread>

namespace lpt::harness {

using nlohmann::json;

namespace {

// Round-trip formatting; rows must compare equal as text across runs.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

SweepRow run_cell(const Exponent& p, const Exponent& q, std::size_t n, std::uint64_t seed, const SweepOptions& opts) {
    SweepRow row;
    row.n = n;
    row.seed = seed;
    if (n < 2) {
        row.flagged = true;
        row.note = "n must be at least 2";
        return row;
    }
    if (n * n > opts.max_basis) {
        row.flagged = true;
        row.note = "basis " + std::to_string(n * n) + " exceeds solver limit " + std::to_string(opts.max_basis);
        return row;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
        Signature sig({{n, p}, {n, q}}, NormTag::projective);
        OperatorMatrix t = ops::projection(ops::ProjectionSpec::triangular(1, 2), sig);
        norms::NormOptions o = opts.norm;
        o.seed = seed;
        norms::NormEstimate e = norms::operator_norm(t, o);
        row.lower = e.lower;
        row.upper = e.upper;
        row.certified = e.certified;
        row.converged = e.converged;
        if (!e.converged) {
            row.flagged = true;
            row.note = "solver did not converge";
        }
    } catch (const std::exception& ex) {
        row.flagged = true;
        row.note = ex.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace

std::string version() { return LPT_VERSION; }

std::string now_iso8601() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string to_json(const ExperimentRecord& r, int indent) {
    json j;
    j["id"] = r.id;
    json cfg = json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    j["timestamps"] = {{"started", r.started}, {"finished", r.finished}};
    j["version"] = r.tool_version;
    return j.dump(indent);
}

std::string to_csv(const ExperimentRecord& r) {
    std::string out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + csv_field(r.columns[i]);
    out += '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
        out += '\n';
    }
    return out;
}

SweepTable sweep_triangular(const Exponent& p, const Exponent& q, const std::vector<std::size_t>& ns,
                            const SweepOptions& opts) {
    if (ns.empty()) throw DomainError("sweep_triangular: empty n range");
    SweepTable table{p, q, std::vector<SweepRow>(ns.size())};
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(ns.size()));

    // Each cell owns its slot and its seed, so the result does not depend on scheduling.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < ns.size(); k = next++)
            table.rows[k] = run_cell(p, q, ns[k], derive_seed(opts.norm.seed, ns[k]), opts);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return table;
}

ExperimentRecord to_record(const SweepTable& t, const SweepOptions& opts) {
    ExperimentRecord r;
    r.id = "triangular-" + t.p.str() + "-" + t.q.str();
    r.config = {{"p", t.p.str()},
                {"q", t.q.str()},
                {"seed", std::to_string(opts.norm.seed)},
                {"starts", std::to_string(opts.norm.starts)},
                {"gap_tol", num(opts.norm.gap_tol)},
                {"outer_starts", std::to_string(opts.norm.outer_starts)},
                {"max_basis", std::to_string(opts.max_basis)}};
    r.columns = {"n", "lower", "upper", "certified", "converged", "flagged", "note", "seed"};
    for (const auto& row : t.rows)
        r.rows.push_back({std::to_string(row.n), num(row.lower), num(row.upper), row.certified ? "true" : "false",
                          row.converged ? "true" : "false", row.flagged ? "true" : "false", row.note,
                          std::to_string(row.seed)});
    r.tool_version = version();
    return r;
}

std::string sweep_csv(const SweepTable& t) { return to_csv(to_record(t, {})); }

std::string sweep_json(const SweepTable& t, int indent) {
    json j;
    j["p"] = t.p.str();
    j["q"] = t.q.str();
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"n", r.n},
                        {"lower", r.lower},
                        {"upper", r.upper},
                        {"certified", r.certified},
                        {"converged", r.converged},
                        {"flagged", r.flagged},
                        {"note", r.note},
                        {"seed", r.seed}});
    j["rows"] = rows;
    return j.dump(indent);
}

std::string sweep_svg(const SweepTable& t) {
    const double w = 640, h = 400, left = 60, right = 20, top = 40, bottom = 50;
    std::vector<const SweepRow*> pts;
    for (const auto& r : t.rows)
        if (!r.flagged) pts.push_back(&r);

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!pts.empty()) {
        xmin = xmax = static_cast<double>(pts.front()->n);
        ymin = pts.front()->lower;
        ymax = pts.front()->upper;
        for (const auto* r : pts) {
            xmin = std::min(xmin, double(r->n));
            xmax = std::max(xmax, double(r->n));
            ymin = std::min(ymin, r->lower);
            ymax = std::max(ymax, r->upper);
        }
        if (xmax == xmin) xmax = xmin + 1;
        double pad = std::max(1e-6, 0.05 * (ymax - ymin));
        ymin -= pad;
        ymax += pad;
    }
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (w - left - right); };
    auto sy = [&](double y) { return h - bottom - (y - ymin) / (ymax - ymin) * (h - top - bottom); };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    auto fmt4 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return std::string(buf);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
       << w << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << xml_escape("||T_n|| on l_" + t.p.str() + " (x)^ l_" + t.q.str()) << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\"" << h - bottom
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
       << "\" stroke=\"black\"/>\n";
    for (const auto* r : pts)
        os << "<text x=\"" << fmt(sx(double(r->n))) << "\" y=\"" << h - bottom + 18 << "\" text-anchor=\"middle\">"
           << r->n << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        double y = ymin + (ymax - ymin) * k / 4.0;
        os << "<text x=\"" << left - 6 << "\" y=\"" << fmt(sy(y) + 4) << "\" text-anchor=\"end\">" << fmt4(y)
           << "</text>\n";
    }
    os << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">n</text>\n";

    auto polyline = [&](auto get, const char* colour, const char* dash) {
        if (pts.empty()) return;
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"" << dash << " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            os << (i ? " " : "") << fmt(sx(double(pts[i]->n))) << ',' << fmt(sy(get(*pts[i])));
        os << "\"/>\n";
        for (const auto* r : pts)
            os << "<circle cx=\"" << fmt(sx(double(r->n))) << "\" cy=\"" << fmt(sy(get(*r))) << "\" r=\"3\" fill=\""
               << colour << "\"/>\n";
    };
    polyline([](const SweepRow& r) { return r.upper; }, "#c0392b", " stroke-dasharray=\"6 3\"");
    polyline([](const SweepRow& r) { return r.lower; }, "#2c6fbb", "");

    os << "<text x=\"" << left + 10 << "\" y=\"" << top + 4 << "\" fill=\"#2c6fbb\">lower</text>\n";
    os << "<text x=\"" << left + 60 << "\" y=\"" << top + 4 << "\" fill=\"#c0392b\">upper</text>\n";
    std::size_t flagged = t.rows.size() - pts.size();
    if (flagged)
        os << "<text x=\"" << w - right << "\" y=\"" << top + 4 << "\" text-anchor=\"end\">" << flagged
           << " flagged row(s) omitted</text>\n";
    os << "</svg>\n";
    return os.str();
}

// ---- diagonal isometry ----------------------------------------------------

DiagonalTrial diagonal_trial(const std::vector<Exponent>& ps, const Eigen::VectorXd& c, const norms::NormOptions& opts) {
    const auto n = static_cast<std::size_t>(c.size());
    Signature sig = Signature::cube(ps, n, NormTag::projective);
    Tensor x(sig);
    for (std::size_t i = 1; i <= n; ++i) x.at(MultiIndex(std::vector<std::size_t>(ps.size(), i))) = c[Eigen::Index(i - 1)];
    norms::NormEstimate e = norms::projective_norm(x, opts);
    DiagonalTrial t;
    t.lower = e.lower;
    t.upper = e.upper;
    t.exact = lp_norm(std::span<const double>(c.data(), n), diagonal_exponent(ps));
    t.deviation = t.exact > 0 ? std::abs(e.mid() - t.exact) / t.exact : std::abs(e.mid());
    return t;
}

DiagonalReport verify_diagonal_isometry(const std::vector<Exponent>& ps, std::size_t n, std::size_t trials,
                                        std::uint64_t seed, const norms::NormOptions& opts) {
    if (ps.empty() || n == 0) throw DomainError("verify_diagonal_isometry: need exponents and n >= 1");
    DiagonalReport rep;
    rep.r = diagonal_exponent(ps);
    for (std::size_t k = 0; k < trials; ++k) {
        Rng rng(derive_seed(seed, k));
        Eigen::VectorXd c = gaussian_vector(rng, Eigen::Index(n));
        norms::NormOptions o = opts;
        o.seed = derive_seed(seed, 1000 + k);
        rep.trials.push_back(diagonal_trial(ps, c, o));
        rep.max_deviation = std::max(rep.max_deviation, rep.trials.back().deviation);
    }
    return rep;
}

}  // namespace lpt::harness

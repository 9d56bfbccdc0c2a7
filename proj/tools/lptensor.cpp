// lptensor: command line front end.
//
// Exit codes: 0 success, 1 a computed check failed, 2 usage or input error.
// Every option can also be set from an INI file given with --config; a section per
// subcommand ([norm], [compress], ...) holds its keys, and the command line wins.
#include "lptensor/classify/classify.hpp"
#include "lptensor/compress/compress.hpp"
#include "lptensor/core/error.hpp"
#include "lptensor/core/interchange.hpp"
#include "lptensor/harness/harness.hpp"
#include "lptensor/norms/norms.hpp"
#include "lptensor/operators/operators.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace lpt;

namespace {

constexpr int kFailure = 1;
constexpr int kUsage = 2;

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text << '\n';
    else
        write_text_file(path, text + "\n");
}

// "2..6", "2-6" or "2,3,5".
std::vector<std::size_t> parse_range(const std::string& text) {
    std::vector<std::size_t> out;
    auto dots = text.find("..");
    auto dash = text.find('-');
    try {
        if (dots != std::string::npos || dash != std::string::npos) {
            std::size_t cut = dots != std::string::npos ? dots : dash;
            std::size_t lo = std::stoul(text.substr(0, cut));
            std::size_t hi = std::stoul(text.substr(cut + (dots != std::string::npos ? 2 : 1)));
            if (lo > hi) throw ParseError("empty range '" + text + "'");
            for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
        } else {
            std::size_t pos = 0;
            while (pos <= text.size()) {
                std::size_t next = text.find(',', pos);
                out.push_back(std::stoul(text.substr(pos, next - pos)));
                if (next == std::string::npos) break;
                pos = next + 1;
            }
        }
    } catch (const std::logic_error&) {
        throw ParseError("cannot read n range '" + text + "'");
    }
    return out;
}

// Comma lists read from INI files arrive split into items; join them back.
std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

struct Common {
    std::uint64_t seed = default_seed();
    int starts = 32;
    double gap_tol = 1e-6;

    norms::NormOptions norm() const {
        norms::NormOptions o;
        o.seed = seed;
        o.starts = starts;
        o.gap_tol = gap_tol;
        return o;
    }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "Random seed (default: LP_TENSOR_SEED or built-in)");
    app->add_option("--starts", c.starts, "Multistart count for the ascent")->check(CLI::PositiveNumber);
    app->add_option("--gap-tol", c.gap_tol, "Relative duality gap for projective norms")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Norms, projections and operator compressions on finite l_p tensor products", "lptensor"};
    app.set_config("--config", "", "INI file with one section per subcommand");
    app.require_subcommand(1);
    app.set_version_flag("--version", harness::version());

    // norm
    Common norm_c;
    std::string norm_in, norm_kind = "proj", norm_out;
    bool norm_cert = false;
    auto* norm = app.add_subcommand("norm", "Projective or injective norm of a tensor");
    norm->add_option("--in", norm_in, "Tensor JSON")->required()->check(CLI::ExistingFile);
    norm->add_option("--kind", norm_kind, "proj or inj")->check(CLI::IsMember({"proj", "inj"}));
    norm->add_flag("--certified", norm_cert, "Certified enumeration");
    norm->add_option("--out", norm_out, "Write the JSON result here");
    add_common(norm, norm_c);

    // project
    std::string proj_spec, proj_sig, proj_out;
    auto* project = app.add_subcommand("project", "Emit a coordinate projection as an operator");
    project->add_option("--spec", proj_spec, "diagonal | triangular:k,j[:strict] | shell:n | ...")->required();
    project->add_option("--sig", proj_sig, "Signature or tensor JSON")->required()->check(CLI::ExistingFile);
    project->add_option("--out", proj_out, "Write the operator here");

    // classify
    std::vector<std::string> cls_ps;
    std::string cls_embed;
    bool cls_dual = false;
    auto* cls = app.add_subcommand("classify", "Decide primarity from the exponents");
    cls->add_option("--ps", cls_ps, "Comma separated exponents, e.g. 2,3/2")->required();
    cls->add_flag("--dual", cls_dual, "Classify the injective predual instead");
    cls->add_option("--embed", cls_embed, "Ask whether l_p embeds instead");

    // compress
    Common cmp_c;
    std::string cmp_op, cmp_mode = "proj-pipeline", cmp_report;
    double cmp_eps = 0.1, cmp_k = 0.0;
    std::size_t cmp_n = 2;
    auto* cmp = app.add_subcommand("compress", "Compress an operator towards a multiple of the identity");
    cmp->add_option("--op", cmp_op, "Operator JSON")->required()->check(CLI::ExistingFile);
    cmp->add_option("--eps", cmp_eps, "Residual target")->check(CLI::PositiveNumber);
    cmp->add_option("--mode", cmp_mode, "proj-pipeline or ramsey")->check(CLI::IsMember({"proj-pipeline", "ramsey"}));
    cmp->add_option("--n", cmp_n, "Target dimension per factor")->check(CLI::PositiveNumber);
    cmp->add_option("--K", cmp_k, "Norm bound for ramsey mode (default: a rigorous bound)");
    cmp->add_option("--report", cmp_report, "Write the JSON report here");
    add_common(cmp, cmp_c);

    // sweep
    Common sw_c;
    std::string sw_p = "2", sw_q = "2", sw_n = "2..6", sw_csv, sw_json, sw_svg, sw_record;
    std::size_t sw_max_basis = 256;
    unsigned sw_threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Triangular projection norms against n");
    sweep->add_option("--p", sw_p, "First exponent");
    sweep->add_option("--q", sw_q, "Second exponent");
    sweep->add_option("--n", sw_n, "n range: 2..6 or 2,4,6");
    sweep->add_option("--csv", sw_csv, "CSV output (default: stdout)");
    sweep->add_option("--json", sw_json, "JSON table output");
    sweep->add_option("--svg", sw_svg, "SVG chart output");
    sweep->add_option("--record", sw_record, "Experiment record with config and timestamps");
    sweep->add_option("--max-basis", sw_max_basis, "Rows above this basis size are flagged");
    sweep->add_option("--threads", sw_threads, "Worker threads (0: all cores)");
    add_common(sweep, sw_c);

    // verify
    Common ver_c;
    std::string ver_suite, ver_report;
    std::vector<std::string> ver_ps;
    std::size_t ver_n = 4, ver_trials = 20;
    double ver_tol = 1e-4;
    auto* ver = app.add_subcommand("verify", "Run an acceptance suite, or check diagonal tensors against l_r");
    auto* suite_opt = ver->add_option("--suite", ver_suite, "norms | operators | classify | compress | all");
    auto* ps_opt = ver->add_option("--ps", ver_ps, "Exponents for the diagonal isometry check");
    suite_opt->excludes(ps_opt);
    ver->add_option("--n", ver_n, "Dimension for --ps")->check(CLI::PositiveNumber);
    ver->add_option("--trials", ver_trials, "Random diagonal tensors for --ps");
    ver->add_option("--tol", ver_tol, "Relative deviation allowed for --ps");
    ver->add_option("--report", ver_report, "Write the JSON report here");
    add_common(ver, ver_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (norm->parsed()) {
            Tensor x = tensor_from_json(read_text_file(norm_in));
            norms::NormOptions o = norm_c.norm();
            o.certified = norm_cert;
            auto e = norm_kind == "proj" ? norms::projective_norm(x, o) : norms::injective_norm(x, o);
            emit(norms::to_json(e), norm_out);
            return 0;
        }
        if (project->parsed()) {
            Signature sig = signature_from_json(read_text_file(proj_sig));
            emit(operator_to_json(ops::projection(ops::ProjectionSpec::parse(proj_spec), sig)), proj_out);
            return 0;
        }
        if (cls->parsed()) {
            auto ps = parse_exponent_list(join_list(cls_ps));
            classify::Verdict v = !cls_embed.empty() ? classify::embeds_lp(Exponent::parse(cls_embed), ps)
                                  : cls_dual        ? classify::dual_is_primary(ps)
                                                    : classify::is_primary(ps);
            emit(classify::to_json(v), "");
            return 0;
        }
        if (cmp->parsed()) {
            OperatorMatrix op = operator_from_json(read_text_file(cmp_op));
            compress::CompressOptions o;
            o.n_target = cmp_n;
            o.norm = cmp_c.norm();
            compress::CompressionResult r;
            if (cmp_mode == "ramsey") {
                double k = cmp_k > 0 ? cmp_k : compress::norm_upper_bound(op);
                r = compress::ramsey_diagonalize(op, cmp_n, cmp_eps, k, o);
            } else {
                r = compress::extract_multiplier(op, cmp_eps, o);
            }
            std::string text = compress::to_json(r);
            emit(text, cmp_report);
            if (!cmp_report.empty()) std::cout << text << '\n';
            return r.success ? 0 : kFailure;
        }
        if (sweep->parsed()) {
            harness::SweepOptions o;
            o.norm = sw_c.norm();
            o.max_basis = sw_max_basis;
            o.threads = sw_threads;
            std::string started = harness::now_iso8601();
            auto t = harness::sweep_triangular(Exponent::parse(sw_p), Exponent::parse(sw_q), parse_range(sw_n), o);
            if (sw_csv.empty() || sw_csv == "-")
                std::cout << harness::sweep_csv(t);
            else
                write_text_file(sw_csv, harness::sweep_csv(t));
            if (!sw_json.empty()) write_text_file(sw_json, harness::sweep_json(t) + "\n");
            if (!sw_svg.empty()) write_text_file(sw_svg, harness::sweep_svg(t));
            if (!sw_record.empty()) {
                auto rec = harness::to_record(t, o);
                rec.started = started;
                rec.finished = harness::now_iso8601();
                write_text_file(sw_record, harness::to_json(rec) + "\n");
            }
            bool flagged = std::any_of(t.rows.begin(), t.rows.end(), [](const auto& r) { return r.flagged; });
            return flagged ? kFailure : 0;
        }
        if (ver->parsed()) {
            if (!ver_ps.empty()) {
                auto rep = harness::verify_diagonal_isometry(parse_exponent_list(join_list(ver_ps)), ver_n, ver_trials,
                                                             ver_c.seed, ver_c.norm());
                std::printf("r = %s, %zu trials, max relative deviation %.3g (tol %.3g)\n", rep.r.str().c_str(),
                            rep.trials.size(), rep.max_deviation, ver_tol);
                return rep.max_deviation <= ver_tol ? 0 : kFailure;
            }
            harness::AcceptanceOptions o;
            o.seed = ver_c.seed;
            o.on_result = [](const harness::CriterionResult& r) {
                std::printf("AC%-2d %s  %-40s %8.2fs  %s\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(),
                            r.seconds, r.detail.c_str());
                for (const auto& f : r.failures) std::printf("      - %s\n", f.c_str());
                std::fflush(stdout);
            };
            auto rep = harness::run_acceptance(ver_suite.empty() ? "all" : ver_suite, o);
            if (!ver_report.empty()) write_text_file(ver_report, harness::to_json(rep) + "\n");
            return rep.passed() ? 0 : kFailure;
        }
    } catch (const UnsupportedError& e) {
        std::cerr << "lptensor: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "lptensor: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "lptensor: " << e.what() << '\n';
        return kUsage;
    } catch (const DimensionError& e) {
        std::cerr << "lptensor: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "lptensor: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

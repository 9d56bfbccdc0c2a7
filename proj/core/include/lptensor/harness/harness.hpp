#pragma once

#include "lptensor/core/exponent.hpp"
#include "lptensor/norms/norms.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lpt::harness {

std::string version();

// Config, result rows and timing of one run. Rows hold formatted values only, so two
// runs with the same config and seed produce identical rows.
struct ExperimentRecord {
    std::string id;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::string started;   // ISO 8601, UTC
    std::string finished;
    std::string tool_version;
};

std::string to_json(const ExperimentRecord& r, int indent = 2);
std::string to_csv(const ExperimentRecord& r);
std::string now_iso8601();

// ---- triangular sweep ----------------------------------------------------

struct SweepOptions {
    norms::NormOptions norm;
    // Rows whose basis n^2 exceeds this are flagged instead of computed.
    std::size_t max_basis = 256;
    // 0: one thread per hardware core.
    unsigned threads = 0;
};

struct SweepRow {
    std::size_t n = 0;
    double lower = 0.0;
    double upper = 0.0;
    bool certified = false;
    bool converged = false;
    bool flagged = false;
    std::string note;
    std::uint64_t seed = 0;
    double seconds = 0.0;  // not part of the deterministic output
};

struct SweepTable {
    Exponent p;
    Exponent q;
    std::vector<SweepRow> rows;
};

// ||T_n|| on l_p^n (x)^ l_q^n, T_n keeping alpha_1 >= alpha_2.
SweepTable sweep_triangular(const Exponent& p, const Exponent& q, const std::vector<std::size_t>& ns,
                            const SweepOptions& opts = {});

ExperimentRecord to_record(const SweepTable& t, const SweepOptions& opts);
std::string sweep_csv(const SweepTable& t);
std::string sweep_json(const SweepTable& t, int indent = 2);
// Self-contained line chart of the lower and upper bounds against n.
std::string sweep_svg(const SweepTable& t);

// ---- diagonal isometry ---------------------------------------------------

struct DiagonalTrial {
    double lower = 0.0;
    double upper = 0.0;
    double exact = 0.0;      // ||c||_r
    double deviation = 0.0;  // |mid - exact| / exact
};

struct DiagonalReport {
    Exponent r;
    double max_deviation = 0.0;
    std::vector<DiagonalTrial> trials;
};

// Projective norm of sum_i c_i e_(i,...,i) against ||c||_r for random c.
DiagonalReport verify_diagonal_isometry(const std::vector<Exponent>& ps, std::size_t n, std::size_t trials,
                                        std::uint64_t seed, const norms::NormOptions& opts = {});
// Same comparison for a given coefficient vector.
DiagonalTrial diagonal_trial(const std::vector<Exponent>& ps, const Eigen::VectorXd& c, const norms::NormOptions& opts = {});

// ---- acceptance ----------------------------------------------------------

struct CriterionResult {
    int id = 0;
    std::string suite;
    std::string title;
    bool passed = false;
    std::string detail;
    std::vector<std::string> failures;  // each with the seed that reproduces it
    double seconds = 0.0;
    double limit_seconds = 0.0;  // 0 when the criterion has no runtime bound
    std::uint64_t seed = 0;
};

struct AcceptanceReport {
    std::string suite;
    std::vector<CriterionResult> criteria;
    bool passed() const;
};

struct AcceptanceOptions {
    std::uint64_t seed = default_seed();
    // Called after each criterion finishes.
    std::function<void(const CriterionResult&)> on_result;
};

std::vector<std::string> suite_names();  // norms, operators, classify, compress, all
// Throws UnsupportedError for an unknown suite name.
AcceptanceReport run_acceptance(const std::string& suite, const AcceptanceOptions& opts = {});
std::string to_json(const AcceptanceReport& r, int indent = 2);

}  // namespace lpt::harness

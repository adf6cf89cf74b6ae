#ifndef LZ_ACCEPTANCE_HPP
#define LZ_ACCEPTANCE_HPP

#include <string>
#include <vector>

#include "lz/core.hpp"

namespace lz::acceptance {

/// One measured quantity inside a criterion: |value| must not exceed
/// threshold (deviations are stored, not raw values, unless noted).
struct Measurement {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool within = false;
};

struct CriterionResult {
    std::string id;
    std::string description;
    bool pass = false;
    double runtime_ms = 0.0;
    std::vector<Measurement> measurements;
    std::vector<std::string> notes;
};

struct Config {
    double rel_tol = 1e-13;
    double abs_tol = 1e-15;
};

/// Runs the full criterion suite (desk-scale parameters).
std::vector<CriterionResult> run_all(const Config& config = {});

/// Number of failed criteria.
std::size_t count_failures(const std::vector<CriterionResult>& results);

/// Machine-readable report (JSON text).
std::string to_json(const std::vector<CriterionResult>& results);

/// One line per criterion: "AC01 PASS  12.3 ms  description".
std::string to_text(const std::vector<CriterionResult>& results);

}  // namespace lz::acceptance

#endif

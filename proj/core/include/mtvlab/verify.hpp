#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mtvlab {

enum class CaseKind { numeric, exact };

// What one identity evaluation produced. Numeric cases fill lhs/rhs;
// exact cases additionally fill the exact representations and the equality
// verdict (the doubles are then for display only).
struct CaseOutcome {
    double lhs = 0.0;
    double rhs = 0.0;
    bool exact_equal = false;
    std::string lhs_exact;  // "p/q * pi^e" form, empty for numeric cases
    std::string rhs_exact;
    std::string notes;
};

struct IdentityCase {
    std::string id;
    std::vector<std::pair<std::string, double>> params;  // sorted by name
    double tol = 0.0;
    CaseKind kind = CaseKind::numeric;
    std::function<CaseOutcome()> eval;
};

struct CaseRecord {
    std::string id;
    std::vector<std::pair<std::string, double>> params;
    CaseKind kind = CaseKind::numeric;
    double lhs_value = 0.0;
    double rhs_value = 0.0;
    std::string lhs_exact;
    std::string rhs_exact;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tol = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
    std::string method_notes;
};

struct Report {
    struct Summary {
        int total = 0;
        int passed = 0;
        int failed = 0;
        int skipped = 0;
    } summary;
    std::vector<CaseRecord> records;  // sorted by (id, params)
};

enum class ReportFormat { json, csv };

struct RunConfig {
    double tol_default = 1e-7;        // series-family tolerance
    long long max_terms = 0;          // 0 -> default_term_cap()
    std::string filter;               // id glob, empty matches all
    std::string out;                  // report path, empty writes no file
    ReportFormat format = ReportFormat::json;
    bool parallel = false;
};

// The identity suite. Family tolerances: exact families 0; one-dimensional
// quadrature families 1e-8; nested quadrature 1e-6; series families
// cfg.tol_default. Case ids: THM1 THM2 THM3 THM23 THMB3 C3 C4 C5 C6 C7 C8
// D456 D11 ZEXACT B15 T17 SPECIAL LEM22 LEM41 REDUCED INV.
std::vector<IdentityCase> registry(const RunConfig& cfg);

// Evaluate the (filtered) registry, write the report if cfg.out is set, and
// return it. A convergence failure marks its case failed (notes say so) and
// never aborts the run. Record order is deterministic regardless of
// cfg.parallel. Two runs with the same config produce byte-identical reports
// apart from the runtime_ms fields.
Report run(const RunConfig& cfg);

// Serializers. Numbers carry 17 significant digits; exact values are emitted
// as {"coeff":"p/q","pi_exp":e} objects (JSON) or "p/q * pi^e" strings (CSV).
std::string report_json(const Report& report);
std::string report_csv(const Report& report);

// Simple glob on ids: '*' matches any run, '?' one character.
bool glob_match(const std::string& pattern, const std::string& text);

}  // namespace mtvlab

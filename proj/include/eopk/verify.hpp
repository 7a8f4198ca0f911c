#pragma once

#include <string>
#include <vector>

#include "eopk/family.hpp"

namespace eopk {

struct CheckResult {
    std::string name;
    double value = 0.0;      // measured residual / margin
    double tolerance = 0.0;  // pass iff value <= tolerance (or >= for margins)
    bool margin = false;     // true: pass iff value >= tolerance
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    double tau_im = 1.0;
    std::string weight = "unity";
    int nmax = 8;
    int quad = 256;
    unsigned seed = 12345;
    bool perturb = false;         // inject a coefficient error (harness self-test)
    bool symmetric_suite = false; // run the symmetric-weight checks
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    std::string to_json(const VerifyOptions& opt) const;
    std::string human_summary() const;
};

/// Full invariant suite over one configuration: recurrence residuals and
/// norm-ratio identities, the 13 cross-table identities, CD sum/closed/confluent
/// agreement, DPP trace/reproducing/positivity, RHP jump monotonicity and
/// determinant constancy, zero counts with Abel sums, and (optionally) the
/// symmetric-weight specializations.
VerifyReport run_verify(const VerifyOptions& opt);

}  // namespace eopk

#pragma once

#include <string>

#include "eopk/family.hpp"
#include "eopk/recurrence.hpp"

namespace eopk {

/// Family as a versioned JSON document (schema 1): lattice/weight/rule
/// parameters, norms and monic coefficients in basis order 0,2,3,...,N.
std::string family_to_json(const EOPFamily& fam);

/// Rebuilds the lattice and rule from the stored parameters and injects the
/// stored coefficients verbatim, so save/load round-trips are bit-stable.
EOPFamily family_from_json(const std::string& text);

/// Five/seven-term coefficient export (schema 1).
std::string coefficients_to_json(const EOPFamily& fam, const FiveTermCoefficients& c5,
                                 const SevenTermCoefficients& c7, int seed);

/// CSV rows n,h,a,b,c,p,q,r,s with full-precision scientific formatting.
std::string coefficients_to_csv(const EOPFamily& fam, const FiveTermCoefficients& c5,
                                const SevenTermCoefficients& c7);

/// %.16e formatting used by every CSV emitter (17 significant digits).
std::string format_full(double v);

}  // namespace eopk

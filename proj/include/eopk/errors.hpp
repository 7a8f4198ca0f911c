#pragma once

#include <stdexcept>
#include <string>

namespace eopk {

/// Base class for all library errors.
class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- lattice --
class NonPositiveTau : public Error { using Error::Error; };
class TruncationTooCoarse : public Error { using Error::Error; };
class PoleProximity : public Error { using Error::Error; };

// -- quadrature / contour --
class OffContour : public Error { using Error::Error; };
class QuadratureDivergence : public Error { using Error::Error; };

// -- families / recurrences --
class InvalidDegree : public Error { using Error::Error; };
class DegenerateNorm : public Error { using Error::Error; };
class InsufficientDegree : public Error { using Error::Error; };
class IndexOutOfRange : public Error { using Error::Error; };
class InconsistentCoefficients : public Error { using Error::Error; };

// -- kernels --
class DegeneratePoint : public Error { using Error::Error; };
class NotDegenerate : public Error { using Error::Error; };
class DuplicatePoints : public Error { using Error::Error; };

// -- RHP --
class TooCloseToContour : public Error { using Error::Error; };

// -- symmetric-weight suite --
class NotSymmetric : public Error { using Error::Error; };
class InversionFailure : public Error { using Error::Error; };
class DimensionTooLarge : public Error { using Error::Error; };
class RequiresUnityWeight : public Error { using Error::Error; };

// -- zeros --
class CountMismatch : public Error { using Error::Error; };
class ZeroNotFound : public Error { using Error::Error; };
class IncompleteZeroSet : public Error { using Error::Error; };

}  // namespace eopk

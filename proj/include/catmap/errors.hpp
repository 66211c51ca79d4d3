#pragma once

#include <stdexcept>
#include <string>

namespace catmap {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A matrix failed one of the admissibility conditions (determinant,
/// parity, trace, coprimality). `condition` names the failed check.
struct ConditionViolation : Error {
    explicit ConditionViolation(std::string cond)
        : Error("condition violated: " + cond), condition(std::move(cond)) {}
    std::string condition;
};

/// No power of A reached the identity mod N below the configured ceiling.
struct NoOrderFound : Error {
    NoOrderFound(const std::string& what, unsigned long long ceil)
        : Error(what), ceiling(ceil) {}
    unsigned long long ceiling;
};

/// Requested dimension exceeds the configured maximum.
struct TooLarge : Error {
    using Error::Error;
};

/// A freshly built propagator failed the unitarity check.
struct UnitarityFailure : Error {
    UnitarityFailure(double d, double tol)
        : Error("unitarity defect " + std::to_string(d) + " exceeds " + std::to_string(tol)),
          defect(d) {}
    double defect;
};

/// M^t did not act as a scalar on the sampled basis vectors.
struct NotScalar : Error {
    NotScalar(double leak, double spread_)
        : Error("M^t is not scalar: leakage " + std::to_string(leak) +
                ", phase spread " + std::to_string(spread_)),
          leakage(leak), spread(spread_) {}
    double leakage;
    double spread;
};

/// A projector state has norm below the vanishing tolerance. This is a
/// meaningful outcome in the even 4k branch, not a numerical failure.
struct VanishingState : Error {
    explicit VanishingState(double n)
        : Error("projector state vanishes (norm " + std::to_string(n) + ")"), norm(n) {}
    double norm;
};

/// A half-period column violated its predicted support structure.
struct StructureViolation : Error {
    StructureViolation(const std::string& what, double leak)
        : Error(what), leakage(leak) {}
    double leakage;
};

/// An operation requiring the 4k period branch was called on a 2k-branch
/// (or odd) dimension.
struct BranchMismatch : Error {
    using Error::Error;
};

/// Rate fit input is below the resolution of double precision.
struct DegenerateFit : Error {
    using Error::Error;
};

}  // namespace catmap

#pragma once

#include <stdexcept>
#include <string>

namespace rigid {

/// Base class for every diagnosable failure. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define RIGID_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}    \
    }

RIGID_DEFINE_ERROR(SchemaError);
RIGID_DEFINE_ERROR(NonFiniteEntry);
RIGID_DEFINE_ERROR(ExactModeUnavailable);
RIGID_DEFINE_ERROR(DimensionMismatch);
RIGID_DEFINE_ERROR(CoincidentEdgeEndpoints);
RIGID_DEFINE_ERROR(OffSurfaceVertex);
RIGID_DEFINE_ERROR(NonPositiveSheet);
RIGID_DEFINE_ERROR(GeometryMismatch);
RIGID_DEFINE_ERROR(DegenerateSpan);
RIGID_DEFINE_ERROR(VertexAtInfinity);
RIGID_DEFINE_ERROR(PointAtInfinity);
RIGID_DEFINE_ERROR(AffineMap);
RIGID_DEFINE_ERROR(SingularMap);
RIGID_DEFINE_ERROR(BasePointMismatch);
RIGID_DEFINE_ERROR(NonDecomposable);
RIGID_DEFINE_ERROR(OutsideDisk);
RIGID_DEFINE_ERROR(TangencyViolation);
RIGID_DEFINE_ERROR(NotOctahedral);
RIGID_DEFINE_ERROR(ImproperColoring);
RIGID_DEFINE_ERROR(InvalidParameters);

#undef RIGID_DEFINE_ERROR

} // namespace rigid

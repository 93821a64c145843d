#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace floorplan {

enum class ErrorCode {
    SchemaError,
    GeometryError,
    NonZeroElevation,
    OutsideExtent,
    NoJsonObjectFound,
    UnknownFurnitureKind,
    OpenEnvelope,
    NonSimpleFace,
    AmbiguousRoomAssignment,
    FurnitureOutsideAllRooms,
    ZeroDirection,
    UnsupportedElement,
    EmptyBrief,
    TransportError,
    EmptyResponse,
    ConfigError,
    IoError,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries a code and, where it applies,
// a JSON-pointer-like path to the offending input element.
class PlanError : public std::runtime_error {
public:
    PlanError(ErrorCode code, std::string message, std::string path = {});

    ErrorCode code() const noexcept { return code_; }
    const std::string& path() const noexcept { return path_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string path_;
    std::string detail_;
};

}  // namespace floorplan

#include "floorplan/errors.hpp"

namespace floorplan {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::GeometryError: return "GeometryError";
        case ErrorCode::NonZeroElevation: return "NonZeroElevation";
        case ErrorCode::OutsideExtent: return "OutsideExtent";
        case ErrorCode::NoJsonObjectFound: return "NoJsonObjectFound";
        case ErrorCode::UnknownFurnitureKind: return "UnknownFurnitureKind";
        case ErrorCode::OpenEnvelope: return "OpenEnvelope";
        case ErrorCode::NonSimpleFace: return "NonSimpleFace";
        case ErrorCode::AmbiguousRoomAssignment: return "AmbiguousRoomAssignment";
        case ErrorCode::FurnitureOutsideAllRooms: return "FurnitureOutsideAllRooms";
        case ErrorCode::ZeroDirection: return "ZeroDirection";
        case ErrorCode::UnsupportedElement: return "UnsupportedElement";
        case ErrorCode::EmptyBrief: return "EmptyBrief";
        case ErrorCode::TransportError: return "TransportError";
        case ErrorCode::EmptyResponse: return "EmptyResponse";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

namespace {

std::string format_what(ErrorCode code, const std::string& message, const std::string& path) {
    std::string out(error_code_name(code));
    if (!path.empty()) {
        out += " at ";
        out += path;
    }
    out += ": ";
    out += message;
    return out;
}

}  // namespace

PlanError::PlanError(ErrorCode code, std::string message, std::string path)
    : std::runtime_error(format_what(code, message, path)),
      code_(code),
      path_(std::move(path)),
      detail_(std::move(message)) {}

}  // namespace floorplan

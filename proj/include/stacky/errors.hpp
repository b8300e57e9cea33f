// Domain errors carry a stable machine-readable code plus a human message.
#pragma once

#include <stdexcept>
#include <string>

namespace stacky {

class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Error codes used across the library. Kept as functions so call sites read naturally.
inline DomainError non_primitive_ray(std::size_t ray, const std::string& detail) {
    return DomainError("NonPrimitiveRay", "ray " + std::to_string(ray) + " is not primitive: " + detail);
}
inline DomainError non_simplicial_cone(std::size_t cone, const std::string& detail) {
    return DomainError("NonSimplicialCone", "cone " + std::to_string(cone) + " is not simplicial: " + detail);
}
inline DomainError missing_face(const std::string& detail) {
    return DomainError("MissingFace", detail);
}
inline DomainError non_integral_slope(std::size_t ray, const std::string& detail) {
    return DomainError("NonIntegralSlope", "ray " + std::to_string(ray) + ": " + detail);
}
inline DomainError box_too_large(const std::string& detail) {
    return DomainError("BoxTooLarge", detail);
}
inline DomainError not_chain_map(int degree, const std::string& detail) {
    return DomainError("NotChainMap", "square at degree " + std::to_string(degree) + " does not commute: " + detail);
}
inline DomainError identity_fails(const std::string& which) {
    return DomainError("IdentityFails", "first broken identity: " + which);
}
inline DomainError mismatch_at_degree(const std::string& detail) {
    return DomainError("MismatchAtDegree", detail);
}
inline DomainError self_intersection(const std::string& where) {
    return DomainError("SelfIntersection", "edges cross at " + where);
}
inline DomainError not_liftable(const std::string& witness) {
    return DomainError("NotLiftable", "cycle with non-integral period: " + witness);
}
inline DomainError invalid_chamber(const std::string& detail) {
    return DomainError("InvalidChamber", detail);
}
inline DomainError frames_incompatible(const std::string& detail) {
    return DomainError("FramesIncompatible", detail);
}
inline DomainError degenerate_configuration(const std::string& detail) {
    return DomainError("DegenerateConfiguration",
                       detail + " (perturb the sites by a small random jitter and retry)");
}
inline DomainError no_convergence(const std::string& detail) {
    return DomainError("NoConvergence", detail);
}
inline DomainError unsupported_stratum(const std::string& detail) {
    return DomainError("UnsupportedStratum", detail);
}

}  // namespace stacky

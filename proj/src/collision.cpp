#include "enskog/collision.hpp"

#include <cmath>

namespace enskog {

CollisionFrame deflection_frame(const Vec3& u, const Vec3& v) {
    const Vec3 rel = u - v;
    const double speed = norm(rel);
    if (!(speed >= kDegenerateRelSpeed)) {
        throw DegenerateRelativeVelocity(
            "collision frame undefined: |u - v| below 1e-300");
    }
    CollisionFrame f;
    f.e3 = rel / speed;
    // Pick the reference axis farthest from e3 to keep the cross product
    // well conditioned.
    const Vec3 k = (std::fabs(f.e3.z) > 0.9) ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 0.0, 1.0};
    f.e1 = normalized(cross(f.e3, k));
    f.e2 = cross(f.e3, f.e1);
    return f;
}

Vec3 deflection_vector(const Vec3& u, const Vec3& v, const CollisionAngles& xi) {
    const CollisionFrame f = deflection_frame(u, v);
    const double sh = std::sin(0.5 * xi.theta);
    const double ch = std::cos(0.5 * xi.theta);
    const Vec3 transverse = std::cos(xi.phi) * f.e1 + std::sin(xi.phi) * f.e2;
    return sh * f.e3 + ch * transverse;
}

Vec3 alpha(const Vec3& u, const Vec3& v, const CollisionAngles& xi) {
    const Vec3 rel = u - v;
    if (norm(rel) < kDegenerateRelSpeed) {
        return Vec3{0.0, 0.0, 0.0};
    }
    const Vec3 n = deflection_vector(u, v, xi);
    return dot(n, rel) * n;
}

CollisionOutcome collide(const Vec3& u, const Vec3& v, const CollisionAngles& xi) {
    const Vec3 n = deflection_vector(u, v, xi);  // throws on degenerate input
    const Vec3 a = dot(n, u - v) * n;
    return {u - a, v + a};
}

double involution_defect(const Vec3& u, const Vec3& v, const CollisionAngles& xi) {
    const Vec3 n = deflection_vector(u, v, xi);
    const Vec3 a = dot(n, u - v) * n;
    const Vec3 u_star = u - a;
    const Vec3 v_star = v + a;
    // Reverse collision with the same n. Since (n, u* - v*) = -(n, u - v),
    // the second transfer cancels the first exactly.
    const Vec3 a_back = dot(n, u_star - v_star) * n;
    const Vec3 u_back = u_star - a_back;
    const Vec3 v_back = v_star + a_back;
    return std::max(norm(u_back - u), norm(v_back - v));
}

Vec3 alpha_truncated(const Vec3& z, const Vec3& v, const CollisionAngles& xi, double j) {
    const double dist = std::max(0.0, norm(z) - j);
    return alpha(z, v, xi) / (1.0 + dist);
}

}  // namespace enskog

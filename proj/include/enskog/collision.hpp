#pragma once
// Binary elastic collision geometry.
//
// For a pair with velocities (u, v) and angles (theta, phi), the deflection
// direction is
//     n = sin(theta/2) e3 + cos(theta/2) (cos(phi) e1 + sin(phi) e2),
// where e3 = (u - v)/|u - v| and (e1, e2) complete a right-handed frame.
// theta in (0, pi] is measured so that (n, u - v) = |u - v| sin(theta/2):
// theta -> 0 is a grazing encounter (no deflection), theta = pi is head-on
// (velocity exchange). The momentum transfer is
//     alpha(u, v, xi) = (n, u - v) n,
// and the post-collision pair is u* = u - alpha, v* = v + alpha, which
// preserves total momentum, total kinetic energy and the relative speed.

#include "enskog/errors.hpp"
#include "enskog/vec3.hpp"

namespace enskog {

// Below this relative speed the collision frame is numerically undefined.
inline constexpr double kDegenerateRelSpeed = 1e-300;

// theta in (0, pi], phi in [0, 2*pi).
struct CollisionAngles {
    double theta = 0.0;
    double phi = 0.0;
};

// Right-handed orthonormal frame with e3 along u - v.
struct CollisionFrame {
    Vec3 e1, e2, e3;
};

struct CollisionOutcome {
    Vec3 u_star, v_star;
};

// Frame rule: reference axis k = (0,0,1) unless |e3 . k| > 0.9, then
// k = (1,0,0); e1 = normalize(e3 x k), e2 = e3 x e1.
// Throws DegenerateRelativeVelocity when |u - v| < kDegenerateRelSpeed.
CollisionFrame deflection_frame(const Vec3& u, const Vec3& v);

// The unit deflection direction n for the given angles.
Vec3 deflection_vector(const Vec3& u, const Vec3& v, const CollisionAngles& xi);

// Momentum transfer (n, u - v) n. Extended by zero on the diagonal: for
// |u - v| < kDegenerateRelSpeed the transfer is the zero vector.
Vec3 alpha(const Vec3& u, const Vec3& v, const CollisionAngles& xi);

// Post-collision pair u* = u - alpha, v* = v + alpha.
// Throws DegenerateRelativeVelocity when the frame is undefined.
CollisionOutcome collide(const Vec3& u, const Vec3& v, const CollisionAngles& xi);

// Applies the collision, then the reverse collision with the same deflection
// direction n, and returns max(|u** - u|, |v** - v|). Zero in exact
// arithmetic; measures floating-point round-trip error.
double involution_defect(const Vec3& u, const Vec3& v, const CollisionAngles& xi);

// Localized momentum transfer alpha / (1 + d(z, B_j)) with
// d(z, B_j) = max(0, |z| - j), the distance of the first argument from the
// centered ball of radius j. Precondition: j > 0.
Vec3 alpha_truncated(const Vec3& z, const Vec3& v, const CollisionAngles& xi, double j);

}  // namespace enskog

#pragma once
// Smooth scalar test functions psi(x, u) with hand-written position
// gradients, used to probe the weak form of the dynamics. Every family is
// bounded with bounded derivatives so pairing against the jump generator
// stays finite.

#include <functional>
#include <string>
#include <vector>

#include "enskog/vec3.hpp"

namespace enskog {

struct TestFunction {
    std::string name;
    std::function<double(const Vec3& x, const Vec3& u)> value;
    std::function<Vec3(const Vec3& x, const Vec3& u)> grad_x;
};

// cos((lx,x) + (lu,u)) and sin((lx,x) + (lu,u)): the real and imaginary
// parts of a joint characteristic-function probe.
TestFunction cf_real(const Vec3& lx, const Vec3& lu);
TestFunction cf_imag(const Vec3& lx, const Vec3& lu);

// Product of probabilists' Hermite polynomials He_k(u_i) damped by
// exp(-u_i^2/4) per component and sup-normalized to 1; depends on the
// velocity only, so the position gradient vanishes identically.
TestFunction hermite(int kx, int ky, int kz);

// exp(-(|x-cx|^2 + |u-cu|^2) / (2 w^2)), a localized bump in phase space.
TestFunction gaussian_bump(const Vec3& cx, const Vec3& cu, double width);

// The fixed five-member family the residual diagnostic sweeps over.
std::vector<TestFunction> weak_form_suite();

}  // namespace enskog

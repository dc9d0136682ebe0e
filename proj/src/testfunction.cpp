#include "enskog/testfunction.hpp"

#include <cmath>
#include <sstream>

#include "enskog/errors.hpp"

namespace enskog {
namespace {

double hermite_poly(int k, double u) {
    // Probabilists' recurrence: He_{k+1} = u He_k - k He_{k-1}.
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = u;
    for (int j = 1; j < k; ++j) {
        double next = u * cur - j * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double damped_hermite(int k, double u) {
    return hermite_poly(k, u) * std::exp(-u * u / 4.0);
}

// Peak of |He_k(u) exp(-u^2/4)|, located by a dense scan. The damping
// beats the polynomial well inside [-12, 12] for the small orders used.
double damped_hermite_peak(int k) {
    double peak = 0.0;
    for (double u = -12.0; u <= 12.0; u += 1e-3) {
        peak = std::max(peak, std::abs(damped_hermite(k, u)));
    }
    return peak;
}

std::string vec_label(const Vec3& v) {
    std::ostringstream os;
    os << "(" << v.x << "," << v.y << "," << v.z << ")";
    return os.str();
}

}  // namespace

TestFunction cf_real(const Vec3& lx, const Vec3& lu) {
    TestFunction f;
    f.name = "cf_real lx=" + vec_label(lx) + " lu=" + vec_label(lu);
    f.value = [lx, lu](const Vec3& x, const Vec3& u) {
        return std::cos(dot(lx, x) + dot(lu, u));
    };
    f.grad_x = [lx, lu](const Vec3& x, const Vec3& u) {
        return lx * -std::sin(dot(lx, x) + dot(lu, u));
    };
    return f;
}

TestFunction cf_imag(const Vec3& lx, const Vec3& lu) {
    TestFunction f;
    f.name = "cf_imag lx=" + vec_label(lx) + " lu=" + vec_label(lu);
    f.value = [lx, lu](const Vec3& x, const Vec3& u) {
        return std::sin(dot(lx, x) + dot(lu, u));
    };
    f.grad_x = [lx, lu](const Vec3& x, const Vec3& u) {
        return lx * std::cos(dot(lx, x) + dot(lu, u));
    };
    return f;
}

TestFunction hermite(int kx, int ky, int kz) {
    if (kx < 0 || ky < 0 || kz < 0 || kx > 10 || ky > 10 || kz > 10) {
        throw ConfigInvalid("hermite orders must lie in [0, 10]");
    }
    double sx = damped_hermite_peak(kx);
    double sy = damped_hermite_peak(ky);
    double sz = damped_hermite_peak(kz);
    double scale = 1.0 / (sx * sy * sz);

    TestFunction f;
    {
        std::ostringstream os;
        os << "hermite(" << kx << "," << ky << "," << kz << ")";
        f.name = os.str();
    }
    f.value = [kx, ky, kz, scale](const Vec3&, const Vec3& u) {
        return scale * damped_hermite(kx, u.x) * damped_hermite(ky, u.y) *
               damped_hermite(kz, u.z);
    };
    f.grad_x = [](const Vec3&, const Vec3&) { return Vec3{0.0, 0.0, 0.0}; };
    return f;
}

TestFunction gaussian_bump(const Vec3& cx, const Vec3& cu, double width) {
    if (!(width > 0.0)) {
        throw ConfigInvalid("gaussian bump width must be > 0");
    }
    double inv2w2 = 1.0 / (2.0 * width * width);
    double invw2 = 1.0 / (width * width);

    TestFunction f;
    f.name = "gaussian_bump cx=" + vec_label(cx) + " cu=" + vec_label(cu);
    f.value = [cx, cu, inv2w2](const Vec3& x, const Vec3& u) {
        return std::exp(-(norm_sq(x - cx) + norm_sq(u - cu)) * inv2w2);
    };
    f.grad_x = [cx, cu, inv2w2, invw2](const Vec3& x, const Vec3& u) {
        double v =
            std::exp(-(norm_sq(x - cx) + norm_sq(u - cu)) * inv2w2);
        return (x - cx) * (-v * invw2);
    };
    return f;
}

std::vector<TestFunction> weak_form_suite() {
    std::vector<TestFunction> suite;
    suite.push_back(cf_real({0.3, -0.2, 0.5}, {0.4, 0.1, -0.3}));
    suite.push_back(cf_imag({-0.1, 0.25, 0.15}, {0.2, -0.35, 0.1}));
    suite.push_back(hermite(1, 0, 2));
    suite.push_back(hermite(2, 1, 0));
    suite.push_back(gaussian_bump({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 2.0));
    return suite;
}

}  // namespace enskog

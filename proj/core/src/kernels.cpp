#include "lowzero/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lowzero {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

Kernel make_cosine_kernel() {
    Kernel k;
    k.name = "cos";
    k.eval = [](double u) { return std::abs(u) <= 1.0 ? std::cos(kPi * u / 2.0) : 0.0; };
    k.eval_d1 = [](double u) {
        return std::abs(u) <= 1.0 ? -(kPi / 2.0) * std::sin(kPi * u / 2.0) : 0.0;
    };
    k.eval_d2 = [](double u) {
        return std::abs(u) < 1.0 ? -(kPi * kPi / 4.0) * std::cos(kPi * u / 2.0) : 0.0;
    };
    return k;
}

Kernel make_quadratic_kernel() {
    Kernel k;
    k.name = "quadratic";
    k.eval = [](double u) { return std::abs(u) <= 1.0 ? 1.0 - u * u : 0.0; };
    k.eval_d1 = [](double u) { return std::abs(u) <= 1.0 ? -2.0 * u : 0.0; };
    k.eval_d2 = [](double u) { return std::abs(u) < 1.0 ? -2.0 : 0.0; };
    return k;
}

Kernel kernel_by_name(const std::string& name) {
    if (name == "cos" || name == "cosine") return make_cosine_kernel();
    if (name == "quadratic" || name == "quad") return make_quadratic_kernel();
    throw std::invalid_argument("unknown kernel '" + name + "' (available: cos, quadratic)");
}

std::vector<std::string> kernel_names() { return {"cos", "quadratic"}; }

std::vector<std::string> validate_kernel(const Kernel& k, int grid_points) {
    if (grid_points < 3) throw std::invalid_argument("validate_kernel: grid_points must be >= 3");
    std::vector<std::string> violations;
    auto flag = [&violations](const std::string& msg) {
        if (violations.size() < 16) violations.push_back(msg);
    };

    const double tol = 1e-12;
    if (std::abs(k.eval(0.0) - 1.0) > 1e-9) flag("h(0) != 1");
    if (std::abs(k.eval(1.0)) > 1e-9) flag("h(1) != 0");

    double prev = k.eval(0.0);
    for (int i = 0; i < grid_points; ++i) {
        const double u = 2.0 * static_cast<double>(i) / (grid_points - 1);  // [0, 2]
        const double hu = k.eval(u);
        const double hm = k.eval(-u);
        if (std::abs(hu - hm) > tol) {
            std::ostringstream os;
            os << "h not even at u = " << u;
            flag(os.str());
        }
        if (u > 1.0 && std::abs(hu) > tol) {
            std::ostringstream os;
            os << "h nonzero outside support at u = " << u;
            flag(os.str());
        }
        if (u <= 1.0) {
            if (hu > prev + 1e-9) {
                std::ostringstream os;
                os << "h increasing on [0,1] near u = " << u;
                flag(os.str());
            }
            prev = hu;
            if (!std::isfinite(k.eval_d2(std::min(u, 1.0 - 1e-9)))) {
                std::ostringstream os;
                os << "h'' non-finite at u = " << u;
                flag(os.str());
            }
        }
    }
    return violations;
}

}  // namespace lowzero

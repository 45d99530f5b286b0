#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lowzero {

// Seed function h for the omega-construction: even, compactly supported in
// [-1, 1], non-increasing on [0, 1] with h(0) = 1 and h(1) = 0, twice
// differentiable inside the support. Derivatives are supplied analytically;
// at u = +-1 eval_d2 returns the outside value 0 by convention.
struct Kernel {
    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> eval_d1;
    std::function<double(double)> eval_d2;
    double support_radius = 1.0;
};

Kernel make_cosine_kernel();     // h(u) = cos(pi u / 2) on [-1, 1]
Kernel make_quadratic_kernel();  // h(u) = 1 - u^2 on [-1, 1]
Kernel kernel_by_name(const std::string& name);
std::vector<std::string> kernel_names();

// Samples h on a symmetric grid and reports violations of evenness,
// monotonicity on [0, 1], endpoint values, or support. Advisory: an empty
// list means admissible; bound-computing operations re-check and refuse.
std::vector<std::string> validate_kernel(const Kernel& k, int grid_points);

}  // namespace lowzero

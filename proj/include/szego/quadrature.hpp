#pragma once

#include <string>

namespace szego {

// Profile entering the limit constant. `block` is h(x) = x^2 (phi(x) - phi(2x))^2, the profile of the
// block symbol phi_N that A_N and G_N actually use; `bump` is h(x) = x^2 phi(x)^2.
enum class Profile { block, bump };

double profile_h(double x, Profile p);
std::string to_string(Profile p);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // accumulated Gauss-Kronrod estimate
};

// int_0^inf h(x) x^{1-4s} dx
QuadResult profile_moment(double s, Profile p);

// u^{-2s} [(1+u)^{4s-2} - 2 + (1-u)^{4s-2}]
double u_integrand(double s, double u);

// I_s = (4s-2) X(s) int_[0,1]^3 y^{2-2s} (1 - y + (sigma+tau) y)^{4s-4}; sigma integrated in closed form.
QuadResult I_s_triple(double s, Profile p = Profile::block);
// I_s = X(s) int_0^1 u^{-2s} [(1+u)^{4s-2} - 2 + (1-u)^{4s-2}] / (4s-3) du, cancellation-free in s.
QuadResult I_s_uform(double s, Profile p = Profile::block);
// D(s) = int_{x>=y>=0} [h(x+y) - 2h(x) + h(x-y)] x^{-2s} y^{-2s} dx dy = (4s-3) I_s.
QuadResult double_integral(double s, Profile p = Profile::block);
// dD/ds, which equals 4 I_s at s = 3/4
QuadResult double_integral_ds(double s, Profile p = Profile::block);
// I_s from the double integral: D/(4s-3), or D'/4 at s = 3/4 exactly
QuadResult I_s_double(double s, Profile p = Profile::block);

struct IsResult {
    double value = 0.0;           // triple-integral route
    double error_estimate = 0.0;  // quadrature estimate of that route
    double uform = 0.0;
    double double_form = 0.0;
    double residual = 0.0;        // max relative disagreement between the three routes
    bool converged = false;       // residual <= tolerance
};

IsResult I_s_quadrature(double s, Profile p = Profile::block, double tol = 1e-6);

}  // namespace szego

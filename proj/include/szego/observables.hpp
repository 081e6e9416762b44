#pragma once

#include <vector>

#include "szego/flow.hpp"
#include "szego/spectrum.hpp"

namespace szego {

// Q_{pi_N}(u) = 2 Im sum_{n<N} <n>^{2s} conj(u^(n)) [pi_N Pi(|pi_N u|^2 pi_N u)]^(n)
double Q_pi(const PlusSpectrum& u, double s, std::size_t N);

// (i/2) sum_{n1-n2+n3-n4=0} Psi_N(n) f1^(n1) conj(f2^(n2)) f3^(n3) conj(f4^(n4))
cplx Q_N_multilinear(const PlusSpectrum& f1, const PlusSpectrum& f2, const PlusSpectrum& f3,
                     const PlusSpectrum& f4, long N);
// diagonal value d/dt ||P_N u||_{H^1 dot}^2 along the flow
double Q_N(const PlusSpectrum& u, long N);

// N^{4s-4} Q_N(u0)
double F_N(const PlusSpectrum& u0, double s, long N);
// N^{4s-4} d^2/dt^2 ||P_N u(t)||^2_{H^1 dot} at t = 0 for the untruncated flow from u0
double G_N(const PlusSpectrum& u0, double s, long N);
// same quantity through Q_N with v = -i Pi(|u0|^2 u0) in each slot (slow path)
double G_N_multilinear(const PlusSpectrum& u0, double s, long N);

struct FGValues {
    std::vector<double> F, G;
};
// F_N and G_N for several blocks sharing the cubic terms. velocity_cutoff > 0 truncates the time derivative
// u' = -i Pi(|u|^2 u) to modes below it, which is the second derivative of the Galerkin flow at that cutoff
// rather than of the full flow.
FGValues F_G_batch(const PlusSpectrum& u0, double s, const std::vector<long>& Ns, bool with_G = true,
                   std::size_t velocity_cutoff = 0);

// ||P_N u||_{H^1 dot}^2 with the smooth block symbol
double block_energy(const CVec& u, long N);

// centered difference in t of ||P_N Phi_t(u0)||^2_{H^1 dot} at t = 0
double energy_rate_finite_difference(const PlusSpectrum& u0, long N, double h, const FlowConfig& cfg);

// h_N(t) = N^{4s-4}(||P_N Phi_t u0||^2 - ||P_N u0||^2) for all (t, N); result[i_t][i_N]
std::vector<std::vector<double>> h_N_batch(const PlusSpectrum& u0, double s, const std::vector<long>& Ns,
                                           const std::vector<double>& ts, const FlowConfig& cfg);
double h_N_profile(const PlusSpectrum& u0, double t, double s, long N, const FlowConfig& cfg);
double taylor_residual(const PlusSpectrum& u0, double t, double s, long N, const FlowConfig& cfg);

struct DensityValue {
    double log_formula = 0.0;   // -||Phi_{-t,N} u||^2_{H^s} + ||u||^2_{H^s}
    double log_integral = 0.0;  // -int_0^{-t} Q_{pi_N}(Phi_{tau,N} u) dtau
    double formula() const;
    double integral() const;
    PlusSpectrum backward_state{1};
};
DensityValue density_f_tN(const PlusSpectrum& u0, double t, double s, std::size_t N, const FlowConfig& cfg);

}  // namespace szego

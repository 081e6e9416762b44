#pragma once

namespace szego {

// A_N(n) = N^{4s-4} sum_{n1>n2>n} [Psi_N(n1-n2+n, n1, n2, n) + Psi_N(n1-n+n2, n1, n, n2)] / (<n1>^{2s} <n2>^{2s}).
// The sum is not finite: H(n1-n2+n) survives for large n1, n2 at fixed n1 - n2. That part is summed per lag
// d = n1 - n2 explicitly up to a cutoff and closed with an Euler-Maclaurin tail.
double A_N_kernel(long n, double s, long N);

}  // namespace szego

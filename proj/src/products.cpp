#include "szego/products.hpp"

#include <stdexcept>

#include "szego/fft.hpp"

namespace szego {

CVec triple_product(const CVec& a, const CVec& b, const CVec& c) {
    const std::size_t M = pow2_at_least(a.size() + b.size() + c.size());
    const CVec ga = synthesize(a, M);
    const CVec gb = (&b == &a) ? ga : synthesize(b, M);
    const CVec gc = (&c == &a) ? ga : (&c == &b) ? gb : synthesize(c, M);
    CVec prod(M);
    for (std::size_t j = 0; j < M; ++j) prod[j] = ga[j] * std::conj(gb[j]) * gc[j];
    return plus_part(analyze(prod), a.size() + c.size() - 1);
}

CVec cubic_term(const CVec& u, int padding) {
    if (padding < 3) throw std::invalid_argument("cubic_term: padding must be >= 3");
    const std::size_t K = u.size();
    const std::size_t M = pow2_at_least(static_cast<std::size_t>(padding) * K);
    CVec g = synthesize(u, M);
    for (auto& z : g) z *= std::norm(z);
    return plus_part(analyze(g), 3 * K - 2);
}

PlusSpectrum cubic_szego_term(const PlusSpectrum& u, int padding) {
    return PlusSpectrum(cubic_term(u.coeffs(), padding));
}

}  // namespace szego

// Spherical transform round trip and a short propagation on real hyperbolic 3-space.

#include <cmath>
#include <cstdio>

#include "drh.hpp"

int main() {
    const drh::SphericalEvaluator ev = drh::calibrate_inversion(drh::SphericalEvaluator(drh::real_hyperbolic_3()));
    std::printf("inversion constant %.15g (2/pi = %.15g)\n", *ev.space().inversion_constant(), 2.0 / M_PI);

    const auto rgrid = drh::RadialGrid::for_frequency(0.0, 12.0, 16.0);
    const auto sgrid = drh::SpectralGrid::for_radius(0.0, 16.0, 12.0);
    const drh::SphericalTable table(ev, sgrid, rgrid);
    const auto f = drh::RadialProfile::sample(rgrid, [](double s) { return std::exp(-s * s); });
    const auto fh = drh::sft(table, f);
    const auto back = drh::isft(table, fh);

    double err = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) err = std::max(err, std::abs(back.values[i] - f.values[i]));
    std::printf("max |isft(sft f) - f| = %.3g\n", err);

    const auto phase = drh::Phase::power_law(0.5);
    for (double t : {0.0, 0.25, 0.5}) {
        const auto u = drh::propagate(table, fh, phase, t);
        std::printf("t = %.2f  |u(0.5, t)| = %.6f\n", t, std::abs(u.values[rgrid.size() / 24]));
    }
}

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "snvstark/simulate.hpp"

namespace snvstark {

void TwoLevelParams::validate() const {
    if (!(t1_ns > 0.0)) throw std::invalid_argument("two-level: t1 must be > 0");
    if (!(t2_ns > 0.0) || t2_ns > 2.0 * t1_ns + 1e-12)
        throw std::invalid_argument("two-level: need 0 < t2 <= 2 t1");
    if (!(rabi_mhz >= 0.0)) throw std::invalid_argument("two-level: rabi must be >= 0");
    if (!(signal_purity >= 0.0 && signal_purity <= 1.0))
        throw std::invalid_argument("two-level: purity must be in [0, 1]");
}

namespace {

// Resonantly driven two-level system in the rotating frame. State is
// (pe, v) with pe the excited population and v the drive-phase coherence
// quadrature; the in-phase quadrature decouples at zero detuning.
struct BlochRates {
    double g1;     // 1/t1, 1/ns
    double g2;     // 1/t2, 1/ns
    double omega;  // angular Rabi frequency, rad/ns
};

void bloch_rhs(const BlochRates& r, const double s[2], double out[2]) {
    const double pe = s[0], v = s[1];
    out[0] = 0.5 * r.omega * v - r.g1 * pe;
    out[1] = r.omega * (1.0 - 2.0 * pe) - r.g2 * v;
}

void rk4_step(const BlochRates& r, double s[2], double h) {
    double k1[2], k2[2], k3[2], k4[2], tmp[2];
    bloch_rhs(r, s, k1);
    for (int i = 0; i < 2; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
    bloch_rhs(r, tmp, k2);
    for (int i = 0; i < 2; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
    bloch_rhs(r, tmp, k3);
    for (int i = 0; i < 2; ++i) tmp[i] = s[i] + h * k3[i];
    bloch_rhs(r, tmp, k4);
    for (int i = 0; i < 2; ++i)
        s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

G2Curve simulate_g2(const TwoLevelParams& p, const std::vector<double>& tau_ns,
                    double step_scale) {
    p.validate();
    if (!(step_scale > 0.0))
        throw std::invalid_argument("g2: step_scale must be > 0");
    if (tau_ns.empty()) throw std::invalid_argument("g2: empty tau grid");
    for (size_t i = 0; i < tau_ns.size(); ++i) {
        if (tau_ns[i] < 0.0 || (i > 0 && tau_ns[i] < tau_ns[i - 1]))
            throw std::invalid_argument("g2: tau grid must be sorted and >= 0");
    }

    BlochRates r;
    r.g1 = 1.0 / p.t1_ns;
    r.g2 = 1.0 / p.t2_ns;
    r.omega = 2.0 * M_PI * p.rabi_mhz * 1e-3;  // rad/ns

    double h = step_scale *
               std::min(p.t2_ns, p.rabi_mhz > 0.0 ? 1e3 / p.rabi_mhz
                                                  : p.t2_ns) / 50.0;
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::runtime_error("g2: infeasible integration step");

    // stationary point of the equations above: pe = S / (1 + 2 S) with
    // S = omega^2 t1 t2 / 2
    const double s_sat = 0.5 * r.omega * r.omega * p.t1_ns * p.t2_ns;
    const double pe_ss = s_sat / (1.0 + 2.0 * s_sat);
    if (pe_ss <= 0.0)
        throw std::runtime_error("g2: zero drive has no steady-state population");

    G2Curve curve;
    curve.tau_ns = tau_ns;
    curve.ideal.reserve(tau_ns.size());

    double state[2] = {0.0, 0.0};  // ground state at tau = 0
    double t = 0.0;
    for (double tau : tau_ns) {
        const double dt = tau - t;
        if (dt > 0.0) {
            const int n = std::max(1, static_cast<int>(std::ceil(dt / h)));
            const double hh = dt / n;
            for (int i = 0; i < n; ++i) rk4_step(r, state, hh);
            t = tau;
        }
        curve.ideal.push_back(state[0] / pe_ss);
    }

    const double p2 = p.signal_purity * p.signal_purity;
    curve.measured.reserve(curve.ideal.size());
    for (double g : curve.ideal) curve.measured.push_back(1.0 - p2 * (1.0 - g));
    return curve;
}

}  // namespace snvstark

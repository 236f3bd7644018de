#include "parastab/phase_control.hpp"

namespace parastab {

const std::array<const char*, 4> Tomogram::kBasisLabels = {"gg", "ge", "eg", "ee"};

nlohmann::json Tomogram::to_json() const {
    nlohmann::json j;
    j["basis"] = kBasisLabels;
    auto grid = [&](auto f) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < 4; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < 4; ++k) row.push_back(f(i, k));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["re"] = grid([&](int i, int k) { return rho(i, k).real(); });
    j["im"] = grid([&](int i, int k) { return rho(i, k).imag(); });
    j["mag"] = grid([&](int i, int k) { return magnitude(i, k); });
    j["phase"] = grid([&](int i, int k) { return phase(i, k); });
    return j;
}

StabilizedState stabilize_rotated(const SystemParams& params, Parity parity, double psi) {
    const TargetSpec target(parity, psi);
    const HilbertSpec spec(params.n_res);
    const OpMatrix h = build_h_eff(params, target);
    const Liouvillian L = build_liouvillian(h, params, spec);
    DensityMatrix rho = steady_state(L);
    const double f = fidelity_to_target(rho.mat(), target_state(target), spec);
    return StabilizedState{std::move(rho), f};
}

Tomogram tomogram(const OpMatrix& rho_full, const HilbertSpec& spec) {
    Tomogram t;
    t.rho = partial_trace_resonator(rho_full, spec);
    return t;
}

Tomogram tomogram(const DensityMatrix& rho_full, const HilbertSpec& spec) {
    return tomogram(rho_full.mat(), spec);
}

double coherence_phase(const Tomogram& t, Parity parity) {
    if (parity == Parity::Even) return t.phase(3, 0);  // <ee|rho|gg>
    return t.phase(2, 1);                              // <eg|rho|ge>
}

ManifoldMetrics manifold_metrics(const OpMatrix& rho_full, Parity parity,
                                 const HilbertSpec& spec) {
    const OpMatrix reduced = partial_trace_resonator(rho_full, spec);
    ManifoldMetrics m;
    if (parity == Parity::Even) {
        m.population = (reduced(0, 0) + reduced(3, 3)).real();
    } else {
        m.population = (reduced(1, 1) + reduced(2, 2)).real();
    }
    m.purity = purity(reduced);
    return m;
}

}  // namespace parastab

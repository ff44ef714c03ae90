#include "nosreg/regulation.hpp"

#include <string>
#include <utility>

#include "nosreg/errors.hpp"

namespace nosreg {

SylvesterSolution solve_sylvester(const ChainSystem& chain, const Exosystem& exo, const Mat& H_row) {
    const std::size_t n = chain.order;
    const std::size_t m = exo.dim();
    if (H_row.rows() != 1 || H_row.cols() != m) {
        throw DimensionMismatch("regulation", "reference row must be 1x" + std::to_string(m));
    }
    if (chain.A.rows() != n || chain.B.rows() != n || chain.C.cols() != n) {
        throw DimensionMismatch("regulation", "chain matrices do not match its order");
    }

    // Unknowns z = [vec(Pi); Gamma^T] with column-major vec. Using
    // vec(P S) = (S^T kron I) vec(P), vec(A P) = (I kron A) vec(P),
    // vec(B Gamma) = (I kron B) Gamma^T and vec(C P) = (I kron C) vec(P):
    //   [S^T kron I_n - I_m kron A   -(I_m kron B)] z = 0
    //   [I_m kron C                  0           ] z = H_row^T
    const std::size_t np = n * m;
    const Mat Im = Mat::identity(m);
    const Mat top_left = kron(exo.S.transpose(), Mat::identity(n)) - kron(Im, chain.A);
    const Mat top_right = -1.0 * kron(Im, chain.B);
    const Mat bottom_left = kron(Im, chain.C);

    Mat system(np + m, np + m);
    system.set_block(0, 0, top_left);
    system.set_block(0, np, top_right);
    system.set_block(np, 0, bottom_left);
    Vec rhs(np + m, 0.0);
    for (std::size_t k = 0; k < m; ++k) rhs[np + k] = H_row(0, k);

    Vec z;
    try {
        z = lu_solve(system, rhs);
    } catch (const SingularMatrix& e) {
        throw NoRegulatorSolution("regulator equations are singular (exosystem mode resonates with the chain): " +
                                  std::string(e.what()));
    }

    SylvesterSolution sol{Mat(n, m), Mat(1, m)};
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r = 0; r < n; ++r) sol.Pi(r, c) = z[c * n + r];
    for (std::size_t k = 0; k < m; ++k) sol.Gamma(0, k) = z[np + k];
    return sol;
}

Vec nominal_ic(std::span<const double> xi0, const Mat& Pi, std::span<const double> w0) {
    if (Pi.rows() != xi0.size() || Pi.cols() != w0.size()) {
        throw DimensionMismatch("regulation", "nominal initial condition needs Pi of size " +
                                                  std::to_string(xi0.size()) + "x" + std::to_string(w0.size()));
    }
    Vec out(xi0.begin(), xi0.end());
    const Vec pw = Pi * w0;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= pw[i];
    return out;
}

SubsystemGains design_subsystem(const ChainSystem& chain, const Exosystem& exo, const Mat& H_row,
                                const PoleSet& poles, std::span<const double> xi0) {
    SylvesterSolution syl = solve_sylvester(chain, exo, H_row);
    Vec x_tilde = nominal_ic(xi0, syl.Pi, exo.w0);
    MooreFeedback moore = moore_feedback(poles, chain.order);
    Certificate cert = certify(modal_coeffs(poles, x_tilde));
    Mat G = syl.Gamma - moore.F * syl.Pi;
    return SubsystemGains{std::move(moore.F), std::move(G),       std::move(syl.Pi), std::move(syl.Gamma),
                          poles,              std::move(x_tilde), std::move(cert)};
}

RegulatorGains assemble_gains(const MimoChain& mimo, std::vector<SubsystemGains> subsystems) {
    const std::size_t p = mimo.outputs();
    if (subsystems.size() != p) {
        throw DimensionMismatch("regulation", std::to_string(subsystems.size()) + " subsystem gains for " +
                                                  std::to_string(p) + " outputs");
    }
    const std::size_t m = subsystems.front().G.cols();
    RegulatorGains gains;
    gains.F = Mat(p, mimo.total_order);
    gains.G = Mat(p, m);
    for (std::size_t j = 0; j < p; ++j) {
        const SubsystemGains& s = subsystems[j];
        if (s.F.rows() != 1 || s.F.cols() != mimo.degrees[j] || s.G.rows() != 1 || s.G.cols() != m) {
            throw DimensionMismatch("regulation", "gains of subsystem " + std::to_string(j));
        }
        gains.F.set_block(j, mimo.offset(j), s.F);
        gains.G.set_block(j, 0, s.G);
    }
    gains.subsystems = std::move(subsystems);
    return gains;
}

RegulatorGains synthesize(const MimoChain& mimo, const Exosystem& exo, std::span<const double> xi0,
                          const std::vector<PoleSet>& pole_sets) {
    const std::size_t p = mimo.outputs();
    if (exo.outputs() != p) {
        throw DimensionMismatch("regulation", "exosystem has " + std::to_string(exo.outputs()) +
                                                  " reference outputs for " + std::to_string(p) + " chains");
    }
    if (pole_sets.size() != p) {
        throw DimensionMismatch("regulation", std::to_string(pole_sets.size()) + " pole sets for " +
                                                  std::to_string(p) + " chains");
    }
    const std::vector<Vec> blocks = split_state(xi0, mimo.degrees);

    std::vector<SubsystemGains> subsystems;
    subsystems.reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
        if (pole_sets[j].size() != mimo.degrees[j]) {
            throw DimensionMismatch("regulation", "subsystem " + std::to_string(j) + " has order " +
                                                      std::to_string(mimo.degrees[j]) + " but " +
                                                      std::to_string(pole_sets[j].size()) + " poles");
        }
        SubsystemGains s =
            design_subsystem(mimo.block(j), exo, exo.H.block(j, 0, 1, exo.dim()), pole_sets[j], blocks[j]);
        if (!s.cert.passed) {
            throw CertificateFailed(j, s.cert.p_value);
        }
        subsystems.push_back(std::move(s));
    }
    return assemble_gains(mimo, std::move(subsystems));
}

}  // namespace nosreg

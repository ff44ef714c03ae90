#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nosreg/chainmodel.hpp"
#include "nosreg/modal.hpp"
#include "nosreg/noscert.hpp"
#include "nosreg/numerics.hpp"

namespace nosreg {

// Steady-state manifold xi = Pi w and steady-state input Gamma w of one
// chain tracking r = H_row w:
//   Pi S = A Pi + B Gamma,   C Pi = H_row.
struct SylvesterSolution {
    Mat Pi;     // order x m
    Mat Gamma;  // 1 x m
};

SylvesterSolution solve_sylvester(const ChainSystem& chain, const Exosystem& exo, const Mat& H_row);

// Offset of the chain state from the steady-state manifold: xi0 - Pi w0.
Vec nominal_ic(std::span<const double> xi0, const Mat& Pi, std::span<const double> w0);

struct SubsystemGains {
    Mat F;      // 1 x order
    Mat G;      // 1 x m, Gamma - F Pi
    Mat Pi;     // order x m
    Mat Gamma;  // 1 x m
    PoleSet poles;
    Vec nominal_ic;
    Certificate cert;
};

struct RegulatorGains {
    std::vector<SubsystemGains> subsystems;
    Mat F;  // p x total order, block row j holds F_j in the columns of chain j
    Mat G;  // p x m
};

// Designs one subsystem and evaluates its certificate without enforcing it.
SubsystemGains design_subsystem(const ChainSystem& chain, const Exosystem& exo, const Mat& H_row,
                                const PoleSet& poles, std::span<const double> xi0);

// Block-assembles per-subsystem gains into the MIMO F and G.
RegulatorGains assemble_gains(const MimoChain& mimo, std::vector<SubsystemGains> subsystems);

// Full design for every subsystem. Throws CertificateFailed for the first
// subsystem whose certificate does not pass.
RegulatorGains synthesize(const MimoChain& mimo, const Exosystem& exo, std::span<const double> xi0,
                          const std::vector<PoleSet>& pole_sets);

}  // namespace nosreg

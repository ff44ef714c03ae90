#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nosreg/numerics.hpp"

namespace nosreg {

// Single-input single-output chain of integrators of the given order:
// A is the nilpotent shift, B the last basis vector, C the first basis row.
struct ChainSystem {
    std::size_t order = 0;
    Mat A;
    Mat B;
    Mat C;
};

// Decoupled MIMO chain in block-diagonal form.
struct MimoChain {
    std::vector<std::size_t> degrees;
    Mat Ac;
    Mat Bc;
    Mat Cc;
    std::size_t total_order = 0;

    std::size_t outputs() const noexcept { return degrees.size(); }
    ChainSystem block(std::size_t j) const;
    // Offset of block j inside the stacked state.
    std::size_t offset(std::size_t j) const;
};

// Linear exosystem w' = S w, r = H w.
struct Exosystem {
    Mat S;
    Mat H;
    Vec w0;

    Exosystem() = default;
    Exosystem(Mat S, Mat H, Vec w0);

    std::size_t dim() const noexcept { return S.rows(); }
    std::size_t outputs() const noexcept { return H.rows(); }
};

// A feedback-linearizable plant supplied as closed-form maps. The callables
// must be pure functions; the pole search and the simulator may call them
// from several threads.
struct NonlinearPlant {
    std::string name;
    std::size_t state_dim = 0;
    std::size_t input_dim = 0;
    std::vector<std::size_t> degrees;
    // (x, u) -> x'
    std::function<Vec(const Vec&, const Vec&)> dynamics;
    // x -> y, length input_dim
    std::function<Vec(const Vec&)> output;
    // x -> xi (normal-form chain coordinates), length sum(degrees)
    std::function<Vec(const Vec&)> normal_map;
    // (x, v) -> u rendering the input-output map a chain of integrators
    std::function<Vec(const Vec&, const Vec&)> linearizing_feedback;

    // Checks the dimension relations between the declared sizes and the
    // values produced at `x_probe`. Throws DimensionMismatch on violation.
    void validate(const Vec& x_probe) const;
};

ChainSystem make_chain(std::size_t order);
MimoChain assemble_mimo(const std::vector<std::size_t>& degrees);
std::vector<Vec> split_state(std::span<const double> xi, const std::vector<std::size_t>& degrees);

}  // namespace nosreg

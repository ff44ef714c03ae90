#include "nosreg/chainmodel.hpp"

#include <numeric>
#include <utility>

#include "nosreg/errors.hpp"

namespace nosreg {

ChainSystem make_chain(std::size_t order) {
    if (order == 0) {
        throw InvalidOrder("chain order must be at least 1");
    }
    ChainSystem sys;
    sys.order = order;
    sys.A = Mat(order, order);
    for (std::size_t i = 0; i + 1 < order; ++i) sys.A(i, i + 1) = 1.0;
    sys.B = Mat(order, 1);
    sys.B(order - 1, 0) = 1.0;
    sys.C = Mat(1, order);
    sys.C(0, 0) = 1.0;
    return sys;
}

MimoChain assemble_mimo(const std::vector<std::size_t>& degrees) {
    if (degrees.empty()) {
        throw InvalidOrder("degree list is empty");
    }
    for (std::size_t j = 0; j < degrees.size(); ++j) {
        if (degrees[j] == 0) {
            throw InvalidOrder("degree " + std::to_string(j) + " is zero");
        }
    }
    MimoChain m;
    m.degrees = degrees;
    m.total_order = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
    const std::size_t p = degrees.size();
    m.Ac = Mat(m.total_order, m.total_order);
    m.Bc = Mat(m.total_order, p);
    m.Cc = Mat(p, m.total_order);
    std::size_t off = 0;
    for (std::size_t j = 0; j < p; ++j) {
        const ChainSystem blk = make_chain(degrees[j]);
        m.Ac.set_block(off, off, blk.A);
        m.Bc.set_block(off, j, blk.B);
        m.Cc.set_block(j, off, blk.C);
        off += degrees[j];
    }
    return m;
}

ChainSystem MimoChain::block(std::size_t j) const { return make_chain(degrees.at(j)); }

std::size_t MimoChain::offset(std::size_t j) const {
    return std::accumulate(degrees.begin(), degrees.begin() + static_cast<std::ptrdiff_t>(j), std::size_t{0});
}

std::vector<Vec> split_state(std::span<const double> xi, const std::vector<std::size_t>& degrees) {
    const std::size_t total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
    if (xi.size() != total) {
        throw DimensionMismatch("chainmodel", "state of length " + std::to_string(xi.size()) +
                                                  " does not match total degree " + std::to_string(total));
    }
    std::vector<Vec> parts;
    parts.reserve(degrees.size());
    std::size_t off = 0;
    for (std::size_t d : degrees) {
        parts.emplace_back(xi.begin() + static_cast<std::ptrdiff_t>(off),
                           xi.begin() + static_cast<std::ptrdiff_t>(off + d));
        off += d;
    }
    return parts;
}

Exosystem::Exosystem(Mat S_, Mat H_, Vec w0_) : S(std::move(S_)), H(std::move(H_)), w0(std::move(w0_)) {
    if (S.rows() != S.cols()) {
        throw DimensionMismatch("chainmodel", "exosystem S must be square");
    }
    if (H.cols() != S.rows()) {
        throw DimensionMismatch("chainmodel", "exosystem H has " + std::to_string(H.cols()) +
                                                  " columns, S is " + std::to_string(S.rows()) + "x" +
                                                  std::to_string(S.rows()));
    }
    if (w0.size() != S.rows()) {
        throw DimensionMismatch("chainmodel", "exosystem w0 length " + std::to_string(w0.size()));
    }
    if (!all_finite(w0)) {
        throw NonFiniteValue("chainmodel", "exosystem w0");
    }
}

void NonlinearPlant::validate(const Vec& x_probe) const {
    const std::size_t total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
    if (degrees.size() != input_dim) {
        throw DimensionMismatch("chainmodel", "plant '" + name + "' declares " + std::to_string(degrees.size()) +
                                                  " relative degrees for " + std::to_string(input_dim) +
                                                  " inputs");
    }
    if (total > state_dim) {
        throw DimensionMismatch("chainmodel", "plant '" + name + "' total relative degree exceeds state dimension");
    }
    if (x_probe.size() != state_dim) {
        throw DimensionMismatch("chainmodel", "plant '" + name + "' expects a state of length " +
                                                  std::to_string(state_dim));
    }
    if (output(x_probe).size() != input_dim) {
        throw DimensionMismatch("chainmodel", "plant '" + name + "' output length");
    }
    if (normal_map(x_probe).size() != total) {
        throw DimensionMismatch("chainmodel", "plant '" + name + "' normal map length");
    }
    if (dynamics(x_probe, Vec(input_dim, 0.0)).size() != state_dim) {
        throw DimensionMismatch("chainmodel", "plant '" + name + "' dynamics length");
    }
    if (linearizing_feedback(x_probe, Vec(input_dim, 0.0)).size() != input_dim) {
        throw DimensionMismatch("chainmodel", "plant '" + name + "' linearizing feedback length");
    }
}

}  // namespace nosreg

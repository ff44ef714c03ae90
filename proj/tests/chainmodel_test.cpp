#include "doctest.h"

#include "nosreg/chainmodel.hpp"
#include "nosreg/errors.hpp"

using namespace nosreg;

TEST_CASE("make_chain: canonical triples") {
    const ChainSystem c1 = make_chain(1);
    CHECK(c1.A == Mat{{0.0}});
    CHECK(c1.B == Mat{{1.0}});
    CHECK(c1.C == Mat{{1.0}});

    const ChainSystem c2 = make_chain(2);
    CHECK(c2.A == Mat{{0.0, 1.0}, {0.0, 0.0}});
    CHECK(c2.B == Mat{{0.0}, {1.0}});
    CHECK(c2.C == Mat{{1.0, 0.0}});

    const ChainSystem c4 = make_chain(4);
    CHECK(c4.A == Mat{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    CHECK(c4.B == Mat{{0}, {0}, {0}, {1}});
    CHECK(c4.C == Mat{{1, 0, 0, 0}});

    CHECK_THROWS_AS(make_chain(0), InvalidOrder);
}

TEST_CASE("assemble_mimo") {
    SUBCASE("single block matches make_chain") {
        const MimoChain m = assemble_mimo({2});
        const ChainSystem c = make_chain(2);
        CHECK(m.Ac == c.A);
        CHECK(m.Bc == c.B);
        CHECK(m.Cc == c.C);
        CHECK(m.total_order == 2);
    }
    SUBCASE("two scalar chains") {
        const MimoChain m = assemble_mimo({1, 1});
        CHECK(m.Ac == Mat(2, 2));
        CHECK(m.Bc == Mat::identity(2));
        CHECK(m.Cc == Mat::identity(2));
    }
    SUBCASE("degrees (2,3) built by hand") {
        const MimoChain m = assemble_mimo({2, 3});
        const Mat ac{{0, 1, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 0, 0}};
        const Mat bc{{0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 1}};
        const Mat cc{{1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}};
        CHECK(m.Ac == ac);
        CHECK(m.Bc == bc);
        CHECK(m.Cc == cc);
        CHECK(m.total_order == 5);
        CHECK(m.offset(1) == 2);
    }
    CHECK_THROWS_AS(assemble_mimo({}), InvalidOrder);
    CHECK_THROWS_AS(assemble_mimo({2, 0}), InvalidOrder);
}

TEST_CASE("split_state") {
    CHECK(split_state(Vec{1, 2, 3, 4}, {2, 2}) == std::vector<Vec>{{1, 2}, {3, 4}});
    CHECK(split_state(Vec{0, 2, -5, 4}, {4}) == std::vector<Vec>{{0, 2, -5, 4}});
    CHECK(split_state(Vec{9, 1, 2, 3}, {1, 3}) == std::vector<Vec>{{9}, {1, 2, 3}});
    CHECK_THROWS_AS(split_state(Vec{1, 2, 3}, {2, 2}), DimensionMismatch);
}

TEST_CASE("chains with every degree >= 2 have no direct feedthrough, and each block is controllable") {
    for (const std::vector<std::size_t>& degrees : std::vector<std::vector<std::size_t>>{{2}, {2, 3}, {4, 2, 5}}) {
        const MimoChain m = assemble_mimo(degrees);
        CHECK(m.Cc * m.Bc == Mat(degrees.size(), degrees.size()));
        for (std::size_t j = 0; j < degrees.size(); ++j) {
            const ChainSystem c = m.block(j);
            // [B, AB, ..., A^{n-1} B] is the reversal permutation.
            Mat ctrb(c.order, c.order);
            Mat col = c.B;
            for (std::size_t k = 0; k < c.order; ++k) {
                ctrb.set_block(0, k, col);
                col = c.A * col;
            }
            for (std::size_t r = 0; r < c.order; ++r)
                for (std::size_t k = 0; k < c.order; ++k)
                    CHECK(ctrb(r, k) == (r + k == c.order - 1 ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("Exosystem validates shapes") {
    CHECK_NOTHROW(Exosystem(Mat{{0, 1}, {-1, 0}}, Mat{{1, 0}}, Vec{1, 0}));
    CHECK_THROWS_AS(Exosystem(Mat(2, 3), Mat{{1, 0}}, Vec{1, 0}), DimensionMismatch);
    CHECK_THROWS_AS(Exosystem(Mat{{0, 1}, {-1, 0}}, Mat{{1, 0, 0}}, Vec{1, 0}), DimensionMismatch);
    CHECK_THROWS_AS(Exosystem(Mat{{0, 1}, {-1, 0}}, Mat{{1, 0}}, Vec{1}), DimensionMismatch);
}

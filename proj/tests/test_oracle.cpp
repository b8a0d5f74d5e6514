#include <catch_amalgamated.hpp>

#include "glmy/oracle.hpp"
#include "glmy/spectral.hpp"
#include "support/corpus.hpp"

using namespace glmy;
using namespace glmy::oracle;

namespace {

IntegerMatrix integers(std::initializer_list<std::initializer_list<long>> rows) {
    IntegerMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("fraction-free rank and nullspace", "[oracle]") {
    CHECK(integer_rank(integers({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}})) == 2);
    CHECK(integer_rank(integers({{0, 0}, {0, 0}})) == 0);
    CHECK(integer_rank(integers({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}})) == 3);
    const auto ns = integer_nullspace(integers({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}));
    REQUIRE(ns.size() == 1);
    // x = (-1, -1, 1) up to sign.
    CHECK(abs(ns[0][0]) == 1);
    CHECK(abs(ns[0][1]) == 1);
    CHECK(abs(ns[0][2]) == 1);
    CHECK(ns[0][0] * 1 + ns[0][1] * 2 + ns[0][2] * 3 == 0);
}

TEST_CASE("Ω bases of the two examples", "[oracle]") {
    CHECK(omega_basis(testing::example1(), 2).dim() == 4);
    CHECK(omega_basis(testing::example1(), 0).dim() == 4);
    CHECK(omega_basis(testing::example2(), 0).dim() == 6);

    const OmegaBasis o2 = omega_basis(testing::example2(), 2);
    REQUIRE(o2.dim() == 2);
    // Every Ω_2 vector is a combination of 013 - 023 and 014 - 024.
    for (std::size_t i = 0; i < o2.dim(); ++i) {
        const Chain c = o2.chain(i);
        CHECK(c.coefficient(ElementaryPath{0, 1, 3}) == -c.coefficient(ElementaryPath{0, 2, 3}));
        CHECK(c.coefficient(ElementaryPath{0, 1, 4}) == -c.coefficient(ElementaryPath{0, 2, 4}));
    }
}

TEST_CASE("Ω Betti numbers", "[oracle]") {
    CHECK(betti_omega(testing::example1()) == std::vector<std::size_t>{1, 0, 0, 0});
    CHECK(betti_omega(testing::example2()) == std::vector<std::size_t>{1, 1, 0});
    const Digraph twice = parse_edge_list("1->2\n1->3\n1->4\n2->3\n2->4\n3->4\n"
                                          "5->6\n5->7\n5->8\n6->7\n6->8\n7->8\n");
    CHECK(betti_omega(twice) == std::vector<std::size_t>{2, 0, 0, 0});
}

TEST_CASE("Ω basis vectors have allowed boundaries", "[oracle]") {
    for (const Digraph& g : testing::corpus(60)) {
        const int top = static_cast<int>(max_allowed_path_length(g));
        for (int k = 1; k <= top; ++k) {
            const OmegaBasis ob = omega_basis(g, k);
            const PathBasis below = enumerate_allowed(g, k - 1);
            for (std::size_t i = 0; i < ob.dim(); ++i)
                for (const auto& [f, c] : boundary(ob.chain(i)).terms()) CHECK(below.contains(f));
        }
    }
}

TEST_CASE("boundary maps Ω into Ω", "[oracle]") {
    for (const Digraph& g : testing::corpus(60)) {
        const int top = static_cast<int>(max_allowed_path_length(g));
        for (int k = 1; k <= top; ++k) CHECK(boundary_stays_in_omega(g, k));
    }
}

TEST_CASE("embedded and Ω Betti numbers agree on the corpus", "[oracle]") {
    for (const Digraph& g : testing::corpus()) {
        INFO(serialize_edge_list(g));
        CHECK(betti_numbers(ChainComplex(g)).betti() == betti_omega(g));
    }
}

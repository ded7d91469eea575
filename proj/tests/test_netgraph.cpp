#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "doctest.h"
#include "oscnet/netgraph/graph.hpp"
#include "oscnet/netgraph/matrix.hpp"
#include "oscnet/simcore/rng.hpp"

using namespace oscnet;

namespace {

// Independent union-find connectivity oracle.
struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

bool connected_oracle(const NetworkGraph& g) {
    UnionFind uf(g.node_count());
    for (const auto& e : g.edges())
        if (e.weight > 0.0) uf.unite(e.i, e.j);
    for (std::size_t i = 1; i < g.node_count(); ++i)
        if (uf.find(i) != uf.find(0)) return false;
    return true;
}

NetworkGraph random_graph(RngStream& rng, std::size_t n, double edge_prob) {
    std::vector<GraphEdge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.next_double() < edge_prob) edges.push_back({i, j, rng.uniform(0.1, 2.0)});
    return NetworkGraph(n, std::move(edges));
}

}  // namespace

TEST_CASE("incidence: single edge, empty set, triangle columns sum to zero") {
    NetworkGraph single(2, {{0, 1, 1.0}});
    auto e = incidence(single);
    REQUIRE(e.rows() == 2);
    REQUIRE(e.cols() == 1);
    CHECK(e(0, 0) == 1.0);
    CHECK(e(1, 0) == -1.0);

    NetworkGraph empty(3, {});
    auto e0 = incidence(empty);
    CHECK(e0.rows() == 3);
    CHECK(e0.cols() == 0);

    NetworkGraph tri(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    auto et = incidence(tri);
    REQUIRE(et.cols() == 3);
    for (std::size_t c = 0; c < 3; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < 3; ++r) sum += et(r, c);
        CHECK(sum == 0.0);
    }
}

TEST_CASE("laplacian: two-node, no edges, K4, and L = E K E^T") {
    NetworkGraph two(2, {{0, 1, 1.0}});
    auto l = laplacian(two);
    CHECK(l(0, 0) == 1.0);
    CHECK(l(0, 1) == -1.0);
    CHECK(l(1, 0) == -1.0);
    CHECK(l(1, 1) == 1.0);

    NetworkGraph empty(3, {});
    CHECK(laplacian(empty).max_abs() == 0.0);

    auto k4 = NetworkGraph::complete(4);
    auto l4 = laplacian(k4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(l4(i, j) == (i == j ? 3.0 : -1.0));

    // Brute-force identity against the incidence construction.
    RngStream rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_graph(rng, 6, 0.5);
        if (g.edges().empty()) continue;
        auto e = incidence(g);
        Matrix k(g.edges().size(), g.edges().size());
        for (std::size_t c = 0; c < g.edges().size(); ++c) k(c, c) = g.edges()[c].weight;
        auto via_incidence = e * k * e.transpose();
        CHECK((via_incidence - laplacian(g)).max_abs() < 1e-12);
    }
}

TEST_CASE("laplacian properties: row sums zero, eigenvalues nonnegative") {
    RngStream rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = random_graph(rng, 8, 0.4);
        auto l = laplacian(g);
        for (std::size_t i = 0; i < l.rows(); ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < l.cols(); ++j) sum += l(i, j);
            CHECK(std::abs(sum) < 1e-12);
        }
        auto ev = symmetric_eigenvalues(l);
        for (double v : ev) CHECK(v >= -1e-10);
    }
}

TEST_CASE("kronecker: identities, row example, random oracle, mixed product") {
    auto i2 = Matrix::identity(2);
    auto i4 = kronecker(i2, i2);
    CHECK((i4 - Matrix::identity(4)).max_abs() == 0.0);

    Matrix a{{1.0, 2.0}};
    Matrix b{{0.0, 1.0}};
    auto ab = kronecker(a, b);
    REQUIRE(ab.rows() == 1);
    REQUIRE(ab.cols() == 4);
    CHECK(ab(0, 0) == 0.0);
    CHECK(ab(0, 1) == 1.0);
    CHECK(ab(0, 2) == 0.0);
    CHECK(ab(0, 3) == 2.0);

    RngStream rng(3);
    auto rand_mat = [&](std::size_t r, std::size_t c) {
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
        return m;
    };
    for (int trial = 0; trial < 10; ++trial) {
        auto p = rand_mat(2, 2), q = rand_mat(2, 2);
        auto pq = kronecker(p, q);
        REQUIRE(pq.rows() == 4);
        REQUIRE(pq.cols() == 4);
        // Element-by-element double-loop expansion of the definition.
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(pq(i, j) ==
                      doctest::Approx(p(i / 2, j / 2) * q(i % 2, j % 2)).epsilon(1e-12));
        // (A (x) B)(C (x) D) = (AC) (x) (BD)
        auto c = rand_mat(2, 3), d = rand_mat(2, 2);
        auto lhs = kronecker(p, q) * kronecker(c, d);
        auto rhs = kronecker(p * c, q * d);
        CHECK((lhs - rhs).max_abs() < 1e-10);
    }
}

TEST_CASE("algebraic connectivity: known values and union-find equivalence") {
    NetworkGraph two(2, {{0, 1, 1.0}});
    CHECK(algebraic_connectivity(laplacian(two)) == doctest::Approx(2.0).epsilon(1e-10));

    NetworkGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK(std::abs(algebraic_connectivity(laplacian(split))) < 1e-10);

    auto k4 = NetworkGraph::complete(4);
    CHECK(algebraic_connectivity(laplacian(k4)) == doctest::Approx(4.0).epsilon(1e-10));

    Matrix nonsym{{1.0, 2.0}, {0.0, 1.0}};
    CHECK_THROWS(algebraic_connectivity(nonsym));

    RngStream rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = random_graph(rng, 7, rng.uniform(0.15, 0.7));
        const double lambda2 = algebraic_connectivity(laplacian(g));
        CHECK((lambda2 > 1e-9) == connected_oracle(g));
    }
}

TEST_CASE("graph invariants are enforced") {
    CHECK_THROWS(NetworkGraph(3, {{1, 1, 1.0}}));   // self loop
    CHECK_THROWS(NetworkGraph(3, {{0, 3, 1.0}}));   // index range
    CHECK_THROWS(NetworkGraph(3, {{0, 1, -0.5}}));  // negative weight
}

TEST_CASE("general eigensolver: known spectra") {
    // Rotation-like block: eigenvalues +/- i.
    Matrix rot{{0.0, -1.0}, {1.0, 0.0}};
    auto ev = eigenvalues(rot);
    std::sort(ev.begin(), ev.end(),
              [](auto a, auto b) { return a.imag() < b.imag(); });
    CHECK(ev[0].real() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(ev[0].imag() == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(ev[1].imag() == doctest::Approx(1.0).epsilon(1e-10));

    // Companion matrix of (x-1)(x-2)(x+3)(x^2+4) = known real + complex roots.
    // p(x) = x^5 - 7x^3 + 4x^2*... build instead from factored multiplication.
    // (x-1)(x-2) = x^2-3x+2 ; (x+3) -> x^3 - 7x + 6 ... times (x^2+4):
    // x^5 + 0x^4 - 3x^3 + 0x^2*... compute: (x^3 - 7x + 6)(x^2 + 4)
    //  = x^5 + 4x^3 - 7x^3 - 28x + 6x^2 + 24 = x^5 - 3x^3 + 6x^2 - 28x + 24.
    const double c[5] = {24.0, -28.0, 6.0, -3.0, 0.0};  // p = x^5 + c4 x^4 + ... + c0
    Matrix comp(5, 5);
    for (std::size_t i = 1; i < 5; ++i) comp(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < 5; ++i) comp(i, 4) = -c[i];
    auto roots = eigenvalues(comp);
    REQUIRE(roots.size() == 5);
    int found_real = 0, found_complex = 0;
    for (auto r : roots) {
        if (std::abs(r.imag()) < 1e-8) {
            const double x = r.real();
            CHECK((std::abs(x - 1.0) < 1e-7 || std::abs(x - 2.0) < 1e-7 ||
                   std::abs(x + 3.0) < 1e-7));
            ++found_real;
        } else {
            CHECK(std::abs(r.real()) < 1e-7);
            CHECK(std::abs(std::abs(r.imag()) - 2.0) < 1e-7);
            ++found_complex;
        }
    }
    CHECK(found_real == 3);
    CHECK(found_complex == 2);
}

TEST_CASE("general eigensolver agrees with Jacobi on symmetric input and trace/det") {
    RngStream rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + trial % 6;
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-2.0, 2.0);

        auto ev = eigenvalues(m);
        REQUIRE(ev.size() == n);
        std::complex<double> sum = 0.0;
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
        for (auto v : ev) sum += v;
        CHECK(sum.real() == doctest::Approx(trace).epsilon(1e-7));
        CHECK(std::abs(sum.imag()) < 1e-7);

        // Symmetrized copy: compare against Jacobi.
        Matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
        auto es = eigenvalues(s);
        std::vector<double> re;
        for (auto v : es) {
            CHECK(std::abs(v.imag()) < 1e-7);
            re.push_back(v.real());
        }
        std::sort(re.begin(), re.end());
        auto jac = symmetric_eigenvalues(s);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(re[i] == doctest::Approx(jac[i]).epsilon(1e-6));
    }
}

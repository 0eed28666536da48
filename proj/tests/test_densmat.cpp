#include "catch_amalgamated.hpp"

#include <cmath>

#include "sowp/densmat.hpp"
#include "sowp/dynamics.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace sowp;

namespace {

const Pulse reference = Pulse::from_lab(1800.0, 8, 1.3e13);
const auto table = default_species();

MomentumGrid small_grid(PhiMode mode = PhiMode::analytic) {
    return MomentumGrid::for_carrier(reference.omega(), 40, 24, mode, 8);
}

DensityOptions threads(unsigned n) {
    DensityOptions o;
    o.threads = n;
    return o;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    for (int n : {1, 2, 5, 16, 64}) {
        const auto r = gauss_legendre(n, -0.5, 2.0);
        for (int deg = 0; deg <= 2 * n - 1; deg += std::max(1, n / 3)) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
            const double exact = (std::pow(2.0, deg + 1) - std::pow(-0.5, deg + 1)) / (deg + 1);
            CHECK_THAT(s, WithinRel(exact, 1e-12));
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), DomainError);
}

TEST_CASE("momentum grid volume is that of the cutoff sphere") {
    const auto g = MomentumGrid::make(0.4, 7, 3);
    const double p_max = std::sqrt(0.8);
    CHECK_THAT(g.volume(), WithinRel(4.0 / 3.0 * units::pi * p_max * p_max * p_max, 1e-13));
    const auto d = g.doubled();
    CHECK(d.p.size() == 14);
    CHECK(d.cos_theta.size() == 6);
    CHECK_THROWS_AS(MomentumGrid::make(0.0), DomainError);
}

TEST_CASE("density matrix invariants on the analytic-phi path") {
    for (const auto& s : table) {
        const auto res = build_density_matrix(reference, s, small_grid(), threads(2));
        const auto& rho = res.rho;
        INFO(s.name);
        CHECK(rho.max_hermiticity_error() <= 1e-12 * rho.total_probability());
        CHECK(rho.max_relative_m_offdiagonal() == 0.0);
        for (const Level l : {Level::j3_2, Level::j1_2}) {
            CHECK_THAT(rho.population(l, 1), WithinRel(rho.population(l, -1), 1e-6));
            CHECK(rho.population(l, 1) > 0.0);
        }
        CHECK_THAT(rho.population(Level::j3_2, 3), WithinRel(rho.population(Level::j3_2, -3), 1e-6));
        const double g = coherence_degree(rho);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
        // Cauchy-Schwarz on every pair.
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b)
                CHECK(std::norm(rho.element(a, b)) <= rho.element(a, a).real() * rho.element(b, b).real() * (1 + 1e-12));
    }
}

TEST_CASE("numeric-phi path matches the analytic one") {
    const auto& cl = find_species(table, "Cl");
    const auto a = build_density_matrix(reference, cl, small_grid(PhiMode::analytic), threads(1)).rho;
    const auto n = build_density_matrix(reference, cl, small_grid(PhiMode::numeric), threads(1)).rho;
    CHECK(n.max_relative_m_offdiagonal() < 1e-2);
    CHECK(n.max_hermiticity_error() <= 1e-12 * n.total_probability());
    CHECK_THAT(n.total_probability(), WithinRel(a.total_probability(), 1e-9));
    CHECK_THAT(coherence_degree(n), WithinRel(coherence_degree(a), 1e-9));
}

TEST_CASE("both branch conventions give the same density matrix") {
    const auto& cl = find_species(table, "Cl");
    DensityOptions alt = threads(2);
    alt.convention = BranchConvention::alternating;
    const auto a = build_density_matrix(reference, cl, small_grid(), threads(2)).rho;
    const auto b = build_density_matrix(reference, cl, small_grid(), alt).rho;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(std::abs(a.element(i, j) - b.element(i, j)) <= 1e-12 * a.total_probability());
}

TEST_CASE("results do not depend on the worker count") {
    const auto& f = find_species(table, "F");
    const auto one = build_density_matrix(reference, f, small_grid(), threads(1)).rho;
    const auto four = build_density_matrix(reference, f, small_grid(), threads(4)).rho;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK(one.element(a, b) == four.element(a, b));
}

TEST_CASE("saturation and convergence warnings") {
    const auto& br = find_species(table, "Br");
    const auto res = build_density_matrix(reference, br, small_grid(), threads(2));
    REQUIRE(res.rho.total_probability() > 0.5);
    REQUIRE_FALSE(res.warnings.empty());
    CHECK_THAT(res.warnings.front(), ContainsSubstring("w = "));

    DensityOptions o = threads(2);
    o.convergence_check = true;
    const auto coarse = build_density_matrix(reference, find_species(table, "F"),
                                             MomentumGrid::for_carrier(reference.omega(), 6, 4), o);
    bool flagged = false;
    for (const auto& w : coarse.warnings) flagged |= w.find("not converged") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("zero-field pulse leaves the anion intact") {
    const Pulse off(reference.omega(), 8, 0.0);
    const auto res = build_density_matrix(off, find_species(table, "F"), small_grid(), threads(1));
    CHECK(res.rho.total_probability() == 0.0);
    CHECK_THROWS_AS(res.rho.normalized(), NumericalError);
    CHECK_THROWS_AS(coherence_degree(res.rho), NumericalError);
}

TEST_CASE("coherence degree of constructed matrices") {
    CHECK_THAT(coherence_degree(pure_state_limit()), WithinAbs(1.0, 1e-15));
    Matrix6 m{};
    const int a = state_index(Level::j3_2, 1);
    const int b = state_index(Level::j1_2, 1);
    m[a][a] = 0.4;
    m[b][b] = 0.1;
    m[a][b] = m[b][a] = 0.1;
    CHECK_THAT(coherence_degree(DensityMatrix(m)), WithinRel(0.5, 1e-15));
    m[a][b] = m[b][a] = 0.3;  // not positive
    CHECK_THROWS_AS(coherence_degree(DensityMatrix(m)), NumericalError);
}

TEST_CASE("detachment probability falls with intensity") {
    const auto& f = find_species(table, "F");
    double previous = 1e300;
    for (double i : {1.3e13, 0.9e13, 0.65e13}) {
        const Pulse pulse = Pulse::from_lab(1800.0, 8, i);
        const double w = build_density_matrix(pulse, f, small_grid(), threads(2)).rho.total_probability();
        INFO("I = " << i << ", w = " << w);
        CHECK(w < previous);
        previous = w;
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fracac/energy.hpp"

using namespace fracac;
constexpr double kPi = std::numbers::pi;

TEST_CASE("potential integral") {
    auto g = SpatialGrid::create(16, 16, {0.0, 2.0 * kPi, 0.0, 2.0 * kPi},
                                 Bc::Periodic);
    // F(0) = 1/4 on the whole area.
    CHECK(potential_integral(Field(g, 0.0)) ==
          doctest::Approx(kPi * kPi).epsilon(1e-13));
    CHECK(potential_integral(Field(g, 1.0)) == doctest::Approx(0.0));
}

TEST_CASE("free energy of a sine profile") {
    auto g = SpatialGrid::create(32, 32, {0.0, 2.0 * kPi, 0.0, 2.0 * kPi},
                                 Bc::Periodic);
    Field f = make_field(g, [](double x, double) { return std::sin(x); });
    // eps2/2 |grad|^2 = pi^2, int F = 3 pi^2 / 8, total 11 pi^2 / 8.
    CHECK(original_energy(f, 1.0) ==
          doctest::Approx(13.5707060514978681).epsilon(1e-12));
}

TEST_CASE("modified energy variants") {
    auto g = SpatialGrid::create(16, 16, {-1, 1, -1, 1}, Bc::Neumann);
    SchemeState st;
    st.phi = make_field(g, [](double x, double y) {
        return 0.3 * std::cos(kPi * x) * std::cos(kPi * y);
    });
    st.phi_prev = Field(g, 0.0);
    st.R = 2.0;
    st.n = 1;

    SchemeConfig cfg;
    cfg.eps2 = 0.5;
    cfg.theta2 = 0.1;
    const double gn = grad_norm_sq(st.phi);

    cfg.scheme = SchemeKind::L1;
    CHECK(modified_energy(st, cfg) ==
          doctest::Approx(0.5 * 0.4 * gn + 4.0).epsilon(1e-12));

    // The midpoint schemes add the gradient of the backward difference.
    cfg.scheme = SchemeKind::L1CN;
    CHECK(modified_energy(st, cfg) ==
          doctest::Approx(0.5 * 0.4 * gn + 4.0 + 0.025 * gn).epsilon(1e-12));

    cfg.theta2 = 0.0;
    CHECK(modified_energy(st, cfg) ==
          doctest::Approx(0.25 * gn + 4.0).epsilon(1e-12));
}

TEST_CASE("kernel quadratic form on a constant sample") {
    // With psi = 1 on [0,1] and alpha = 1/2 the form equals 4/(3 sqrt(pi)).
    const double v = bilinear_positivity_check(
        0.5, 0.0, 1.0, {[](double) { return 1.0; }});
    CHECK(v == doctest::Approx(0.7522527780636750).epsilon(1e-9));
}

TEST_CASE("kernel quadratic form is nonnegative on random polynomials") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        const double c0 = U(rng), c1 = U(rng), c2 = U(rng), c3 = U(rng);
        const double alpha = 0.15 + 0.7 * double(rep) / 9.0;
        const double v = bilinear_positivity_check(
            alpha, 0.0, 2.0, {[=](double s) {
                return c0 + s * (c1 + s * (c2 + s * c3));
            }});
        const double scale =
            std::abs(c0) + std::abs(c1) + std::abs(c2) + std::abs(c3) + 1.0;
        CHECK(v >= -1e-8 * scale);
    }
}

TEST_CASE("energy report rows and csv layout") {
    auto g = SpatialGrid::create(8, 8, {-1, 1, -1, 1}, Bc::Neumann);
    SchemeConfig cfg;
    cfg.eps2 = 0.1;
    cfg.scheme = SchemeKind::L1Plus;
    TimeMesh mesh = build_mesh(2, 1.0, 1.0);

    SchemeState st;
    st.mesh = mesh;
    st.phi = Field(g, 0.5);
    st.R = 1.5;
    EnergyReport rep;
    rep.record(st, cfg);
    st.n = 1;
    st.phi_prev = st.phi;
    st.phi = Field(g, 0.25);
    rep.record(st, cfg);

    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].t == 0.0);
    CHECK(rep.rows[0].step_change == 0.0);
    CHECK(rep.rows[1].t == 0.5);
    CHECK(rep.rows[1].phi_min == 0.25);
    CHECK(rep.rows[1].phi_max == 0.25);
    // ||0.25 - 0.5|| over area 4 is 0.25 * 2 = 0.5.
    CHECK(rep.rows[1].step_change == doctest::Approx(0.5).epsilon(1e-13));

    std::ostringstream os;
    rep.write_csv(os);
    const std::string s = os.str();
    CHECK(s.rfind("n,t,E,E_mod,R,phi_min,phi_max,step_change\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}

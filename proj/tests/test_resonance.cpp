#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "oresim/resonance.hpp"
#include "support.hpp"

using namespace oresim;
using model::Spin;
using support::k_two_pi;

TEST_SUITE("resonance") {

TEST_CASE("uncoupled profile is a single unit spike at the bare energy") {
    model::HamiltonianParams p;
    p.omega = k_two_pi;
    p.omega0 = k_two_pi * 0.1;
    p.n_bath = 6;
    const auto table = support::make_table(p);
    const auto profile = resonance::resonance_profile(table, Spin::plus, 0);

    CHECK(profile.spin == Spin::plus);
    CHECK(profile.level == 0);
    double sum = 0.0, peak = 0.0, peak_energy = 0.0;
    for (const auto& [energy, weight] : profile.points) {
        sum += weight;
        if (weight > peak) {
            peak = weight;
            peak_energy = energy;
        }
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(std::abs(peak - 1.0) <= 1e-12);
    CHECK(std::abs(peak_energy - 0.5 * p.omega0) <= 1e-12);
}

TEST_CASE("profiles are complete and sorted for random parameters") {
    std::mt19937_64 gen(107);
    for (int draw = 0; draw < 20; ++draw) {
        const auto p = support::random_params(gen, 2, 10);
        const auto table = support::make_table(p);
        std::uniform_int_distribution<int> level(0, p.n_bath - 1);
        const auto profile = resonance::resonance_profile(
            table, draw % 2 == 0 ? Spin::plus : Spin::minus, level(gen));

        CHECK(static_cast<int>(profile.points.size()) == table.basis.dim);
        double sum = 0.0;
        for (size_t i = 0; i < profile.points.size(); ++i) {
            sum += profile.points[i].second;
            CHECK(profile.points[i].second >= 0.0);
            if (i > 0) CHECK(profile.points[i - 1].first <= profile.points[i].first);
        }
        CHECK(std::abs(sum - 1.0) <= 1e-10);
    }
}

TEST_CASE("profile rejects out-of-range levels") {
    model::HamiltonianParams p;
    p.omega = k_two_pi;
    p.n_bath = 4;
    const auto table = support::make_table(p);
    CHECK_THROWS_AS(resonance::resonance_profile(table, Spin::plus, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(resonance::resonance_profile(table, Spin::minus, -1),
                    std::invalid_argument);
}

TEST_CASE("strong locked coupling spreads the ground state over many eigenstates") {
    // omega = 2 pi, omega0 = 2 pi * 0.1, g_r = g_nr = 2 pi, g_ph = 0 [rad/ns]
    model::HamiltonianParams p;
    p.omega = k_two_pi;
    p.omega0 = k_two_pi * 0.1;
    p.g_r = k_two_pi;
    p.g_nr = k_two_pi;
    p.g_ph = 0.0;
    p.n_bath = 20;
    const auto profile =
        resonance::resonance_profile(support::make_table(p), Spin::plus, 0);

    double sum = 0.0, peak = 0.0;
    int wide = 0;
    for (const auto& [energy, weight] : profile.points) {
        sum += weight;
        peak = std::max(peak, weight);
        if (weight > 0.01) ++wide;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-10);
    CHECK(peak == doctest::Approx(0.3654450189530388).epsilon(1e-6));
    CHECK(wide == 5);
}

TEST_CASE("metric vanishes without coupling") {
    model::HamiltonianParams p;
    p.omega = k_two_pi;
    p.omega0 = k_two_pi * 0.1;
    p.n_bath = 8;
    const auto metric = resonance::overlap_metric(support::make_table(p));
    CHECK(metric.a_plus_minus <= 1e-12);
}

TEST_CASE("metric equals the brute-force triple loop") {
    std::mt19937_64 gen(109);
    for (int draw = 0; draw < 25; ++draw) {
        const auto p = support::random_params(gen, 2, 4);
        const auto table = support::make_table(p);
        const auto metric = resonance::overlap_metric(table);
        CHECK(std::abs(metric.a_plus_minus - support::reference_a_pm(table)) <= 1e-12);
    }
}

TEST_CASE("pair tables are symmetric and double-count unordered pairs") {
    std::mt19937_64 gen(113);
    const auto p = support::random_params(gen, 5, 8);
    const auto metric = resonance::overlap_metric(support::make_table(p));

    CHECK((metric.pair_plus - metric.pair_plus.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((metric.pair_minus - metric.pair_minus.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(metric.a_plus_minus >= 0.0);

    double upper = 0.0;
    for (int m = 0; m < metric.pair_plus.rows(); ++m) {
        for (int n = m + 1; n < metric.pair_plus.cols(); ++n) {
            upper += metric.pair_plus(m, n) * metric.pair_minus(m, n);
        }
    }
    CHECK(std::abs(metric.a_plus_minus - 2.0 * upper) <=
          1e-12 * std::max(1.0, metric.a_plus_minus));
}

TEST_CASE("metric is gauge invariant and temperature independent") {
    std::mt19937_64 gen(127);
    const auto p = support::random_params(gen, 4, 8);
    auto table = support::make_table(p, 0.025);
    const double reference = resonance::overlap_metric(table).a_plus_minus;

    std::bernoulli_distribution flip(0.5);
    for (int g = 0; g < table.basis.dim; ++g) {
        if (flip(gen)) table.c.col(g) = -table.c.col(g);
    }
    CHECK(std::abs(resonance::overlap_metric(table).a_plus_minus - reference) <= 1e-12);

    const auto hot = support::make_table(p, 10.0);
    CHECK(resonance::overlap_metric(hot).a_plus_minus == reference);  // weights unused
}

TEST_CASE("metric peaks where rotating and counter-rotating couplings lock") {
    // g_nr = 2 pi, g_ph = pi [rad/ns]; probe g_r below, at, and above g_nr
    const auto a_at = [](double g_r_ghz) {
        model::HamiltonianParams p;
        p.omega = k_two_pi;
        p.omega0 = k_two_pi * 0.1;
        p.g_r = k_two_pi * g_r_ghz;
        p.g_nr = k_two_pi;
        p.g_ph = k_two_pi * 0.5;
        p.n_bath = 20;
        return resonance::overlap_metric(support::make_table(p)).a_plus_minus;
    };
    const double at_half = a_at(0.5);
    const double at_lock = a_at(1.0);
    const double at_three_halves = a_at(1.5);

    CHECK(at_lock == doctest::Approx(108.12519890080642).epsilon(1e-6));
    CHECK(at_lock > at_half);
    CHECK(at_lock > at_three_halves);
}

}  // TEST_SUITE

#include "doctest.h"

#include "gcos/dsp.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gcos;
using gcos::testing::naive_dft;
using gcos::testing::naive_dft_real;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

} // namespace

TEST_CASE("blackman endpoints and centre") {
    const auto w = make_window({WindowKind::blackman, 3});
    REQUIRE(w.size() == 3);
    CHECK(w[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(1.0));
    CHECK(w[2] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("windows are symmetric and nonnegative") {
    for (WindowKind kind : {WindowKind::blackman, WindowKind::blackman_harris}) {
        for (std::size_t len : {2u, 3u, 17u, 1024u, 7938u}) {
            const auto w = make_window({kind, len});
            for (std::size_t j = 0; j < len; ++j) {
                CHECK(w[j] >= 0.0);
                CHECK(w[j] == w[len - 1 - j]);
            }
        }
    }
    CHECK_THROWS_AS(make_window({WindowKind::blackman, 1}), std::invalid_argument);
    CHECK_THROWS_AS(parse_window_kind("hann"), std::invalid_argument);
}

TEST_CASE("blackman-harris coefficient sum matches direct summation") {
    // Oracle: long-double summation of the four-term cosine series.
    const std::size_t len = 1024;
    long double expected = 0.0L;
    for (std::size_t j = 0; j < len; ++j) {
        const long double t = 2.0L * std::numbers::pi_v<long double> * j / (len - 1);
        expected += 0.35875L - 0.48829L * std::cos(t) + 0.14128L * std::cos(2 * t) - 0.01168L * std::cos(3 * t);
    }
    const auto w = make_window({WindowKind::blackman_harris, len});
    double sum = 0.0;
    for (double v : w) sum += v;
    CHECK(std::abs(sum - static_cast<double>(expected)) / static_cast<double>(expected) < 1e-9);
}

TEST_CASE("dft_magnitude of zero frame is zero") {
    const std::vector<double> frame(100, 0.0), window(100, 1.0);
    const auto out = dft_magnitude(frame, window, 128);
    REQUIRE(out.size() == 128);
    for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("dft_magnitude matches naive DFT for a bin-centred cosine") {
    const std::size_t n = 256;
    std::vector<double> frame(n), window(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) frame[j] = std::cos(2.0 * std::numbers::pi * 10.0 * j / n);
    const auto out = dft_magnitude(frame, window, n);
    const auto ref = naive_dft_real(frame);
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(out[k] == doctest::Approx(std::abs(ref[k])).epsilon(1e-9).scale(n));
        peak = std::max(peak, out[k]);
    }
    CHECK(out[10] == doctest::Approx(n / 2.0));
    CHECK(out[n - 10] == doctest::Approx(n / 2.0));
    for (std::size_t k = 0; k < n; ++k) {
        if (k != 10 && k != n - 10) CHECK(out[k] < 1e-9 * peak);
    }
}

TEST_CASE("dft_magnitude is even-symmetric and obeys Parseval") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto frame = random_vector(300, seed);
        const std::vector<double> window(300, 1.0);
        const auto out = dft_magnitude(frame, window, 512);
        double peak = 0.0, energy = 0.0, time_energy = 0.0;
        for (double v : out) {
            peak = std::max(peak, v);
            energy += v * v;
        }
        for (double v : frame) time_energy += v * v;
        for (std::size_t k = 1; k < 512; ++k) CHECK(std::abs(out[k] - out[512 - k]) < 1e-9 * peak);
        CHECK(std::abs(energy - 512.0 * time_energy) < 1e-6 * 512.0 * time_energy);
    }
}

TEST_CASE("dft_magnitude ignores circular shifts of a periodic frame") {
    const std::size_t n = 512;
    std::vector<double> base(64);
    const auto period = random_vector(64, 9);
    std::vector<double> frame(n), shifted(n);
    for (std::size_t j = 0; j < n; ++j) {
        frame[j] = period[j % 64];
        shifted[j] = period[(j + 13) % 64];
    }
    const std::vector<double> window(n, 1.0);
    const auto a = dft_magnitude(frame, window, n);
    const auto b = dft_magnitude(shifted, window, n);
    double peak = *std::max_element(a.begin(), a.end());
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-9 * peak);
}

TEST_CASE("dft_magnitude rejects size mismatches") {
    const std::vector<double> frame(10, 1.0), window(9, 1.0), ok(10, 1.0);
    CHECK_THROWS_AS(dft_magnitude(frame, window, 16), std::invalid_argument);
    CHECK_THROWS_AS(dft_magnitude(frame, ok, 8), std::invalid_argument);
}

TEST_CASE("inverse_dft_real of a constant is an impulse") {
    const std::vector<double> v(64, 2.5);
    const auto out = inverse_dft_real(v);
    CHECK(out[0] == doctest::Approx(2.5));
    for (std::size_t n = 1; n < 64; ++n) CHECK(std::abs(out[n]) < 1e-12);
}

TEST_CASE("inverse_dft_real round-trips a real even sequence") {
    const std::size_t n = 128;
    auto half = random_vector(n / 2 + 1, 4);
    std::vector<double> x(n);
    for (std::size_t j = 0; j <= n / 2; ++j) x[j] = half[j];
    for (std::size_t j = n / 2 + 1; j < n; ++j) x[j] = x[n - j];
    const auto spectrum = dft_real_symmetric(x);
    const auto back = inverse_dft_real(spectrum);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(back[j] - x[j]) < 1e-9);
}

TEST_CASE("inverse_dft_real of two symmetric spikes matches naive inverse DFT") {
    const std::size_t n = 64, k0 = 5;
    std::vector<double> v(n, 0.0);
    v[k0] = v[n - k0] = 1.0;
    const auto out = inverse_dft_real(v);
    std::vector<std::complex<double>> vc(v.begin(), v.end());
    const auto ref = naive_dft(vc, +1);
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(out[j] == doctest::Approx(ref[j].real() / n).epsilon(1e-12).scale(1.0));
        CHECK(out[j] == doctest::Approx(2.0 / n * std::cos(2.0 * std::numbers::pi * k0 * j / n)).scale(1.0));
    }
}

TEST_CASE("inverse_dft_real rejects asymmetric input") {
    std::vector<double> v(16, 1.0);
    v[3] = 2.0;
    CHECK_THROWS_AS(inverse_dft_real(v), std::invalid_argument);
}

TEST_CASE("activation examples") {
    const std::vector<double> v{-2.0, 0.0, 3.0};
    const auto relu = activate(v, {1.0, ActivationVariant::power});
    CHECK(relu == std::vector<double>{0.0, 0.0, 3.0});
    CHECK(activate(std::vector<double>{4.0}, {0.5, ActivationVariant::power})[0] == doctest::Approx(2.0));
    const double e = std::numbers::e;
    CHECK(std::abs(activate(e, {1e-4, ActivationVariant::box_cox}) - std::log(e)) < 1e-3);
    CHECK(activate(0.0, {0.3, ActivationVariant::box_cox}) == 0.0);
    CHECK(activate(-1.0, {0.3, ActivationVariant::box_cox}) == 0.0);
    CHECK_THROWS_AS(activate(v, {0.0, ActivationVariant::power}), std::invalid_argument);
    CHECK_THROWS_AS(activate(v, {2.5, ActivationVariant::power}), std::invalid_argument);
}

TEST_CASE("activation is monotone, rectifying and scale-equivariant") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> gamma_dist(0.05, 2.0), scale_dist(1e-3, 1e3);
    for (int trial = 0; trial < 50; ++trial) {
        const ActivationSpec spec{gamma_dist(rng), ActivationVariant::power};
        auto v = random_vector(64, 100 + trial, -5.0, 5.0);
        std::sort(v.begin(), v.end());
        const auto out = activate(v, spec);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] <= 0.0) CHECK(out[i] == 0.0);
            CHECK(out[i] >= 0.0);
            if (i > 0) CHECK(out[i] >= out[i - 1]);
        }
        const double c = scale_dist(rng);
        std::vector<double> scaled(v);
        for (double& x : scaled) x *= c;
        const auto out_scaled = activate(scaled, spec);
        const double factor = std::pow(c, spec.gamma);
        for (std::size_t i = 0; i < v.size(); ++i) {
            CHECK(std::abs(out_scaled[i] - factor * out[i]) <= 1e-9 * std::abs(factor * out[i]));
        }
    }
}

TEST_CASE("apply_mask examples") {
    const std::vector<double> v{1, 2, 3, 4, 5};
    CHECK(apply_mask(v, {0, 5}) == std::vector<double>{0, 2, 3, 4, 5});
    CHECK(apply_mask(v, {4, 5}) == std::vector<double>(5, 0.0));
    CHECK(apply_mask(v, {9, 5}) == std::vector<double>(5, 0.0));
    CHECK_THROWS_AS(apply_mask(v, {0, 6}), std::invalid_argument);
}

TEST_CASE("apply_mask equals multiplication by the dense 0/1 diagonal") {
    const std::size_t n = 32;
    const auto v = random_vector(n, 21);
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (std::size_t l = 0; l < n; ++l) w[l][l] = l > 5 ? 1.0 : 0.0;
    std::vector<double> expected(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) expected[r] += w[r][c] * v[c];
    }
    const HighPassMask mask{5, n};
    const auto out = apply_mask(v, mask);
    CHECK(out == expected);
    CHECK(apply_mask(out, mask) == out);
}

TEST_CASE("mirrored mask treats both halves alike") {
    const std::vector<double> v(16, 1.0);
    const auto out = apply_mask(v, {2, 16, MaskDomain::quefrency, true});
    for (std::size_t l = 0; l < 16; ++l) {
        const std::size_t d = std::min(l, 16 - l);
        CHECK(out[l] == (d > 2 ? 1.0 : 0.0));
    }
}

TEST_CASE("cutoff index conversion") {
    CHECK(cutoff_to_frequency_index(27.5, 8192, 44100.0) == 5);
    CHECK(cutoff_to_frequency_index(44100.0 / 8192.0, 8192, 44100.0) == 1);
    // floor(22049.99 * 8192 / 44100) = floor(4095.998...) = 4095
    CHECK(cutoff_to_frequency_index(22049.99, 8192, 44100.0) == 4095);
    CHECK_THROWS_AS(cutoff_to_frequency_index(22050.0, 8192, 44100.0), std::invalid_argument);
    CHECK_THROWS_AS(cutoff_to_frequency_index(0.0, 8192, 44100.0), std::invalid_argument);

    CHECK(cutoff_to_quefrency_index(0.24e-3, 44100.0) == 10);
    CHECK(cutoff_to_quefrency_index(1.0 / 44100.0, 44100.0) == 1);
    CHECK(cutoff_to_quefrency_index(1.0, 100.0) == 100);
    CHECK_THROWS_AS(cutoff_to_quefrency_index(0.0, 44100.0), std::invalid_argument);
}

TEST_CASE("next_power_of_two") {
    CHECK(next_power_of_two(7938) == 8192);
    CHECK(next_power_of_two(8192) == 8192);
    CHECK(next_power_of_two(1) == 1);
}

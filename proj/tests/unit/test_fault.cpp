#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sclim/error.hpp"
#include "sclim/fault.hpp"
#include "sclim/gates.hpp"

using namespace sclim;

TEST_CASE("kind names") {
    for (auto k : kOperatorKinds) CHECK(parse_kind(kind_name(k)) == k);
    for (auto k : kFunctionKinds) {
        CHECK(parse_kind(kind_name(k)) == k);
        CHECK(as_function(k).has_value());
    }
    CHECK_FALSE(as_function(ExperimentKind::Mul).has_value());
    CHECK_FALSE(parse_kind("div").has_value());
}

TEST_CASE("noise spec bounds") {
    CHECK_THROWS_AS(NoiseSpec(1.0, 0), ParamError);
    CHECK_THROWS_AS(NoiseSpec(-0.1, 0), ParamError);
    CHECK_THROWS_AS(NoiseSpec(0.51, 0), ParamError);
    CHECK_NOTHROW(NoiseSpec(0.5, 0));
}

TEST_CASE("stream flips") {
    const auto b = encode_random(40, 64, 3);
    CHECK(flip_stream(b, NoiseSpec(0.0, 9)) == b);
    CHECK(flip_stream(b, NoiseSpec(0.2, 9)) == flip_stream(b, NoiseSpec(0.2, 9)));

    // Binomial(64, 0.5): mean 32, sd 4; the mean of 1e4 trials has sd 0.04.
    double total = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t)
        total += static_cast<double>(gate_xor(b, flip_stream(b, NoiseSpec(0.5, derive_seed(1, t)))).popcount());
    CHECK(std::abs(total / trials - 32.0) <= 3 * 4.0 / std::sqrt(trials));
}

TEST_CASE("binary word flips") {
    CHECK(flip_binary(37, 6, NoiseSpec(0.0, 1)) == 37);
    CHECK_THROWS_AS(flip_binary(64, 6, NoiseSpec(0.1, 1)), ParamError);

    const int trials = 20000;
    int flipped = 0;
    for (int t = 0; t < trials; ++t) flipped += flip_binary(0, 1, NoiseSpec(0.5, derive_seed(2, t)));
    const double sd1 = std::sqrt(trials * 0.25);
    CHECK(std::abs(flipped - trials / 2.0) <= 3 * sd1);

    double hamming = 0;
    for (int t = 0; t < trials; ++t) hamming += std::popcount(flip_binary(21, 6, NoiseSpec(0.1, derive_seed(3, t))) ^ 21U);
    const double sd = std::sqrt(6 * 0.1 * 0.9 / trials);
    CHECK(std::abs(hamming / trials - 0.6) <= 3 * sd);
}

TEST_CASE("generator flips consume one draw per bit") {
    BitBundle a = encode_random(30, 64, 5);
    BitBundle b = a;
    Rng r1(11), r2(11);
    flip_stream_inplace(a, 0.1, r1);
    flip_stream_inplace(b, 0.3, r2);
    // Same generator state afterwards, and the low-rate flips are a subset.
    CHECK(r1() == r2());
    const auto orig = encode_random(30, 64, 5);
    const auto fa = gate_xor(a, orig);
    const auto fb = gate_xor(b, orig);
    CHECK(gate_and(fa, fb) == fa);
}

TEST_CASE("mae experiment basics") {
    const auto row = mae_experiment(ExperimentKind::Mul, 64, 0.0, 5000, 7, 1);
    CHECK(row.binary_mae_pct == 0.0);
    CHECK(row.sc_mae_pct > 0.5);
    CHECK(row.sc_mae_pct < 2.0);
    CHECK(row.trials == 5000);
    CHECK(row.n == 64);

    for (auto k : kFunctionKinds) CHECK(mae_experiment(k, 16, 0.0, 500, 1, 1).binary_mae_pct == 0.0);

    CHECK_THROWS_AS(mae_experiment(ExperimentKind::Mul, 64, 0.0, 0, 7), ParamError);
    CHECK_THROWS_AS(mae_experiment(ExperimentKind::Mul, 48, 0.0, 10, 7), ParamError);
    CHECK_THROWS_AS(mae_experiment(ExperimentKind::Mul, 64, 0.7, 10, 7), ParamError);
}

TEST_CASE("mae experiment does not depend on thread count") {
    for (auto k : {ExperimentKind::Mul, ExperimentKind::Sin, ExperimentKind::Max}) {
        const auto one = mae_experiment(k, 64, 0.05, 5000, 42, 1);
        const auto four = mae_experiment(k, 64, 0.05, 5000, 42, 4);
        const auto three = mae_experiment(k, 64, 0.05, 5000, 42, 3);
        CHECK(one.sc_mae_pct == four.sc_mae_pct);
        CHECK(one.binary_mae_pct == four.binary_mae_pct);
        CHECK(one.sc_mae_pct == three.sc_mae_pct);
    }
}

TEST_CASE("noise raises the error") {
    const auto clean = mae_experiment(ExperimentKind::Sin, 64, 0.0, 4000, 5, 1);
    const auto noisy = mae_experiment(ExperimentKind::Sin, 64, 0.2, 4000, 5, 1);
    CHECK(noisy.sc_mae_pct > clean.sc_mae_pct);
    CHECK(noisy.binary_mae_pct > 0.0);
}

TEST_CASE("sweep layout") {
    auto t1 = table1_config(10, 1);
    t1.threads = 1;
    const auto rows = sweep_tables(t1);
    CHECK(rows.size() == 70);
    CHECK(rows[0].kind == ExperimentKind::Mul);
    CHECK(rows[0].n == 16);
    CHECK(rows[0].noise_rate == 0.0);
    CHECK(rows[6].noise_rate == doctest::Approx(0.3));
    CHECK(rows[7].n == 64);
    CHECK(rows[14].kind == ExperimentKind::ScaledAdd);

    auto t2 = table2_config(10, 1);
    t2.threads = 1;
    CHECK(sweep_tables(t2).size() == 112);

    auto empty = table1_config(10, 1);
    empty.noise_pct.clear();
    CHECK(sweep_tables(empty).empty());
}

TEST_CASE("csv format") {
    std::ostringstream os;
    write_mae_csv(os, {MaeRow{ExperimentKind::Sin, 16, 0.05, 6.12345, 3.0, 100}});
    CHECK(os.str() == "kind,N,noise_pct,sc_mae_pct,binary_mae_pct,trials\nsin,16,5.00,6.12,3.00,100\n");
}

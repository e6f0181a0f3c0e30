#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pulearn/synth.hpp"
#include "test_helpers.hpp"

using namespace pulearn;
using Catch::Approx;

TEST_CASE("link CDFs are symmetric at zero", "[synth]") {
    CHECK(link_cdf(Link::logistic, 0.0) == Approx(0.5));
    CHECK(link_cdf(Link::cauchy, 0.0) == Approx(0.5));
    CHECK(link_cdf(Link::cauchy, 1.0) == Approx(0.75).epsilon(1e-12));
    CHECK(link_cdf(Link::cauchy, -1e9) > 0.0);
    CHECK(link_cdf(Link::cauchy, -1e9) < 1e-6);
}

TEST_CASE("gen_artif reproduces the class rate of the generator", "[synth][paper]") {
    ArtifSpec spec;  // n=2000, p=50, logistic
    const Dataset ds = gen_artif(spec, 2024);
    const double rate = ds.Y.cast<double>().mean();
    CHECK(rate == Approx(0.49).margin(0.03));

    SECTION("same seed reproduces the dataset") {
        const Dataset ds2 = gen_artif(spec, 2024);
        CHECK(ds.X == ds2.X);
        CHECK(ds.Y == ds2.Y);
    }
    SECTION("different seed changes it") {
        const Dataset ds3 = gen_artif(spec, 2025);
        CHECK(ds.X != ds3.X);
    }
}

TEST_CASE("propensity_of per scenario", "[synth]") {
    Rng rng(5);
    VectorXd x(4);
    for (Eigen::Index j = 0; j < 4; ++j) x(j) = rng.normal();

    SECTION("scenario 1 is the constant c") {
        CHECK(propensity_of(x, ScenarioSpec::scar(0.3)) == Approx(0.3));
    }
    SECTION("scenario 2 with g=0 gives one half everywhere") {
        for (int i = 0; i < 10; ++i) {
            VectorXd z(4);
            for (Eigen::Index j = 0; j < 4; ++j) z(j) = rng.normal() * 3.0;
            CHECK(propensity_of(z, ScenarioSpec::logistic(0.0)) == Approx(0.5));
        }
    }
    SECTION("scenario 3 hits the endpoints of the rescale") {
        ColumnRanges ranges{{-2.0, 3.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
        VectorXd lo = x, hi = x;
        lo(0) = -2.0;
        hi(0) = 3.0;
        const auto spec = ScenarioSpec::product(1, 0.2, 0.6);
        CHECK(propensity_of(lo, spec, ranges) == Approx(0.2));
        CHECK(propensity_of(hi, spec, ranges) == Approx(0.6));
    }
    SECTION("scenario 3 output stays inside [p_minus, p_plus]") {
        ArtifSpec spec;
        spec.n = 200;
        spec.p = 6;
        const Dataset ds = gen_artif(spec, 77);
        const ColumnRanges ranges = column_ranges(ds.X);
        const auto scen = ScenarioSpec::product(3, 0.25, 0.7);
        for (Eigen::Index i = 0; i < ds.n(); ++i) {
            const double e = propensity_of(ds.X.row(i).transpose(), scen, ranges);
            CHECK(e >= 0.25);
            CHECK(e <= 0.7);
        }
    }
    SECTION("degenerate range errors out") {
        ColumnRanges ranges{{1.0, 1.0}};
        VectorXd z(1);
        z << 1.0;
        CHECK_THROWS_AS(propensity_of(z, ScenarioSpec::product(1, 0.2, 0.6), ranges),
                        std::invalid_argument);
    }
    SECTION("scenario validation") {
        CHECK_THROWS_AS(ScenarioSpec::scar(0.0).validate(), std::invalid_argument);
        CHECK_THROWS_AS(ScenarioSpec::scar(1.5).validate(), std::invalid_argument);
        CHECK_THROWS_AS(ScenarioSpec::product(0, 0.2, 0.6).validate(), std::invalid_argument);
        CHECK_THROWS_AS(ScenarioSpec::product(2, 0.7, 0.6).validate(), std::invalid_argument);
        CHECK_THROWS_AS(ScenarioSpec::product(9, 0.2, 0.6).validate(4), std::invalid_argument);
    }
}

TEST_CASE("apply_labelling basics", "[synth]") {
    SECTION("all-negative data gets no labels") {
        Dataset ds;
        ds.X = MatrixXd::Random(20, 2);
        ds.Y = VectorXi::Zero(20);
        const PUDataset pu = apply_labelling(ds, ScenarioSpec::scar(0.9), 1);
        CHECK(pu.S.sum() == 0);
    }
    SECTION("c = 1 labels every positive") {
        ArtifSpec spec;
        spec.n = 300;
        spec.p = 3;
        const Dataset ds = gen_artif(spec, 3);
        const PUDataset pu = apply_labelling(ds, ScenarioSpec::scar(1.0), 4);
        CHECK(pu.S == ds.Y);
    }
    SECTION("c = 0.5 labels about half the positives") {
        ArtifSpec spec;
        spec.n = 4000;
        spec.p = 5;
        const Dataset ds = gen_artif(spec, 8);
        const PUDataset pu = apply_labelling(ds, ScenarioSpec::scar(0.5), 9);
        double labelled = 0.0, positives = 0.0;
        for (Eigen::Index i = 0; i < ds.n(); ++i) {
            if (ds.Y(i) == 1) {
                positives += 1.0;
                labelled += pu.S(i);
            }
        }
        CHECK(labelled / positives == Approx(0.5).margin(0.05));
    }
}

TEST_CASE("labelled rows are always positive", "[synth][property]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ArtifSpec spec;
        spec.n = 150;
        spec.p = 4;
        const Dataset ds = gen_artif(spec, seed);
        const ScenarioSpec scen = seed % 3 == 0   ? ScenarioSpec::scar(0.4)
                                  : seed % 3 == 1 ? ScenarioSpec::logistic(0.7)
                                                  : ScenarioSpec::product(2, 0.2, 0.8);
        const PUDataset pu = apply_labelling(ds, scen, seed + 1000);
        REQUIRE(pu.Y_hidden.has_value());
        for (Eigen::Index i = 0; i < pu.n(); ++i) CHECK(pu.S(i) <= (*pu.Y_hidden)(i));
    }
}

TEST_CASE("labelling is deterministic in (dataset, scenario, seed)", "[synth][property]") {
    ArtifSpec spec;
    spec.n = 250;
    spec.p = 3;
    const Dataset ds = gen_artif(spec, 6);
    const PUDataset a = apply_labelling(ds, ScenarioSpec::logistic(0.5), 11);
    const PUDataset b = apply_labelling(ds, ScenarioSpec::logistic(0.5), 11);
    CHECK(a.S == b.S);
    const PUDataset c = apply_labelling(ds, ScenarioSpec::logistic(0.5), 12);
    CHECK(a.S != c.S);
}

TEST_CASE("scenario 2 with g=0 equals scenario 1 with c=0.5 pointwise", "[synth][property]") {
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        VectorXd x(6);
        for (Eigen::Index j = 0; j < 6; ++j) x(j) = 4.0 * rng.normal();
        CHECK(propensity_of(x, ScenarioSpec::logistic(0.0)) ==
              propensity_of(x, ScenarioSpec::scar(0.5)));
    }
}

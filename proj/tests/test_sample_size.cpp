#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "table2.hpp"
#include "vaxeff/error.hpp"
#include "vaxeff/sample_size.hpp"

#include <cmath>
#include <sstream>

using namespace vaxeff;

TEST_CASE("z scores") {
    const auto rounded = z_scores(0.05, 0.2);
    CHECK(rounded.two_sided == 1.96);
    CHECK(rounded.power == 0.84);
    const auto exact = z_scores(0.05, 0.2, ZMode::exact);
    CHECK(exact.two_sided == doctest::Approx(1.959963984540054).epsilon(1e-10));
    CHECK(exact.power == doctest::Approx(0.8416212335729143).epsilon(1e-10));
    CHECK_THROWS_AS(z_scores(0.0, 0.2), DomainError);
    CHECK_THROWS_AS(z_scores(0.05, 1.0), DomainError);
}

TEST_CASE("generic two-sample size") {
    CHECK(generic_two_sample_raw(1.0, 1.0, 0.05, 0.2) == doctest::Approx(15.68));
    CHECK(generic_two_sample(1.0, 1.0, 0.05, 0.2) == 16);
    CHECK(generic_two_sample_raw(2.0, 1.0, 0.05, 0.2) ==
          doctest::Approx(4.0 * generic_two_sample_raw(1.0, 1.0, 0.05, 0.2)));
    CHECK(generic_two_sample(1.0, 1e6, 0.05, 0.2) == 1);
    CHECK_THROWS_AS(generic_two_sample(1.0, 0.0, 0.05, 0.2), DomainError);
    CHECK_THROWS_AS(generic_two_sample(0.0, 1.0, 0.05, 0.2), DomainError);
}

TEST_CASE("cramer-rao sizes from the published table") {
    CHECK(cramer_rao_sample_size({0.0, 0.1, 0.5}) == 37632);
    CHECK(cramer_rao_sample_size({0.9, 0.4, 0.5}) == 285);
    CHECK(cramer_rao_sample_size({0.6, 0.2, 0.01}) == 213593);
    // Full-precision quantiles give a slightly larger value.
    CHECK(cramer_rao_sample_size({0.0, 0.1, 0.5, 0.05, 0.2, ZMode::exact}) > 37632);
}

TEST_CASE("all published table cells") {
    int matched = 0;
    for (const auto& row : table2::kRows) {
        for (std::size_t j = 0; j < table2::kPrevalence.size(); ++j) {
            const SampleSizeSpec spec{row.efficacy, row.delta, table2::kPrevalence[j]};
            INFO("VE=" << row.efficacy << " delta=" << row.delta << " pi=" << spec.prevalence);
            CHECK(cramer_rao_sample_size(spec) == row.n[j]);
            matched += cramer_rao_sample_size(spec) == row.n[j];
        }
    }
    CHECK(matched == 112);
}

TEST_CASE("cramer-rao preconditions") {
    CHECK_NOTHROW(cramer_rao_sample_size({0.9, 0.1, 1.0}));
    CHECK_THROWS_AS(cramer_rao_sample_size({0.0, 0.0, 0.5}), DomainError);
    CHECK_THROWS_AS(cramer_rao_sample_size({1.0, 0.1, 0.5}), DomainError);
    CHECK_THROWS_AS(cramer_rao_sample_size({0.5, 0.1, 0.0}), DomainError);
}

TEST_CASE("cramer-rao scaling") {
    const SampleSizeSpec base{0.6, 0.1, 0.01};
    SampleSizeSpec wider = base;
    wider.delta = 0.3;
    CHECK(cramer_rao_sample_size_raw(base) / cramer_rao_sample_size_raw(wider) ==
          doctest::Approx(9.0).epsilon(1e-12));
    SampleSizeSpec rarer = base;
    rarer.prevalence = 0.0001;
    const double ratio = cramer_rao_sample_size_raw(rarer) / cramer_rao_sample_size_raw(base);
    CHECK(ratio == doctest::Approx(100.0).epsilon(0.01));
}

TEST_CASE("wald sample size") {
    const SampleSizeSpec spec{0.6, 0.1, 0.05};
    const auto n = wald_sample_size(spec);
    CHECK(std::fabs(double(n) / 96810.0 - 1.0) < 0.001);
    CHECK(n < cramer_rao_sample_size(spec));
    CHECK(cramer_rao_sample_size(spec) == 165957);

    double prev = INFINITY;
    for (double pi : {0.001, 0.01, 0.05, 0.2, 0.5, 0.9}) {
        const double v = wald_sample_size_raw({0.6, 0.1, pi});
        CHECK(v < prev);
        prev = v;
    }
    // n is proportional to the squared z sum.
    const auto z1 = z_scores(0.05, 0.2).sum();
    const auto z2 = z_scores(0.01, 0.1).sum();
    CHECK(wald_sample_size_raw({0.6, 0.1, 0.05, 0.01, 0.1}) / wald_sample_size_raw(spec) ==
          doctest::Approx(z2 * z2 / (z1 * z1)).epsilon(1e-12));
    CHECK_THROWS_AS(wald_sample_size({1.0, 0.1, 0.05}), DomainError);
}

TEST_CASE("wald and cramer-rao agree at high incidence and low efficacy") {
    for (double ve : {0.0, 0.1, 0.2, 0.3}) {
        for (double delta : {0.1, 0.2, 0.3, 0.4}) {
            const SampleSizeSpec s{ve, delta, 0.5};
            const double w = wald_sample_size_raw(s);
            const double c = cramer_rao_sample_size_raw(s);
            INFO("VE=" << ve << " delta=" << delta);
            CHECK(std::fabs(w / c - 1.0) < 0.15);
        }
    }
}

TEST_CASE("cramer-rao exceeds wald at low incidence and high efficacy") {
    for (double ve : {0.6, 0.7, 0.8, 0.9}) {
        for (double pi : {0.01, 0.005, 0.001, 0.0005}) {
            for (double delta : {0.1, 0.2, 0.3, 0.4}) {
                const SampleSizeSpec s{ve, delta, pi};
                CHECK(cramer_rao_sample_size(s) >= wald_sample_size(s));
            }
        }
    }
}

TEST_CASE("table generator") {
    const std::vector<double> ve = {0.0, 0.3, 0.6, 0.9};
    const std::vector<double> delta = {0.1, 0.2, 0.3, 0.4};
    const std::vector<double> pi(table2::kPrevalence.begin(), table2::kPrevalence.end());
    const auto table = sample_size_table(ve, delta, pi, 0.05, 0.2, SizeMethod::cramer_rao);
    REQUIRE(table.size() == 112);
    for (std::size_t r = 0; r < 16; ++r) {
        for (std::size_t j = 0; j < 7; ++j) {
            const auto& cell = table[r * 7 + j];
            CHECK(cell.efficacy == table2::kRows[r].efficacy);
            CHECK(cell.prevalence == pi[j]);
            REQUIRE(cell.n.has_value());
            CHECK(*cell.n == table2::kRows[r].n[j]);
        }
    }

    const std::vector<double> one_ve = {0.6}, one_delta = {0.2}, one_pi = {0.01};
    const auto single =
        sample_size_table(one_ve, one_delta, one_pi, 0.05, 0.2, SizeMethod::cramer_rao);
    CHECK(single.at(0).n == cramer_rao_sample_size({0.6, 0.2, 0.01}));

    // Bad cells keep their error and do not abort.
    const std::vector<double> bad_ve = {0.5, 1.0};
    const auto mixed = sample_size_table(bad_ve, one_delta, one_pi, 0.05, 0.2, SizeMethod::wald);
    CHECK(mixed[0].n.has_value());
    CHECK_FALSE(mixed[1].n.has_value());
    CHECK_FALSE(mixed[1].error.empty());

    std::ostringstream csv;
    write_sample_size_csv(csv, mixed);
    CHECK(csv.str() ==
          "ve,delta,pi,alpha,beta,method,n\n"
          "0.5,0.2,0.01,0.05,0.2,wald," + std::to_string(*mixed[0].n) + "\n"
          "1,0.2,0.01,0.05,0.2,wald,NA\n");
}

TEST_CASE("method names") {
    CHECK(parse_size_method("wald") == SizeMethod::wald);
    CHECK(parse_size_method("cramer-rao") == SizeMethod::cramer_rao);
    CHECK(to_string(SizeMethod::cramer_rao) == "cramer-rao");
    CHECK_THROWS_AS(parse_size_method("exact"), DomainError);
}

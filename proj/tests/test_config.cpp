#include "doctest.h"

#include "dasec/config.hpp"

using namespace dasec;

TEST_CASE("defaults validate and derived quantities") {
    ScenarioConfig c;
    CHECK_NOTHROW(validate(c));
    CHECK(c.gamma_d_lin() == doctest::Approx(100.0));
    CHECK(c.gamma_k_lin() == doctest::Approx(0.1));
    CHECK(c.p_an_mw() == doctest::Approx(316.227766).epsilon(1e-8));
    CHECK(c.phi() == doctest::Approx(100.0 * 16 * 500.0));
    CHECK(c.sigma_ball_eff() == doctest::Approx(2.0 * 16 * 1e-4));
}

TEST_CASE("parse key = value with comments") {
    const auto c = parse_config_text(
        "# scenario\n"
        "n_das = 8   # fewer antennas\n"
        "layout = ca_center\n"
        "quantile = erf_literal\n"
        "covariance_mode = derived_exact\n"
        "sproc_mode = paper_faithful\n"
        "ir_form = lmi\n"
        "solver = scs\n"
        "local_search = false\n"
        "\n"
        "seed = 42\n");
    CHECK(c.n_das == 8);
    CHECK(c.layout == Layout::CaCenter);
    CHECK(c.quantile == QuantileMode::ErfLiteral);
    CHECK(c.covariance_mode == CovarianceMode::DerivedExact);
    CHECK(c.sproc_mode == SprocMode::PaperFaithful);
    CHECK(c.ir_form == IrForm::Lmi);
    CHECK(c.solver == SolverKind::Scs);
    CHECK_FALSE(c.local_search);
    CHECK(c.seed == 42);
}

TEST_CASE("malformed configs are rejected") {
    CHECK_THROWS_AS(parse_config_text("bogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n_das 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n_das = four\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("layout = ring\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("alpha = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("p_off_mw = 600\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("eta_d = 0.4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("m_psk = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("edge_fraction = 2\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
    // the erf reading keeps a positive scale below one half
    CHECK_NOTHROW(parse_config_text("quantile = erf_literal\neta_d = 0.3\n"));
}

TEST_CASE("canonical text round-trips and the hash tracks every field") {
    ScenarioConfig c;
    c.sigma_e = 0.0123456789012345;
    c.layout = Layout::CaCenter;
    c.seed = 77;
    const auto back = parse_config_text(canonical_text(c));
    CHECK(canonical_text(back) == canonical_text(c));
    CHECK(config_hash(back) == config_hash(c));
    ScenarioConfig d = c;
    d.gamma_k_db += 1e-12;
    CHECK(config_hash(d) != config_hash(c));
}

TEST_CASE("variant names") {
    for (Variant v : {Variant::ImperfectProb, Variant::ImperfectDet, Variant::UnknownProb, Variant::UnknownDet})
        CHECK(parse_variant(to_string(v)) == v);
    CHECK_THROWS_AS(parse_variant("imperfect"), ConfigError);
    CHECK(is_unknown_csi(Variant::UnknownDet));
    CHECK_FALSE(is_unknown_csi(Variant::ImperfectDet));
    CHECK(is_deterministic(Variant::ImperfectDet));
}

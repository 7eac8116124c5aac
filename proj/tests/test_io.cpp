#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "rsp/io.hpp"
#include "rsp/sampling.hpp"

using namespace rsp;
using io::json;

TEST_CASE("state JSON round trip")
{
    CounterRng rng(71);
    for (int t = 0; t < 20; ++t) {
        const TwoQubitState s = random_physical_state(rng);
        const TwoQubitState back = io::state_from_json(json::parse(io::to_json(s).dump()));
        CHECK(back.a() == s.a());
        CHECK(back.b() == s.b());
        CHECK(back.E() == s.E());
    }
    const TwoQubitState singlet_state =
        io::state_from_json(json::parse(R"({"a":[0,0,0],"b":[0,0,0],"E":[[-1,0,0],[0,-1,0],[0,0,-1]]})"));
    CHECK(singlet_state.E() == singlet().E());
}

TEST_CASE("density matrix input")
{
    const TwoQubitState w = werner(0.3);
    const json flat = io::to_json(to_density_matrix(w));
    CHECK(flat.size() == 16);
    const TwoQubitState a = io::state_from_json({{"rho", flat}});
    CHECK(max_abs_diff(a.E(), w.E()) < 1e-15);

    json nested = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < 4; ++k) row.push_back(flat[4 * i + k]);
        nested.push_back(row);
    }
    const TwoQubitState b = io::state_from_json({{"rho", nested}});
    CHECK(max_abs_diff(b.E(), w.E()) < 1e-15);

    json skew = flat;
    skew[1] = json::array({0.2, 0.0});
    CHECK_THROWS_AS(io::state_from_json({{"rho", skew}}), io::InputError);
}

TEST_CASE("malformed states")
{
    CHECK_THROWS_AS(io::state_from_json(json::parse("[1,2]")), io::InputError);
    CHECK_THROWS_AS(io::state_from_json(json::parse(R"({"a":[0,0,0],"b":[0,0,0]})")), io::InputError);
    CHECK_THROWS_AS(io::state_from_json(json::parse(R"({"a":[0,0],"b":[0,0,0],"E":[[0,0,0],[0,0,0],[0,0,0]]})")),
                    io::InputError);
    CHECK_THROWS_AS(io::state_from_json(json::parse(R"({"a":["x",0,0],"b":[0,0,0],"E":[[0,0,0],[0,0,0],[0,0,0]]})")),
                    io::InputError);
    // unphysical but well formed: accepted and flagged
    const TwoQubitState u =
        io::state_from_json(json::parse(R"({"a":[0,0,0],"b":[0,0,0],"E":[[1,0,0],[0,1,0],[0,0,1]]})"));
    CHECK_FALSE(u.physical());
}

TEST_CASE("decoding strategy JSON")
{
    const DecodingStrategy d = make_decoding(Vec3::unit_x(), 0.5, Vec3::unit_z(), -1.25);
    const DecodingStrategy back = io::decoding_from_json(io::to_json(d));
    CHECK(back.n1 == d.n1);
    CHECK(back.gamma2 == d.gamma2);
    CHECK_THROWS_AS(io::decoding_from_json(json::parse(R"({"n1":[2,0,0],"gamma1":0,"n2":[0,0,1],"gamma2":0})")),
                    io::InputError);
    CHECK_THROWS_AS(io::decoding_from_json(json::parse(R"({"n1":[1,0,0]})")), io::InputError);
}

TEST_CASE("config overlay")
{
    const OptimizerConfig c = io::config_from_json(
        json::parse(R"({"starts":4,"max_iter":100,"quad_points":64,"beta_samples":20,"seed":9,"tol_closed_form":1e-2})"));
    CHECK(c.starts == 4);
    CHECK(c.max_iter == 100);
    CHECK(c.quad_points == 64);
    CHECK(c.beta_samples == 20);
    CHECK(c.seed == 9);
    CHECK(c.tol_closed_form == 1e-2);
    CHECK(c.simplex_tol == OptimizerConfig{}.simplex_tol);

    const OptimizerConfig round = io::config_from_json(io::to_json(c));
    CHECK(round.seed == 9);
    CHECK(round.sweep_beta_samples == c.sweep_beta_samples);

    CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"stars":4})")), io::InputError);
    CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"starts":-1})")), io::InputError);
    CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"starts":1.5})")), io::InputError);
    CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"quad_points":5})")), io::InputError);
}

TEST_CASE("report JSON carries the closed forms")
{
    ClosedForms c = closed_forms(bell_diagonal(0.5, 0.3, 0.1));
    const json j = io::to_json(c);
    CHECK(j.at("D").get<double>() == doctest::Approx(0.17));
    CHECK(j.at("C3").is_number());
    c.C3.reset();
    CHECK(io::to_json(c).at("C3").is_null());

    TEReport r;
    r.closed_forms = closed_forms(werner(0.5));
    r.sweep.samples.push_back({});
    const json rep = io::to_json(r);
    CHECK(rep.contains("closed_forms"));
    CHECK(rep.at("closed_forms").at("D").get<double>() == doctest::Approx(0.25));
    CHECK(rep.at("sweep").at("samples").size() == 1);
}

TEST_CASE("reading files")
{
    CHECK_THROWS_AS(io::read_json_file("/nonexistent/state.json"), io::InputError);
    const std::string path = "test_io_tmp.json";
    {
        std::ofstream f(path);
        f << "{ not json";
    }
    CHECK_THROWS_AS(io::read_json_file(path), io::InputError);
    {
        std::ofstream f(path);
        f << R"({"starts": 3})";
    }
    CHECK(io::read_json_file(path).at("starts") == 3);
    std::remove(path.c_str());
}

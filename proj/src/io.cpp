#include "rsp/io.hpp"

#include <fstream>

namespace rsp::io {
namespace {

double number(const json& j, const char* what)
{
    if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
    return j.get<double>();
}

template <typename T>
T integer(const json& j, const char* what)
{
    if (!j.is_number_integer() && !j.is_number_unsigned()) throw InputError(std::string(what) + ": expected an integer");
    if (j.is_number_integer() && j.get<long long>() < 0) throw InputError(std::string(what) + ": must be non-negative");
    return j.get<T>();
}

bool boolean(const json& j, const char* what)
{
    if (!j.is_boolean()) throw InputError(std::string(what) + ": expected true or false");
    return j.get<bool>();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json extremum(double value, const Vec3& beta) { return {{"value", value}, {"beta", to_json(beta)}}; }

}  // namespace

json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json to_json(const Mat3& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < 3; ++i) rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
    return rows;
}

json to_json(const TwoQubitState& s)
{
    return {{"a", to_json(s.a())},
            {"b", to_json(s.b())},
            {"E", to_json(s.E())},
            {"physical", s.physical()},
            {"min_eigenvalue", s.min_eigenvalue()}};
}

json to_json(const DensityMatrix4& rho)
{
    json out = json::array();
    for (const complex& z : rho.m) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

json to_json(const DecodingStrategy& d)
{
    return {{"n1", to_json(d.n1)}, {"gamma1", d.gamma1}, {"n2", to_json(d.n2)}, {"gamma2", d.gamma2}};
}

json to_json(const OptimizerConfig& c)
{
    return {{"starts", c.starts},
            {"max_iter", c.max_iter},
            {"simplex_tol", c.simplex_tol},
            {"quad_points", c.quad_points},
            {"quad_refine", c.quad_refine},
            {"quad_tol", c.quad_tol},
            {"beta_samples", c.beta_samples},
            {"seed", c.seed},
            {"tol_closed_form", c.tol_closed_form},
            {"threads", c.threads},
            {"refine_beta", c.refine_beta},
            {"beta_refine_evals", c.beta_refine_evals},
            {"sweep_beta_samples", c.sweep_beta_samples}};
}

json to_json(const ClosedForms& c)
{
    return {{"D", c.D},
            {"d", c.d},
            {"Q", c.Q},
            {"C3", optional_number(c.C3)},
            {"eigs", json::array({c.eigs[0], c.eigs[1], c.eigs[2]})}};
}

json to_json(const BetaSweepReport& r)
{
    json samples = json::array();
    for (const BetaSample& s : r.samples) {
        samples.push_back({{"beta", to_json(s.beta)},
                           {"fidelity", s.fidelity},
                           {"payoff", s.payoff},
                           {"converged", s.converged},
                           {"evaluations", s.evaluations},
                           {"fidelity_strategy", to_json(s.fidelity_strategy)},
                           {"payoff_strategy", to_json(s.payoff_strategy)}});
    }
    return {{"mode", r.mode == DecodingMode::Optimized ? "optimized" : "standard"},
            {"fidelity",
             {{"min", extremum(r.f_min, r.f_argmin)}, {"avg", r.f_avg}, {"max", extremum(r.f_max, r.f_argmax)}}},
            {"payoff",
             {{"min", extremum(r.p_min, r.p_argmin)}, {"avg", r.p_avg}, {"max", extremum(r.p_max, r.p_argmax)}}},
            {"standard_payoff",
             {{"min", extremum(r.standard_payoff_min.value, r.standard_payoff_min.beta)},
              {"sphere_avg", r.standard_payoff_sphere_avg}}},
            {"all_converged", r.all_converged},
            {"payoff_validity_warning", r.payoff_validity_warning},
            {"samples", std::move(samples)}};
}

json to_json(const TEReport& r)
{
    json disc = json::array();
    for (const Discrepancy& d : r.discrepancies) {
        disc.push_back({{"name", d.name},
                        {"numeric", d.numeric},
                        {"reference", d.reference},
                        {"abs_error", d.abs_error},
                        {"tolerance", d.tolerance},
                        {"within_tolerance", d.within_tolerance}});
    }
    return {{"state", to_json(r.state)},
            {"closed_forms", to_json(r.closed_forms)},
            {"capability_closed_forms", to_json(r.capability_forms)},
            {"fidelity_closed_form", fidelity_from_payoff(r.closed_forms.D)},
            {"sweep", to_json(r.sweep)},
            {"discrepancies", std::move(disc)},
            {"oracle_max_deviation", r.oracle_max_deviation}};
}

json to_json(const StateFigures& f)
{
    return {{"closed_forms", to_json(f.closed)},
            {"fidelity_closed_form", f.fidelity_closed},
            {"fidelity_numeric", f.fidelity_numeric},
            {"payoff_numeric", f.payoff_numeric},
            {"payoff_decoding", f.payoff_uses_standard_decoding ? "standard" : "optimized"},
            {"payoff_unconstrained", f.payoff_unconstrained}};
}

json to_json(const StateComparison& c)
{
    const char* pref = c.preferred == Preference::First ? "first" : c.preferred == Preference::Second ? "second" : "tie";
    return {{"first", to_json(c.first)},
            {"second", to_json(c.second)},
            {"preferred", pref},
            {"numeric_agrees", c.numeric_agrees}};
}

Vec3 vec3_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 3) throw InputError("vector: expected an array of 3 numbers");
    return {number(j[0], "vector"), number(j[1], "vector"), number(j[2], "vector")};
}

Mat3 mat3_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 3) throw InputError("matrix: expected 3 rows");
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i) {
        const Vec3 r = vec3_from_json(j[i]);
        for (std::size_t k = 0; k < 3; ++k) m(i, k) = r[k];
    }
    return m;
}

DensityMatrix4 density_matrix_from_json(const json& j)
{
    auto entry = [](const json& e) {
        if (!e.is_array() || e.size() != 2) throw InputError("density matrix: entries must be [re, im] pairs");
        return complex(number(e[0], "density matrix"), number(e[1], "density matrix"));
    };
    if (!j.is_array()) throw InputError("density matrix: expected an array");
    DensityMatrix4 rho;
    if (j.size() == 16) {
        for (std::size_t k = 0; k < 16; ++k) rho.m[k] = entry(j[k]);
    } else if (j.size() == 4) {
        for (std::size_t i = 0; i < 4; ++i) {
            if (!j[i].is_array() || j[i].size() != 4) throw InputError("density matrix: rows must have 4 entries");
            for (std::size_t k = 0; k < 4; ++k) rho(i, k) = entry(j[i][k]);
        }
    } else {
        throw InputError("density matrix: expected 16 entries or 4 rows");
    }
    return rho;
}

TwoQubitState state_from_json(const json& j)
{
    if (!j.is_object()) throw InputError("state: expected a JSON object");
    try {
        if (j.contains("rho")) return from_density_matrix(density_matrix_from_json(j.at("rho")));
        for (const char* k : {"a", "b", "E"})
            if (!j.contains(k)) throw InputError(std::string("state: missing field '") + k + "'");
        return new_state(vec3_from_json(j.at("a")), vec3_from_json(j.at("b")), mat3_from_json(j.at("E")));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("state: ") + e.what());
    }
}

DecodingStrategy decoding_from_json(const json& j)
{
    if (!j.is_object()) throw InputError("decoding: expected a JSON object");
    for (const char* k : {"n1", "gamma1", "n2", "gamma2"})
        if (!j.contains(k)) throw InputError(std::string("decoding: missing field '") + k + "'");
    try {
        return make_decoding(vec3_from_json(j.at("n1")), number(j.at("gamma1"), "gamma1"), vec3_from_json(j.at("n2")),
                             number(j.at("gamma2"), "gamma2"));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("decoding: ") + e.what());
    }
}

OptimizerConfig config_from_json(const json& j, OptimizerConfig c)
{
    if (!j.is_object()) throw InputError("config: expected a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "starts") c.starts = integer<std::size_t>(v, "starts");
        else if (key == "max_iter") c.max_iter = integer<std::size_t>(v, "max_iter");
        else if (key == "simplex_tol") c.simplex_tol = number(v, "simplex_tol");
        else if (key == "quad_points") c.quad_points = integer<std::size_t>(v, "quad_points");
        else if (key == "quad_refine") c.quad_refine = boolean(v, "quad_refine");
        else if (key == "quad_tol") c.quad_tol = number(v, "quad_tol");
        else if (key == "beta_samples") c.beta_samples = integer<std::size_t>(v, "beta_samples");
        else if (key == "seed") c.seed = integer<std::uint64_t>(v, "seed");
        else if (key == "tol_closed_form") c.tol_closed_form = number(v, "tol_closed_form");
        else if (key == "threads") c.threads = integer<unsigned>(v, "threads");
        else if (key == "refine_beta") c.refine_beta = boolean(v, "refine_beta");
        else if (key == "beta_refine_evals") c.beta_refine_evals = integer<std::size_t>(v, "beta_refine_evals");
        else if (key == "sweep_beta_samples") c.sweep_beta_samples = integer<std::size_t>(v, "sweep_beta_samples");
        else throw InputError("config: unknown field '" + key + "'");
    }
    try {
        validate_config(c);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return c;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "': " + e.what());
    }
}

}  // namespace rsp::io

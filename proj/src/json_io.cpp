#include "resurge/json_io.hpp"

#include "resurge/errors.hpp"

#include <set>

namespace resurge {

json cplx_to_json(const Cplx& z)
{
    return json::array({real_to_string(z.re), real_to_string(z.im)});
}

Cplx cplx_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("complex values must be [re, im]");
    auto get = [](const json& v) {
        if (v.is_string())
            return real_from_string(v.get<std::string>());
        if (v.is_number())
            return Real(v.get<double>());
        throw ConfigError("complex components must be numbers or decimal strings");
    };
    return {get(j[0]), get(j[1])};
}

json int_series_to_json(const IntSeries& s)
{
    json coeffs = json::array();
    for (const auto& c : s.c)
        coeffs.push_back(cplx_to_json(c));
    return json{{"gamma", cplx_to_json(Cplx(0))},
                {"coeffs", coeffs},
                {"valid_order", s.order()}};
}

json frac_series_to_json(const FracSeries& s)
{
    json coeffs = json::array();
    for (const auto& c : s.c)
        coeffs.push_back(cplx_to_json(c));
    return json{{"gamma", cplx_to_json(s.gamma)},
                {"coeffs", coeffs},
                {"valid_order", s.order()}};
}

json residua_to_json(const ResiduaResult& r)
{
    json S = json::array(), partial = json::array(), est = json::array();
    for (const auto& s : r.S)
        S.push_back(cplx_to_json(s));
    for (const auto& s : r.partial_sums)
        partial.push_back(cplx_to_json(s));
    for (const auto& e : r.err_est)
        est.push_back(real_to_string(e));
    return json{{"m", r.m},
                {"omega", cplx_to_json(r.omega)},
                {"alpha", cplx_to_json(r.alpha)},
                {"beta", cplx_to_json(r.beta)},
                {"N", r.N},
                {"S", S},
                {"partial_sums", partial},
                {"lambda_fit", real_to_string(r.lambda)},
                {"envelope_C", real_to_string(r.envelope_C)},
                {"tail_error", real_to_string(r.tail_error)},
                {"sum", cplx_to_json(r.sum)},
                {"A", cplx_to_json(r.A)},
                {"horn", r.horn},
                {"error_estimates", est},
                {"precision_bits", r.precision},
                {"grid_nodes", r.grid_nodes},
                {"grid_panels", r.grid_panels}};
}

json fourier_to_json(const FourierResult& r)
{
    json A = json::object();
    for (const auto& [m, a] : r.A)
        A[std::to_string(m)] = cplx_to_json(a);
    return json{{"side", r.side == HornSide::up ? "up" : "low"},
                {"const_term", cplx_to_json(r.const_term)},
                {"A", A},
                {"residual_floor", real_to_string(r.residual_floor)},
                {"H", real_to_string(r.H)},
                {"M", r.M}};
}

json kernel_to_json(const KernelTable& kt)
{
    json rows = json::array();
    for (const auto& u : kt.u) {
        json a = json::array();
        for (const auto& c : u.a)
            a.push_back(cplx_to_json(c));
        rows.push_back(json{{"a", a},
                            {"C0", real_to_string(u.C0)},
                            {"R0", real_to_string(u.R0)}});
    }
    return json{{"alpha", cplx_to_json(kt.alpha)},
                {"rho", cplx_to_json(kt.rho)},
                {"R0", real_to_string(kt.R0)},
                {"u", rows}};
}

KernelTable kernel_from_json(const json& j)
{
    KernelTable kt;
    kt.alpha = cplx_from_json(j.at("alpha"));
    kt.rho = cplx_from_json(j.at("rho"));
    kt.R0 = real_from_string(j.at("R0").get<std::string>());
    for (const auto& row : j.at("u")) {
        EntireFn f;
        f.C0 = real_from_string(row.at("C0").get<std::string>());
        f.R0 = real_from_string(row.at("R0").get<std::string>());
        for (const auto& c : row.at("a"))
            f.a.push_back(cplx_from_json(c));
        kt.u.push_back(std::move(f));
    }
    return kt;
}

namespace {

GermSpec parse_germ(const json& j, std::string& echo)
{
    if (j.is_string()) {
        echo = j.get<std::string>();
        return GermSpec::preset(echo);
    }
    if (!j.is_object() || !j.contains("type"))
        throw ConfigError("germ must be a preset name or a typed object");
    std::string type = j.at("type").get<std::string>();
    echo = type;
    auto poly_of = [](const json& arr) {
        Poly p;
        for (const auto& c : arr) {
            if (c.is_number())
                p.push_back(Cplx(Real(c.get<double>())));
            else
                p.push_back(cplx_from_json(c));
        }
        return p;
    };
    if (type == "rational_infinity")
        return GermSpec::rational_infinity(poly_of(j.at("num")), poly_of(j.at("den")));
    if (type == "polynomial_origin")
        return GermSpec::polynomial_origin(poly_of(j.at("coeffs")));
    if (type == "preset")
        return GermSpec::preset(j.at("name").get<std::string>());
    throw ConfigError("unknown germ type '" + type + "'");
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where)
{
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

} // namespace

RunConfig parse_config(const json& j)
{
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    check_keys(j, {"version", "germ", "m_list", "k_max", "D", "precision_bits",
                   "quadrature", "kernel_tol", "oracle", "path_override",
                   "output", "compare_tol"},
               "config");
    if (!j.contains("version") || j.at("version").get<int>() != 1)
        throw ConfigError("config needs \"version\": 1");
    if (!j.contains("germ"))
        throw ConfigError("config needs a germ");
    RunConfig c;
    c.germ = parse_germ(j.at("germ"), c.germ_echo);
    if (j.contains("m_list")) {
        c.m_list.clear();
        for (const auto& m : j.at("m_list")) {
            int mi = m.get<int>();
            if (mi == 0)
                throw ConfigError("m_list entries must be nonzero");
            c.m_list.push_back(mi);
        }
        if (c.m_list.empty())
            throw ConfigError("m_list must not be empty");
    }
    if (j.contains("k_max"))
        c.k_max = j.at("k_max").get<int>();
    if (c.k_max < 0)
        throw ConfigError("k_max must be >= 0");
    if (j.contains("D"))
        c.D = j.at("D").get<int>();
    if (j.contains("precision_bits"))
        c.precision_bits = j.at("precision_bits").get<unsigned>();
    if (c.precision_bits < 53)
        throw ConfigError("precision_bits must be >= 53");
    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        check_keys(q, {"panel_nodes", "grading_ratio", "min_panel", "max_panel",
                       "eval_tol"},
                   "quadrature");
        if (q.contains("panel_nodes"))
            c.grid.panel_nodes = q.at("panel_nodes").get<int>();
        if (c.grid.panel_nodes < 4 || c.grid.panel_nodes > 64)
            throw ConfigError("panel_nodes must be in [4, 64]");
        if (q.contains("grading_ratio"))
            c.grid.grading_ratio = q.at("grading_ratio").get<double>();
        if (q.contains("min_panel"))
            c.grid.min_panel_rel = q.at("min_panel").get<double>();
        if (c.grid.min_panel_rel <= 0 || c.grid.min_panel_rel > 1e-6)
            throw ConfigError("min_panel must be in (0, 1e-6]");
        if (q.contains("max_panel"))
            c.grid.max_panel = q.at("max_panel").get<double>();
        if (q.contains("eval_tol"))
            c.grid.eval_tol = q.at("eval_tol").get<double>();
    }
    if (j.contains("kernel_tol"))
        c.kernel_tol = j.at("kernel_tol").get<double>();
    if (j.contains("oracle")) {
        const json& o = j.at("oracle");
        check_keys(o, {"H", "M", "n_escape", "R_big", "J_cap", "precision_bits"},
                   "oracle");
        if (o.contains("H"))
            c.oracle.H = Real(o.at("H").get<double>());
        if (o.contains("M"))
            c.oracle.M = o.at("M").get<int>();
        if (o.contains("n_escape"))
            c.oracle.n_escape = o.at("n_escape").get<long>();
        if (o.contains("R_big"))
            c.oracle.R_big = Real(o.at("R_big").get<double>());
        if (o.contains("J_cap"))
            c.oracle.J_cap = o.at("J_cap").get<int>();
        if (o.contains("precision_bits"))
            c.oracle.precision_bits = o.at("precision_bits").get<unsigned>();
        c.oracle.validate();
    }
    if (j.contains("path_override")) {
        std::vector<Cplx> v;
        for (const auto& p : j.at("path_override"))
            v.push_back(cplx_from_json(p));
        if (v.size() < 2)
            throw ConfigError("path_override needs at least two vertices");
        c.path_override = std::move(v);
    }
    if (j.contains("output"))
        c.output = j.at("output").get<std::string>();
    if (j.contains("compare_tol"))
        c.compare_tol = j.at("compare_tol").get<double>();
    return c;
}

json config_to_json(const RunConfig& c)
{
    json germ;
    if (c.germ_echo == "translation" || c.germ_echo == "quad" || c.germ_echo == "rho0") {
        germ = c.germ_echo;
    } else {
        json num = json::array(), den = json::array();
        for (const auto& x : c.germ.num)
            num.push_back(cplx_to_json(x));
        for (const auto& x : c.germ.den)
            den.push_back(cplx_to_json(x));
        germ = json{{"type", c.germ.chart == GermSpec::Chart::infinity
                                 ? "rational_infinity"
                                 : "polynomial_origin"},
                    {"num", num},
                    {"den", den}};
    }
    json out{{"version", 1},
             {"germ", germ},
             {"m_list", c.m_list},
             {"k_max", c.k_max},
             {"D", c.D},
             {"precision_bits", c.precision_bits},
             {"quadrature",
              json{{"panel_nodes", c.grid.panel_nodes},
                   {"grading_ratio", c.grid.grading_ratio},
                   {"min_panel", c.grid.min_panel_rel},
                   {"max_panel", c.grid.max_panel},
                   {"eval_tol", c.grid.eval_tol}}},
             {"kernel_tol", c.kernel_tol},
             {"oracle",
              json{{"H", to_double(c.oracle.H)},
                   {"M", c.oracle.M},
                   {"n_escape", c.oracle.n_escape},
                   {"R_big", to_double(c.oracle.R_big)},
                   {"J_cap", c.oracle.J_cap},
                   {"precision_bits", c.oracle.precision_bits}}},
             {"output", c.output},
             {"compare_tol", c.compare_tol}};
    if (c.path_override) {
        json pv = json::array();
        for (const auto& p : *c.path_override)
            pv.push_back(cplx_to_json(p));
        out["path_override"] = pv;
    }
    return out;
}

uint64_t fnv1a64(const std::string& s)
{
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace resurge

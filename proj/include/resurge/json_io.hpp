#pragma once

#include "resurge/germ.hpp"
#include "resurge/horn.hpp"
#include "resurge/kernel.hpp"
#include "resurge/quadrature.hpp"
#include "resurge/residua.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace resurge {

using json = nlohmann::json;

// Complex numbers travel as ["re", "im"] decimal strings: no binary-float
// round-trip loss above 53 bits.
json cplx_to_json(const Cplx& z);
Cplx cplx_from_json(const json& j);

json int_series_to_json(const IntSeries& s);
json frac_series_to_json(const FracSeries& s);

json residua_to_json(const ResiduaResult& r);
json fourier_to_json(const FourierResult& r);

json kernel_to_json(const KernelTable& kt);
KernelTable kernel_from_json(const json& j);

// Batch-run configuration (all defaults materialized on parse).
struct RunConfig {
    GermSpec germ;
    std::string germ_echo; // name or inline descriptor echo
    std::vector<int> m_list{1};
    int k_max = 12;
    int D = 0; // 0 = auto from the germ radius and |m|
    unsigned precision_bits = 160;
    GridConfig grid;
    double kernel_tol = 1e-30;
    OracleConfig oracle;
    std::optional<std::vector<Cplx>> path_override;
    std::string output = "out";
    double compare_tol = 1e-3;
};

RunConfig parse_config(const json& j);
json config_to_json(const RunConfig& c);

uint64_t fnv1a64(const std::string& s);

} // namespace resurge

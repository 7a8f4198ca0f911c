#include "eopk/serialize.hpp"

#include <cstdio>

#include <json.hpp>

#include "eopk/errors.hpp"

namespace eopk {

using nlohmann::json;

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string family_to_json(const EOPFamily& fam) {
    json j;
    j["schema"] = 1;
    j["tau_im"] = fam.lattice.tau_im;
    j["series_terms"] = fam.lattice.series_terms;
    j["weight"] = fam.weight.to_string();
    j["N"] = fam.max_degree;
    j["quad_order"] = fam.rule.order;
    j["basis"] = "degrees 0,2,3,...,N; position 0 = E_0, position p = E_{p+1}";
    j["h"] = fam.h;
    j["monic_coeffs"] = fam.monic_coeffs;
    return j.dump(2) + "\n";
}

EOPFamily family_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("schema") || j["schema"].get<int>() != 1)
        throw Error("unsupported family schema");
    const TorusLattice L = build_lattice(j["tau_im"].get<double>(), j["series_terms"].get<int>());
    const WeightSpec w = WeightSpec::parse(j["weight"].get<std::string>());
    const QuadratureRule rule = build_rule(L, j["quad_order"].get<int>());
    EOPFamily fam = gram_schmidt(L, w, rule, j["N"].get<int>());
    // Stored coefficients and norms win over the rebuild: identical inputs are
    // bit-identical, and edited documents round-trip verbatim.
    fam.h = j["h"].get<std::vector<double>>();
    fam.monic_coeffs = j["monic_coeffs"].get<std::vector<std::vector<double>>>();
    const std::size_t M = fam.rule.t.size();
    for (int pos = 0; pos < fam.dim(); ++pos) {
        const double s = 1.0 / std::sqrt(fam.h[pos]);
        for (std::size_t k = 0; k < M; ++k) {
            fam.ortho_nodes[pos][k] =
                s * eval_coeffs_at(fam.monic_coeffs[pos], fam.rule.wp_t[k], fam.rule.wpp_t[k]);
        }
    }
    return fam;
}

namespace {

json map_to_json(const std::map<int, double>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
}

}  // namespace

std::string coefficients_to_json(const EOPFamily& fam, const FiveTermCoefficients& c5,
                                 const SevenTermCoefficients& c7, int seed) {
    json j;
    j["schema"] = 1;
    j["config"] = {{"tau_im", fam.lattice.tau_im},
                   {"weight", fam.weight.to_string()},
                   {"nmax", fam.max_degree},
                   {"quad", fam.rule.order},
                   {"seed", seed}};
    json h = json::object();
    for (int pos = 0; pos < fam.dim(); ++pos)
        h[std::to_string(basis_degree_at(pos))] = fam.h[pos];
    j["h"] = h;
    j["five_term"] = {{"a", map_to_json(c5.a)}, {"b", map_to_json(c5.b)}, {"c", map_to_json(c5.c)}};
    j["seven_term"] = {{"p", map_to_json(c7.p)},
                       {"q", map_to_json(c7.q)},
                       {"r", map_to_json(c7.r)},
                       {"s", map_to_json(c7.s)}};
    return j.dump(2) + "\n";
}

std::string coefficients_to_csv(const EOPFamily& fam, const FiveTermCoefficients& c5,
                                const SevenTermCoefficients& c7) {
    std::string out = "n,h,a,b,c,p,q,r,s\n";
    auto cell = [](const std::map<int, double>& m, int k) {
        auto it = m.find(k);
        return it == m.end() ? std::string() : format_full(it->second);
    };
    for (int n = 0; n <= fam.max_degree; ++n) {
        out += std::to_string(n) + ",";
        out += (n != 1 ? format_full(fam.norm(n)) : std::string()) + ",";
        out += cell(c5.a, n) + "," + cell(c5.b, n) + "," + cell(c5.c, n) + ",";
        out += cell(c7.p, n) + "," + cell(c7.q, n) + "," + cell(c7.r, n) + "," + cell(c7.s, n);
        out += "\n";
    }
    return out;
}

}  // namespace eopk

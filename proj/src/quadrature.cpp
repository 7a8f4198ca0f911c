#include "eopk/quadrature.hpp"

#include <cctype>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "eopk/errors.hpp"
#include "eopk/numerics.hpp"

namespace eopk {

bool WeightSpec::symmetric() const {
    switch (kind) {
        case WeightKind::Unity: return true;
        case WeightKind::ExpP: return true;
        case WeightKind::ExpPPrime: return false;
        case WeightKind::Product:
            for (const auto& f : factors)
                if (!f.symmetric()) return false;
            return true;
    }
    return false;
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool consume(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool consume_word(const char* w) {
        skip_ws();
        std::size_t n = std::string(w).size();
        if (s.compare(pos, n, w) == 0) {
            pos += n;
            return true;
        }
        return false;
    }
    double number() {
        skip_ws();
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s.substr(pos), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("weight DSL: expected a number in '" + s + "'");
        }
        pos += used;
        return v;
    }
    WeightSpec spec() {
        skip_ws();
        if (consume_word("unity")) return WeightSpec::unity();
        if (consume_word("exp_pp")) {
            if (!consume(':')) throw std::invalid_argument("weight DSL: expected ':' after exp_pp");
            return WeightSpec::exp_pp(number());
        }
        if (consume_word("exp_p")) {
            if (!consume(':')) throw std::invalid_argument("weight DSL: expected ':' after exp_p");
            return WeightSpec::exp_p(number());
        }
        if (consume_word("prod")) {
            if (!consume('(')) throw std::invalid_argument("weight DSL: expected '(' after prod");
            WeightSpec p;
            p.kind = WeightKind::Product;
            p.factors.push_back(spec());
            if (!consume(',')) throw std::invalid_argument("weight DSL: expected ',' in prod");
            p.factors.push_back(spec());
            while (consume(',')) p.factors.push_back(spec());
            if (!consume(')')) throw std::invalid_argument("weight DSL: expected ')' in prod");
            return p;
        }
        throw std::invalid_argument("weight DSL: unrecognized spec '" + s + "'");
    }
};

}  // namespace

WeightSpec WeightSpec::parse(const std::string& s) {
    Parser p{s};
    WeightSpec w = p.spec();
    p.skip_ws();
    if (p.pos != s.size())
        throw std::invalid_argument("weight DSL: trailing characters in '" + s + "'");
    return w;
}

std::string WeightSpec::to_string() const {
    switch (kind) {
        case WeightKind::Unity: return "unity";
        case WeightKind::ExpP: return "exp_p:" + std::to_string(param);
        case WeightKind::ExpPPrime: return "exp_pp:" + std::to_string(param);
        case WeightKind::Product: {
            std::string out = "prod(";
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) out += ",";
                out += factors[i].to_string();
            }
            return out + ")";
        }
    }
    return "unity";
}

QuadratureRule build_rule(const TorusLattice& L, int N) {
    if (N < 4) throw std::invalid_argument("build_rule: N must be at least 4");
    QuadratureRule r;
    r.order = N;
    r.tau_im = L.tau_im;
    std::vector<double> x, wt;
    gauss_legendre(N, x, wt);
    r.t.resize(N);
    r.w.resize(N);
    r.wp_t.resize(N);
    r.wpp_t.resize(N);
    for (int j = 0; j < N; ++j) {
        r.t[j] = 0.5 * (x[j] + 1.0);
        r.w[j] = 0.5 * wt[j];
        const std::complex<double> z(r.t[j], 0.5 * L.tau_im);
        const auto p = wp(L, z);
        const auto pp = wp_prime(L, z);
        const double imag = std::max(std::abs(p.imag()), std::abs(pp.imag()));
        if (imag > 0.0) {
            r.max_imag_residue = std::max(r.max_imag_residue, imag);
            ++r.discarded_imag_count;
        }
        r.wp_t[j] = p.real();
        r.wpp_t[j] = pp.real();
    }
    return r;
}

double eval_weight_t(const WeightSpec& w, const TorusLattice& L, double t) {
    switch (w.kind) {
        case WeightKind::Unity: return 1.0;
        case WeightKind::ExpP: return std::exp(w.param * wp_gamma(L, t));
        case WeightKind::ExpPPrime: return std::exp(w.param * wp_prime_gamma(L, t));
        case WeightKind::Product: {
            double v = 1.0;
            for (const auto& f : w.factors) v *= eval_weight_t(f, L, t);
            return v;
        }
    }
    return 1.0;
}

double eval_weight(const WeightSpec& w, const TorusLattice& L, std::complex<double> z) {
    if (std::abs(z.imag() - 0.5 * L.tau_im) > 1e-12)
        throw OffContour("weight evaluation point not on gamma");
    return eval_weight_t(w, L, z.real());
}

std::complex<double> weight_analytic(const WeightSpec& w, const TorusLattice& L,
                                     std::complex<double> z) {
    switch (w.kind) {
        case WeightKind::Unity: return 1.0;
        case WeightKind::ExpP: return std::exp(w.param * wp(L, z));
        case WeightKind::ExpPPrime: return std::exp(w.param * wp_prime(L, z));
        case WeightKind::Product: {
            std::complex<double> v = 1.0;
            for (const auto& f : w.factors) v *= weight_analytic(f, L, z);
            return v;
        }
    }
    return 1.0;
}

std::vector<double> weight_nodes(const WeightSpec& w, const TorusLattice& L,
                                 const QuadratureRule& rule) {
    std::vector<double> out(rule.t.size());
    for (std::size_t j = 0; j < rule.t.size(); ++j) {
        switch (w.kind) {
            case WeightKind::Unity: out[j] = 1.0; break;
            case WeightKind::ExpP: out[j] = std::exp(w.param * rule.wp_t[j]); break;
            case WeightKind::ExpPPrime: out[j] = std::exp(w.param * rule.wpp_t[j]); break;
            case WeightKind::Product: out[j] = eval_weight_t(w, L, rule.t[j]); break;
        }
    }
    return out;
}

double inner_product(const QuadratureRule& rule, const std::vector<double>& weight_vals,
                     const std::function<double(double)>& f,
                     const std::function<double(double)>& g) {
    // f*g grouped first so that <f,g> == <g,f> bit-exactly.
    std::vector<double> prod(rule.t.size());
    for (std::size_t j = 0; j < rule.t.size(); ++j)
        prod[j] = (f(rule.t[j]) * g(rule.t[j])) * (rule.w[j] * weight_vals[j]);
    return accumulate(prod);
}

namespace {

std::vector<double> moment_vector(const QuadratureRule& rule, const std::vector<double>& wv,
                                  int K, bool hat) {
    std::vector<double> out(K + 1);
    std::vector<double> term(rule.t.size());
    for (int k = 0; k <= K; ++k) {
        for (std::size_t j = 0; j < rule.t.size(); ++j) {
            double p = std::pow(rule.wp_t[j], k);
            double f = hat ? 0.25 * rule.wpp_t[j] * rule.wpp_t[j] : 1.0;
            term[j] = rule.w[j] * wv[j] * f * p;
        }
        out[k] = accumulate(term);
    }
    return out;
}

}  // namespace

QuadratureRule build_converged_rule(const TorusLattice& L, const WeightSpec& w, int gate_degree,
                                    int start) {
    int N = start;
    QuadratureRule rule = build_rule(L, N);
    auto wv = weight_nodes(w, L, rule);
    auto m = moment_vector(rule, wv, gate_degree, false);
    auto mh = moment_vector(rule, wv, gate_degree, true);
    while (true) {
        if (2 * N > 4096)
            throw QuadratureDivergence("self-convergence gate not reached by order 4096");
        QuadratureRule rule2 = build_rule(L, 2 * N);
        auto wv2 = weight_nodes(w, L, rule2);
        auto m2 = moment_vector(rule2, wv2, gate_degree, false);
        auto mh2 = moment_vector(rule2, wv2, gate_degree, true);
        double diff = 0.0;
        for (int k = 0; k <= gate_degree; ++k) {
            diff = std::max(diff, std::abs(m[k] - m2[k]) / std::max(1.0, std::abs(m2[k])));
            diff = std::max(diff, std::abs(mh[k] - mh2[k]) / std::max(1.0, std::abs(mh2[k])));
        }
        if (diff < 1e-10) return rule;
        N *= 2;
        rule = std::move(rule2);
        m = std::move(m2);
        mh = std::move(mh2);
        wv = std::move(wv2);
    }
}

MomentTable compute_moments(const QuadratureRule& rule, const WeightSpec& w,
                            const TorusLattice& L, int K) {
    if (K < 0) throw std::invalid_argument("compute_moments: K must be nonnegative");
    MomentTable tab;
    auto wv = weight_nodes(w, L, rule);
    tab.nu = moment_vector(rule, wv, K, false);
    tab.nuhat = moment_vector(rule, wv, K, true);

    const double cond_limit = 0.01 / std::numeric_limits<double>::epsilon();
    auto hankel_dets = [&](const std::vector<double>& mu) {
        std::vector<double> dets;
        dets.push_back(1.0);  // Delta_0 = 1 by convention
        for (int k = 1; 2 * k - 2 <= K; ++k) {
            std::vector<double> a(static_cast<std::size_t>(k) * k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) a[static_cast<std::size_t>(i) * k + j] = mu[i + j];
            LuResult lu = lu_det(a, k);
            if (lu.singular || lu.cond1 > cond_limit) {
                tab.ill_conditioned = true;
            }
            tab.max_cond = std::max(tab.max_cond, lu.cond1);
            dets.push_back(lu.det);
        }
        return dets;
    };
    tab.hankel = hankel_dets(tab.nu);
    tab.hankel_hat = hankel_dets(tab.nuhat);
    return tab;
}

}  // namespace eopk

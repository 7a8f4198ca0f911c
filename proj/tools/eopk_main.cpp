// eopk: build elliptic orthogonal polynomial families on the torus, export
// recurrence coefficients, CD/DPP kernel grids and zero sets, and run the
// verification suite.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eopk/cd_kernel.hpp"
#include "eopk/errors.hpp"
#include "eopk/recurrence.hpp"
#include "eopk/serialize.hpp"
#include "eopk/verify.hpp"
#include "eopk/zeros.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    double tau = 1.0;
    std::string weight = "unity";
    int nmax = 8;
    int quad = 256;
    std::string out = ".";
    unsigned seed = 12345;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tau", o.tau, "imaginary part of the modular parameter");
    cmd->add_option("--weight", o.weight, "weight DSL: unity|exp_p:<a>|exp_pp:<b>|prod(..)");
    cmd->add_option("--nmax", o.nmax, "maximum polynomial degree")->check(CLI::Range(0, 20));
    cmd->add_option("--quad", o.quad, "quadrature order");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--seed", o.seed, "seed for randomized checks");
}

struct Built {
    eopk::TorusLattice lattice;
    eopk::WeightSpec weight;
    eopk::EOPFamily family;
};

Built build(const CommonOpts& o) {
    const eopk::TorusLattice L = eopk::build_lattice(o.tau);
    const eopk::WeightSpec w = eopk::WeightSpec::parse(o.weight);
    const eopk::QuadratureRule rule = eopk::build_rule(L, o.quad);
    return {L, w, eopk::gram_schmidt(L, w, rule, o.nmax)};
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream f(dir + "/" + name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + dir + "/" + name);
    f << content;
}

int cmd_coeffs(const CommonOpts& o) {
    Built b = build(o);
    const auto c5 = eopk::extract_five_term(b.family);
    const auto c7 = eopk::extract_seven_term(b.family);
    write_file(o.out, "coeffs.json", eopk::coefficients_to_json(b.family, c5, c7, o.seed));
    write_file(o.out, "coeffs.csv", eopk::coefficients_to_csv(b.family, c5, c7));
    write_file(o.out, "family.json", eopk::family_to_json(b.family));
    return 0;
}

int cmd_kernel(const CommonOpts& o, int n, int grid) {
    Built b = build(o);
    if (n < 2 || n - 1 > b.family.max_degree) {
        std::cerr << "kernel: n must satisfy 2 <= n <= nmax+1\n";
        return kExitValidation;
    }
    const auto c5 = eopk::extract_five_term(b.family);
    const eopk::CDKernel K = eopk::make_cd_kernel(b.family, c5, std::min(n + 1, b.family.max_degree));
    std::string csv = "x\\y";
    std::vector<double> pts(grid);
    for (int i = 0; i < grid; ++i) {
        pts[i] = (i + 0.5) / grid;
        csv += "," + eopk::format_full(pts[i]);
    }
    csv += "\n";
    for (int i = 0; i < grid; ++i) {
        csv += eopk::format_full(pts[i]);
        for (int j = 0; j < grid; ++j)
            csv += "," + eopk::format_full(
                             eopk::correlation_kernel(b.family, n, pts[i], pts[j]));
        csv += "\n";
    }
    write_file(o.out, "kernel.csv", csv);
    return 0;
}

int cmd_zeros(const CommonOpts& o) {
    Built b = build(o);
    std::string csv = "degree,kind,t,residual\n";
    for (int n = 2; n <= b.family.max_degree; ++n) {
        const eopk::ZeroSet zs = eopk::find_gamma_zeros(b.family, n);
        for (std::size_t k = 0; k < zs.gamma_zeros.size(); ++k)
            csv += std::to_string(n) + ",gamma," + eopk::format_full(zs.gamma_zeros[k]) + "," +
                   eopk::format_full(zs.gamma_residuals[k]) + "\n";
        for (std::size_t k = 0; k < zs.real_zeros.size(); ++k)
            csv += std::to_string(n) + ",real," + eopk::format_full(zs.real_zeros[k]) + "," +
                   eopk::format_full(zs.real_residuals[k]) + "\n";
    }
    write_file(o.out, "zeros.csv", csv);
    return 0;
}

int cmd_verify(const CommonOpts& o, bool perturb, bool symmetric_suite) {
    eopk::VerifyOptions vo;
    vo.tau_im = o.tau;
    vo.weight = o.weight;
    vo.nmax = o.nmax;
    vo.quad = o.quad;
    vo.seed = o.seed;
    vo.perturb = perturb;
    vo.symmetric_suite = symmetric_suite;
    const eopk::VerifyReport rep = eopk::run_verify(vo);
    std::cout << rep.human_summary();
    write_file(o.out, "verify.json", rep.to_json(vo));
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic orthogonal polynomial kit"};
    app.require_subcommand(1);

    CommonOpts oc, ok, oz, ov;
    int kernel_n = 6, kernel_grid = 64;
    bool perturb = false, symmetric_suite = false;

    CLI::App* coeffs = app.add_subcommand("coeffs", "export recurrence coefficients and norms");
    add_common(coeffs, oc);
    CLI::App* kernel = app.add_subcommand("kernel", "export a correlation-kernel grid");
    add_common(kernel, ok);
    kernel->add_option("--n", kernel_n, "kernel truncation degree");
    kernel->add_option("--grid", kernel_grid, "grid size per axis");
    CLI::App* zeros = app.add_subcommand("zeros", "export zero sets per degree");
    add_common(zeros, oz);
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    add_common(verify, ov);
    verify->add_flag("--perturb", perturb, "inject a coefficient perturbation (self-test)");
    verify->add_flag("--symmetric-suite", symmetric_suite, "include symmetric-weight checks");

    try {
        app.parse(argc, argv);
        if (coeffs->parsed()) return cmd_coeffs(oc);
        if (kernel->parsed()) return cmd_kernel(ok, kernel_n, kernel_grid);
        if (zeros->parsed()) return cmd_zeros(oz);
        if (verify->parsed()) return cmd_verify(ov, perturb, symmetric_suite);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    } catch (const eopk::DegenerateNorm& e) {
        std::cerr << "numerical breakdown: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const eopk::QuadratureDivergence& e) {
        std::cerr << "numerical breakdown: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitValidation;
    } catch (const eopk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}

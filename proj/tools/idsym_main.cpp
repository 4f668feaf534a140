// Command-line front end: matrix file I/O, random instance generation,
// construction, verification, and decomposition of symmetries attached to an
// idempotent. All numeric work happens in the library; this file only wires
// subcommands to it.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "idsym/idsym.hpp"

namespace {

using idsym::ComplexMatrix;
using idsym::Idempotent;
using idsym::ToleranceConfig;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;      // I/O, schema, or validation failure
constexpr int kExitNegative = 2;   // NotExists / NotMember / relation fails

struct CommonOptions {
    ToleranceConfig tol;
    bool json = false;
};

Idempotent load_idempotent(const std::string& path, const ToleranceConfig& tol) {
    return Idempotent::validate(idsym::read_matrix_file(path).matrix, tol);
}

void emit_report(const idsym::Report& rep, bool json) {
    if (json)
        std::cout << idsym::to_json(rep).dump(2) << "\n";
    else
        idsym::print_table(std::cout, rep);
}

int run_gen(const CommonOptions& common, idsym::Index n, idsym::Index r, double norm_cap,
            std::uint64_t seed, const std::string& out_path) {
    const Idempotent p = idsym::random_idempotent(n, r, norm_cap, seed, common.tol);
    const std::string name = "random idempotent n=" + std::to_string(n) + " r=" +
                             std::to_string(r) + " seed=" + std::to_string(seed) +
                             " cap=" + std::to_string(norm_cap);
    idsym::write_matrix_file(out_path, p.matrix(), name);
    std::cout << "wrote " << out_path << " (" << name << ")\n";
    return kExitOk;
}

int run_verify(const CommonOptions& common, const std::string& in_path) {
    const idsym::MatrixFile file = idsym::read_matrix_file(in_path);
    const Idempotent p = Idempotent::validate(file.matrix, common.tol);
    idsym::InstanceInfo info;
    info.label = file.name.empty() ? in_path : file.name;
    const idsym::Report rep = idsym::identity_suite(p, common.tol, info);
    emit_report(rep, common.json);
    return rep.pass() ? kExitOk : kExitError;
}

int run_gamma(const CommonOptions& common, const std::string& in_path,
              const std::optional<std::string>& param_path, const std::string& out_path,
              bool delta) {
    const Idempotent p = load_idempotent(in_path, common.tol);
    idsym::Symmetry j = [&] {
        if (param_path) {
            const ComplexMatrix u = idsym::read_matrix_file(*param_path).matrix;
            return delta ? idsym::construct_delta(p, idsym::DeltaParam{u}, common.tol)
                         : idsym::construct_gamma(p, idsym::GammaParam{u}, common.tol);
        }
        return delta ? idsym::canonical_delta(p, common.tol)
                     : idsym::canonical_gamma(p, common.tol);
    }();
    const double residual = delta ? idsym::delta_defect(p, j.matrix())
                                  : idsym::gamma_defect(p, j.matrix());
    idsym::write_matrix_file(out_path, j.matrix(),
                             delta ? "delta symmetry" : "gamma symmetry");
    std::cout << "wrote " << out_path << " (membership residual " << residual << ")\n";
    return kExitOk;
}

int run_check(const CommonOptions& common, const std::string& p_path,
              const std::string& j_path) {
    const Idempotent p = load_idempotent(p_path, common.tol);
    const ComplexMatrix j = idsym::read_matrix_file(j_path).matrix;
    const bool in_gamma = idsym::is_in_gamma(p, j, common.tol);
    const bool in_delta = idsym::is_in_delta(p, j, common.tol);
    const bool positive = idsym::is_positive_pair(p, j, common.tol);
    const bool shapes_match = j.rows() == p.dim() && j.cols() == p.dim();
    const double g_res = shapes_match ? idsym::gamma_defect(p, j) : 1.0;
    const double d_res = shapes_match ? idsym::delta_defect(p, j) : 1.0;
    const double pos_res = shapes_match ? idsym::positive_pair_defect(p, j) : 1.0;
    if (common.json) {
        nlohmann::json out{{"gamma", in_gamma},       {"delta", in_delta},
                           {"positive", positive},    {"gamma_residual", g_res},
                           {"delta_residual", d_res}, {"positive_defect", pos_res}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << std::boolalpha;
        std::cout << "gamma    (J P J = I - P):  " << in_gamma << "  residual " << g_res << "\n";
        std::cout << "delta    (J P J = I - P*): " << in_delta << "  residual " << d_res << "\n";
        std::cout << "positive (J P >= 0):       " << positive << "  defect " << pos_res << "\n";
    }
    return (in_gamma || in_delta || positive) ? kExitOk : kExitNegative;
}

int run_decompose(const CommonOptions& common, const std::string& p_path,
                  const std::string& j_path, const std::string& out_dir) {
    const Idempotent p = load_idempotent(p_path, common.tol);
    const ComplexMatrix j_raw = idsym::read_matrix_file(j_path).matrix;

    // A member of the I - P* family decomposes directly; a member of the
    // I - P family is first carried over by the family bijection. Anything
    // else is rejected.
    idsym::Symmetry j_delta = [&] {
        if (idsym::is_in_delta(p, j_raw, common.tol)) {
            idsym::Symmetry j = idsym::Symmetry::validate(j_raw, common.tol);
            j.add_certification(idsym::Family::Delta);
            return j;
        }
        if (idsym::is_in_gamma(p, j_raw, common.tol)) {
            idsym::Symmetry j = idsym::Symmetry::validate(j_raw, common.tol);
            j.add_certification(idsym::Family::Gamma);
            return idsym::delta_from_gamma(p, j, common.tol);
        }
        throw idsym::NotMember("decompose: J is in neither symmetry family of P");
    }();

    const idsym::DeltaDecomposition dec = idsym::delta_decompose(p, j_delta, common.tol);
    const idsym::Symmetry image = idsym::gamma_from_delta(p, j_delta, common.tol);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    idsym::write_matrix_file(dir / "J1.json", dec.J1.matrix(), "gamma factor");
    idsym::write_matrix_file(dir / "J2.json", dec.J2.matrix(), "minimal positive factor");
    idsym::write_matrix_file(dir / "image.json", image.matrix(), "gamma image");

    idsym::Report rep;
    rep.instance.n = p.dim();
    rep.instance.label = "decomposition of " + j_path;
    const auto add = [&](std::string id, std::string anchor, double res) {
        rep.entries.push_back({std::move(id), std::move(anchor), res,
                               res <= common.tol.residual_atol});
    };
    add("reconstruction", "Theorem 3.8(i)", dec.residual);
    add("factor-gamma-membership", "Theorem 3.8(i)", idsym::gamma_defect(p, dec.J1.matrix()));
    add("image-membership", "Corollary 3.10", idsym::gamma_defect(p, image.matrix()));
    add("bijection-roundtrip", "Corollary 3.10",
        idsym::rel_residual(idsym::delta_from_gamma(p, image, common.tol).matrix(),
                            j_delta.matrix()));
    emit_report(rep, common.json);
    return rep.pass() ? kExitOk : kExitError;
}

int run_intertwine(const CommonOptions& common, const std::string& u_path,
                   const std::string& p_path, const std::string& q_path) {
    const ComplexMatrix u = idsym::read_matrix_file(u_path).matrix;
    const Idempotent p = load_idempotent(p_path, common.tol);
    const Idempotent q = load_idempotent(q_path, common.tol);
    const idsym::IntertwineReport rep = idsym::intertwine_check(u, p, q, common.tol);
    if (common.json) {
        nlohmann::json out{{"conjugates_idempotent", rep.conjugates_idempotent},
                           {"conjugates_projections", rep.conjugates_projections},
                           {"conjugates_differences", rep.conjugates_differences},
                           {"consistent", rep.consistent}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << std::boolalpha;
        std::cout << "(i)   U P U* = Q:                     " << rep.conjugates_idempotent << "\n";
        std::cout << "(ii)  conjugates range/null proj.:    " << rep.conjugates_projections << "\n";
        std::cout << "(iii) conjugates differences:         " << rep.conjugates_differences << "\n";
        std::cout << "consistent: " << rep.consistent << "\n";
    }
    if (!rep.consistent) return kExitError;
    return rep.all_hold() ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructs, verifies and decomposes symmetries J attached to an idempotent P "
                 "(J P J = I - P, J P J = I - P*, J P >= 0)"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions common;
    app.add_option("--tol-rank", common.tol.rank_rtol, "relative rank threshold")
        ->capture_default_str();
    app.add_option("--tol-residual", common.tol.residual_atol, "residual tolerance")
        ->capture_default_str();
    app.add_option("--tol-psd", common.tol.psd_tol, "eigenvalue floor for positivity")
        ->capture_default_str();
    app.add_flag("--json", common.json, "machine-readable output");

    auto* gen = app.add_subcommand("gen", "generate a random idempotent");
    idsym::Index gen_n = 0, gen_r = 0;
    double gen_cap = 10.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "ambient dimension")->required();
    gen->add_option("--r", gen_r, "rank")->required();
    gen->add_option("--norm-cap", gen_cap, "bound on the corner block norm")
        ->capture_default_str();
    gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
    gen->add_option("-o,--output", gen_out, "output matrix file")->required();

    auto* verify = app.add_subcommand("verify", "run the identity suite on an idempotent");
    std::string verify_in;
    verify->add_option("-i,--input", verify_in, "idempotent matrix file")->required();

    auto* gamma = app.add_subcommand("gamma", "construct J with J P J = I - P");
    std::string gamma_in, gamma_out;
    std::optional<std::string> gamma_param;
    gamma->add_option("-i,--input", gamma_in, "idempotent matrix file")->required();
    gamma->add_option("-u,--param", gamma_param, "unitary parameter file (canonical if absent)");
    gamma->add_option("-o,--output", gamma_out, "output symmetry file")->required();

    auto* delta = app.add_subcommand("delta", "construct J with J P J = I - P*");
    std::string delta_in, delta_out;
    std::optional<std::string> delta_param;
    delta->add_option("-i,--input", delta_in, "idempotent matrix file")->required();
    delta->add_option("-u,--param", delta_param, "unitary parameter file (canonical if absent)");
    delta->add_option("-o,--output", delta_out, "output symmetry file")->required();

    auto* check = app.add_subcommand("check", "report family memberships of a symmetry");
    std::string check_p, check_j;
    check->add_option("-i,--input", check_p, "idempotent matrix file")->required();
    check->add_option("-j,--symmetry", check_j, "symmetry matrix file")->required();

    auto* decompose = app.add_subcommand("decompose", "factor J into gamma and positive parts");
    std::string dec_p, dec_j, dec_out;
    decompose->add_option("-i,--input", dec_p, "idempotent matrix file")->required();
    decompose->add_option("-j,--symmetry", dec_j, "symmetry matrix file")->required();
    decompose->add_option("-o,--output", dec_out, "output directory")->required();

    auto* intertwine = app.add_subcommand("intertwine", "test U P U* = Q three equivalent ways");
    std::string int_u, int_p, int_q;
    intertwine->add_option("-u,--unitary", int_u, "unitary matrix file")->required();
    intertwine->add_option("-p", int_p, "first idempotent file")->required();
    intertwine->add_option("-q", int_q, "second idempotent file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(common, gen_n, gen_r, gen_cap, gen_seed, gen_out);
        if (verify->parsed()) return run_verify(common, verify_in);
        if (gamma->parsed())
            return run_gamma(common, gamma_in, gamma_param, gamma_out, /*delta=*/false);
        if (delta->parsed())
            return run_gamma(common, delta_in, delta_param, delta_out, /*delta=*/true);
        if (check->parsed()) return run_check(common, check_p, check_j);
        if (decompose->parsed()) return run_decompose(common, dec_p, dec_j, dec_out);
        if (intertwine->parsed()) return run_intertwine(common, int_u, int_p, int_q);
    } catch (const idsym::NotExists& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const idsym::NotMember& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const idsym::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

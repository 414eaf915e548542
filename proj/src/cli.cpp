#include "cocycle_lab/cli.hpp"

#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/json_io.hpp"
#include "cocycle_lab/numkernel/linalg.hpp"

namespace cocycle_lab::cli {

namespace {

using json_io::Json;
namespace fs = std::filesystem;

struct Outcome {
    Json payload;
    bool verdict = true;
    std::string log;
};

struct Globals {
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    bool compact = false;
};

std::uint64_t effective_seed(const Globals& g) {
    if (g.seed) return *g.seed;
    if (const char* env = std::getenv("COCYCLE_LAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Usage, "COCYCLE_LAB_SEED is not an unsigned integer");
        }
    }
    return 0;
}

struct LoadedMps {
    MpsState state;
    std::optional<OnsiteRep> onsite;  ///< set for builtin states
};

LoadedMps load_mps(const std::string& name_or_path) {
    if (!fs::exists(name_or_path)) {
        for (const auto& n : builtin_state_names())
            if (n == name_or_path) {
                auto b = builtin_state(n);
                return {std::move(b.state), std::move(b.onsite)};
            }
    }
    return {canonicalize(json_io::load_mps_tensors(name_or_path)), std::nullopt};
}

OnsiteRep mps_onsite(const std::string& rep_path, const std::vector<LoadedMps>& states) {
    if (!rep_path.empty()) return json_io::load_onsite(rep_path);
    for (const auto& s : states)
        if (s.onsite) return *s.onsite;
    throw Error(ErrorKind::Usage, "--rep is required unless a builtin state is named");
}

Json index_list(const std::vector<std::array<Element, 3>>& v) {
    Json out = Json::array();
    for (const auto& t : v) out.push_back(Json::array({t[0], t[1], t[2]}));
    return out;
}

Json index_list(const std::vector<std::array<Element, 2>>& v) {
    Json out = Json::array();
    for (const auto& t : v) out.push_back(Json::array({t[0], t[1]}));
    return out;
}

Element parse_element(const FiniteGroup& g, const std::string& token) {
    for (Element x = 0; x < g.order(); ++x)
        if (g.name(x) == token) return x;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(token, &used);
        if (used == token.size() && v < g.order()) return static_cast<Element>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Usage, "unknown group element \"" + token + "\"");
}

/// A projective rep file, or an on-site rep file viewed with the trivial cocycle.
ProjectiveRep load_any_rep(const std::string& path) {
    const Json j = json_io::read_file(path);
    const auto base = fs::path(path).parent_path();
    if (j.contains("cocycle")) return json_io::projrep_from_json(j, base);
    return as_projective(json_io::onsite_from_json(j, base));
}

Json phases_json(const std::vector<cplx>& xs) {
    Json out = Json::array();
    for (const auto z : xs) out.push_back(Json::array({z.real(), z.imag()}));
    return out;
}

Json validation_failure(const Error& e) {
    return Json{{"valid", false}, {"error", to_string(e.kind())}, {"message", e.what()}};
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
    CLI::App app{"Cocycles, projective representations and SPT phase invariants on spin chains", "cocycle-lab"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals globals;
    double tol_value = 0;
    std::uint64_t seed_value = 0;
    auto* tol_opt = app.add_option("--tol", tol_value, "Tolerance for numerical checks");
    auto* seed_opt = app.add_option("--seed", seed_value, "Seed for random draws (overrides COCYCLE_LAB_SEED)");
    app.add_flag("--json", globals.compact, "Compact single-line JSON output");

    std::function<Outcome()> action;

    // group
    auto* group = app.add_subcommand("group", "Finite groups")->require_subcommand(1);
    std::string group_file;
    auto* group_validate = group->add_subcommand("validate", "Validate a Cayley table");
    group_validate->add_option("file", group_file, "Group JSON")->required();
    group_validate->callback([&] {
        action = [&] {
            const Json j = json_io::read_file(group_file);
            const auto table = j.at("table").get<std::vector<std::vector<std::size_t>>>();
            std::vector<std::string> names;
            if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
            try {
                const auto g = validate_group(table, names);
                Json orders = Json::array(), inverses = Json::array();
                for (Element x = 0; x < g.order(); ++x) {
                    orders.push_back(g.element_order(x));
                    inverses.push_back(g.inverse(x));
                }
                return Outcome{Json{{"valid", true},
                                    {"order", g.order()},
                                    {"abelian", g.is_abelian()},
                                    {"exponent", g.exponent()},
                                    {"element_orders", orders},
                                    {"inverses", inverses},
                                    {"conjugacy_classes", conjugacy_classes(g)}},
                               true, "group of order " + std::to_string(g.order()) + " is valid\n"};
            } catch (const Error& e) {
                return Outcome{Json{{"valid", false}, {"error", to_string(e.kind())}, {"message", e.what()}}, false,
                               std::string(e.what()) + "\n"};
            }
        };
    });

    // cocycle
    auto* cocycle = app.add_subcommand("cocycle", "2-cocycles and their classes")->require_subcommand(1);
    std::string cocycle_file, cocycle_other, classes_group;
    std::int64_t classes_m = 0;
    auto* cocycle_check = cocycle->add_subcommand("check", "Check the cocycle identity and normalization");
    cocycle_check->add_option("file", cocycle_file, "Cocycle JSON")->required();
    cocycle_check->callback([&] {
        action = [&] {
            const auto r = check_cocycle(json_io::load_cocycle(cocycle_file), globals.tol.value_or(1e-8));
            return Outcome{Json{{"valid", r.valid}, {"violations", index_list(r.violations)}, {"unnormalized", index_list(r.unnormalized)}},
                           r.valid, r.valid ? "cocycle identity holds\n" : "cocycle identity fails\n"};
        };
    });
    auto* cocycle_trivial = cocycle->add_subcommand("trivial", "Decide whether the cocycle is a coboundary");
    cocycle_trivial->add_option("file", cocycle_file, "Cocycle JSON")->required();
    cocycle_trivial->callback([&] {
        action = [&] {
            const bool t = is_trivial(json_io::load_cocycle(cocycle_file));
            return Outcome{Json{{"trivial", t}}, t, t ? "cocycle is a coboundary\n" : "cocycle is not a coboundary\n"};
        };
    });
    auto* cocycle_equal = cocycle->add_subcommand("equal", "Decide whether two cocycles are cohomologous");
    cocycle_equal->add_option("a", cocycle_file, "First cocycle JSON")->required();
    cocycle_equal->add_option("b", cocycle_other, "Second cocycle JSON")->required();
    cocycle_equal->callback([&] {
        action = [&] {
            const bool eq = classes_equal(json_io::load_cocycle(cocycle_file), json_io::load_cocycle(cocycle_other));
            return Outcome{Json{{"equal", eq}}, eq, eq ? "same class\n" : "different classes\n"};
        };
    });
    auto* cocycle_classes = cocycle->add_subcommand("classes", "Enumerate classes with values in the m-th roots of unity");
    cocycle_classes->add_option("group", classes_group, "Builtin group name or group JSON")->required();
    cocycle_classes->add_option("--m", classes_m, "Root order (default |G|)");
    cocycle_classes->callback([&] {
        action = [&] {
            const auto g = json_io::load_group(classes_group);
            const auto classes = enumerate_classes(g, classes_m);
            Json reps = Json::array();
            for (const auto& c : classes) {
                Json cj = json_io::to_json(c.representative);
                cj.erase("group");
                reps.push_back(std::move(cj));
            }
            return Outcome{Json{{"group", json_io::to_json(g)}, {"count", classes.size()}, {"classes", reps}}, true,
                           std::to_string(classes.size()) + " classes\n"};
        };
    });

    std::string cob_file, combine_op = "product";
    std::vector<std::string> combine_files;
    auto* cocycle_cob = cocycle->add_subcommand("coboundary", "Coboundary of a phase function");
    cocycle_cob->add_option("file", cob_file, "Phase function JSON")->required();
    cocycle_cob->callback([&] {
        action = [&] {
            const auto c = coboundary(json_io::load_phase_function(cob_file));
            return Outcome{Json{{"cocycle", json_io::to_json(c)}, {"valid", check_cocycle(c).valid}, {"trivial", is_trivial(c)}}, true, ""};
        };
    });
    auto* cocycle_combine = cocycle->add_subcommand("combine", "Product, inverse or conjugate of cocycles");
    cocycle_combine->add_option("files", combine_files, "One or two cocycle JSON files")->required()->expected(1, 2);
    cocycle_combine->add_option("--op", combine_op, "product | inverse | conjugate")
        ->check(CLI::IsMember({"product", "inverse", "conjugate"}));
    cocycle_combine->callback([&] {
        action = [&] {
            const auto a = json_io::load_cocycle(combine_files.front());
            const auto b = combine_files.size() > 1 ? json_io::load_cocycle(combine_files[1]) : a;
            if (combine_op == "product" && combine_files.size() < 2) throw Error(ErrorKind::Usage, "--op product needs two cocycles");
            const CombineOp op = combine_op == "product" ? CombineOp::Product
                                 : combine_op == "inverse" ? CombineOp::Inverse
                                                           : CombineOp::Conjugate;
            const auto c = combine(a, b, op);
            return Outcome{Json{{"cocycle", json_io::to_json(c)}, {"trivial", is_trivial(c)}}, true, ""};
        };
    });
    std::string comm_g, comm_h;
    auto* cocycle_comm = cocycle->add_subcommand("commutator", "sigma(g,h)/sigma(h,g) for commuting g, h");
    cocycle_comm->add_option("file", cocycle_file, "Cocycle JSON")->required();
    cocycle_comm->add_option("first", comm_g, "Element name or index")->required();
    cocycle_comm->add_option("second", comm_h, "Element name or index")->required();
    cocycle_comm->callback([&] {
        action = [&] {
            const auto c = json_io::load_cocycle(cocycle_file);
            const auto p = commutator_invariant(c, parse_element(c.group(), comm_g), parse_element(c.group(), comm_h));
            const cplx z = p.value();
            return Outcome{Json{{"turns", p.as_turns()}, {"value", Json::array({z.real(), z.imag()})}}, true, ""};
        };
    });

    // irreps
    std::string irreps_cocycle;
    auto* irreps_cmd = app.add_subcommand("irreps", "Irreducible projective representations of a cocycle");
    irreps_cmd->add_option("--cocycle", irreps_cocycle, "Cocycle JSON")->required();
    irreps_cmd->callback([&] {
        action = [&] {
            const auto t = irreps(json_io::load_cocycle(irreps_cocycle));
            return Outcome{json_io::to_json(t), true, std::to_string(t.size()) + " irreducible representations\n"};
        };
    });

    // kernel
    auto* kernel = app.add_subcommand("kernel", "Dense linear algebra kernels")->require_subcommand(1);
    std::string kernel_a, kernel_b;
    auto* kernel_eig = kernel->add_subcommand("eig", "Hermitian eigendecomposition");
    kernel_eig->add_option("file", kernel_a, "Matrix JSON")->required();
    kernel_eig->callback([&] {
        action = [&] {
            const auto e = numkernel::hermitian_eig(json_io::load_matrix(kernel_a));
            return Outcome{Json{{"eigenvalues", e.values}, {"eigenvectors", json_io::to_json(e.vectors)}}, true, ""};
        };
    });
    auto* kernel_leading = kernel->add_subcommand("leading", "Leading eigenpair by power iteration");
    kernel_leading->add_option("file", kernel_a, "Matrix JSON")->required();
    kernel_leading->callback([&] {
        action = [&] {
            const auto p = numkernel::leading_eigenpair(json_io::load_matrix(kernel_a), globals.tol.value_or(1e-12));
            return Outcome{Json{{"eigenvalue", Json::array({p.value.real(), p.value.imag()})},
                                {"eigenvector", json_io::to_json(p.vector)},
                                {"iterations", p.iterations}},
                           true, ""};
        };
    });
    auto* kernel_kron = kernel->add_subcommand("kron", "Kronecker product");
    kernel_kron->add_option("a", kernel_a, "Matrix JSON")->required();
    kernel_kron->add_option("b", kernel_b, "Matrix JSON")->required();
    kernel_kron->callback([&] {
        action = [&] {
            return Outcome{Json{{"matrix", json_io::to_json(numkernel::kron(json_io::load_matrix(kernel_a), json_io::load_matrix(kernel_b)))}},
                           true, ""};
        };
    });
    auto* kernel_snf = kernel->add_subcommand("snf", "Smith normal form of an integer matrix");
    kernel_snf->add_option("file", kernel_a, "Integer matrix JSON")->required();
    kernel_snf->callback([&] {
        action = [&] {
            const auto f = numkernel::smith_normal_form(json_io::intmatrix_from_json(json_io::read_file(kernel_a)));
            return Outcome{Json{{"s", json_io::to_json(f.s)}, {"u", json_io::to_json(f.u)}, {"v", json_io::to_json(f.v)}, {"rank", f.rank()}},
                           true, ""};
        };
    });

    // rep (genuine on-site)
    auto* rep = app.add_subcommand("rep", "On-site representations")->require_subcommand(1);
    std::string rep_file;
    auto* rep_validate = rep->add_subcommand("validate", "Validate an on-site representation");
    rep_validate->add_option("file", rep_file, "On-site rep JSON")->required();
    rep_validate->callback([&] {
        action = [&] {
            try {
                const auto u = json_io::load_onsite(rep_file);
                return Outcome{Json{{"valid", true}, {"dim", u.dim}, {"character", phases_json(u.character())}}, true, "valid\n"};
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NotUnitary && e.kind() != ErrorKind::NotHomomorphism &&
                    e.kind() != ErrorKind::ScalarAtNonIdentity)
                    throw;
                return Outcome{validation_failure(e), false, std::string(e.what()) + "\n"};
            }
        };
    });

    // projrep
    auto* projrep = app.add_subcommand("projrep", "Projective representations")->require_subcommand(1);
    std::string pr_file, pr_other, pr_onsite, pr_b;
    std::vector<std::string> pr_files;
    std::size_t pr_l = 0;
    auto* pr_validate = projrep->add_subcommand("validate", "Validate a projective representation against its cocycle");
    pr_validate->add_option("file", pr_file, "Projective rep JSON")->required();
    pr_validate->callback([&] {
        action = [&] {
            try {
                const auto v = json_io::load_projrep(pr_file);
                return Outcome{Json{{"valid", true}, {"dim", v.dim}, {"character", phases_json(character(v))}}, true, "valid\n"};
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NotUnitary && e.kind() != ErrorKind::CocycleMismatch) throw;
                return Outcome{validation_failure(e), false, std::string(e.what()) + "\n"};
            }
        };
    });
    auto* pr_decompose = projrep->add_subcommand("decompose", "Multiplicities of the irreps in a direct sum of reps");
    pr_decompose->add_option("files", pr_files, "Projective or on-site rep JSON files")->required();
    pr_decompose->callback([&] {
        action = [&] {
            ProjectiveRep v = load_any_rep(pr_files.front());
            for (std::size_t i = 1; i < pr_files.size(); ++i) v = direct_sum(v, load_any_rep(pr_files[i]));
            const auto table = irreps(v.cocycle);
            const auto d = decompose(v, table);
            Json dims = Json::array();
            for (std::size_t a = 0; a < table.size(); ++a) dims.push_back(table.dim(a));
            return Outcome{Json{{"dim", v.dim}, {"character", phases_json(character(v))}, {"irrep_dims", dims}, {"multiplicities", d.multiplicities}},
                           true, ""};
        };
    });
    auto* pr_mult = projrep->add_subcommand("multiplicity", "Multiplicity of an irrep in a rep");
    pr_mult->add_option("--irrep", pr_file, "Projective rep JSON")->required();
    pr_mult->add_option("--v", pr_other, "Projective or on-site rep JSON")->required();
    pr_mult->callback([&] {
        action = [&] {
            return Outcome{Json{{"multiplicity", multiplicity(load_any_rep(pr_file), load_any_rep(pr_other))}}, true, ""};
        };
    });
    auto* pr_regular = projrep->add_subcommand("regular", "Twisted regular representation");
    pr_regular->add_option("--cocycle", pr_file, "Cocycle JSON")->required();
    pr_regular->callback([&] {
        action = [&] {
            const auto v = regular_rep(json_io::load_cocycle(pr_file));
            return Outcome{Json{{"rep", json_io::to_json(v)}, {"character", phases_json(character(v))}}, true, ""};
        };
    });
    auto* pr_tensor = projrep->add_subcommand("tensor", "U^l (x) v");
    pr_tensor->add_option("--v", pr_file, "Projective rep JSON")->required();
    pr_tensor->add_option("--rep", pr_onsite, "On-site rep JSON")->required();
    pr_tensor->add_option("--l", pr_l, "Tensor power")->required();
    pr_tensor->callback([&] {
        action = [&] {
            const auto v = tensor_with_onsite(load_any_rep(pr_file), json_io::load_onsite(pr_onsite), pr_l);
            return Outcome{Json{{"dim", v.dim}, {"character", phases_json(character(v))}}, true, ""};
        };
    });
    auto* pr_twist = projrep->add_subcommand("twist", "Multiply a rep by a phase function");
    pr_twist->add_option("--v", pr_file, "Projective or on-site rep JSON")->required();
    pr_twist->add_option("--b", pr_b, "Phase function JSON")->required();
    pr_twist->callback([&] {
        action = [&] {
            const auto v = load_any_rep(pr_file);
            const auto t = twist(v, json_io::load_phase_function(pr_b));
            return Outcome{Json{{"rep", json_io::to_json(t)}, {"same_class", classes_equal(v.cocycle, t.cocycle)}}, true, ""};
        };
    });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Tensor-power multiplicity bounds")->require_subcommand(1);
    std::string bounds_rep, bounds_cocycle, bounds_test_rep, bounds_v;
    std::vector<std::string> bounds_classes;
    std::vector<std::size_t> bounds_windows;
    std::size_t bounds_m = 1;
    BoundsConfig bounds_cfg;
    auto add_lmax = [&](CLI::App* sub) { sub->add_option("--lmax", bounds_cfg.l_max, "Largest tensor power searched"); };
    auto* bounds_l0 = bounds->add_subcommand("l0", "Least l with every irrep inside U^l");
    bounds_l0->add_option("--rep", bounds_rep, "On-site rep JSON")->required();
    add_lmax(bounds_l0);
    bounds_l0->callback([&] {
        action = [&] {
            const auto r = l0_all_irreps(json_io::load_onsite(bounds_rep), bounds_cfg);
            return Outcome{json_io::to_json(r), true, "l0 = " + std::to_string(r.exact_min) + "\n"};
        };
    });
    auto* bounds_pair = bounds->add_subcommand("l0pair", "Least l with alpha inside beta (x) U^l for all pairs");
    bounds_pair->add_option("--rep", bounds_rep, "On-site rep JSON")->required();
    bounds_pair->add_option("--classes", bounds_classes, "Cocycle JSON files")->required();
    add_lmax(bounds_pair);
    bounds_pair->callback([&] {
        action = [&] {
            std::vector<Cocycle> cs;
            for (const auto& f : bounds_classes) cs.push_back(json_io::load_cocycle(f));
            const auto r = l0_pair(json_io::load_onsite(bounds_rep), cs, bounds_cfg);
            return Outcome{json_io::to_json(r), true, "pairwise l0 = " + std::to_string(r.exact_min) + "\n"};
        };
    });
    auto* bounds_nm = bounds->add_subcommand("nm", "Window size giving multiplicity m for every alpha");
    bounds_nm->add_option("--rep", bounds_rep, "On-site rep JSON")->required();
    bounds_nm->add_option("--cocycle", bounds_cocycle, "Cocycle JSON")->required();
    bounds_nm->add_option("--m", bounds_m, "Required multiplicity")->required();
    bounds_nm->add_option("--test-rep", bounds_test_rep, "Projective rep JSON (default: sigma-regular)");
    add_lmax(bounds_nm);
    bounds_nm->callback([&] {
        action = [&] {
            std::optional<ProjectiveRep> test;
            if (!bounds_test_rep.empty()) test = json_io::load_projrep(bounds_test_rep);
            const auto r = n_m_sigma(json_io::load_onsite(bounds_rep), json_io::load_cocycle(bounds_cocycle), bounds_m, test, bounds_cfg);
            return Outcome{json_io::to_json(r), true, "N = " + std::to_string(r.exact_min) + "\n"};
        };
    });
    auto* bounds_growth = bounds->add_subcommand("growth", "Multiplicities of every alpha in U^n (x) v");
    bounds_growth->add_option("--rep", bounds_rep, "On-site rep JSON")->required();
    bounds_growth->add_option("--cocycle", bounds_cocycle, "Cocycle JSON")->required();
    bounds_growth->add_option("--v", bounds_v, "Projective rep JSON")->required();
    bounds_growth->add_option("--windows", bounds_windows, "Window sizes")->required()->delimiter(',');
    bounds_growth->callback([&] {
        action = [&] {
            const auto t = multiplicity_growth(json_io::load_onsite(bounds_rep), json_io::load_cocycle(bounds_cocycle),
                                               json_io::load_projrep(bounds_v), bounds_windows);
            return Outcome{json_io::to_json(t), true, "growth table\n"};
        };
    });

    // twisted
    auto* twisted = app.add_subcommand("twisted", "Twisted crossed products on chain windows")->require_subcommand(1);
    std::vector<long long> window_sites;
    std::string twisted_cocycle, twisted_rep;
    std::size_t samples = 20;
    std::string sym_file, covariant_file;
    auto make_system = [&] {
        if (window_sites.empty() || twisted_cocycle.empty() || twisted_rep.empty())
            throw Error(ErrorKind::Usage, "--window, --cocycle and --rep are required");
        const auto u = json_io::load_onsite(twisted_rep);
        return TwistedSystem::make(make_window(window_sites, u.dim), json_io::load_cocycle(twisted_cocycle), u);
    };
    auto add_system_options = [&](CLI::App* sub) {
        sub->add_option("--window", window_sites, "Window sites")->delimiter(',');
        sub->add_option("--cocycle", twisted_cocycle, "Cocycle JSON");
        sub->add_option("--rep", twisted_rep, "On-site rep JSON");
    };
    auto* twisted_verify = twisted->add_subcommand("verify", "Run the crossed-product identity suite");
    add_system_options(twisted_verify);
    twisted_verify->add_option("--covariant", covariant_file, "Covariant rep JSON (replaces --window/--cocycle/--rep)");
    twisted_verify->add_option("--samples", samples, "Random elements per law");
    twisted_verify->callback([&] {
        action = [&] {
            const auto r = covariant_file.empty() ? regular_covariant(make_system()) : json_io::load_covariant(covariant_file);
            const auto& s = r.system;
            const double tol = globals.tol.value_or(1e-8);
            auto report = verify_identities(r, samples, effective_seed(globals), tol);
            const auto fp = fixed_point_decompose(r);
            report.checks.push_back({"fixed_point_blocks", fp.max_defect, tol, fp.max_defect <= tol});
            report.passed = report.passed && fp.max_defect <= tol;
            Json j = json_io::to_json(report);
            j["window"] = s->window().sites;
            j["carrier_dim"] = r.carrier_dim();
            j["samples"] = samples;
            std::ostringstream log;
            for (const auto& c : report.checks)
                log << (c.passed ? "ok   " : "FAIL ") << c.name << " " << c.max_defect << "\n";
            return Outcome{j, report.passed, log.str()};
        };
    });
    auto* twisted_sym = twisted->add_subcommand("symmetrize", "Group average of a window observable");
    add_system_options(twisted_sym);
    twisted_sym->add_option("--a", sym_file, "Matrix JSON")->required();
    twisted_sym->callback([&] {
        action = [&] {
            return Outcome{Json{{"matrix", json_io::to_json(symmetrize(make_system(), json_io::load_matrix(sym_file)))}}, true, ""};
        };
    });
    auto* twisted_fp = twisted->add_subcommand("fixed-point", "Block structure of the fixed-point algebra");
    add_system_options(twisted_fp);
    twisted_fp->callback([&] {
        action = [&] {
            const auto s = make_system();
            const bool untwisted = same_values(s->cocycle(), Cocycle::trivial(s->group()));
            const auto r = untwisted ? identity_covariant(s) : regular_covariant(s);
            const auto fp = fixed_point_decompose(r);
            Json blocks = Json::array();
            for (const auto& b : fp.blocks)
                blocks.push_back(Json{{"gamma", b.gamma}, {"irrep_dim", b.irrep_dim}, {"multiplicity", b.multiplicity}});
            const double tol = globals.tol.value_or(1e-8);
            return Outcome{Json{{"covariant_rep", untwisted ? "identity" : "regular"},
                                {"carrier_dim", r.carrier_dim()},
                                {"probes", fp.probes.size()},
                                {"blocks", blocks},
                                {"max_defect", fp.max_defect}},
                           fp.max_defect <= tol, ""};
        };
    });

    // mps
    auto* mps = app.add_subcommand("mps", "Matrix product states")->require_subcommand(1);
    std::vector<std::string> mps_files, mps_positional;
    std::string mps_rep;
    auto add_mps_inputs = [&](CLI::App* sub) {
        sub->add_option("--mps", mps_files, "MPS JSON or builtin name");
        sub->add_option("states", mps_positional, "MPS JSON or builtin name");
        sub->add_option("--rep", mps_rep, "On-site rep JSON");
    };
    auto collect = [&](std::size_t want) {
        std::vector<std::string> names = mps_files;
        names.insert(names.end(), mps_positional.begin(), mps_positional.end());
        if (names.size() != want) {
            throw Error(ErrorKind::Usage, "--mps: expected " + std::to_string(want) + " state(s), got " + std::to_string(names.size()));
        }
        std::vector<LoadedMps> out;
        for (const auto& n : names) out.push_back(load_mps(n));
        return out;
    };
    auto* mps_classify = mps->add_subcommand("classify", "Extract the bond cocycle and its class");
    add_mps_inputs(mps_classify);
    mps_classify->callback([&] {
        action = [&] {
            const auto states = collect(1);
            const auto cert = extract_cocycle(states[0].state, mps_onsite(mps_rep, states));
            Json j = json_io::to_json(cert);
            return Outcome{Json{{"certificate", j}, {"class_index", cert.class_index}, {"trivial", j["trivial"]}}, true,
                           "class index " + std::to_string(cert.class_index) + "\n"};
        };
    });
    auto* mps_compare = mps->add_subcommand("compare", "Decide whether two states share a phase");
    add_mps_inputs(mps_compare);
    mps_compare->callback([&] {
        action = [&] {
            const auto states = collect(2);
            const auto r = compare_phases(states[0].state, states[1].state, mps_onsite(mps_rep, states));
            return Outcome{Json{{"equivalent", r.equivalent},
                                {"classes", Json::array({r.first.class_index, r.second.class_index})},
                                {"certificates", Json::array({json_io::to_json(r.first), json_io::to_json(r.second)})}},
                           r.equivalent, r.equivalent ? "same phase\n" : "different phases\n"};
        };
    });
    auto* mps_lr = mps->add_subcommand("leftright", "Check that the edge cocycles are mutually inverse");
    add_mps_inputs(mps_lr);
    mps_lr->callback([&] {
        action = [&] {
            const auto states = collect(1);
            const auto r = left_right_check(states[0].state, mps_onsite(mps_rep, states));
            return Outcome{Json{{"passed", r.product_trivial}, {"right", json_io::to_json(r.right)}, {"left", json_io::to_json(r.left)}},
                           r.product_trivial, r.product_trivial ? "left and right classes are inverse\n" : "edge classes mismatch\n"};
        };
    });

    std::string mps_g;
    auto* mps_canon = mps->add_subcommand("canonicalize", "Right-canonical form and transfer gap");
    add_mps_inputs(mps_canon);
    mps_canon->callback([&] {
        action = [&] {
            const auto states = collect(1);
            Json j = json_io::to_json(states[0].state);
            j["second_eigenvalue"] = states[0].state.second_eigenvalue;
            j["left_fixed_point"] = json_io::to_json(states[0].state.left_fixed_point);
            return Outcome{j, true, ""};
        };
    });
    auto* mps_sym = mps->add_subcommand("symmetry", "Bond action of one group element");
    add_mps_inputs(mps_sym);
    mps_sym->add_option("--g", mps_g, "Element name or index")->required();
    mps_sym->callback([&] {
        action = [&] {
            const auto states = collect(1);
            const auto u = mps_onsite(mps_rep, states);
            const auto b = extract_symmetry(states[0].state, u, parse_element(u.group, mps_g));
            return Outcome{Json{{"theta", b.theta}, {"v", json_io::to_json(b.v)}, {"reconstruction_defect", b.reconstruction_defect}}, true, ""};
        };
    });

    CommandResult result;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.payload = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = 1;
        result.log = std::string(e.what()) + "\n";
        return result;
    }
    if (tol_opt->count() > 0) globals.tol = tol_value;
    if (seed_opt->count() > 0) globals.seed = seed_value;

    auto fail = [&](int code, const std::string& kind, const std::string& message) {
        result.exit_code = code;
        result.payload = json_io::dump(Json{{"error", kind}, {"message", message}}, globals.compact) + "\n";
        result.log = message + "\n";
    };
    if (!action) {
        fail(1, "Usage", "no command given");
        return result;
    }
    try {
        auto out = action();
        result.exit_code = out.verdict ? 0 : 3;
        result.payload = json_io::dump(out.payload, globals.compact) + "\n";
        result.log = std::move(out.log);
    } catch (const Error& e) {
        fail(is_numerical_failure(e.kind()) ? 2 : 1, to_string(e.kind()), e.what());
    } catch (const Json::exception& e) {
        fail(1, "InvalidInput", e.what());
    } catch (const std::exception& e) {
        fail(1, "InvalidInput", e.what());
    }
    return result;
}

}  // namespace cocycle_lab::cli

#include "fop/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fop/acceptance.hpp"
#include "fop/algebra.hpp"
#include "fop/forest.hpp"
#include "fop/homology.hpp"
#include "fop/operad.hpp"

namespace fop {

namespace {

std::vector<Decoration> decorations_from(const std::string& csv, int D) {
    std::vector<Decoration> ds;
    if (!csv.empty()) {
        std::stringstream ss(csv);
        std::string item;
        while (std::getline(ss, item, ',')) ds.emplace_back(item);
        if (ds.empty()) throw CLI::ValidationError("--decorations", "no labels given");
        return ds;
    }
    if (D < 1) throw CLI::ValidationError("-D", "decoration count must be >= 1");
    if (D == 1) {
        ds.emplace_back("x");
    } else {
        for (int i = 1; i <= D; ++i) ds.emplace_back("x" + std::to_string(i));
    }
    return ds;
}

Flavor flavor_from(const std::string& name) {
    if (name == "searrow") return Flavor::Searrow;
    if (name == "nearrow") return Flavor::Nearrow;
    throw CLI::ValidationError("--flavor", "expected searrow or nearrow");
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"planar-forest operads: products, dimension tables, duality and homology checks"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();

    // forests
    auto* cmd_forests = app.add_subcommand("forests", "enumerate forests of a given weight");
    int weight_opt = 1;
    std::string decorations_csv;
    int d_count = 1;
    cmd_forests->add_option("--weight,-w", weight_opt, "forest weight")->required();
    cmd_forests->add_option("--decorations", decorations_csv, "comma-separated labels");
    cmd_forests->add_option("-D", d_count, "decoration count (labels x1..xD)");

    // product
    auto* cmd_product = app.add_subcommand("product", "multiply two forests");
    std::string op_name = "concat";
    std::vector<std::string> operands;
    cmd_product->add_option("--op", op_name, "product")
        ->check(CLI::IsMember({"concat", "searrow", "nearrow"}))
        ->capture_default_str();
    cmd_product->add_option("operands", operands, "two forests, e.g. \"a\" \"b(c)\"")
        ->expected(2);

    // factorize
    auto* cmd_factorize = app.add_subcommand("factorize", "unique left-comb factorization");
    std::string factorize_input;
    cmd_factorize->add_option("forest", factorize_input, "forest to factorize")->required();

    // dims
    auto* cmd_dims = app.add_subcommand("dims", "operad dimension table");
    std::string dims_flavor = "searrow";
    bool dims_dual = false;
    int max_arity = 6;
    cmd_dims->add_option("--flavor", dims_flavor, "searrow|nearrow")
        ->check(CLI::IsMember({"searrow", "nearrow"}))
        ->capture_default_str();
    cmd_dims->add_flag("--dual", dims_dual, "use the Koszul dual presentation");
    cmd_dims->add_option("--max-arity", max_arity, "largest arity")->capture_default_str();

    // dual-check
    auto* cmd_dual = app.add_subcommand("dual-check", "annihilator check of the dual relations");
    std::string dual_flavor = "searrow";
    cmd_dual->add_option("--flavor", dual_flavor, "searrow|nearrow")
        ->check(CLI::IsMember({"searrow", "nearrow"}))
        ->capture_default_str();

    // homology
    auto* cmd_homology = app.add_subcommand("homology", "homology of the free algebra");
    std::string hom_flavor = "searrow";
    int hom_d = 1;
    std::string hom_decorations;
    int hom_max_w = 5;
    cmd_homology->add_option("--flavor", hom_flavor, "searrow|nearrow")
        ->check(CLI::IsMember({"searrow", "nearrow"}))
        ->capture_default_str();
    cmd_homology->add_option("-D", hom_d, "decoration count")->capture_default_str();
    cmd_homology->add_option("--decorations", hom_decorations, "comma-separated labels");
    cmd_homology->add_option("--max-weight", hom_max_w, "largest weight")->capture_default_str();

    // hochschild
    auto* cmd_hoch = app.add_subcommand("hochschild", "Hochschild-type subcomplex homology");
    std::string hoch_flavor = "searrow";
    std::string hoch_which = "m";
    int hoch_d = 1;
    int hoch_max_w = 5;
    cmd_hoch->add_option("--flavor", hoch_flavor, "searrow|nearrow")
        ->check(CLI::IsMember({"searrow", "nearrow"}))
        ->capture_default_str();
    cmd_hoch->add_option("--which", hoch_which, "m|arrow")
        ->check(CLI::IsMember({"m", "arrow"}))
        ->capture_default_str();
    cmd_hoch->add_option("-D", hoch_d, "decoration count")->capture_default_str();
    cmd_hoch->add_option("--max-weight", hoch_max_w, "largest weight")->capture_default_str();

    // poincare
    auto* cmd_poincare = app.add_subcommand("poincare", "Koszul generating-series check");
    int order = 7;
    std::string poincare_flavor;  // empty = both
    cmd_poincare->add_option("--order", order, "series order")->capture_default_str();
    cmd_poincare->add_option("--flavor", poincare_flavor, "searrow|nearrow (default both)")
        ->check(CLI::IsMember({"searrow", "nearrow"}));

    // selftest
    auto* cmd_selftest = app.add_subcommand("selftest", "run the full acceptance suite");
    int selftest_max_w = 0;
    std::uint64_t seed = 12345;
    bool inject_flip = false;
    cmd_selftest->add_option("--max-weight", selftest_max_w,
                             "quick mode: scale homology checks down to this weight");
    cmd_selftest->add_option("--seed", seed, "seed for the randomized relation spot-check")
        ->capture_default_str();
    cmd_selftest
        ->add_flag("--inject-sign-flip", inject_flip,
                   "test harness: flip one differential sign group; the d^2 criterion must fail")
        ->group("");  // hidden

    for (CLI::App* sub : {cmd_forests, cmd_product, cmd_factorize, cmd_dims, cmd_dual,
                          cmd_homology, cmd_hoch, cmd_poincare, cmd_selftest}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_forests) {
            auto ds = decorations_from(decorations_csv, d_count);
            auto forests = enumerate_forests(weight_opt, ds);
            if (format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const Forest& f : forests) j.push_back(format_forest(f));
                out << j.dump() << "\n";
            } else {
                if (format == "csv") out << "forest\n";
                for (const Forest& f : forests) out << format_forest(f) << "\n";
            }
            return 0;
        }

        if (*cmd_product) {
            Forest f = parse_forest(operands[0]);
            Forest g = parse_forest(operands[1]);
            Forest result = op_name == "concat"    ? concat(f, g)
                            : op_name == "searrow" ? graft_root(f, g)
                                                   : graft_left_leaf(f, g);
            if (format == "json") {
                out << nlohmann::json{{"op", op_name}, {"result", format_forest(result)}}.dump()
                    << "\n";
            } else {
                out << format_forest(result) << "\n";
            }
            return 0;
        }

        if (*cmd_factorize) {
            Forest f = parse_forest(factorize_input);
            LeftCombFactorization fact = factorize_left_comb(f);
            if (format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const Forest& factor : fact.factors) j.push_back(format_forest(factor));
                out << j.dump() << "\n";
            } else {
                for (const Forest& factor : fact.factors) out << format_forest(factor) << "\n";
            }
            return 0;
        }

        if (*cmd_dims) {
            const Presentation& p = presentation(flavor_from(dims_flavor), dims_dual);
            DimensionTable t = quotient_dims(p, max_arity);
            if (format == "json") {
                nlohmann::json j;
                j["flavor"] = t.flavor;
                j["nonsigma"] = t.nonsigma;
                std::vector<std::string> sigma;
                for (const BigInt& s : t.sigma) sigma.push_back(s.str());
                j["sigma"] = sigma;
                out << j.dump() << "\n";
            } else {
                const char* sep = format == "csv" ? "," : "  ";
                if (format == "csv") out << "n,nonsigma,sigma\n";
                for (std::size_t i = 0; i < t.nonsigma.size(); ++i) {
                    out << (i + 1) << sep << t.nonsigma[i] << sep << t.sigma[i].str() << "\n";
                }
            }
            return 0;
        }

        if (*cmd_dual) {
            Flavor f = flavor_from(dual_flavor);
            DualityReport rep = dual_annihilator_check(presentation(f, false), presentation(f, true));
            if (format == "json") {
                out << to_json(rep) << "\n";
            } else {
                out << "presentation " << rep.primal_name << " vs " << rep.dual_name << "\n"
                    << "dim R = " << rep.dim_primal << ", dim R-perp = " << rep.dim_dual
                    << ", free dim = " << rep.free_dim << "\n"
                    << "sigma dims: free " << rep.sigma_free << ", R " << rep.sigma_primal
                    << ", R-perp " << rep.sigma_dual << "\n"
                    << "nonzero cross pairings: " << rep.nonzero_pairings.size() << "\n"
                    << (rep.passed ? "PASS" : "FAIL") << "\n";
            }
            return rep.passed ? 0 : 1;
        }

        if (*cmd_homology) {
            Flavor f = flavor_from(hom_flavor);
            auto ds = decorations_from(hom_decorations, hom_d);
            HomologyReport rep = homology(f, ds, hom_max_w);
            if (format == "json") {
                out << to_json(rep) << "\n";
            } else {
                out << "flavor " << flavor_name(rep.flavor) << ", D = " << rep.D << "\n";
                for (const auto& wh : rep.per_weight) {
                    out << "w = " << wh.w << ":";
                    for (const auto& row : wh.rows) {
                        out << "  H_" << row.n << " = " << row.H;
                    }
                    out << "\n";
                }
                out << "H0 total = " << rep.H0_total << ", max higher H = " << rep.max_higher_H
                    << "\n";
            }
            return 0;
        }

        if (*cmd_hoch) {
            Flavor f = flavor_from(hoch_flavor);
            SubcomplexKind which =
                hoch_which == "m" ? SubcomplexKind::M : SubcomplexKind::Arrow;
            HochschildReport rep = hochschild_subcomplex(f, which, hoch_d, hoch_max_w);
            if (format == "json") {
                out << to_json(rep) << "\n";
            } else {
                out << "flavor " << flavor_name(rep.flavor) << ", subcomplex " << hoch_which
                    << ", D = " << rep.D << "\n";
                for (const auto& hw : rep.per_weight) {
                    out << "w = " << hw.w << ": H1 = " << hw.generators
                        << " (census " << hw.census << ")";
                    for (const auto& row : hw.rows) {
                        if (row.degree >= 2 && row.H != 0)
                            out << "  H_" << row.degree << " = " << row.H;
                    }
                    out << "\n";
                }
                out << (rep.concentrated_in_degree_1 ? "concentrated in degree 1"
                                                     : "NOT concentrated in degree 1")
                    << ", census " << (rep.census_matches ? "matches" : "MISMATCH") << "\n";
            }
            return 0;
        }

        if (*cmd_poincare) {
            std::vector<Flavor> flavors;
            if (poincare_flavor.empty()) {
                flavors = {Flavor::Searrow, Flavor::Nearrow};
            } else {
                flavors = {flavor_from(poincare_flavor)};
            }
            bool all_ok = true;
            nlohmann::json j = nlohmann::json::array();
            for (Flavor f : flavors) {
                DimensionTable p = quotient_dims(presentation(f, false), order);
                DimensionTable d = quotient_dims(presentation(f, true), order);
                PoincareReport rep = poincare_check(p.nonsigma, d.nonsigma, order);
                all_ok = all_ok && rep.ok;
                if (format == "json") {
                    std::vector<std::string> residual;
                    for (const Rational& r : rep.residual) residual.push_back(rational_to_string(r));
                    j.push_back({{"flavor", flavor_name(f)},
                                 {"order", rep.order},
                                 {"residual", residual},
                                 {"ok", rep.ok}});
                } else {
                    out << flavor_name(f) << ": g(-f(-t)) - t residuals through degree " << order
                        << ":";
                    for (const Rational& r : rep.residual) out << " " << rational_to_string(r);
                    out << (rep.ok ? "  PASS" : "  FAIL") << "\n";
                }
            }
            if (format == "json") out << j.dump() << "\n";
            return all_ok ? 0 : 1;
        }

        if (*cmd_selftest) {
            AcceptanceOptions opts =
                selftest_max_w > 0 ? AcceptanceOptions::quick(selftest_max_w) : AcceptanceOptions{};
            opts.seed = seed;
            opts.inject_sign_flip = inject_flip;
            auto results = run_acceptance(opts);
            bool all = true;
            for (const auto& r : results) {
                out << format_result(r) << "\n";
                all = all && r.passed;
            }
            out << (all ? "ALL PASS" : "FAILURES PRESENT") << "\n";
            return all ? 0 : 1;
        }
    } catch (const ForestParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace fop

#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "serene/constructions.hpp"
#include "serene/fixtures.hpp"
#include "serene/geometry.hpp"
#include "serene/json_io.hpp"

namespace serene::cli {

namespace detail {

struct CommonOpts {
    std::string format = "json";
    std::string out_path;
    std::uint64_t seed = 0;
};

inline void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", opts.out_path, "write the result to this path (atomically)");
    cmd->add_option("--seed", opts.seed, "seed recorded for reproducibility");
}

inline void emit(const std::string& text, const CommonOpts& opts, std::ostream& out) {
    if (opts.out_path.empty()) {
        out << text;
        return;
    }
    std::string tmp = opts.out_path + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw json_error("cannot write to '" + tmp + "'");
        f << text;
    }
    if (std::rename(tmp.c_str(), opts.out_path.c_str()) != 0)
        throw json_error("cannot move output into place at '" + opts.out_path + "'");
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

inline std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

inline OperationTable resolve_table(const std::string& file, const std::string& example) {
    if (!example.empty()) return builtin(example);
    if (file.empty()) throw CLI::ValidationError("provide a table file or --example");
    return table_from_json(load_json_file(file));
}

inline SimpComplex resolve_complex(const std::string& file, const std::string& fixture_name) {
    if (!fixture_name.empty()) return fixture(fixture_name);
    if (file.empty()) throw CLI::ValidationError("provide a complex file or --fixture");
    return complex_from_json(load_json_file(file));
}

inline OrientedComplex resolve_mesh(const std::string& file, const std::string& fixture_name) {
    if (!fixture_name.empty()) {
        auto r = orient(fixture(fixture_name));
        if (!r.orientable) throw std::domain_error("fixture '" + fixture_name + "' is not orientable");
        return r.oriented;
    }
    if (file.empty()) throw CLI::ValidationError("provide a mesh file or --fixture");
    return mesh_from_json(load_json_file(file));
}

inline std::string vertex_mark(const Vertex& v) {
    return v.label + (v.tag == VertexTag::Input ? "_" : "^");
}

inline std::string facet_table_text(const OperationTable& t) {
    std::ostringstream os;
    os << "tuple -> facet\n";
    for (const auto& a : nct_orbits(t)) {
        os << "(";
        for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << t.label_of(a[i]);
        os << ") -> {";
        for (int e : a) os << " " << t.label_of(e) << "_";
        os << " " << t.label_of(t.apply(a)) << "^ }\n";
    }
    return os.str();
}

}  // namespace detail

/// Dispatch a full command line (without the program name). Returns the
/// process exit code: 0 success, 1 domain errors, 2 usage/file errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"alternating n-quasigroups, their manifolds, and completions"};
    app.require_subcommand(1);

    // validate
    detail::CommonOpts vOpts;
    std::string vFile;
    auto* vCmd = app.add_subcommand("validate", "check a table for the latin and alternating properties");
    vCmd->add_option("table", vFile, "table JSON file")->required();
    detail::add_common(vCmd, vOpts);

    // example
    detail::CommonOpts eOpts;
    std::string eName;
    auto* eCmd = app.add_subcommand("example", "emit a named builtin table");
    eCmd->add_option("name", eName, "builtin name, e.g. q8, a5, a6, field:3,2")->required();
    detail::add_common(eCmd, eOpts);

    // simplicize
    detail::CommonOpts sOpts;
    std::string sFile, sExample;
    auto* sCmd = app.add_subcommand("simplicize", "facet complex of an alternating quasigroup");
    sCmd->add_option("table", sFile, "table JSON file");
    sCmd->add_option("--example", sExample, "builtin table name");
    detail::add_common(sCmd, sOpts);

    // ncgraph
    detail::CommonOpts gOpts;
    std::string gFile, gExample;
    bool gDot = false;
    auto* gCmd = app.add_subcommand("ncgraph", "graph on orbits of noncommuting tuples");
    gCmd->add_option("table", gFile, "table JSON file");
    gCmd->add_option("--example", gExample, "builtin table name");
    gCmd->add_flag("--dot", gDot, "emit DOT instead of JSON");
    detail::add_common(gCmd, gOpts);

    // invariants
    detail::CommonOpts iOpts;
    std::string iFile, iFixture;
    auto* iCmd = app.add_subcommand("invariants", "per-component topological invariants");
    iCmd->add_option("complex", iFile, "complex JSON file");
    iCmd->add_option("--fixture", iFixture, "bundled fixture name");
    detail::add_common(iCmd, iOpts);

    // chart
    detail::CommonOpts cOpts;
    std::string cFile, cExample, cTuple, cU, cType = "in";
    auto* cCmd = app.add_subcommand("chart", "evaluate a bipyramid chart at a point");
    cCmd->add_option("--table", cFile, "table JSON file");
    cCmd->add_option("--example", cExample, "builtin table name");
    cCmd->add_option("--tuple", cTuple, "noncommuting tuple, e.g. 0,1,2")->required();
    cCmd->add_option("--type", cType, "chart type: in or out")->check(CLI::IsMember({"in", "out"}));
    cCmd->add_option("--u", cU, "chart coordinates, e.g. 0.2,0.2,0.2")->required();
    detail::add_common(cCmd, cOpts);

    // complete-free
    detail::CommonOpts fOpts;
    std::string fFile, fFixture;
    int fLevels = 1;
    long long fCap = 1'000'000;
    auto* fCmd = app.add_subcommand("complete-free", "grow the level-wise free completion of a mesh");
    fCmd->add_option("mesh", fFile, "mesh JSON file (complex + orientation)");
    fCmd->add_option("--fixture", fFixture, "bundled fixture name");
    fCmd->add_option("--levels", fLevels, "levels to materialize");
    fCmd->add_option("--cap", fCap, "element cap per level");
    detail::add_common(fCmd, fOpts);

    // complete-latin
    detail::CommonOpts lOpts;
    std::string lFile;
    int lMaxOrder = 0;
    long long lBudget = 10'000'000;
    auto* lCmd = app.add_subcommand("complete-latin", "search for a completion of a partial cube");
    lCmd->add_option("partial", lFile, "partial cube JSON file")->required();
    lCmd->add_option("--max-order", lMaxOrder, "largest carrier size to try");
    lCmd->add_option("--budget", lBudget, "decision-node budget");
    detail::add_common(lCmd, lOpts);

    // probe
    detail::CommonOpts pOpts;
    std::string pFile, pFixture;
    int pMaxOrder = 0;
    long long pBudget = 10'000'000;
    auto* pCmd = app.add_subcommand("probe", "search for a finite quasigroup carrying a mesh");
    pCmd->add_option("mesh", pFile, "mesh JSON file");
    pCmd->add_option("--fixture", pFixture, "bundled fixture name");
    pCmd->add_option("--max-order", pMaxOrder, "largest carrier size to try");
    pCmd->add_option("--budget", pBudget, "decision-node budget");
    detail::add_common(pCmd, pOpts);

    std::vector<std::string> argv_store = args;
    std::vector<char*> argv;
    std::string prog = "serene";
    argv.push_back(prog.data());
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*vCmd) {
            auto cert = validate(table_from_json(load_json_file(vFile)));
            if (vOpts.format == "text") {
                std::ostringstream os;
                os << "latin: " << (cert.latin ? "yes" : "no") << "\n"
                   << "alternating: " << (cert.alternating ? "yes" : "no") << "\n"
                   << "permutomorphism group size: " << cert.permutomorphism_group_size
                   << (cert.perm_group_exact ? "" : " (lower bound)") << "\n";
                detail::emit(os.str(), vOpts, out);
            } else {
                detail::emit(detail::dump(cert_to_json(cert)), vOpts, out);
            }
        } else if (*eCmd) {
            detail::emit(detail::dump(table_to_json(builtin(eName))), eOpts, out);
        } else if (*sCmd) {
            auto t = detail::resolve_table(sFile, sExample);
            if (sOpts.format == "text") {
                detail::emit(detail::facet_table_text(t), sOpts, out);
            } else {
                detail::emit(detail::dump(complex_to_json(simplicize(t))), sOpts, out);
            }
        } else if (*gCmd) {
            auto t = detail::resolve_table(gFile, gExample);
            auto g = nc_graph(t);
            if (gDot) {
                detail::emit(to_dot(g), gOpts, out);
            } else {
                json j = graph_to_json(g);
                j["report"] = graph_report_to_json(graph_report(g));
                detail::emit(detail::dump(j), gOpts, out);
            }
        } else if (*iCmd) {
            auto c = detail::resolve_complex(iFile, iFixture);
            auto rep = serenation_report(c);
            if (iOpts.format == "text") {
                std::ostringstream os;
                for (std::size_t k = 0; k < rep.component_infos.size(); ++k) {
                    const auto& info = rep.component_infos[k];
                    os << "component " << k << ": facets=" << info.facet_indices.size()
                       << " chi=" << info.euler_characteristic << " betti=[";
                    for (std::size_t b = 0; b < info.betti.size(); ++b)
                        os << (b ? "," : "") << info.betti[b];
                    os << "] orientable=" << (info.orientable ? "yes" : "no")
                       << " pseudomanifold=" << (info.pseudomanifold ? "yes" : "no") << "\n";
                }
                detail::emit(os.str(), iOpts, out);
            } else {
                detail::emit(detail::dump(component_report_to_json(rep)), iOpts, out);
            }
        } else if (*cCmd) {
            auto t = detail::resolve_table(cFile, cExample);
            auto tuple = detail::parse_int_list(cTuple);
            auto u = detail::parse_double_list(cU);
            auto coeffs = cType == "in" ? chart_input(t, tuple, u) : chart_output(t, tuple, u);
            json jc = json::object();
            double sum = 0;
            for (const auto& [v, coeff] : coeffs) {
                jc[(v.tag == VertexTag::Input ? "in:" : "out:") + v.label] = coeff;
                sum += coeff;
            }
            detail::emit(detail::dump({{"coefficients", jc}, {"sum", sum}}), cOpts, out);
        } else if (*fCmd) {
            auto mesh = detail::resolve_mesh(fFile, fFixture);
            auto st = seed(mesh);
            json levels = json::array();
            auto level_entry = [&](const CompletionState& s) {
                return json{{"level", s.level},
                            {"elements", s.element_count()},
                            {"defined_orbits", s.defined_orbits()},
                            {"defined_tuples", s.defined_tuples()}};
            };
            levels.push_back(level_entry(st));
            json truncation = nullptr;
            for (int k = 0; k < fLevels; ++k) {
                try {
                    st = step(st, {fCap, true});
                    levels.push_back(level_entry(st));
                } catch (const CapExceeded& e) {
                    truncation = {{"at_level", st.level + 1},
                                  {"needed_elements", e.census.next_elements},
                                  {"cap", fCap},
                                  {"products_new", e.census.products_new},
                                  {"divisions_new", e.census.divisions_new}};
                    break;
                }
            }
            auto invariant_err = verify_state(st);
            auto spot = spot_check_equations(st, 200, fOpts.seed == 0 ? 7 : fOpts.seed);
            json j = {{"levels", levels},
                      {"truncation", truncation},
                      {"invariants_ok", !invariant_err.has_value()},
                      {"spot_check",
                       {{"equations_sampled", spot.equations_sampled},
                        {"with_solution", spot.with_solution},
                        {"unique_solutions", spot.unique_solutions}}},
                      {"serene", serene_check_to_json(verify_serene(mesh, st))}};
            if (invariant_err) j["invariant_error"] = *invariant_err;
            detail::emit(detail::dump(j), fOpts, out);
        } else if (*lCmd) {
            auto p = partial_from_json(load_json_file(lFile));
            SearchOptions opts;
            opts.max_order = lMaxOrder;
            opts.budget = lBudget;
            opts.seed = lOpts.seed;
            auto res = complete(p, opts);
            json j = {{"found", res.table.has_value()}, {"search", search_stats_to_json(res.stats)},
                      {"seed", lOpts.seed}};
            if (res.table) j["table"] = table_to_json(*res.table);
            detail::emit(detail::dump(j), lOpts, out);
        } else if (*pCmd) {
            auto mesh = detail::resolve_mesh(pFile, pFixture);
            SearchOptions opts;
            opts.max_order = pMaxOrder;
            opts.budget = pBudget;
            opts.seed = pOpts.seed;
            auto res = quasifinite_probe(mesh, opts);
            json j = {{"found", res.completion.table.has_value()},
                      {"matched", res.matched},
                      {"matched_component", res.matched_component},
                      {"search", search_stats_to_json(res.completion.stats)},
                      {"target", serene_check_to_json(res.target)},
                      {"seed", pOpts.seed}};
            if (res.completion.table) {
                j["order"] = res.completion.table->order;
                j["table"] = table_to_json(*res.completion.table);
            }
            if (res.report) j["components"] = component_report_to_json(*res.report);
            detail::emit(detail::dump(j), pOpts, out);
        }
    } catch (const json_error& e) {
        err << "file error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace serene::cli

// Command-line surface.
//
// Subcommands: classify, check-fn, envelope, combine, solve, oracle, derive,
// power.  Exit codes: 0 = affirmative verdict / converged, 1 = negative
// verdict / hypothesis failed, 2 = usage or validation error.  Reports embed
// the tool version and an FNV-1a hash of the instance bytes; identical
// inputs and seed produce byte-identical JSON.

#ifndef PICARD_CLI_HPP
#define PICARD_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "picard/serde.hpp"
#include "picard/version.hpp"

namespace picard {

namespace clidetail {

struct CliError {
    int code;
    std::string message;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{2, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string& bytes, const std::string& path) {
    json doc = json::parse(bytes, nullptr, false);
    if (doc.is_discarded()) throw CliError{2, path + ": not valid JSON"};
    return doc;
}

inline json coverage_json(const Coverage& c) {
    if (c.exhaustive) return {{"kind", "exhaustive"}};
    return {{"kind", "sampled"}, {"seed", c.seed}, {"samples", c.samples}};
}

inline json flag_json(const AxiomReport::Flag& f, const FiniteSpace* space) {
    json out;
    out["holds"] = f.holds;
    if (!f.holds) {
        json w = json::array();
        if (space)
            for (std::size_t ix : f.witness_ix) w.push_back(space->label(ix));
        else
            for (double p : f.witness_pt) w.push_back(p);
        out["witness"] = w;
    }
    return out;
}

inline json hypothesis_json(const HypothesisReport& h, const FiniteSpace* space) {
    json out;
    out["mode"] = h.mode;
    out["holds"] = h.holds;
    out["phi_ok"] = h.phi_ok;
    out["worst_margin"] = h.worst_margin;
    out["coverage"] = coverage_json(h.coverage);
    if (space && h.witness_ix.size() == 2)
        out["witness"] = {space->label(h.witness_ix[0]), space->label(h.witness_ix[1])};
    else if (h.witness_pt.size() == 2)
        out["witness"] = {h.witness_pt[0], h.witness_pt[1]};
    return out;
}

inline json orbit_json(const FiniteOrbit& o, const FiniteSpace& s, std::size_t head = 32) {
    json out;
    out["iterations"] = o.iterations;
    out["converged"] = o.converged;
    out["stop_reason"] = to_string(o.stop_reason);
    out["cycle_detected"] = o.cycle_detected;
    json pts = json::array();
    for (std::size_t i = 0; i < o.points.size() && i < head; ++i) pts.push_back(s.label(o.points[i]));
    out["points"] = pts;
    if (o.limit) out["limit"] = s.label(*o.limit);
    return out;
}

inline json orbit_json(const AnalyticOrbit& o, std::size_t head = 32) {
    json out;
    out["iterations"] = o.iterations;
    out["converged"] = o.converged;
    out["stop_reason"] = to_string(o.stop_reason);
    json pts = json::array();
    for (std::size_t i = 0; i < o.points.size() && i < head; ++i) pts.push_back(o.points[i]);
    out["points"] = pts;
    if (o.limit) out["limit"] = *o.limit;
    out["window_forward_max"] = o.window_forward_max;
    out["window_backward_max"] = o.window_backward_max;
    return out;
}

inline json gap_cert_json(const GapCertificate& c) {
    json out;
    out["checked"] = c.checked;
    if (c.checked) {
        out["ok"] = c.ok;
        out["worst_excess"] = c.worst_excess;
    }
    return out;
}

inline json phi_report_json(const PhiReport& rep) {
    auto flag = [](const FlagWitness& f) {
        json out;
        out["ok"] = f.ok;
        if (f.witness) out["witness"] = f.witness->str();
        return out;
    };
    json out;
    out["is_comparison"] = rep.is_comparison;
    out["left_limsup"] = flag(rep.left_limsup);
    out["right_limsup"] = flag(rep.right_limsup);
    out["plateau"] = flag(rep.plateau);
    out["verdict"] = rep.verdict;
    return out;
}

struct Settings {
    std::string format = "text";
    std::uint64_t seed = 0xC0FFEEULL;
    bool seed_set = false;
};

inline SamplerConfig sampler_of(const Settings& st) {
    SamplerConfig cfg;
    cfg.seed = st.seed;
    return cfg;
}

inline void emit(const json& rep, const Settings& st, std::ostream& out, const std::string& text) {
    if (st.format == "json")
        out << rep.dump(2) << "\n";
    else
        out << text;
}

inline json report_shell(const std::string& command, const std::string& bytes) {
    json rep;
    rep["version"] = kVersion;
    rep["command"] = command;
    rep["instance_hash"] = fnv1a_hex(bytes);
    return rep;
}

// options block of the instance provides defaults; explicit flags win
template <typename T>
void fill_from_options(const json& options, const char* key, T& slot, bool flag_given) {
    if (flag_given || !options.is_object() || !options.contains(key)) return;
    try {
        slot = options[key].get<T>();
    } catch (const std::exception&) {
    }
}

inline PiecewiseFn fn_from_doc(const json& doc, const std::string& name_flag,
                               std::string* resolved_name = nullptr) {
    if (doc.contains("breakpoints")) {
        if (resolved_name) *resolved_name = "(inline)";
        return piecewise_from_json(doc);
    }
    if (doc.contains("functions") && doc["functions"].is_object()) {
        const json& fns = doc["functions"];
        std::string name = name_flag;
        if (name.empty()) {
            if (fns.size() != 1)
                throw CliError{2, "instance has " + std::to_string(fns.size()) +
                                      " functions; pick one with --fn"};
            name = fns.begin().key();
        }
        if (!fns.contains(name)) throw CliError{2, "no function named \"" + name + "\""};
        if (resolved_name) *resolved_name = name;
        return piecewise_from_json(fns[name]);
    }
    throw CliError{2, "expected a piecewise function object or an instance with \"functions\""};
}

} // namespace clidetail

inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace clidetail;

    CLI::App app{"distance-space toolkit: comparison functions, axiom checkers, certified Picard iteration"};
    app.name("picard");
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Settings st;
    if (const char* env = std::getenv("PICARD_SEED")) {
        try {
            st.seed = std::stoull(env);
        } catch (const std::exception&) {
        }
    }
    app.add_option("--format", st.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    auto* seed_opt = app.add_option("--seed", st.seed, "seed for sampled checks (env PICARD_SEED)");

    std::string path, fn_name, kind, mode_flag, from, csv_path;
    std::vector<std::string> paths;
    std::size_t horizon = 1, power_l = 2;
    double tol = 1e-9;
    std::size_t max_iter = 100000, window = 8;
    bool force = false;
    std::string radius;

    auto* c_classify = app.add_subcommand("classify", "axiom taxonomy, W3 and JMS witness of an instance");
    c_classify->add_option("instance", path)->required();
    c_classify->add_option("--radius", radius, "JMS radius r (default: largest realized distance)");

    auto* c_checkfn = app.add_subcommand("check-fn", "comparison / Boyd-Wong / Pasicki / Matkowski / Phi verdicts");
    c_checkfn->add_option("file", path)->required();
    c_checkfn->add_option("--fn", fn_name, "function name when the file is an instance");

    auto* c_envelope = app.add_subcommand("envelope", "monotone non-decreasing envelope of a function");
    c_envelope->add_option("file", path)->required();
    c_envelope->add_option("--fn", fn_name);

    auto* c_combine = app.add_subcommand("combine", "pointwise max of Phi-class functions");
    c_combine->add_option("files", paths, "function files")->required()->expected(-1);

    auto* c_solve = app.add_subcommand("solve", "certified Picard iteration");
    c_solve->add_option("instance", path)->required();
    c_solve->add_option("--mode", mode_flag, "banach|nonlinear|extended|iterated|quasi");
    auto* from_opt = c_solve->add_option("--from", from, "start point (label or number)");
    auto* tol_opt = c_solve->add_option("--tol", tol);
    auto* mi_opt = c_solve->add_option("--max-iter", max_iter);
    auto* win_opt = c_solve->add_option("--window", window);
    c_solve->add_flag("--force", force, "iterate even if the hypothesis fails");
    c_solve->add_option("--csv", csv_path, "write gap trace (n, a_n, c_n) to a CSV file");

    auto* c_oracle = app.add_subcommand("oracle", "brute-force fixed points of a finite instance");
    c_oracle->add_option("instance", path)->required();

    auto* c_derive = app.add_subcommand("derive", "derived star / orbit-max space with inheritance report");
    c_derive->add_option("instance", path)->required();
    c_derive->add_option("--kind", kind, "star|orbit-max")->required();
    c_derive->add_option("--n", horizon, "orbit-max horizon");

    auto* c_power = app.add_subcommand("power", "solve for f^l and lift the fixed point to f");
    c_power->add_option("instance", path)->required();
    c_power->add_option("--l", power_l, "power l >= 1");
    c_power->add_option("--mode", mode_flag);
    auto* pfrom_opt = c_power->add_option("--from", from);
    auto* ptol_opt = c_power->add_option("--tol", tol);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    (void)seed_opt;

    try {
        // ------------------------------------------------------------------
        if (c_checkfn->parsed() || c_envelope->parsed()) {
            std::string bytes = read_file(path);
            json doc = parse_json(bytes, path);
            std::string name;
            PiecewiseFn f = fn_from_doc(doc, fn_name, &name);
            if (c_envelope->parsed()) {
                json rep = report_shell("envelope", bytes);
                rep["result"] = to_json(monotone_envelope(f));
                emit(rep, st, out, rep["result"].dump() + "\n");
                return 0;
            }
            auto cmp = check_comparison(f);
            auto phi = check_phi_membership(f);
            auto bw = check_boyd_wong(f);
            auto pa = check_pasicki(f);
            auto mk = check_matkowski(f, default_matkowski_probes());
            json rep = report_shell("check-fn", bytes);
            rep["function"] = name;
            rep["comparison"] = {{"holds", cmp.holds}};
            if (cmp.witness) rep["comparison"]["witness"] = cmp.witness->str();
            rep["phi"] = phi_report_json(phi);
            rep["boyd_wong"] = {{"holds", bw.ok}};
            if (bw.witness) rep["boyd_wong"]["witness"] = bw.witness->str();
            rep["pasicki"] = {{"holds", pa.ok}};
            if (pa.witness) rep["pasicki"]["witness"] = pa.witness->str();
            rep["matkowski"] = {{"holds", mk.holds},
                                {"monotone", mk.monotone},
                                {"undecided_iterate", mk.undecided_iterate}};
            std::ostringstream text;
            text << name << ":\n"
                 << "  comparison : " << (cmp.holds ? "yes" : "no")
                 << (cmp.witness ? "  (witness t = " + cmp.witness->str() + ")" : "") << "\n"
                 << "  Phi member : " << (phi.verdict ? "yes" : "no") << "\n"
                 << "  Boyd-Wong  : " << (bw.ok ? "yes" : "no")
                 << (bw.witness ? "  (witness s = " + bw.witness->str() + ")" : "") << "\n"
                 << "  Pasicki    : " << (pa.ok ? "yes" : "no") << "\n"
                 << "  Matkowski  : " << (mk.holds ? "yes" : "no")
                 << (mk.undecided_iterate ? "  (iterate check undecided)" : "") << "\n";
            emit(rep, st, out, text.str());
            return phi.verdict ? 0 : 1;
        }

        // ------------------------------------------------------------------
        if (c_combine->parsed()) {
            std::vector<PiecewiseFn> fns;
            std::vector<std::string> not_phi;
            std::string all_bytes;
            for (const auto& p : paths) {
                std::string bytes = read_file(p);
                all_bytes += bytes;
                fns.push_back(fn_from_doc(parse_json(bytes, p), ""));
                if (!check_phi_membership(fns.back()).verdict) not_phi.push_back(p);
            }
            json rep = report_shell("combine", all_bytes);
            if (!not_phi.empty()) {
                rep["not_phi"] = not_phi;
                emit(rep, st, out, "inputs outside the Phi class: " + not_phi.front() + "\n");
                return 1;
            }
            rep["result"] = to_json(max_combine(fns));
            emit(rep, st, out, rep["result"].dump() + "\n");
            return 0;
        }

        // ------------------------------------------------------------------
        std::string bytes = read_file(path);
        json doc = parse_json(bytes, path);
        auto loaded = load_instance(doc, sampler_of(st));
        if (!loaded.ok()) {
            for (const auto& e : loaded.errors) err << "validation: " << e << "\n";
            return 2;
        }
        Instance inst = std::move(*loaded.instance);

        SolveOptions opts;
        opts.sampler = sampler_of(st);
        fill_from_options(inst.options, "tol", tol, tol_opt->count() || ptol_opt->count());
        fill_from_options(inst.options, "max_iter", max_iter, mi_opt->count());
        fill_from_options(inst.options, "window", window, win_opt->count());
        fill_from_options(inst.options, "from", from, from_opt->count() || pfrom_opt->count());
        opts.tol = tol;
        opts.max_iter = max_iter;
        opts.window = window;
        opts.force_run = force;

        // ------------------------------------------------------------------
        if (c_classify->parsed()) {
            json rep = report_shell("classify", bytes);
            std::ostringstream text;
            if (inst.finite()) {
                const FiniteSpace& s = inst.finite_space();
                auto ax = classify_axioms(s);
                rep["axioms"] = {{"a0", flag_json(ax.a0, &s)},
                                 {"a1", flag_json(ax.a1, &s)},
                                 {"a2", flag_json(ax.a2, &s)},
                                 {"a3", flag_json(ax.a3, &s)}};
                rep["taxonomy"] = to_string(ax.taxonomy);
                rep["coverage"] = coverage_json(ax.coverage);
                auto w3 = check_w3(s);
                rep["w3"] = {{"holds", w3.holds}};
                if (!w3.holds)
                    rep["w3"]["witness"] = {s.label(w3.witness[0]), s.label(w3.witness[1]),
                                            s.label(w3.witness[2])};
                Rat r(1);
                if (!radius.empty()) {
                    auto rr = Rat::parse(radius);
                    if (!rr || !(Rat(0) < *rr)) throw CliError{2, "--radius must be a positive number"};
                    r = *rr;
                } else {
                    for (std::size_t i = 0; i < s.size(); ++i)
                        for (std::size_t j = 0; j < s.size(); ++j)
                            if (s.d(i, j) > r) r = s.d(i, j);
                }
                auto w = jms_witness(s, r);
                rep["jms"] = {{"r", rat_to_json(w.r)},
                              {"R", rat_to_json(w.ball_diameter_sup)},
                              {"delta", rat_to_json(w.delta)},
                              {"eta", rat_to_json(w.eta)},
                              {"eta_degenerate", w.eta_degenerate},
                              {"verified", w.verified},
                              {"boundary_hits", w.boundary_hits}};
                text << "taxonomy: " << to_string(ax.taxonomy) << "\n"
                     << "axioms: A0=" << ax.a0.holds << " A1=" << ax.a1.holds << " A2=" << ax.a2.holds
                     << " A3=" << ax.a3.holds << "\n"
                     << "W3: " << (w3.holds ? "yes" : "no") << "\n"
                     << "JMS witness at r=" << w.r.str() << ": R=" << w.ball_diameter_sup.str()
                     << " delta=" << w.delta.str() << " eta=" << w.eta.str()
                     << (w.verified ? " (verified)" : " (violated)") << "\n";
            } else {
                const AnalyticSpace& s = inst.analytic_space();
                auto ax = classify_axioms(s, sampler_of(st));
                rep["axioms"] = {{"a0", flag_json(ax.a0, nullptr)},
                                 {"a1", flag_json(ax.a1, nullptr)},
                                 {"a2", flag_json(ax.a2, nullptr)},
                                 {"a3", flag_json(ax.a3, nullptr)}};
                rep["taxonomy"] = to_string(ax.taxonomy);
                rep["coverage"] = coverage_json(ax.coverage);
                double r = 1.0;
                if (!radius.empty()) r = std::stod(radius);
                auto w = jms_witness(s, r, sampler_of(st));
                rep["jms"] = {{"r", w.r}, {"R", w.ball_diameter_sup}, {"delta", w.delta},
                              {"eta", w.eta}, {"verified", w.verified},
                              {"coverage", coverage_json(w.coverage)}};
                text << "taxonomy: " << to_string(ax.taxonomy) << " (sampled, seed " << st.seed << ")\n"
                     << "axioms: A0=" << ax.a0.holds << " A1=" << ax.a1.holds << " A2=" << ax.a2.holds
                     << " A3=" << ax.a3.holds << "\n";
                if (!ax.a2.holds && ax.a2.witness_pt.size() == 2)
                    text << "A2 counterexample: x=" << ax.a2.witness_pt[0] << " y=" << ax.a2.witness_pt[1]
                         << "\n";
            }
            emit(rep, st, out, text.str());
            return 0;
        }

        // ------------------------------------------------------------------
        if (c_oracle->parsed()) {
            if (!inst.finite() || !inst.finite_map)
                throw CliError{2, "oracle needs a finite instance with a map"};
            auto fps = brute_force_fixed_points(*inst.finite_map);
            json rep = report_shell("oracle", bytes);
            json arr = json::array();
            for (std::size_t p : fps) arr.push_back(inst.finite_space().label(p));
            rep["fixed_points"] = arr;
            emit(rep, st, out, arr.dump() + "\n");
            return 0;
        }

        // ------------------------------------------------------------------
        if (c_derive->parsed()) {
            if (!inst.finite() || !inst.finite_map)
                throw CliError{2, "derive needs a finite instance with a map"};
            DerivedSpace der;
            if (kind == "star")
                der = star_space(inst.finite_space(), *inst.finite_map);
            else if (kind == "orbit-max")
                der = orbit_max_space(inst.finite_space(), *inst.finite_map, horizon);
            else
                throw CliError{2, "--kind must be star or orbit-max"};
            auto inh = verify_inheritance(inst.finite_space(), der);
            json rep = report_shell("derive", bytes);
            rep["derived"] = to_json(der);
            auto clause = [](const InheritanceClause& c) {
                json out;
                out["pass"] = c.pass;
                if (!c.pass) {
                    out["detail"] = c.detail;
                    out["witness"] = c.witness;
                }
                return out;
            };
            rep["inheritance"] = {{"domination", clause(inh.domination)},
                                  {"w3_transfer", clause(inh.w3_transfer)},
                                  {"jms_witness", clause(inh.jms_witness_exists)},
                                  {"cauchy_transfer", clause(inh.cauchy_transfer)}};
            std::ostringstream text;
            text << "derived " << to_string(der.kind) << " space over " << der.space.size()
                 << " points\n"
                 << "inheritance: domination=" << inh.domination.pass
                 << " w3=" << inh.w3_transfer.pass << " jms=" << inh.jms_witness_exists.pass
                 << " cauchy=" << inh.cauchy_transfer.pass << "\n";
            emit(rep, st, out, text.str());
            return inh.all_pass() ? 0 : 1;
        }

        // ------------------------------------------------------------------
        // solve and power share mode/start resolution
        auto mode_or = resolve_mode(inst, mode_flag);
        if (std::holds_alternative<std::vector<std::string>>(mode_or)) {
            for (const auto& e : std::get<std::vector<std::string>>(mode_or)) err << "validation: " << e << "\n";
            return 2;
        }
        Mode mode = std::get<Mode>(mode_or);
        if (from.empty()) throw CliError{2, "--from is required (or an options.from entry)"};

        if (c_solve->parsed()) {
            json rep = report_shell("solve", bytes);
            rep["mode"] = mode_name(mode);
            std::ostringstream text;
            int code = 1;
            if (inst.finite()) {
                if (!inst.finite_map) throw CliError{2, "instance has no map"};
                auto ix = inst.finite_space().index(from);
                if (!ix) throw CliError{2, "unknown start point \"" + from + "\""};
                auto res = solve_fixed_point(inst.finite_space(), *inst.finite_map, mode, *ix, opts);
                rep["hypothesis"] = hypothesis_json(res.hypothesis, &inst.finite_space());
                rep["certified"] = res.certified;
                rep["preconditions"] = res.preconditions.failures;
                rep["uniqueness"] = to_string(res.uniqueness);
                rep["gap_certificate"] = gap_cert_json(res.gap_certificate);
                if (res.orbit) {
                    rep["orbit"] = orbit_json(*res.orbit, inst.finite_space());
                    rep["iterations"] = res.orbit->iterations;
                    rep["stop_reason"] = to_string(res.orbit->stop_reason);
                    if (!csv_path.empty()) {
                        std::ofstream csv(csv_path);
                        csv << "n,a_n,c_n\n";
                        for (std::size_t i = 0; i < res.orbit->forward_gaps.size(); ++i)
                            csv << i + 1 << "," << res.orbit->forward_gaps[i].to_double() << ","
                                << res.orbit->backward_gaps[i].to_double() << "\n";
                    }
                }
                if (res.fixed_point) {
                    rep["fixed_point"] = inst.finite_space().label(*res.fixed_point);
                    text << "fixed point: " << inst.finite_space().label(*res.fixed_point) << " ("
                         << to_string(res.uniqueness) << ")\n";
                    code = res.certified ? 0 : 1;
                } else {
                    rep["fixed_point"] = nullptr;
                    text << (res.certified          ? "orbit did not converge\n"
                             : res.preconditions.ok ? "hypothesis failed\n"
                                                    : "preconditions failed\n");
                }
            } else {
                if (!inst.analytic_map) throw CliError{2, "instance has no map"};
                double x0 = std::stod(from);
                auto res = solve_fixed_point(inst.analytic_space(), *inst.analytic_map, mode, x0, opts);
                rep["hypothesis"] = hypothesis_json(res.hypothesis, nullptr);
                rep["certified"] = res.certified;
                rep["preconditions"] = res.preconditions.failures;
                rep["uniqueness"] = to_string(res.uniqueness);
                rep["gap_certificate"] = gap_cert_json(res.gap_certificate);
                if (res.orbit) {
                    rep["orbit"] = orbit_json(*res.orbit);
                    rep["iterations"] = res.orbit->iterations;
                    rep["stop_reason"] = to_string(res.orbit->stop_reason);
                    if (!csv_path.empty()) {
                        std::ofstream csv(csv_path);
                        csv << "n,a_n,c_n\n";
                        for (std::size_t i = 0; i < res.orbit->forward_gaps.size(); ++i)
                            csv << i + 1 << "," << res.orbit->forward_gaps[i] << ","
                                << res.orbit->backward_gaps[i] << "\n";
                    }
                }
                if (res.fixed_point) {
                    rep["fixed_point"] = *res.fixed_point;
                    text << "fixed point: " << *res.fixed_point << " (" << to_string(res.uniqueness)
                         << ", " << res.orbit->iterations << " iterations)\n";
                    code = res.certified ? 0 : 1;
                } else {
                    rep["fixed_point"] = nullptr;
                    text << (res.certified          ? "orbit did not converge\n"
                             : res.preconditions.ok ? "hypothesis failed\n"
                                                    : "preconditions failed\n");
                }
            }
            emit(rep, st, out, text.str());
            return code;
        }

        if (c_power->parsed()) {
            json rep = report_shell("power", bytes);
            rep["l"] = power_l;
            std::ostringstream text;
            int code;
            if (inst.finite()) {
                if (!inst.finite_map) throw CliError{2, "instance has no map"};
                auto ix = inst.finite_space().index(from);
                if (!ix) throw CliError{2, "unknown start point \"" + from + "\""};
                auto res = power_map_reduction(inst.finite_space(), *inst.finite_map, power_l, mode,
                                               *ix, opts);
                rep["outcome"] = to_string(res.outcome);
                rep["reason"] = res.reason;
                json po = json::array();
                for (std::size_t p : res.power_oracle) po.push_back(inst.finite_space().label(p));
                rep["power_fixed_points"] = po;
                if (res.fixed_point) rep["fixed_point"] = inst.finite_space().label(*res.fixed_point);
                rep["subsample_consistent"] = res.subsample_consistent;
                text << "outcome: " << to_string(res.outcome)
                     << (res.reason.empty() ? "" : " (" + res.reason + ")") << "\n";
                code = res.outcome == LiftOutcome::Ok ? 0 : 1;
            } else {
                if (!inst.analytic_map) throw CliError{2, "instance has no map"};
                double x0 = std::stod(from);
                auto res = power_map_reduction(inst.analytic_space(), *inst.analytic_map, power_l, mode,
                                               x0, opts);
                rep["outcome"] = to_string(res.outcome);
                rep["reason"] = res.reason;
                if (res.fixed_point) rep["fixed_point"] = *res.fixed_point;
                rep["lift_residual_forward"] = res.lift_residual_forward;
                rep["lift_residual_backward"] = res.lift_residual_backward;
                text << "outcome: " << to_string(res.outcome)
                     << (res.reason.empty() ? "" : " (" + res.reason + ")") << "\n";
                code = res.outcome == LiftOutcome::Ok ? 0 : 1;
            }
            emit(rep, st, out, text.str());
            return code;
        }

        throw CliError{2, "no subcommand"};
    } catch (const CliError& e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace picard

#endif

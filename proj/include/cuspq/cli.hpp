#pragma once

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brackets.hpp"
#include "builtins.hpp"
#include "holonomy.hpp"
#include "moves.hpp"
#include "suites.hpp"
#include "surface.hpp"

namespace cuspq::cli {

struct Options {
    std::string mode = "classical";
    unsigned long long rng_seed = 42;
    int points = 10;
    double tol = 1e-9;
    std::string format = "text";

    Mode qmode() const { return mode == "quantum" ? Mode::Quantum : Mode::Classical; }
    OracleOptions oracle() const { return {rng_seed, points, tol}; }
};

struct Loaded {
    std::string name;  // builtin name, empty for files
    FatGraph graph;
    std::map<std::string, std::string> arc_names;
};

inline bool is_builtin(const std::string& s) {
    for (auto& b : builtin_surfaces())
        if (b.name == s) return true;
    return false;
}

inline Loaded load(const std::string& s) {
    if (is_builtin(s)) {
        auto& b = builtin(s);
        return {s, parse_surface(b.text), b.arc_names};
    }
    return {"", load_surface(s), {}};
}

inline Seed load_seed(const std::string& s) {
    auto l = load(s);
    return make_seed(l.graph, l.arc_names);
}

inline void print_poly(std::ostream& out, const Options& o, const QLaurent& a) {
    if (o.format == "lines")
        for (auto& l : to_lines(a)) out << l << "\n";
    else
        out << to_string(a) << "\n";
}

inline std::map<std::string, long long> parse_lengths(const std::string& s) {
    std::map<std::string, long long> r;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw input_error("length '" + item + "' is not name=value");
        auto trim = [](std::string x) {
            auto a = x.find_first_not_of(" \t"), b = x.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
        };
        std::string k = trim(item.substr(0, eq)), v = trim(item.substr(eq + 1));
        try {
            std::size_t used = 0;
            long long x = std::stoll(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            r[k] = x;
        } catch (const std::exception&) {
            throw input_error("length for '" + k + "' is not an integer");
        }
    }
    return r;
}

inline int pass_line(std::ostream& out, bool pass, const std::string& what) {
    out << (pass ? "PASS " : "FAIL ") << what << "\n";
    return pass ? 0 : 1;
}

// ---- commands ----

inline int cmd_validate(const Options&, const std::string& surf, std::ostream& out) {
    auto l = load(surf);
    auto r = validate(l.graph);
    for (auto& e : r.errors) out << "error: " << e << "\n";
    for (auto& i : r.info) out << i << "\n";
    out << (r.ok() ? "valid" : "invalid") << "\n";
    return r.ok() ? 0 : 1;
}

inline int cmd_trace(const Options& o, const std::string& surf, const std::string& word, bool raw,
                     std::ostream& out) {
    auto l = load(surf);
    auto b = epsilon_matrix(l.graph);
    auto w = parse_word(word);
    QLaurent t = trace(b, w, o.qmode());
    if (o.qmode() == Mode::Quantum && !w.closed() && !raw)
        if (auto k = hermitian_shift(t)) t = t.q_shift(*k);
    print_poly(out, o, t);
    return 0;
}

inline int cmd_bracket(const Options& o, const std::string& surf, const std::string& w1, const std::string& w2,
                       std::ostream& out) {
    auto l = load(surf);
    auto b = epsilon_matrix(l.graph);
    QLaurent x = trace(b, parse_word(w1), o.qmode()), y = trace(b, parse_word(w2), o.qmode());
    if (o.qmode() == Mode::Quantum) print_poly(out, o, x * y - y * x);
    else print_poly(out, o, poisson(x, y));
    return 0;
}

inline int cmd_commute(const Options&, const std::string& surf, const std::string& w1, const std::string& w2,
                       bool seed, std::ostream& out) {
    if (seed) {
        auto r = check_homogeneous(load_seed(surf));
        for (auto& line : r.lines()) out << line << "\n";
        return r.ok() ? 0 : 1;
    }
    if (w1.empty() || w2.empty()) throw input_error("commute needs --word and --with, or --seed");
    auto l = load(surf);
    auto b = epsilon_matrix(l.graph);
    QLaurent x = trace(b, parse_word(w1), Mode::Quantum), y = trace(b, parse_word(w2), Mode::Quantum);
    auto c = q_commutation(x, y);
    if (!c) {
        out << "not q-commuting\n";
        return 1;
    }
    out << "q^{" << *c << "/4}\n";
    return 0;
}

inline int cmd_flip(const Options& o, const std::string& surf, const std::string& edge, bool check,
                    bool print_surface, std::ostream& out) {
    auto l = load(surf);
    if (l.graph.edge_index(edge) < 0) throw input_error("unknown edge '" + edge + "'");
    auto ev = flip(l.graph, edge);
    out << (ev.kind == FlipEvent::Loop ? "loop flip " : "flip ") << edge << "\n";
    for (auto& [y, rule] : ev.rules) {
        if (o.qmode() == Mode::Quantum)
            out << "exp(" << y << ") = (" << to_string(rule.qnum) << ") / (" << to_string(rule.qden) << ")\n";
        else
            out << "exp(" << y << ") = (" << to_string(rule.num) << ") / (" << to_string(rule.den) << ")\n";
    }
    if (print_surface) out << format_surface(ev.after);
    if (!check) return 0;
    int rc = 0;
    rc |= pass_line(out, flip_preserves_poisson(ev), "poisson structure");
    auto words = suite_words(l.graph, l.name);
    auto c = check_flip_invariance(ev, words, o.oracle());
    rc |= pass_line(out, c.ok, "traces of " + std::to_string(words.size()) + " words, max error " +
                                   suite_detail::fmt(c.max_err));
    auto d = check_double_flip(l.graph, edge, o.oracle());
    rc |= pass_line(out, d.ok, "double flip, max error " + suite_detail::fmt(d.max_err));
    return rc;
}

inline int cmd_mutate(const Options& o, const std::string& surf, const std::vector<std::string>& arcs,
                      const std::vector<std::string>& names, std::ostream& out) {
    Seed s = load_seed(surf);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        std::string nn = i < names.size() ? names[i] : arcs[i] + "'";
        QLaurent f = mutation_expression(s, arcs[i]);
        Seed t = mutate_lambda(s, arcs[i], nn);
        out << nn << " = ";
        print_poly(out, o, f);
        const int k = t.index(nn);
        if (t.in_shear[k]) {
            out << nn << " in shear = ";
            print_poly(out, o, *t.in_shear[k]);
        }
        s = std::move(t);
    }
    auto r = check_homogeneous(s);
    out << "homogeneous " << (r.ok() ? "pass" : "fail") << "\n";
    return r.ok() ? 0 : 1;
}

inline int cmd_tropical(const Options&, const std::string& surf, const std::string& arc, const std::string& lengths,
                        std::optional<double> scale, std::ostream& out) {
    Seed s = load_seed(surf);
    auto len = parse_lengths(lengths);
    long long t = tropical_mutate(s, len, arc);
    out << arc << "' = " << t << "\n";
    if (scale) {
        for (auto& n : s.names)
            if (!len.count(n)) throw input_error("no length for arc '" + n + "'");
        out << "scaling N=" << *scale << " " << suite_detail::fmt(tropical_scaling(s, len, arc, *scale)) << "\n";
    }
    return 0;
}

inline int cmd_suite(const Options& o, const std::string& name, std::ostream& out) {
    auto rs = run_suite(name, o.oracle());
    int total = 0, failed = 0;
    for (auto& r : rs) {
        out << "== " << r.title << "\n";
        for (auto& c : r.checks) {
            ++total;
            failed += !c.pass;
            out << (c.pass ? "PASS " : "FAIL ") << c.name;
            if (!c.detail.empty()) out << " (" << c.detail << ")";
            out << "\n";
        }
    }
    out << (failed ? "FAIL " : "PASS ") << total - failed << "/" << total << " checks\n";
    return failed ? 1 : 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"cusped surface shear coordinates and quantum traces", "cuspq"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--mode", o.mode, "classical or quantum")->check(CLI::IsMember({"classical", "quantum"}));
    app.add_option("--rng-seed", o.rng_seed, "seed for numeric oracles");
    app.add_option("--points", o.points, "random points per numeric check")->check(CLI::PositiveNumber);
    app.add_option("--tol", o.tol, "relative tolerance");
    app.add_option("--format", o.format, "text or lines")->check(CLI::IsMember({"text", "lines"}));

    std::string surf, word, with, edge, lengths, arc1;
    std::vector<std::string> arcs, names;
    bool check = false, print_surface = false, seed = false, raw = false;
    double scale_n = 0;
    std::string suite_name;

    auto* v = app.add_subcommand("validate", "check a surface file");
    v->add_option("--surface", surf)->required();
    auto* tr = app.add_subcommand("trace", "trace of a path word");
    tr->add_option("--surface", surf)->required();
    tr->add_option("--word", word)->required();
    tr->add_flag("--raw", raw, "no q normalization of arc traces");
    auto* br = app.add_subcommand("bracket", "Poisson bracket, or commutator in quantum mode");
    br->add_option("--surface", surf)->required();
    br->add_option("--word", word)->required();
    br->add_option("--with", with)->required();
    auto* cm = app.add_subcommand("commute", "q-commutation exponent");
    cm->add_option("--surface", surf)->required();
    cm->add_option("--word", word);
    cm->add_option("--with", with);
    cm->add_flag("--seed", seed, "homogeneity of the dual seed");
    auto* fl = app.add_subcommand("flip", "flip an edge");
    fl->add_option("--surface", surf)->required();
    fl->add_option("--edge", edge)->required();
    fl->add_flag("--check", check);
    fl->add_flag("--print-surface", print_surface);
    auto* mu = app.add_subcommand("mutate", "mutate lambda lengths");
    mu->add_option("--surface", surf)->required();
    mu->add_option("--arc", arcs)->required();
    mu->add_option("--name", names);
    auto* tp = app.add_subcommand("tropical", "tropical mutation");
    tp->add_option("--surface", surf)->required();
    tp->add_option("--arc", arc1)->required();
    tp->add_option("--lengths", lengths)->required();
    auto* scale_opt = tp->add_option("--scale", scale_n, "scaling parameter N")->check(CLI::PositiveNumber);
    auto* su = app.add_subcommand("suite", "run a check suite");
    su->add_option("name", suite_name)->required()->check(CLI::IsMember(suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (v->parsed()) return cmd_validate(o, surf, out);
        if (tr->parsed()) return cmd_trace(o, surf, word, raw, out);
        if (br->parsed()) return cmd_bracket(o, surf, word, with, out);
        if (cm->parsed()) return cmd_commute(o, surf, word, with, seed, out);
        if (fl->parsed()) return cmd_flip(o, surf, edge, check, print_surface, out);
        if (mu->parsed()) return cmd_mutate(o, surf, arcs, names, out);
        if (tp->parsed()) return cmd_tropical(o, surf, arc1, lengths, scale_opt->count() ? std::optional<double>(scale_n) : std::nullopt, out);
        if (su->parsed()) return cmd_suite(o, suite_name, out);
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace cuspq::cli

#pragma once

// Verb dispatch for the saito command-line tool. Kept in the library so the
// reports can be tested without spawning processes.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "saito/fuzz.hpp"
#include "saito/invertible.hpp"
#include "saito/report.hpp"
#include "saito/verify.hpp"

namespace saito::cli {

struct Command {
    std::string verb;
    std::vector<std::string> inputs;
    std::optional<std::string> subgroup; // trivial | full | all | generator list
    std::string theorem = "all";
    Format format = Format::Text;
    std::size_t max_order = kDefaultMaxOrder;
    std::uint64_t seed = 1;
    std::size_t iterations = 500;
    std::string output_dir = "saito-results";
    unsigned jobs = 0; // 0: hardware concurrency
};

struct Outcome {
    Report report;
    int exit_code = 0;
    std::string error; // for stderr; set when no report could be produced
};

/// Reads SAITO_MAX_ORDER; `fallback` if unset or malformed.
inline std::size_t max_order_from_env(std::size_t fallback = kDefaultMaxOrder) {
    const char* v = std::getenv("SAITO_MAX_ORDER");
    if (!v || !*v) return fallback;
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    return (*end == '\0' && n > 0) ? static_cast<std::size_t>(n) : fallback;
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string matrix_to_string(const IntMatrix& E) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < E.rows(); ++i) {
        s += i ? ",[" : "[";
        for (Eigen::Index j = 0; j < E.cols(); ++j) s += (j ? "," : "") + std::to_string(E(i, j));
        s += "]";
    }
    return s + "]";
}

inline nlohmann::json matrix_to_json(const IntMatrix& E) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < E.rows(); ++i) {
        auto r = nlohmann::json::array();
        for (Eigen::Index j = 0; j < E.cols(); ++j) r.push_back(E(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::string weights_to_string(const std::vector<Rational>& q) {
    std::string s = "(";
    for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + rational_to_string(q[i]);
    return s + ")";
}

inline std::string ints_to_string(const std::vector<std::int64_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

inline std::string file_label(const std::string& path) { return std::filesystem::path(path).filename().string(); }

/// Subgroups of G_f named by the selector; `fallback` names the default
/// when neither a selector nor a subgroup line is present.
inline std::vector<Subgroup> select_subgroups(const DualPair& d, const PolynomialSpec& spec,
                                              const std::optional<std::string>& selector, const std::string& fallback) {
    const AmbientGroup& G = d.f.Gf;
    std::string sel;
    if (selector) sel = *selector;
    else if (spec.subgroup) sel = "file";
    else sel = fallback;
    if (sel == "trivial") return {G.trivial()};
    if (sel == "full") return {G.full()};
    if (sel == "all") return all_subgroups(G);
    std::vector<GroupElement> gens = sel == "file" ? *spec.subgroup : parse_element_list(sel);
    for (const auto& g : gens) {
        if (g.dim() != G.dim()) throw Error(ErrorKind::DomainMismatch, g.to_string() + " has the wrong dimension");
        if (!G.contains(g)) throw Error(ErrorKind::DomainMismatch, g.to_string() + " is not in G_f");
    }
    return {Subgroup::generated(G, gens)};
}

inline std::vector<Theorem> select_theorems(const std::string& sel) {
    if (sel == "all") return {Theorem::PropDual, Theorem::Thm2, Theorem::Thm1, Theorem::Corollary};
    if (auto t = parse_theorem(sel)) return {*t};
    throw Error(ErrorKind::ParseError, "unknown theorem '" + sel + "' (prop_dual, thm1, thm2, corollary, all)", 0);
}

struct Loaded {
    std::string label;
    PolynomialSpec spec;
    DualPair d;
};

inline Loaded load(const std::string& path, std::size_t max_order) {
    const std::string text = read_file(path);
    try {
        PolynomialSpec spec = parse_spec(text);
        DualPair d = build_dual_pair(spec.poly, max_order);
        return Loaded{file_label(path), std::move(spec), std::move(d)};
    } catch (const Error& e) {
        throw Error(e.kind(), file_label(path) + ": " + e.message(), e.position());
    }
}

inline Report info_report(const Loaded& in) {
    Report r;
    const SymmetryData& s = in.d.f;
    const Subgroup ker = s.alphaf.kernel();
    std::vector<std::string> weights;
    for (const auto& q : s.q) weights.push_back(rational_to_string(q));
    r.section("info: " + in.label)
        .row("f", s.poly.to_string())
        .row("E", matrix_to_string(s.poly.E))
        .row("det", std::to_string(s.det()))
        .row("weights", weights_to_string(s.q))
        .row("|G_f|", std::to_string(s.Gf.order()))
        .row("cyclic_type", ints_to_string(s.Gf.cyclic_type()))
        .row("h_f", s.hf.to_string())
        .row("ker alpha_f", ker.label() + " (order " + std::to_string(ker.order()) + ")")
        .row("milnor", std::to_string(milnor_number(s)));
    r.fields["file"] = in.label;
    r.fields["f"] = s.poly.to_string();
    r.fields["vars"] = s.poly.var_names;
    r.fields["E"] = matrix_to_json(s.poly.E);
    r.fields["det"] = s.det();
    r.fields["weights"] = weights;
    r.fields["order"] = s.Gf.order();
    r.fields["cyclic_type"] = s.Gf.cyclic_type();
    r.fields["h_f"] = s.hf.to_string();
    r.fields["alpha_f_kernel"] = ker.label();
    r.fields["milnor"] = milnor_number(s);
    r.notes = s.poly.notes;
    return r;
}

inline Report euler_report(const Loaded& in) {
    Report r;
    const BurnsideElement chi = enhanced_euler(in.d.f);
    const BurnsideElement red = reduced_enhanced_euler(in.d.f);
    r.section("euler: " + in.label)
        .row("euler", chi.to_string())
        .row("reduced", red.to_string())
        .row("augmentation", std::to_string(chi.augmentation()));
    r.fields["file"] = in.label;
    r.fields["euler"] = chi.to_string();
    r.fields["euler_reduced"] = red.to_string();
    r.fields["augmentation"] = chi.augmentation();
    r.notes = in.spec.poly.notes;
    return r;
}

inline Report zeta_report(const Loaded& in, const std::optional<std::string>& selector) {
    Report r;
    auto& sec = r.section("zeta: " + in.label);
    auto arr = nlohmann::json::array();
    for (const auto& G : select_subgroups(in.d, in.spec, selector, "trivial")) {
        const std::string z = reduced_orbifold_zeta(in.d.f, G).to_string();
        sec.row("G=" + G.label(), z);
        arr.push_back({{"subgroup", G.label()}, {"zeta", z}});
    }
    r.fields["file"] = in.label;
    r.fields["zeta"] = std::move(arr);
    r.notes = in.spec.poly.notes;
    return r;
}

inline Report dual_report(const Loaded& in, const std::optional<std::string>& selector) {
    Report r;
    const auto groups = select_subgroups(in.d, in.spec, selector, "trivial");
    if (groups.size() != 1) throw Error(ErrorKind::DomainMismatch, "dual takes a single subgroup");
    const Subgroup& G = groups.front();
    const Subgroup Gt = dual_subgroup(G, in.d.P);
    auto gens = Gt.generators();
    if (gens.empty()) gens.push_back(Gt.parent().identity());
    PolynomialSpec out{in.d.ft.poly, gens};
    r.section("dual: " + in.label)
        .row("f", in.d.f.poly.to_string())
        .row("transpose", in.d.ft.poly.to_string())
        .row("G", G.label())
        .row("dual G", Gt.label());
    r.section("transpose spec").rows.emplace_back("", out.to_string());
    r.fields["file"] = in.label;
    r.fields["transpose"] = in.d.ft.poly.to_string();
    r.fields["transpose_E"] = matrix_to_json(in.d.ft.poly.E);
    r.fields["subgroup"] = G.label();
    r.fields["dual_subgroup"] = Gt.label();
    r.fields["spec"] = out.to_string();
    return r;
}

inline Report verify_report(const Loaded& in, const std::optional<std::string>& selector, const std::string& theorem) {
    Report r;
    const auto groups = select_subgroups(in.d, in.spec, selector, "all");
    for (auto t : select_theorems(theorem)) {
        std::vector<Check> cs;
        if (t == Theorem::Thm1) cs = saito::detail::check_thm1(in.d, groups);
        else if (t == Theorem::Corollary) cs = saito::detail::check_corollary(in.d, groups);
        else cs = verify_duality(in.d, t);
        for (auto& c : cs) r.checks.push_back(std::move(c));
    }
    r.fields["file"] = in.label;
    r.notes = in.spec.poly.notes;
    return r;
}

inline Report fuzz_report(const Command& cmd) {
    FuzzOptions o;
    o.seed = cmd.seed;
    o.iterations = cmd.iterations;
    if (!cmd.inputs.empty()) o.ambient = load(cmd.inputs.front(), cmd.max_order).spec.poly.E;
    Report r;
    for (const auto& p : run_fuzz(o)) {
        Check c{"fuzz " + p.name, p.failures == 0,
                "cases=" + std::to_string(p.cases) + " failures=" + std::to_string(p.failures), ""};
        c.rhs = p.first_failing_seed ? "first failing seed " + std::to_string(*p.first_failing_seed) + ": " + p.detail
                                     : "seeds " + std::to_string(o.seed) + ".." + std::to_string(o.seed + o.iterations - 1);
        r.checks.push_back(std::move(c));
    }
    r.fields["seed"] = o.seed;
    r.fields["iterations"] = o.iterations;
    return r;
}

inline std::vector<std::string> batch_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& in : inputs) {
        if (std::filesystem::is_directory(in)) {
            for (const auto& e : std::filesystem::directory_iterator(in))
                if (e.is_regular_file() && e.path().extension() == ".poly") files.push_back(e.path().string());
        } else {
            files.push_back(in);
        }
    }
    std::sort(files.begin(), files.end(), [](const std::string& a, const std::string& b) {
        return file_label(a) != file_label(b) ? file_label(a) < file_label(b) : a < b;
    });
    return files;
}

} // namespace detail

Outcome run(const Command& cmd);

namespace detail {

/// Runs every input independently (concurrently), writes one result file
/// per input and merges a summary ordered by input name.
inline Outcome batch(const Command& cmd) {
    const auto files = batch_inputs(cmd.inputs);
    if (files.empty()) throw Error(ErrorKind::ParseError, "no .poly inputs", 0);
    std::vector<Outcome> results(files.size());
    std::atomic<std::size_t> next{0};
    const unsigned jobs = std::max(1u, std::min<unsigned>(cmd.jobs ? cmd.jobs : std::thread::hardware_concurrency(),
                                                          static_cast<unsigned>(files.size())));
    auto worker = [&] {
        for (std::size_t i; (i = next++) < files.size();) {
            Command one = cmd;
            one.verb = "verify";
            one.inputs = {files[i]};
            results[i] = run(one);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::filesystem::create_directories(cmd.output_dir);
    const std::string ext = cmd.format == Format::Json ? ".json" : ".txt";
    Outcome out;
    auto summary = nlohmann::json::array();
    int worst = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const auto& res = results[i];
        const auto path = std::filesystem::path(cmd.output_dir) / (std::filesystem::path(files[i]).stem().string() + ext);
        std::ofstream(path, std::ios::binary) << (res.error.empty() ? emit(res.report, cmd.format) : res.error + "\n");
        const std::string status = res.error.empty() ? res.report.status() : "ERROR";
        std::size_t passed = 0;
        for (const auto& c : res.report.checks) passed += c.pass;
        const std::string tally = std::to_string(passed) + "/" + std::to_string(res.report.checks.size()) + " checks";
        summary.push_back({{"file", file_label(files[i])}, {"status", status}, {"checks", res.report.checks.size()},
                           {"passed", passed}, {"result", path.string()}});
        out.report.checks.push_back(Check{file_label(files[i]), res.exit_code == 0, status + " " + tally, path.string()});
        worst = std::max(worst, res.exit_code);
    }
    out.report.fields["summary"] = std::move(summary);
    out.report.fields["output_dir"] = cmd.output_dir;
    out.exit_code = worst;
    return out;
}

} // namespace detail

/// Exit status 0 iff every check passes, 1 on a failed check, 2 on a parse
/// or validation error.
inline Outcome run(const Command& cmd) {
    Outcome out;
    try {
        const auto need_input = [&] {
            if (cmd.inputs.empty()) throw Error(ErrorKind::ParseError, cmd.verb + " needs an input file", 0);
        };
        if (cmd.verb == "fuzz") {
            out.report = detail::fuzz_report(cmd);
        } else if (cmd.verb == "batch") {
            return detail::batch(cmd);
        } else {
            need_input();
            auto per_input = nlohmann::json::array();
            for (const auto& path : cmd.inputs) {
                const auto in = detail::load(path, cmd.max_order);
                Report r;
                if (cmd.verb == "info") r = detail::info_report(in);
                else if (cmd.verb == "euler") r = detail::euler_report(in);
                else if (cmd.verb == "zeta") r = detail::zeta_report(in, cmd.subgroup);
                else if (cmd.verb == "dual") r = detail::dual_report(in, cmd.subgroup);
                else if (cmd.verb == "verify") r = detail::verify_report(in, cmd.subgroup, cmd.theorem);
                else throw Error(ErrorKind::ParseError, "unknown verb '" + cmd.verb + "'", 0);
                per_input.push_back(std::exchange(r.fields, nlohmann::json::object()));
                out.report.append(std::move(r));
            }
            // Several inputs: one field object per input instead of a merge.
            out.report.fields = per_input.size() == 1 ? per_input.front() : nlohmann::json{{"inputs", per_input}};
        }
        out.exit_code = out.report.passed() ? 0 : 1;
    } catch (const Error& e) {
        out.report = Report{};
        out.exit_code = e.kind() == ErrorKind::InternalInconsistency ? 1 : 2;
        out.error = std::string("error: ") + e.what();
    }
    return out;
}

} // namespace saito::cli

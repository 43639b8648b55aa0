// Command-line driver for circular alignment, consensus, DTW means and the
// hardness-reduction constructions. Exit codes: 0 solved/pass, 1 no/fail,
// 2 usage or malformed input, 3 guard tripped.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "circon/ccs.hpp"
#include "circon/io.hpp"
#include "circon/reductions.hpp"

namespace {

using namespace circon;

std::string rat(const Rational& r) {
    return to_fraction_string(r) + " (= " + to_decimal_string(r) + ")";
}

std::string shift_str(const ShiftVector& delta) {
    std::string out = "(";
    for (std::size_t i = 0; i < delta.deltas.size(); ++i)
        out += (i ? "," : "") + std::to_string(delta.deltas[i]);
    return out + ")";
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stoull(item));
    return out;
}

const MscsInstance& need_mscs(const io::InstanceFile& f) {
    if (f.kind != io::Kind::mscs) throw ParseError("expected an mscs instance file");
    return *f.mscs;
}

struct Cli {
    CLI::App app{"exact circular alignment and DTW-mean toolkit", "circon"};
    int rc = 0;

    // shared option storage
    std::string in_path, out_path, cost_fn = "sigma", witness_arg, target_arg;
    std::size_t k = 3, n = 2, d = 2;
    std::uint64_t seed = 1, guard_states = 50'000'000;
    unsigned threads = 1;
    bool planted = false, as_text = false, allow_small_k = false;
    std::optional<std::size_t> stride, max_len, ovr_lambda, ovr_m, ovr_r;

    Cli();
    int run(int argc, char** argv);

    void cmd_gen_rmcc();
    void cmd_solve_rmcc();
    void cmd_reduce_rmcc_to_mscs();
    void cmd_reduce_mscs_to_ccs();
    void cmd_reduce_mscs_to_dtw();
    void cmd_solve_mscs();
    void cmd_solve_ccs();
    void cmd_dtw_dist();
    void cmd_dtw_mean();
    void cmd_verify();
};

RmccGraph load_graph(const std::string& path) {
    if (path.ends_with(".json")) {
        const auto f = io::load_instance(path);
        if (f.kind != io::Kind::rmcc) throw ParseError("expected an rmcc instance file");
        return *f.graph;
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return io::parse_rmcc_text(in);
}

Cli::Cli() {
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen-rmcc", "generate a d-regular multicolored graph");
    gen->add_option("--k", k, "color classes")->required();
    gen->add_option("--n", n, "vertices per class")->required();
    gen->add_option("--d", d, "vertex degree")->required();
    gen->add_flag("--planted", planted, "install a multicolored clique");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("-o,--out", out_path, "output file")->required();
    gen->add_flag("--text", as_text, "write the plain-text graph format");
    gen->callback([this] { cmd_gen_rmcc(); });

    auto* srm = app.add_subcommand("solve-rmcc", "search for a multicolored clique");
    srm->add_option("file", in_path)->required();
    srm->add_option("--guard-states", guard_states, "state-count guard for the search");
    srm->callback([this] { cmd_solve_rmcc(); });

    auto* red = app.add_subcommand("reduce", "run a hardness construction");
    red->require_subcommand(1);
    auto* r1 = red->add_subcommand("rmcc-to-mscs", "graph to circular alignment instance");
    r1->add_option("file", in_path)->required();
    r1->add_option("-o,--out", out_path, "bundle output")->required();
    r1->add_option("--cost-fn", cost_fn, "cost function (sigma|phi|phi_f|ccs|g)");
    r1->add_option("--override-lambda", ovr_lambda, "replace the repetition count lambda");
    r1->add_option("--witness-clique", witness_arg, "comma-separated clique indices");
    r1->callback([this] { cmd_reduce_rmcc_to_mscs(); });
    auto* r2 = red->add_subcommand("mscs-to-ccs", "pad a g-cost instance into a consensus instance");
    r2->add_option("file", in_path)->required();
    r2->add_option("-o,--out", out_path, "bundle output")->required();
    r2->callback([this] { cmd_reduce_mscs_to_ccs(); });
    auto* r3 = red->add_subcommand("mscs-to-dtw", "phi-cost instance to a DTW-mean instance");
    r3->add_option("file", in_path)->required();
    r3->add_option("-o,--out", out_path, "bundle output")->required();
    r3->add_option("--target", target_arg, "source target cost c (defaults to the file's target)");
    r3->add_option("--override-m", ovr_m, "replace the block count m");
    r3->add_option("--override-r", ovr_r, "replace the copy count r");
    r3->add_flag("--allow-small-k", allow_small_k, "permit k < 15");
    r3->add_option("--witness-shift", witness_arg, "comma-separated source shift");
    r3->callback([this] { cmd_reduce_mscs_to_dtw(); });

    auto* sm = app.add_subcommand("solve-mscs", "exhaustive circular alignment");
    sm->add_option("file", in_path)->required();
    sm->add_option("--stride", stride, "restrict shifts to multiples of this stride");
    sm->add_option("--threads", threads, "worker threads");
    sm->callback([this] { cmd_solve_mscs(); });

    auto* sc = app.add_subcommand("solve-ccs", "exhaustive circular consensus");
    sc->add_option("file", in_path)->required();
    sc->add_option("--stride", stride, "restrict shifts to multiples of this stride");
    sc->add_option("--threads", threads, "worker threads");
    sc->callback([this] { cmd_solve_ccs(); });

    auto* dd = app.add_subcommand("dtw-dist", "squared dtw distance of the first two series");
    dd->add_option("file", in_path)->required();
    dd->callback([this] { cmd_dtw_dist(); });

    auto* dm = app.add_subcommand("dtw-mean", "exact Fcost-minimal mean");
    dm->add_option("file", in_path)->required();
    dm->add_option("--max-len", max_len, "mean length cap");
    dm->add_option("--guard-states", guard_states, "transition-count guard");
    dm->callback([this] { cmd_dtw_mean(); });

    auto* vf = app.add_subcommand("verify", "replay and audit a reduction bundle");
    vf->add_option("file", in_path)->required();
    vf->callback([this] { cmd_verify(); });
}

void Cli::cmd_gen_rmcc() {
    const GeneratedRmcc gen = generate(k, n, d, planted, seed);
    if (as_text) {
        std::ofstream out(out_path);
        out << io::format_rmcc_text(gen.graph);
    } else {
        io::InstanceFile f;
        f.kind = io::Kind::rmcc;
        f.graph = gen.graph;
        if (gen.planted) f.provenance = io::json{{"planted", gen.planted->indices}};
        io::save_instance(out_path, f);
    }
    std::cout << "graph k=" << k << " n=" << n << " d=" << d << " with " << gen.graph.m()
              << " edges -> " << out_path << '\n';
    if (gen.planted) {
        std::cout << "planted clique";
        for (auto i : gen.planted->indices) std::cout << ' ' << i;
        std::cout << '\n';
    }
}

void Cli::cmd_solve_rmcc() {
    const RmccGraph g = load_graph(in_path);
    if (auto problems = validate(g); !problems.empty())
        throw ParseError("graph rejected: " + problems.front());
    const auto clique = solve_clique_bruteforce(g, guard_states);
    if (!clique) {
        std::cout << "no multicolored clique\n";
        rc = 1;
        return;
    }
    std::cout << "clique";
    for (auto i : clique->indices) std::cout << ' ' << i;
    std::cout << '\n';
}

void Cli::cmd_reduce_rmcc_to_mscs() {
    const io::json src_json = in_path.ends_with(".json") ? io::load_json(in_path) : io::json();
    const RmccGraph g = load_graph(in_path);
    const auto builtin = builtin_from_name(cost_fn);
    if (!builtin) throw ParseError("unknown cost function '" + cost_fn + "'");
    MscsReductionOverrides ov;
    ov.lambda = ovr_lambda;
    if (ovr_lambda)
        std::cerr << "warning: lambda overridden; instance is outside the proof regime\n";
    const MscsReduction red = rmcc_to_mscs(g, builtin_family(*builtin), ov);

    std::optional<MulticoloredClique> witness;
    if (!witness_arg.empty())
        witness = MulticoloredClique{parse_index_list(witness_arg)};
    else if (src_json.is_object() && src_json.contains("provenance") &&
             src_json["provenance"].contains("planted"))
        witness =
            MulticoloredClique{src_json["provenance"]["planted"].get<std::vector<std::size_t>>()};

    io::save_json(out_path, io::make_bundle_rmcc_to_mscs(g, cost_fn, red, witness));
    std::cout << "mscs instance with " << red.instance.strings.size() << " strings of length "
              << red.params.ell << ", target " << rat(red.params.target_cost) << " -> " << out_path
              << '\n';
}

void Cli::cmd_reduce_mscs_to_ccs() {
    const MscsInstance inst = need_mscs(io::load_instance(in_path));
    const CcsPaddedInstance out = mscs_g_to_ccs(inst);
    io::save_json(out_path, io::make_bundle_mscs_to_ccs(inst, out));
    std::cout << "ccs instance with " << out.strings.size() << " strings -> " << out_path << '\n';
}

void Cli::cmd_reduce_mscs_to_dtw() {
    const MscsInstance inst = need_mscs(io::load_instance(in_path));
    Rational c;
    if (!target_arg.empty())
        c = parse_rational(target_arg);
    else if (inst.target)
        c = *inst.target;
    else
        throw ParseError("no target cost: pass --target or set it in the instance file");
    DtwReductionOverrides ov;
    ov.m = ovr_m;
    ov.r = ovr_r;
    ov.allow_small_k = allow_small_k;
    const DtwReduction red = mscs_phi_to_dtw(inst, c, ov);
    if (red.params.outside_proof_regime)
        std::cerr << "warning: instance is outside the proof regime (overrides or k < 15)\n";

    std::optional<ShiftVector> witness;
    if (!witness_arg.empty()) witness = ShiftVector{parse_index_list(witness_arg)};
    io::save_json(out_path, io::make_bundle_mscs_to_dtw(inst, red, witness));
    std::cout << "dtw instance with " << red.instance.series.size() << " series (m="
              << red.params.m << ", r=" << red.params.r << "), target "
              << rat(red.params.target_cost) << " -> " << out_path << '\n';
}

void Cli::cmd_solve_mscs() {
    const MscsInstance inst = need_mscs(io::load_instance(in_path));
    SolveOptions opts;
    opts.stride = stride;
    opts.threads = threads;
    const MscsSolution sol = solve_exhaustive(inst, opts);
    std::cout << "optimal " << rat(sol.cost) << ", delta " << shift_str(sol.delta) << '\n';
    if (sol.meets_target) {
        std::cout << (*sol.meets_target ? "meets" : "misses") << " target "
                  << rat(*inst.target) << '\n';
        rc = *sol.meets_target ? 0 : 1;
    }
}

void Cli::cmd_solve_ccs() {
    const auto file = io::load_instance(in_path);
    if (file.kind != io::Kind::ccs) throw ParseError("expected a ccs instance file");
    SolveOptions opts;
    opts.stride = stride;
    opts.threads = threads;
    const CcsSolution sol = solve_ccs_exhaustive(file.ccs->strings, opts);
    std::cout << "optimal " << sol.cost << ", delta " << shift_str(sol.delta) << ", consensus "
              << sol.consensus.str() << '\n';
    if (file.ccs->target) {
        const bool ok = Rational(sol.cost) <= *file.ccs->target;
        std::cout << (ok ? "meets" : "misses") << " target " << rat(*file.ccs->target) << '\n';
        rc = ok ? 0 : 1;
    }
}

void Cli::cmd_dtw_dist() {
    const auto file = io::load_instance(in_path);
    if (file.kind != io::Kind::dtw || file.dtw->series.size() < 2)
        throw ParseError("expected a dtw instance file with at least two series");
    const auto [dist, path] = dtw_sq(file.dtw->series[0], file.dtw->series[1]);
    std::cout << "dtw^2 " << rat(dist) << " over a path of " << path.pairs.size()
              << " steps\n";
}

void Cli::cmd_dtw_mean() {
    const auto file = io::load_instance(in_path);
    if (file.kind != io::Kind::dtw) throw ParseError("expected a dtw instance file");
    MeanOptions opts;
    opts.max_len = max_len;
    opts.max_transitions = guard_states;
    const MeanSolution sol = solve_mean_exact(file.dtw->series, opts);
    std::cout << "optimal " << rat(sol.cost) << ", mean length " << sol.mean.length() << ", mean (";
    for (std::size_t i = 1; i <= sol.mean.length(); ++i)
        std::cout << (i > 1 ? "," : "") << to_fraction_string(sol.mean.at(i));
    std::cout << ")\n";
    if (sol.hit_length_cap)
        std::cout << "note: length cap reached; longer means were not searched\n";
    if (file.dtw->target) {
        const bool ok = sol.cost <= *file.dtw->target;
        std::cout << (ok ? "meets" : "misses") << " target " << rat(*file.dtw->target) << '\n';
        rc = ok ? 0 : 1;
    }
}

void Cli::cmd_verify() {
    const io::VerifyReport rep = io::verify_bundle(io::load_json(in_path));
    std::cout << io::format_report(rep);
    rc = rep.all_pass ? 0 : 1;
}

int Cli::run(int argc, char** argv) {
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InstanceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    return cli.run(argc, argv);
}

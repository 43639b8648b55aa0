#include "circon/io.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace circon::io {

namespace {

std::string jrat(const Rational& r) { return to_fraction_string(r); }

Rational prat(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string())
        throw ParseError(std::string("missing or non-string rational field '") + field + "'");
    return parse_rational(j[field].get<std::string>());
}

std::optional<Rational> prat_opt(const json& j, const char* field) {
    if (!j.contains(field) || j[field].is_null()) return std::nullopt;
    return prat(j, field);
}

std::vector<BinaryString> parse_strings(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array() || j[field].empty())
        throw ParseError(std::string("field '") + field + "' must be a nonempty array");
    std::vector<BinaryString> out;
    for (const auto& s : j[field]) {
        if (!s.is_string()) throw ParseError(std::string("entries of '") + field + "' must be strings");
        out.push_back(BinaryString::parse(s.get<std::string>()));
    }
    return out;
}

json strings_to_json(std::span<const BinaryString> strings) {
    json arr = json::array();
    for (const auto& s : strings) arr.push_back(s.str());
    return arr;
}

std::string vertex_label(VertexId v) {
    return std::to_string(v.color) + "." + std::to_string(v.index);
}

VertexId parse_vertex_label(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) throw ParseError("vertex label '" + text + "' must be 'j.i'");
    try {
        return VertexId{std::stoull(text.substr(0, dot)), std::stoull(text.substr(dot + 1))};
    } catch (const std::exception&) {
        throw ParseError("vertex label '" + text + "' must be 'j.i'");
    }
}

json graph_to_json(const RmccGraph& g) {
    json j;
    j["k"] = g.k;
    j["n"] = g.n;
    j["d"] = g.d;
    json edges = json::array();
    for (const auto& [a, b] : g.edges) edges.push_back({vertex_label(a), vertex_label(b)});
    j["edges"] = std::move(edges);
    return j;
}

RmccGraph graph_from_json(const json& j) {
    for (const char* field : {"k", "n", "d"})
        if (!j.contains(field) || !j[field].is_number_unsigned())
            throw ParseError(std::string("graph field '") + field +
                             "' must be a non-negative integer");
    RmccGraph g{j["k"].get<std::size_t>(), j["n"].get<std::size_t>(), j["d"].get<std::size_t>(), {}};
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ParseError("graph field 'edges' must be an array");
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError("each edge must be a pair of vertex labels");
        g.edges.emplace_back(parse_vertex_label(e[0].get<std::string>()),
                             parse_vertex_label(e[1].get<std::string>()));
    }
    return g;
}

}  // namespace

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::rmcc: return "rmcc";
        case Kind::mscs: return "mscs";
        case Kind::ccs: return "ccs";
        case Kind::dtw: return "dtw";
    }
    throw ParseError("unknown instance kind");
}

Kind kind_from_name(const std::string& name) {
    if (name == "rmcc") return Kind::rmcc;
    if (name == "mscs") return Kind::mscs;
    if (name == "ccs") return Kind::ccs;
    if (name == "dtw") return Kind::dtw;
    throw ParseError("unknown instance kind '" + name + "'");
}

json instance_to_json(const InstanceFile& file) {
    json j;
    j["kind"] = kind_name(file.kind);
    switch (file.kind) {
        case Kind::rmcc: {
            if (!file.graph) throw InstanceError("rmcc file has no graph payload");
            j.update(graph_to_json(*file.graph));
            break;
        }
        case Kind::mscs: {
            if (!file.mscs) throw InstanceError("mscs file has no payload");
            j["strings"] = strings_to_json(file.mscs->strings);
            j["cost_fn"] = file.mscs->cost.name;
            json table = json::array();
            for (const auto& v : file.mscs->cost.values) table.push_back(jrat(v));
            j["cost_table"] = std::move(table);
            j["target"] = file.mscs->target ? json(jrat(*file.mscs->target)) : json(nullptr);
            break;
        }
        case Kind::ccs: {
            if (!file.ccs) throw InstanceError("ccs file has no payload");
            j["strings"] = strings_to_json(file.ccs->strings);
            j["target"] = file.ccs->target ? json(jrat(*file.ccs->target)) : json(nullptr);
            break;
        }
        case Kind::dtw: {
            if (!file.dtw) throw InstanceError("dtw file has no payload");
            json series = json::array();
            for (const auto& x : file.dtw->series) {
                json row = json::array();
                for (const auto& v : x.values) row.push_back(jrat(v));
                series.push_back(std::move(row));
            }
            j["series"] = std::move(series);
            j["target"] = file.dtw->target ? json(jrat(*file.dtw->target)) : json(nullptr);
            break;
        }
    }
    if (!file.provenance.is_null()) j["provenance"] = file.provenance;
    return j;
}

InstanceFile instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("instance file must be an object with a 'kind' tag");
    InstanceFile file;
    file.kind = kind_from_name(j["kind"].get<std::string>());
    switch (file.kind) {
        case Kind::rmcc:
            file.graph = graph_from_json(j);
            break;
        case Kind::mscs: {
            MscsInstance inst;
            inst.strings = parse_strings(j, "strings");
            if (!j.contains("cost_table") || !j["cost_table"].is_array())
                throw ParseError("mscs field 'cost_table' must be an array of rationals");
            inst.cost.k = inst.strings.size();
            inst.cost.name = j.value("cost_fn", std::string{});
            for (const auto& v : j["cost_table"])
                inst.cost.values.push_back(parse_rational(v.get<std::string>()));
            validate_table(inst.cost);
            inst.target = prat_opt(j, "target");
            inst.validate();
            file.mscs = std::move(inst);
            break;
        }
        case Kind::ccs: {
            CcsPayload p;
            p.strings = parse_strings(j, "strings");
            common_length(p.strings);
            p.target = prat_opt(j, "target");
            file.ccs = std::move(p);
            break;
        }
        case Kind::dtw: {
            DtwInstance inst;
            if (!j.contains("series") || !j["series"].is_array() || j["series"].empty())
                throw ParseError("dtw field 'series' must be a nonempty array");
            for (const auto& row : j["series"]) {
                if (!row.is_array() || row.empty())
                    throw ParseError("each dtw series must be a nonempty array of rationals");
                std::vector<Rational> vals;
                for (const auto& v : row) vals.push_back(parse_rational(v.get<std::string>()));
                inst.series.emplace_back(std::move(vals));
            }
            inst.target = prat_opt(j, "target");
            file.dtw = std::move(inst);
            break;
        }
    }
    if (j.contains("provenance")) file.provenance = j["provenance"];
    return file;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

InstanceFile load_instance(const std::filesystem::path& path) {
    return instance_from_json(load_json(path));
}

void save_instance(const std::filesystem::path& path, const InstanceFile& file) {
    save_json(path, instance_to_json(file));
}

RmccGraph parse_rmcc_text(std::istream& in) {
    std::string tag;
    RmccGraph g;
    if (!(in >> tag) || tag != "rmcc") throw ParseError("graph file must start with 'rmcc k n d'");
    if (!(in >> g.k >> g.n >> g.d)) throw ParseError("graph header must be 'rmcc k n d'");
    for (std::size_t i = 0; i < g.k * g.n; ++i) {
        std::size_t color = 0, index = 0;
        if (!(in >> color >> index)) throw ParseError("expected k*n vertex lines 'color index'");
        if (color != i / g.n + 1 || index != i % g.n + 1)
            throw ParseError("vertex lines must list v_1.1 .. v_k.n in order");
    }
    std::string a, b;
    while (in >> a >> b) g.edges.emplace_back(parse_vertex_label(a), parse_vertex_label(b));
    return g;
}

std::string format_rmcc_text(const RmccGraph& g) {
    std::ostringstream out;
    out << "rmcc " << g.k << ' ' << g.n << ' ' << g.d << '\n';
    for (std::size_t j = 1; j <= g.k; ++j)
        for (std::size_t i = 1; i <= g.n; ++i) out << j << ' ' << i << '\n';
    for (const auto& [a, b] : g.edges) out << vertex_label(a) << ' ' << vertex_label(b) << '\n';
    return out.str();
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

std::string instance_hash(const InstanceFile& file) {
    InstanceFile bare = file;
    bare.provenance = json();
    return fnv1a_hex(instance_to_json(bare).dump());
}

// --------------------------------------------------------------------------
// Bundles
// --------------------------------------------------------------------------

namespace {

json mscs_params_json(const MscsReductionParams& P, const std::string& cost_fn) {
    json p;
    p["cost_fn"] = cost_fn;
    p["k"] = P.k;
    p["n"] = P.n;
    p["d"] = P.d;
    p["m"] = P.m;
    p["m_prime"] = P.m_prime;
    p["kappa"] = P.kappa;
    p["gamma"] = P.gamma;
    p["lambda"] = P.lambda;
    p["ell"] = P.ell;
    p["eps"] = jrat(P.eps);
    p["mu"] = jrat(P.mu);
    p["target"] = jrat(P.target_cost);
    p["lambda_overridden"] = P.lambda_overridden;
    return p;
}

json dtw_params_json(const DtwReductionParams& P) {
    json p;
    p["k"] = P.k;
    p["n"] = P.n;
    p["m"] = P.m;
    p["r"] = P.r;
    p["source_target"] = jrat(P.source_target);
    p["eps"] = jrat(P.eps);
    p["f0"] = jrat(P.f0);
    p["target"] = jrat(P.target_cost);
    p["m_overridden"] = P.m_overridden;
    p["r_overridden"] = P.r_overridden;
    p["outside_proof_regime"] = P.outside_proof_regime;
    return p;
}

json bundle_skeleton(const std::string& reduction, const InstanceFile& source) {
    json b;
    b["kind"] = "reduction-bundle";
    b["reduction"] = reduction;
    b["source"] = instance_to_json(source);
    b["source_hash"] = instance_hash(source);
    return b;
}

InstanceFile wrap_mscs(const MscsInstance& inst) {
    InstanceFile f;
    f.kind = Kind::mscs;
    f.mscs = inst;
    return f;
}

}  // namespace

json make_bundle_rmcc_to_mscs(const RmccGraph& source, const std::string& cost_fn,
                              const MscsReduction& red,
                              const std::optional<MulticoloredClique>& witness) {
    InstanceFile src;
    src.kind = Kind::rmcc;
    src.graph = source;
    json b = bundle_skeleton("rmcc-to-mscs", src);
    b["params"] = mscs_params_json(red.params, cost_fn);
    b["output"] = instance_to_json(wrap_mscs(red.instance));
    b["witness"] = witness ? json{{"clique", witness->indices}} : json(nullptr);
    return b;
}

json make_bundle_mscs_to_ccs(const MscsInstance& source, const CcsPaddedInstance& out) {
    json b = bundle_skeleton("mscs-to-ccs", wrap_mscs(source));
    b["params"] = {{"source_k", out.source_k}, {"padding", out.source_k - 2}};
    InstanceFile of;
    of.kind = Kind::ccs;
    of.ccs = CcsPayload{out.strings, out.target};
    b["output"] = instance_to_json(of);
    b["witness"] = json(nullptr);
    return b;
}

json make_bundle_mscs_to_dtw(const MscsInstance& source, const DtwReduction& red,
                             const std::optional<ShiftVector>& witness_shift) {
    json b = bundle_skeleton("mscs-to-dtw", wrap_mscs(source));
    b["params"] = dtw_params_json(red.params);
    InstanceFile of;
    of.kind = Kind::dtw;
    of.dtw = red.instance;
    b["output"] = instance_to_json(of);
    b["witness"] = witness_shift ? json{{"shift", witness_shift->deltas}} : json(nullptr);
    return b;
}

// --------------------------------------------------------------------------
// Verification
// --------------------------------------------------------------------------

void VerifyReport::add(std::string name, bool pass, std::string detail) {
    all_pass = all_pass && pass;
    checks.push_back({std::move(name), pass, std::move(detail)});
}

namespace {

void verify_rmcc_to_mscs(const json& bundle, VerifyReport& rep) {
    const InstanceFile src = instance_from_json(bundle.at("source"));
    if (src.kind != Kind::rmcc) throw ParseError("rmcc-to-mscs bundle needs an rmcc source");
    const json& p = bundle.at("params");

    const auto problems = validate(*src.graph);
    rep.add("source-graph-valid", problems.empty(),
            problems.empty() ? "" : problems.front());
    if (!problems.empty()) return;

    const auto builtin = builtin_from_name(p.at("cost_fn").get<std::string>());
    if (!builtin) throw ParseError("unknown cost function in bundle parameters");
    MscsReductionOverrides ov;
    if (p.value("lambda_overridden", false)) ov.lambda = p.at("lambda").get<std::size_t>();
    const MscsReduction red = rmcc_to_mscs(*src.graph, builtin_family(*builtin), ov);

    rep.add("params-match", mscs_params_json(red.params, p.at("cost_fn").get<std::string>()) == p,
            "replayed parameter block vs. recorded");
    const InstanceFile out = instance_from_json(bundle.at("output"));
    const bool same = out.kind == Kind::mscs && out.mscs->strings == red.instance.strings &&
                      out.mscs->cost.values == red.instance.cost.values &&
                      out.mscs->target == red.instance.target;
    rep.add("output-match", same, "replayed construction vs. recorded instance");
    const StructureReport sr = check_mscs_structure(red);
    rep.add("string-structure", sr.ok, sr.ok ? "" : sr.problems.front());

    if (bundle.at("witness").is_null()) return;
    MulticoloredClique clique{bundle.at("witness").at("clique").get<std::vector<std::size_t>>()};
    if (!is_multicolored_clique(*src.graph, clique)) {
        rep.add("witness-clique", false, "recorded transversal is not a clique");
        return;
    }
    rep.add("witness-clique", true);
    const ShiftVector delta = witness_shift_from_clique(red, clique);
    const AlignedShiftAudit audit = audit_aligned_shift(red, delta);
    rep.add("witness-cost", audit.cost == red.params.target_cost,
            "cost " + jrat(audit.cost) + " vs. target " + jrat(red.params.target_cost));
    const std::size_t k = red.params.k;
    rep.add("weight2-count", audit.weight2_columns == k + k * (k - 1) / 2,
            std::to_string(audit.weight2_columns) + " weight-2 columns");
    rep.add("column-audit", audit.aligned && audit.separators_heavy && audit.obs_vertex_ok &&
                                audit.obs_edge_ok);
}

void verify_mscs_to_ccs(const json& bundle, VerifyReport& rep) {
    const InstanceFile src = instance_from_json(bundle.at("source"));
    if (src.kind != Kind::mscs) throw ParseError("mscs-to-ccs bundle needs an mscs source");
    const CcsPaddedInstance out = mscs_g_to_ccs(*src.mscs);
    const InstanceFile rec = instance_from_json(bundle.at("output"));
    rep.add("output-match",
            rec.kind == Kind::ccs && rec.ccs->strings == out.strings &&
                rec.ccs->target == out.target);
    rep.add("padding-count", out.strings.size() == 2 * out.source_k - 2,
            std::to_string(out.strings.size()) + " strings");
    bool ones = true;
    for (std::size_t j = out.source_k; j < out.strings.size(); ++j)
        ones = ones && out.strings[j].popcount() == out.strings[j].length();
    rep.add("padding-all-ones", ones);
}

void verify_mscs_to_dtw(const json& bundle, VerifyReport& rep) {
    const InstanceFile src = instance_from_json(bundle.at("source"));
    if (src.kind != Kind::mscs) throw ParseError("mscs-to-dtw bundle needs an mscs source");
    const json& p = bundle.at("params");
    DtwReductionOverrides ov;
    if (p.value("m_overridden", false)) ov.m = p.at("m").get<std::size_t>();
    if (p.value("r_overridden", false)) ov.r = p.at("r").get<std::size_t>();
    ov.allow_small_k = true;  // the regime flag is re-derived and compared below
    const DtwReduction red =
        mscs_phi_to_dtw(*src.mscs, prat(p, "source_target"), ov);

    rep.add("params-match", dtw_params_json(red.params) == p);
    const InstanceFile rec = instance_from_json(bundle.at("output"));
    rep.add("output-match", rec.kind == Kind::dtw && rec.dtw->series == red.instance.series &&
                                rec.dtw->target == red.instance.target);
    bool blocks_ok = true;
    for (const auto& blocks : red.blocks)
        blocks_ok = blocks_ok && blocks.size() == 2 * red.params.m * red.params.n * red.params.r;
    rep.add("block-count", blocks_ok, "expected 2mnr blocks per series");

    if (bundle.at("witness").is_null()) return;
    ShiftVector delta{bundle.at("witness").at("shift").get<std::vector<std::size_t>>()};
    const WitnessMean w = witness_mean_from_shift(red, delta);
    const auto& P = red.params;
    rep.add("witness-length", w.mean.length() == 2 * P.m * P.n * (P.r - 1) + 2);
    rep.add("witness-bound", w.alignment_cost <= P.target_cost,
            "alignment cost " + jrat(w.alignment_cost) + " vs. target " + jrat(P.target_cost));
    rep.add("extreme-bound", w.extreme_cost_value0 <= Rational(2 * P.k * P.n * P.m + 2),
            "value-0 extreme cost " + jrat(w.extreme_cost_value0));
    // Fcost can only improve on the fixed alignment; only worth running at
    // desk scale.
    std::size_t total = 0;
    for (const auto& x : red.instance.series) total += x.length();
    if (BigInt(total) * w.mean.length() <= 2'000'000) {
        const Rational f = fcost(w.mean, red.instance.series);
        rep.add("fcost-bound", f <= w.alignment_cost,
                "fcost " + jrat(f) + " vs. alignment cost " + jrat(w.alignment_cost));
    }
}

}  // namespace

VerifyReport verify_bundle(const json& bundle) {
    const auto start = std::chrono::steady_clock::now();
    VerifyReport rep;
    if (!bundle.is_object() || bundle.value("kind", std::string{}) != "reduction-bundle")
        throw ParseError("not a reduction bundle");
    const std::string reduction = bundle.at("reduction").get<std::string>();

    const std::string recorded = bundle.at("source_hash").get<std::string>();
    const std::string actual = instance_hash(instance_from_json(bundle.at("source")));
    rep.add("source-hash", recorded == actual, recorded == actual ? actual : "hash mismatch");

    if (reduction == "rmcc-to-mscs")
        verify_rmcc_to_mscs(bundle, rep);
    else if (reduction == "mscs-to-ccs")
        verify_mscs_to_ccs(bundle, rep);
    else if (reduction == "mscs-to-dtw")
        verify_mscs_to_dtw(bundle, rep);
    else
        throw ParseError("unknown reduction '" + reduction + "'");

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string format_report(const VerifyReport& report) {
    std::ostringstream out;
    for (const auto& c : report.checks) {
        out << (c.pass ? "pass" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << '\n';
    }
    out << (report.all_pass ? "all checks passed" : "some checks FAILED") << " in "
        << report.seconds << " s\n";
    return out.str();
}

json report_to_json(const VerifyReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"checks", std::move(checks)}, {"all_pass", report.all_pass},
            {"seconds", report.seconds}};
}

}  // namespace circon::io

// crossbound command-line tool: draw, count, verify, generate, oracle.
//
// Exit codes: 0 success, 1 internal error, 2 parse or parameter error, 3 invalid certificate or
// drawing, 4 bound violated or report mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "crossbound/crossbound.hpp"

using namespace crossbound;

namespace {

constexpr int kOk = 0, kInternal = 1, kParse = 2, kInvalid = 3, kViolated = 4;

struct Exit {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw Exit{code, std::move(message)}; }

std::uint64_t default_seed() {
    const char* s = std::getenv("CROSSBOUND_SEED");
    if (!s || !*s) return 0;
    try {
        return std::stoull(s);
    } catch (const std::logic_error&) {
        fail(kParse, std::string("CROSSBOUND_SEED is not an integer: ") + s);
    }
}

void emit(const std::string& path, const Json& j) {
    if (path.empty() || path == "-") std::cout << j.dump(1) << '\n';
    else write_json_file(path, j);
}

/// Certificate kind: the "kind" field if present, else inferred from the keys.
std::string certificate_kind(const Json& j) {
    if (j.contains("kind")) return j.at("kind").get<std::string>();
    if (j.contains("pieces")) return "cliquesum";
    if (j.contains("bags")) return "decomposition";
    if (j.contains("order")) return "order";
    return "unknown";
}

void require_kind(const Json& cert, const std::string& want, const std::string& method) {
    std::string got = certificate_kind(cert);
    if (got != want) fail(kInvalid, "method " + method + " needs a certificate of kind " + want + ", got " + got);
}

EliminationOrder order_from(const Json& j) {
    try {
        return j.at("order").get<EliminationOrder>();
    } catch (const Json::exception& e) {
        fail(kParse, std::string("order certificate: ") + e.what());
    }
}

int max_common_bags(const Graph& g, const Decomposition& d) {
    std::vector<std::vector<int>> at(static_cast<std::size_t>(g.n()));
    for (std::size_t b = 0; b < d.bags.size(); ++b)
        for (Vertex v : d.bags[b])
            if (v >= 0 && v < g.n()) at[v].push_back(static_cast<int>(b));
    int c = 0;
    for (auto [v, w] : g.edges()) {
        std::vector<int> common;
        std::set_intersection(at[v].begin(), at[v].end(), at[w].begin(), at[w].end(), std::back_inserter(common));
        c = std::max(c, static_cast<int>(common.size()));
    }
    return c;
}

struct DrawOutput {
    Drawing drawing;
    CrossingReport report;
    Json extra = Json::object();
};

DrawOutput run_method(const std::string& method, const std::optional<Graph>& input, const Json& cert,
                      std::uint64_t seed) {
    auto need_graph = [&]() -> const Graph& {
        if (!input) fail(kParse, "method " + method + " needs --input");
        return *input;
    };
    PartitionDrawOptions opt{.seed = seed};
    if (method == "partition" || method == "decomposition" || method == "clique-bags") {
        require_kind(cert, "decomposition", method);
        const Graph& g = need_graph();
        Decomposition d = decomposition_from_json(cert);
        DrawResult r;
        if (method == "partition") {
            r = draw_planar_partition(g, d, opt);
        } else if (method == "decomposition") {
            r = draw_planar_decomposition(g, d, opt);
        } else {
            int c = cert.contains("c") ? cert.at("c").get<int>() : max_common_bags(g, d);
            r = draw_clique_decomposition(g, d, c, opt);
        }
        DrawOutput out{r.drawing, r.report};
        if (!r.bends.empty()) out.extra["bends"] = r.bends;
        return out;
    }
    if (method == "interval" || method == "pathwidth" || method == "chordal") {
        const Graph& g = need_graph();
        ConvexResult r;
        if (method == "interval") {
            EliminationOrder order;
            if (cert.is_null()) {
                auto io = interval_order(g);
                if (!io.interval) fail(kInvalid, "graph is not an interval graph");
                order = io.order;
            } else {
                require_kind(cert, "order", method);
                order = order_from(cert);
            }
            r = convex_draw_interval(g, order);
        } else if (method == "pathwidth") {
            require_kind(cert, "decomposition", method);
            Decomposition d = decomposition_from_json(cert);
            int k = -1;
            for (const auto& b : d.bags) k = std::max(k, static_cast<int>(b.size()) - 1);
            if (cert.contains("k")) k = cert.at("k").get<int>();
            r = convex_draw_pathwidth(g, d, k);
        } else {
            if (!cert.is_null()) require_kind(cert, "order", method);
            r = convex_draw_chordal(g);
        }
        DrawOutput out{convex_drawing(g, r.order), r.report};
        out.extra["order"] = r.order;
        out.extra["clique_number"] = r.clique_number;
        return out;
    }
    if (method == "cliquesum") {
        require_kind(cert, "cliquesum", method);
        CliqueSumTree t = cliquesum_from_json(cert);
        JoinResult r = join(t);
        if (input && !(*input == r.drawing.graph))
            fail(kInvalid, "input graph differs from the composition of the clique-sum tree");
        DrawOutput out{r.drawing, r.report};
        out.extra["constant"] = to_string(r.constant);
        out.extra["ratio"] = to_string(r.ratio);
        out.extra["vertical_pairs"] = r.vertical_pairs;
        out.extra["salt"] = r.salt;
        return out;
    }
    fail(kParse, "unknown method " + method);
}

// ---------------------------------------------------------------------------------------------

struct DrawArgs {
    std::string input, certificate, method, out, report, svg;
    std::optional<std::uint64_t> seed;
};

int cmd_draw(const DrawArgs& a) {
    std::optional<Graph> g;
    Json cert;
    try {
        if (!a.input.empty()) g = read_graph_file(a.input);
        if (!a.certificate.empty()) cert = read_json_file(a.certificate);
    } catch (const ParseError& e) {
        fail(kParse, e.what());
    }
    if (cert.is_null() && a.method != "chordal" && a.method != "interval")
        fail(kParse, "method " + a.method + " needs --certificate");
    DrawOutput r;
    try {
        r = run_method(a.method, g, cert, a.seed.value_or(default_seed()));
    } catch (const ParseError& e) {
        fail(kParse, e.what());
    } catch (const CertificateError& e) {
        fail(kInvalid, e.what());
    } catch (const InvalidArgument& e) {
        fail(kInvalid, e.what());
    }
    Json report = to_json(r.report);
    report["method"] = a.method;
    for (auto& [k, v] : r.extra.items()) report[k] = v;
    if (!a.out.empty()) write_json_file(a.out, to_json(r.drawing));
    emit(a.report, report);
    if (!a.svg.empty()) {
        std::ofstream svg(a.svg);
        if (!svg) fail(kInternal, "cannot write " + a.svg);
        svg << to_svg(r.drawing, r.report.total);
    }
    for (const auto& b : r.report.bounds)
        if (!b.satisfied)
            fail(kViolated, "bound " + b.name + " violated: " + to_string(b.actual) + " > " + to_string(b.value));
    return kOk;
}

Drawing load_drawing(const std::string& path) {
    try {
        return drawing_from_json(read_json_file(path));
    } catch (const ParseError& e) {
        fail(kParse, e.what());
    }
}

CrossingReport recount(const Drawing& d) {
    try {
        validate_drawing(d);
        return count_crossings(d);
    } catch (const GeometryError& e) {
        fail(kInvalid, std::string("invalid drawing: ") + e.what());
    } catch (const InvalidArgument& e) {
        fail(kInvalid, std::string("invalid drawing: ") + e.what());
    }
}

int cmd_count(const std::string& drawing, const std::string& expected, const std::string& out) {
    Drawing d = load_drawing(drawing);
    CrossingReport rep = recount(d);
    emit(out, to_json(rep));
    if (!expected.empty()) {
        CrossingReport want;
        try {
            want = report_from_json(read_json_file(expected));
        } catch (const ParseError& e) {
            fail(kParse, e.what());
        }
        if (!same_counts(rep, want))
            fail(kViolated, "recount differs from " + expected + ": " + std::to_string(rep.total) + " vs " +
                                std::to_string(want.total) + " crossings");
    }
    return kOk;
}

std::optional<std::int64_t> named_bound(const Graph& g, const std::string& name) {
    auto b = bound_functions(g);
    if (name == "sum_deg2") return b.sum_deg2;
    if (name == "sum_edge_degprod") return b.sum_edge_degprod;
    if (name == "sum_deg3") return b.sum_deg3;
    if (name == "two_delta_m") return b.two_delta_m;
    if (name == "two_delta2_m") return b.two_delta2_m;
    return std::nullopt;
}

int cmd_verify(const std::string& graph, const std::string& drawing, const std::string& bound,
               const std::string& out) {
    Graph g;
    try {
        g = read_graph_file(graph);
    } catch (const ParseError& e) {
        fail(kParse, e.what());
    }
    auto value = named_bound(g, bound);
    if (!value) fail(kParse, "unknown bound " + bound);
    Drawing d = load_drawing(drawing);
    if (!(d.graph == g)) fail(kViolated, "drawing is not a drawing of " + graph);
    CrossingReport rep = recount(d);
    rep.add_bound(bound, Rational(static_cast<long>(*value)), Rational(rep.total));
    emit(out, to_json(rep));
    if (!rep.all_satisfied())
        fail(kViolated, "bound " + bound + " violated: " + std::to_string(rep.total) + " > " + std::to_string(*value));
    return kOk;
}

struct GenerateArgs {
    std::string family, out, graph_out, cert_out;
    std::optional<std::uint64_t> seed;
    int delta = 8, copies = 1, h = 6, k = 2, n = 20, width = 3, spread = 2, pieces = 6;
    std::vector<int> degrees;
};

int cmd_generate(const GenerateArgs& a) {
    std::uint64_t seed = a.seed.value_or(default_seed());
    Json graph, cert, meta = {{"family", a.family}, {"seed", seed}};
    try {
        if (a.family == "k33free") {
            auto inst = gen_k33_free(a.delta, a.copies);
            graph = to_json(inst.graph);
            cert = to_json(inst.partition);
            cert["kind"] = "decomposition";
            meta.update({{"max_degree", inst.max_degree}, {"copies", inst.copies}, {"copy_size", inst.copy_size},
                         {"crossing_number", inst.crossing_number}});
        } else if (a.family == "degreeset") {
            auto inst = gen_degree_set(a.degrees, a.copies);
            graph = to_json(inst.graph);
            meta.update({{"degree_set", inst.degree_set}, {"crossing_number", inst.crossing_number},
                         {"sum_deg2", inst.sum_deg2}, {"exceeds_fraction", inst.exceeds_fraction}});
        } else if (a.family == "khbased") {
            auto inst = gen_kh_based(a.h, a.delta);
            graph = to_json(inst.graph);
            meta.update({{"h", inst.h}, {"per_edge", inst.per_edge}, {"base", inst.base},
                         {"max_degree", inst.graph.max_degree()}, {"n", inst.graph.n()}, {"m", inst.graph.m()}});
        } else if (a.family == "random-ktree") {
            auto inst = random_ktree(a.k, a.n, seed);
            graph = to_json(inst.graph);
            cert = to_json(inst.clique_tree);
            cert["kind"] = "decomposition";
            cert["order"] = inst.peo;
            meta["k"] = inst.k;
        } else if (a.family == "random-interval") {
            auto inst = random_interval(a.n, seed);
            graph = to_json(inst.graph);
            cert = {{"kind", "order"}, {"order", inst.order}};
            Json iv = Json::array();
            for (auto [l, r] : inst.intervals) iv.push_back({l, r});
            meta["intervals"] = iv;
        } else if (a.family == "random-planar") {
            auto inst = random_planar(a.n, seed);
            graph = to_json(inst.graph);
            // Singleton bags on the graph itself: a width-1 planar partition.
            Decomposition d{inst.graph, {}};
            for (Vertex v = 0; v < inst.graph.n(); ++v) d.bags.push_back({v});
            cert = to_json(d);
            cert["kind"] = "decomposition";
        } else if (a.family == "random-pathwidth") {
            auto inst = random_pathwidth(a.k, a.n, seed);
            graph = to_json(inst.graph);
            cert = to_json(inst.path);
            cert["kind"] = "decomposition";
            cert["k"] = inst.k;
        } else if (a.family == "random-planar-decomposition") {
            auto inst = random_planar_decomposition(a.n, a.width, a.spread, seed);
            graph = to_json(inst.graph);
            cert = to_json(inst.decomposition);
            cert["kind"] = "decomposition";
        } else if (a.family == "random-cliquesum") {
            auto t = random_clique_sum_tree(seed, {.pieces = a.pieces, .h = std::min(a.h, 4)});
            graph = to_json(compose(t).graph);
            cert = to_json(t);
            meta["pieces"] = t.pieces.size();
        } else {
            fail(kParse, "unknown family " + a.family);
        }
    } catch (const InvalidArgument& e) {
        fail(kParse, e.what());
    }
    if (!a.graph_out.empty()) write_json_file(a.graph_out, graph);
    if (!a.cert_out.empty() && !cert.is_null()) write_json_file(a.cert_out, cert);
    emit(a.out, {{"graph", graph}, {"certificate", cert}, {"metadata", meta}});
    return kOk;
}

int cmd_oracle(const std::string& input, const std::string& out) {
    Graph g;
    try {
        g = read_graph_file(input);
    } catch (const ParseError& e) {
        fail(kParse, e.what());
    }
    if (g.n() > kOracleMaxVertices)
        fail(kParse, "oracle supports at most " + std::to_string(kOracleMaxVertices) + " vertices, got " +
                         std::to_string(g.n()));
    auto opt = convex_optimum(g);
    emit(out, {{"crossings", opt.crossings}, {"order", opt.order}});
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drawings with certified crossing bounds"};
    app.require_subcommand(1);

    DrawArgs da;
    auto* draw = app.add_subcommand("draw", "Draw a graph from a structural certificate");
    draw->add_option("--input", da.input, "Graph JSON or edge list");
    draw->add_option("--certificate", da.certificate, "Certificate JSON");
    draw->add_option("--method", da.method, "Drawing method")
        ->required()
        ->check(CLI::IsMember(
            {"partition", "decomposition", "clique-bags", "interval", "pathwidth", "chordal", "cliquesum"}));
    draw->add_option("--out", da.out, "Drawing JSON output");
    draw->add_option("--report", da.report, "Report JSON output (default stdout)");
    draw->add_option("--svg", da.svg, "SVG output");
    draw->add_option("--seed", da.seed, "Seed (default $CROSSBOUND_SEED or 0)");

    std::string c_drawing, c_expect, c_out;
    auto* count = app.add_subcommand("count", "Recount the crossings of a drawing exactly");
    count->add_option("--drawing", c_drawing, "Drawing JSON")->required();
    count->add_option("--expect", c_expect, "Report JSON to compare against");
    count->add_option("--out", c_out, "Report JSON output (default stdout)");

    std::string v_graph, v_drawing, v_bound, v_out;
    auto* verify = app.add_subcommand("verify", "Recount a drawing and compare with a bound of its graph");
    verify->add_option("--graph", v_graph, "Graph JSON or edge list")->required();
    verify->add_option("--drawing", v_drawing, "Drawing JSON")->required();
    verify->add_option("--bound", v_bound, "Bound name")
        ->required()
        ->check(CLI::IsMember({"sum_deg2", "sum_edge_degprod", "sum_deg3", "two_delta_m", "two_delta2_m"}));
    verify->add_option("--out", v_out, "Report JSON output (default stdout)");

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "Generate a graph with its certificate");
    gen->add_option("--family", ga.family, "Family")
        ->required()
        ->check(CLI::IsMember({"k33free", "degreeset", "khbased", "random-ktree", "random-interval", "random-planar",
                               "random-pathwidth", "random-planar-decomposition", "random-cliquesum"}));
    gen->add_option("--delta", ga.delta, "Maximum degree");
    gen->add_option("--copies", ga.copies, "Disjoint copies");
    gen->add_option("--degrees", ga.degrees, "Degree set")->delimiter(',');
    gen->set_help_flag("--help", "Print this help message and exit");
    gen->add_option("--h", ga.h, "Excluded minor size / clique-sum h");
    gen->add_option("--k", ga.k, "Tree- or pathwidth");
    gen->add_option("--n", ga.n, "Vertex count");
    gen->add_option("--width", ga.width, "Maximum bag size");
    gen->add_option("--spread", ga.spread, "Maximum spread");
    gen->add_option("--pieces", ga.pieces, "Clique-sum pieces");
    gen->add_option("--seed", ga.seed, "Seed (default $CROSSBOUND_SEED or 0)");
    gen->add_option("--out", ga.out, "Bundle JSON output (default stdout)");
    gen->add_option("--graph-out", ga.graph_out, "Graph JSON output");
    gen->add_option("--cert-out", ga.cert_out, "Certificate JSON output");

    std::string o_input, o_out;
    auto* oracle = app.add_subcommand("oracle", "Exact convex crossing number (n <= 9)");
    oracle->add_option("--input", o_input, "Graph JSON or edge list")->required();
    oracle->add_option("--out", o_out, "Result JSON output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kParse;
    }
    try {
        if (*draw) return cmd_draw(da);
        if (*count) return cmd_count(c_drawing, c_expect, c_out);
        if (*verify) return cmd_verify(v_graph, v_drawing, v_bound, v_out);
        if (*gen) return cmd_generate(ga);
        if (*oracle) return cmd_oracle(o_input, o_out);
    } catch (const Exit& e) {
        std::cerr << "crossbound: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "crossbound: internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}

#include "sps/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "sps/io.hpp"
#include "sps/oracle.hpp"
#include "sps/reductions.hpp"
#include "sps/rspsi.hpp"
#include "sps/saddp.hpp"

namespace sps {

namespace {

void print_embedding(std::ostream& out, const Embedding& embedding) {
    for (size_t i = 0; i < embedding.star_centers.size(); ++i) {
        out << "star " << i << " center " << embedding.star_centers[i] << " leaves";
        if (i < embedding.star_out_leaves.size())
            for (VertexId v : embedding.star_out_leaves[i])
                out << " " << v;
        if (i < embedding.star_in_leaves.size())
            for (VertexId v : embedding.star_in_leaves[i])
                out << " " << v;
        out << "\n";
    }
    for (size_t i = 0; i < embedding.path_vertices.size(); ++i) {
        out << "path " << i;
        for (VertexId v : embedding.path_vertices[i])
            out << " " << v;
        out << "\n";
    }
}

// Generator input: undirected graph with optional terminal and pair lines.
//   graph n=<int>
//   e <u> <v>
//   st <s> <t>
//   pair <ei> <fi>
struct GraphFile {
    UndirectedGraph graph;
    VertexId s = -1, t = -1;
    std::vector<std::pair<int, int>> pairs;
};

GraphFile load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, path + ": cannot open");
    GraphFile result;
    std::string line;
    int line_number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream stream(line);
        std::string word;
        if (!(stream >> word) || word[0] == '#')
            continue;
        auto bad = [&](const std::string& what) {
            fail(ErrorKind::Parse, path + ":" + std::to_string(line_number) + ": " + what);
        };
        if (word == "graph") {
            std::string n_token;
            if (!(stream >> n_token) || n_token.rfind("n=", 0) != 0)
                bad("expected 'graph n=<int>'");
            result.graph.n = std::stoi(n_token.substr(2));
            header_seen = true;
        } else if (word == "e") {
            int u, v;
            if (!(stream >> u >> v))
                bad("expected 'e <u> <v>'");
            result.graph.edges.emplace_back(u, v);
        } else if (word == "st") {
            if (!(stream >> result.s >> result.t))
                bad("expected 'st <s> <t>'");
        } else if (word == "pair") {
            int e, f;
            if (!(stream >> e >> f))
                bad("expected 'pair <ei> <fi>'");
            result.pairs.emplace_back(e, f);
        } else {
            bad("unknown directive '" + word + "'");
        }
    }
    if (!header_seen)
        fail(ErrorKind::Parse, path + ": missing 'graph n=<int>' header");
    return result;
}

// Bipartite input:
//   bigraph n1=<int> n2=<int>
//   e <left> <right>
//   p1 <v...>     (one part per line)
//   p2 <v...>
BipartiteInstance load_bigraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, path + ": cannot open");
    BipartiteInstance result;
    std::string line;
    int line_number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream stream(line);
        std::string word;
        if (!(stream >> word) || word[0] == '#')
            continue;
        auto bad = [&](const std::string& what) {
            fail(ErrorKind::Parse, path + ":" + std::to_string(line_number) + ": " + what);
        };
        if (word == "bigraph") {
            std::string a, b;
            if (!(stream >> a >> b) || a.rfind("n1=", 0) != 0 || b.rfind("n2=", 0) != 0)
                bad("expected 'bigraph n1=<int> n2=<int>'");
            result.n1 = std::stoi(a.substr(3));
            result.n2 = std::stoi(b.substr(3));
            header_seen = true;
        } else if (word == "e") {
            int u, v;
            if (!(stream >> u >> v))
                bad("expected 'e <left> <right>'");
            result.edges.emplace_back(u, v);
        } else if (word == "p1" || word == "p2") {
            std::vector<int> part;
            int v;
            while (stream >> v)
                part.push_back(v);
            (word == "p1" ? result.parts1 : result.parts2).push_back(part);
        } else {
            bad("unknown directive '" + word + "'");
        }
    }
    if (!header_seen)
        fail(ErrorKind::Parse, path + ": missing 'bigraph' header");
    return result;
}

// DIMACS cnf, checked for the exactly-twice occurrence rule by the generator.
Sat22Formula load_cnf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, path + ": cannot open");
    Sat22Formula formula;
    std::string line;
    int line_number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream stream(line);
        std::string word;
        if (!(stream >> word) || word == "c" || word[0] == '#')
            continue;
        auto bad = [&](const std::string& what) {
            fail(ErrorKind::Parse, path + ":" + std::to_string(line_number) + ": " + what);
        };
        if (word == "p") {
            std::string kind;
            int clause_count;
            if (!(stream >> kind >> formula.variable_count >> clause_count) || kind != "cnf")
                bad("expected 'p cnf <vars> <clauses>'");
            header_seen = true;
        } else {
            if (!header_seen)
                bad("clause before 'p cnf' header");
            std::vector<Sat22Formula::Literal> clause;
            int lit = std::stoi(word);
            while (lit != 0) {
                clause.push_back({std::abs(lit) - 1, lit < 0});
                if (!(stream >> lit))
                    bad("clause not terminated by 0");
            }
            formula.clauses.push_back(clause);
        }
    }
    if (!header_seen)
        fail(ErrorKind::Parse, path + ": missing 'p cnf' header");
    return formula;
}

std::string digraph_text(const Digraph& d) {
    std::ostringstream out;
    write_digraph(out, d);
    return out.str();
}

void write_reduction(const ReductionOutput& out, const std::string& dir, std::ostream& report) {
    std::filesystem::create_directories(dir);
    save_text(dir + "/host.dg", digraph_text(out.host));
    if (out.target_pattern) {
        std::ostringstream text;
        write_pattern(text, *out.target_pattern);
        save_text(dir + "/target.pat", text.str());
    }
    if (out.target_digraph)
        save_text(dir + "/target.dg", digraph_text(*out.target_digraph));
    std::ostringstream ann;
    for (const auto& [key, value] : out.meta)
        ann << "# meta " << key << " " << value << "\n";
    ann << "# meta expected_dtw_bound " << out.expected_dtw_bound << "\n";
    for (const auto& [v, tag] : out.roles)
        ann << "# role " << v << " " << tag << "\n";
    save_text(dir + "/annotations.ann", ann.str());
    report << "wrote " << dir << "/host.dg";
    if (out.target_pattern)
        report << " " << dir << "/target.pat";
    if (out.target_digraph)
        report << " " << dir << "/target.dg";
    report << " " << dir << "/annotations.ann\n";
    report << "is_dag=" << (is_dag(out.host) ? "true" : "false") << "\n";
}

int run_parsed(CLI::App& app, std::ostream& out, const std::string& command,
               const std::map<std::string, std::string>& files, const std::string& decomp_path,
               bool oracle_check, int cap, int breakability_w, const std::vector<int>& subset,
               const std::string& gen_kind, int gen_k, const std::string& out_dir) {
    (void)app;
    if (command == "validate-decomp") {
        Digraph d = load_digraph(files.at("digraph"));
        ArborealDecomposition dec = load_decomposition(files.at("decomp"));
        auto result = validate(d, dec);
        if (result.ok) {
            out << "VERDICT: YES\n";
            out << "width=" << result.width << "\n";
            return 0;
        }
        out << "VERDICT: NO\n";
        out << "issue: " << result.issue << "\n";
        if (result.certificate && !result.certificate->walk.empty()) {
            out << "walk";
            for (VertexId v : result.certificate->walk)
                out << " " << v;
            out << "\n";
        }
        return 1;
    }
    if (command == "solve-saddp") {
        Digraph d = load_digraph(files.at("digraph"));
        SaddpInstance inst{d, load_saddp(files.at("instance"))};
        ArborealDecomposition dec;
        if (!decomp_path.empty())
            dec = load_decomposition(decomp_path);
        else if (is_dag(d))
            dec = dag_decomposition(d);
        else
            fail(ErrorKind::NoDecomposition, "host is not a DAG; pass --decomp");
        auto solution = solve_saddp(inst, dec);
        if (oracle_check) {
            auto reference = oracle_saddp(inst);
            if (reference.has_value() != solution.has_value())
                fail(ErrorKind::Internal, "oracle check failed: verdicts disagree");
        }
        if (!solution) {
            out << "VERDICT: NO\n";
            return 1;
        }
        out << "VERDICT: YES\n";
        for (size_t i = 0; i < solution->paths.size(); ++i) {
            out << "path " << i;
            for (VertexId v : solution->paths[i])
                out << " " << v;
            out << "\n";
        }
        return 0;
    }
    if (command == "solve-rspsi") {
        Digraph d = load_digraph(files.at("digraph"));
        StarsPathsPattern pattern = load_pattern(files.at("pattern"));
        std::optional<ArborealDecomposition> dec;
        if (!decomp_path.empty())
            dec = load_decomposition(decomp_path);
        std::optional<Embedding> embedding;
        if (pattern.roots) {
            embedding = solve_rooted({d, pattern, dec});
        } else {
            embedding = solve_unrooted(d, pattern, dec);
        }
        if (oracle_check && pattern.order() <= cap) {
            auto reference = oracle_find_pattern(d, pattern, cap);
            if (reference.has_value() != embedding.has_value())
                fail(ErrorKind::Internal, "oracle check failed: verdicts disagree");
        }
        if (!embedding) {
            out << "VERDICT: NO\n";
            return 1;
        }
        out << "VERDICT: YES\n";
        print_embedding(out, *embedding);
        return 0;
    }
    if (command == "oracle") {
        Digraph d = load_digraph(files.at("digraph"));
        const std::string& target = files.at("pattern");
        std::ifstream probe(target);
        if (!probe)
            fail(ErrorKind::Parse, target + ": cannot open");
        std::string first_word;
        probe >> first_word;
        if (first_word == "pattern") {
            auto pattern = load_pattern(target);
            auto embedding = oracle_find_pattern(d, pattern, cap);
            if (!embedding) {
                out << "VERDICT: NO\n";
                return 1;
            }
            out << "VERDICT: YES\n";
            print_embedding(out, *embedding);
            return 0;
        }
        auto h = load_digraph(target);
        auto image = oracle_find_pattern(d, h, cap);
        if (!image) {
            out << "VERDICT: NO\n";
            return 1;
        }
        out << "VERDICT: YES\n";
        out << "map";
        for (VertexId v : *image)
            out << " " << v;
        out << "\n";
        return 0;
    }
    if (command == "breakability") {
        Digraph d = load_digraph(files.at("digraph"));
        VertexSet h;
        if (subset.empty())
            for (VertexId v = 0; v < d.vertex_count(); ++v)
                h.insert(v);
        else
            h.insert(subset.begin(), subset.end());
        out << "breakability=" << breakability(d, h, breakability_w) << "\n";
        return 0;
    }
    if (command == "gen") {
        ReductionOutput result;
        if (gen_kind == "expand") {
            auto d = load_digraph(files.at("input"));
            Expansion expansion = expand(d);
            result.host = expansion.graph;
            result.expected_dtw_bound = 3;
            for (VertexId v = 0; v < expansion.graph.vertex_count(); ++v)
                result.roles[v] = expansion.kind[v] == 0   ? "original"
                                  : expansion.kind[v] == 1 ? "internal-1"
                                                           : "internal-2";
        } else if (gen_kind == "clique") {
            auto file = load_graph_file(files.at("input"));
            result = gen_clique_to_expansion(file.graph, gen_k);
        } else if (gen_kind == "antidirected") {
            auto file = load_graph_file(files.at("input"));
            result = gen_antidirected(file.graph, file.s, file.t, file.pairs);
        } else if (gen_kind == "matching-stars") {
            result = gen_matching_to_stars(load_bigraph_file(files.at("input")));
        } else if (gen_kind == "matching-stars-big") {
            result = gen_matching_to_stars_plus_bigstar(load_bigraph_file(files.at("input")));
        } else if (gen_kind == "caterpillar") {
            result = gen_caterpillar(load_bigraph_file(files.at("input")));
        } else if (gen_kind == "sat22") {
            result = gen_sat22(load_cnf_file(files.at("input")));
        } else {
            fail(ErrorKind::Parse, "unknown generator '" + gen_kind + "'");
        }
        write_reduction(result, out_dir, out);
        return 0;
    }
    fail(ErrorKind::Parse, "unknown command '" + command + "'");
}

} // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"stars-paths subdigraph toolkit"};
    app.require_subcommand(1);

    std::map<std::string, std::string> files;
    std::string decomp_path, gen_kind, out_dir = ".";
    bool oracle_check = false;
    int cap = kDefaultOracleCap;
    int breakability_w = 0;
    int gen_k = 3;
    unsigned seed = 0;
    std::vector<int> subset;

    auto* validate_cmd = app.add_subcommand("validate-decomp", "validate an arboreal decomposition");
    validate_cmd->add_option("digraph", files["digraph"])->required();
    validate_cmd->add_option("decomp", files["decomp"])->required();

    auto* saddp_cmd = app.add_subcommand("solve-saddp", "subset avoiding directed disjoint paths");
    saddp_cmd->add_option("digraph", files["digraph"])->required();
    saddp_cmd->add_option("instance", files["instance"])->required();
    saddp_cmd->add_option("--decomp", decomp_path);
    saddp_cmd->add_flag("--oracle-check", oracle_check);

    auto* rspsi_cmd = app.add_subcommand("solve-rspsi", "stars-paths subdigraph isomorphism");
    rspsi_cmd->add_option("digraph", files["digraph"])->required();
    rspsi_cmd->add_option("pattern", files["pattern"])->required();
    rspsi_cmd->add_option("--decomp", decomp_path);
    rspsi_cmd->add_flag("--oracle-check", oracle_check);
    rspsi_cmd->add_option("--cap", cap);

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force subdigraph search");
    oracle_cmd->add_option("digraph", files["digraph"])->required();
    oracle_cmd->add_option("pattern", files["pattern"])->required();
    oracle_cmd->add_option("--cap", cap);

    auto* breakability_cmd = app.add_subcommand("breakability", "exact breakability at desk scale");
    breakability_cmd->add_option("digraph", files["digraph"])->required();
    breakability_cmd->add_option("--w", breakability_w);
    breakability_cmd->add_option("--subset", subset);

    auto* gen_cmd = app.add_subcommand("gen", "hardness instance generators");
    gen_cmd->add_option("kind", gen_kind)->required();
    gen_cmd->add_option("input", files["input"])->required();
    gen_cmd->add_option("-o", out_dir);
    gen_cmd->add_option("-k", gen_k);
    gen_cmd->add_option("--seed", seed);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    std::ostringstream out;
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return {2, std::string("usage error: ") + e.what() + "\n"};
    }
    try {
        std::string command;
        for (auto* sub : app.get_subcommands())
            command = sub->get_name();
        int code = run_parsed(app, out, command, files, decomp_path, oracle_check, cap, breakability_w,
                              subset, gen_kind, gen_k, out_dir);
        return {code, out.str()};
    } catch (const Error& e) {
        return {2, out.str() + "error: " + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {2, out.str() + "error: " + e.what() + "\n"};
    }
}

} // namespace sps

#include "sps/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sps {

namespace {

struct LineReader {
    std::istream& in;
    std::string name;
    int line_number = 0;

    /// Next non-blank, non-comment line split into tokens; empty at EOF.
    std::vector<std::string> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_number;
            std::vector<std::string> tokens;
            std::istringstream stream(line);
            std::string token;
            while (stream >> token)
                tokens.push_back(token);
            if (tokens.empty() || tokens[0][0] == '#')
                continue;
            return tokens;
        }
        return {};
    }

    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::Parse, name + ":" + std::to_string(line_number) + ": " + what);
    }
};

int parse_int(const LineReader& reader, const std::string& token) {
    try {
        size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size())
            reader.error("bad integer '" + token + "'");
        return value;
    } catch (const Error&) {
        throw;
    } catch (...) {
        reader.error("bad integer '" + token + "'");
    }
}

// "key=value" with a fixed key
int parse_kv(const LineReader& reader, const std::string& token, const std::string& key) {
    auto eq = token.find('=');
    if (eq == std::string::npos || token.substr(0, eq) != key)
        reader.error("expected " + key + "=<int>, got '" + token + "'");
    return parse_int(reader, token.substr(eq + 1));
}

} // namespace

Digraph read_digraph(std::istream& in, const std::string& name) {
    LineReader reader{in, name};
    auto header = reader.next();
    if (header.size() != 3 || header[0] != "digraph")
        reader.error("expected header 'digraph n=<int> loops=<0|1>'");
    int n = parse_kv(reader, header[1], "n");
    int loops = parse_kv(reader, header[2], "loops");
    if (loops != 0 && loops != 1)
        reader.error("loops flag must be 0 or 1");
    std::vector<Arc> arcs;
    for (auto tokens = reader.next(); !tokens.empty(); tokens = reader.next()) {
        if (tokens.size() != 2)
            reader.error("expected '<tail> <head>'");
        arcs.emplace_back(parse_int(reader, tokens[0]), parse_int(reader, tokens[1]));
    }
    try {
        return Digraph::from_arc_list(n, arcs, loops == 1);
    } catch (const Error& e) {
        reader.error(e.what());
    }
}

void write_digraph(std::ostream& out, const Digraph& d) {
    out << "digraph n=" << d.vertex_count() << " loops=" << (d.loops_allowed() ? 1 : 0) << "\n";
    for (const auto& [tail, head] : d.sorted_arcs())
        out << tail << " " << head << "\n";
}

ArborealDecomposition read_decomposition(std::istream& in, const std::string& name) {
    LineReader reader{in, name};
    auto header = reader.next();
    if (header.size() != 3 || header[0] != "arboreal")
        reader.error("expected header 'arboreal nodes=<int> root=<id>'");
    ArborealDecomposition dec;
    dec.node_count = parse_kv(reader, header[1], "nodes");
    dec.root = parse_kv(reader, header[2], "root");
    dec.bags.assign(std::max(dec.node_count, 0), {});
    std::vector<char> bag_seen(std::max(dec.node_count, 0), 0);
    for (auto tokens = reader.next(); !tokens.empty(); tokens = reader.next()) {
        if (tokens[0] == "bag") {
            if (tokens.size() < 2)
                reader.error("bag line needs a node id");
            int node = parse_int(reader, tokens[1]);
            if (node < 0 || node >= dec.node_count)
                reader.error("bag node out of range");
            if (bag_seen[node])
                reader.error("duplicate bag for node " + std::to_string(node));
            bag_seen[node] = 1;
            for (size_t i = 2; i < tokens.size(); ++i)
                dec.bags[node].insert(parse_int(reader, tokens[i]));
        } else if (tokens[0] == "edge") {
            if (tokens.size() < 4 || tokens[3] != "guard")
                reader.error("expected 'edge <parent> <child> guard <v...>'");
            ArborealDecomposition::TreeEdge edge;
            edge.parent = parse_int(reader, tokens[1]);
            edge.child = parse_int(reader, tokens[2]);
            for (size_t i = 4; i < tokens.size(); ++i)
                edge.guard.insert(parse_int(reader, tokens[i]));
            dec.edges.push_back(std::move(edge));
        } else {
            reader.error("unknown directive '" + tokens[0] + "'");
        }
    }
    return dec;
}

void write_decomposition(std::ostream& out, const ArborealDecomposition& dec) {
    out << "arboreal nodes=" << dec.node_count << " root=" << dec.root << "\n";
    for (int node = 0; node < dec.node_count; ++node) {
        out << "bag " << node;
        for (VertexId v : dec.bags[node])
            out << " " << v;
        out << "\n";
    }
    auto edges = dec.edges;
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return std::pair(a.parent, a.child) < std::pair(b.parent, b.child);
    });
    for (const auto& edge : edges) {
        out << "edge " << edge.parent << " " << edge.child << " guard";
        for (VertexId v : edge.guard)
            out << " " << v;
        out << "\n";
    }
}

StarsPathsPattern read_pattern(std::istream& in, const std::string& name) {
    LineReader reader{in, name};
    auto header = reader.next();
    if (header.size() != 2 || header[0] != "pattern")
        reader.error("expected header 'pattern k=<int>'");
    int k = parse_kv(reader, header[1], "k");
    if (k < 1)
        reader.error("pattern needs at least one star");
    StarsPathsPattern pattern;
    pattern.stars.assign(k, {});
    std::vector<char> star_seen(k, 0);
    for (auto tokens = reader.next(); !tokens.empty(); tokens = reader.next()) {
        if (tokens[0] == "star") {
            if (tokens.size() != 4)
                reader.error("expected 'star <i> out=<int> in=<int>'");
            int index = parse_int(reader, tokens[1]);
            if (index < 0 || index >= k)
                reader.error("star index out of range");
            if (star_seen[index])
                reader.error("duplicate star " + std::to_string(index));
            star_seen[index] = 1;
            pattern.stars[index].out_leaves = parse_kv(reader, tokens[2], "out");
            pattern.stars[index].in_leaves = parse_kv(reader, tokens[3], "in");
        } else if (tokens[0] == "path") {
            if (tokens.size() != 4)
                reader.error("expected 'path <i> <j> len=<vertex_count>'");
            StarsPathsPattern::Path path;
            path.from = parse_int(reader, tokens[1]);
            path.to = parse_int(reader, tokens[2]);
            path.vertex_count = parse_kv(reader, tokens[3], "len");
            pattern.paths.push_back(path);
        } else if (tokens[0] == "roots") {
            if (static_cast<int>(tokens.size()) != k + 1)
                reader.error("roots line needs exactly k vertices");
            std::vector<VertexId> roots;
            for (size_t i = 1; i < tokens.size(); ++i)
                roots.push_back(parse_int(reader, tokens[i]));
            pattern.roots = std::move(roots);
        } else {
            reader.error("unknown directive '" + tokens[0] + "'");
        }
    }
    try {
        pattern.check();
    } catch (const Error& e) {
        reader.error(e.what());
    }
    return pattern;
}

void write_pattern(std::ostream& out, const StarsPathsPattern& pattern) {
    out << "pattern k=" << pattern.star_count() << "\n";
    for (int i = 0; i < pattern.star_count(); ++i)
        out << "star " << i << " out=" << pattern.stars[i].out_leaves << " in=" << pattern.stars[i].in_leaves
            << "\n";
    for (const auto& path : pattern.paths)
        out << "path " << path.from << " " << path.to << " len=" << path.vertex_count << "\n";
    if (pattern.roots) {
        out << "roots";
        for (VertexId v : *pattern.roots)
            out << " " << v;
        out << "\n";
    }
}

SaddpSpec read_saddp(std::istream& in, const std::string& name) {
    LineReader reader{in, name};
    auto header = reader.next();
    if (header.size() != 3 || header[0] != "saddp")
        reader.error("expected header 'saddp r=<int> k=<int>'");
    int r = parse_kv(reader, header[1], "r");
    int k = parse_kv(reader, header[2], "k");
    if (r < 0 || k < 0)
        reader.error("negative counts");
    SaddpSpec spec;
    spec.avoid_sets.assign(k, {});
    spec.budgets.assign(k, 0);
    std::vector<char> set_seen(k, 0);
    for (auto tokens = reader.next(); !tokens.empty(); tokens = reader.next()) {
        if (tokens[0] == "req") {
            if (tokens.size() != 4)
                reader.error("expected 'req <s> <t> <p>'");
            Request req{parse_int(reader, tokens[1]), parse_int(reader, tokens[2])};
            if (req.source == req.target)
                reader.error("request terminals must differ");
            int size = parse_int(reader, tokens[3]);
            if (size < 2)
                reader.error("request size must be at least 2");
            spec.requests.push_back(req);
            spec.sizes.push_back(size);
        } else if (tokens[0] == "set") {
            if (tokens.size() < 4 || tokens[3] != ":")
                reader.error("expected 'set <i> budget=<x> : <v...>'");
            int index = parse_int(reader, tokens[1]);
            if (index < 0 || index >= k)
                reader.error("set index out of range");
            if (set_seen[index])
                reader.error("duplicate set " + std::to_string(index));
            set_seen[index] = 1;
            spec.budgets[index] = parse_kv(reader, tokens[2], "budget");
            for (size_t i = 4; i < tokens.size(); ++i)
                spec.avoid_sets[index].insert(parse_int(reader, tokens[i]));
        } else {
            reader.error("unknown directive '" + tokens[0] + "'");
        }
    }
    if (static_cast<int>(spec.requests.size()) != r)
        reader.error("request count differs from header");
    return spec;
}

void write_saddp(std::ostream& out, const SaddpSpec& spec) {
    out << "saddp r=" << spec.requests.size() << " k=" << spec.avoid_sets.size() << "\n";
    for (size_t i = 0; i < spec.requests.size(); ++i)
        out << "req " << spec.requests[i].source << " " << spec.requests[i].target << " " << spec.sizes[i]
            << "\n";
    for (size_t i = 0; i < spec.avoid_sets.size(); ++i) {
        out << "set " << i << " budget=" << spec.budgets[i] << " :";
        for (VertexId v : spec.avoid_sets[i])
            out << " " << v;
        out << "\n";
    }
}

namespace {

template <typename T, typename Reader>
T load_file(const std::string& path, Reader reader) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, path + ": cannot open");
    return reader(in, path);
}

} // namespace

Digraph load_digraph(const std::string& path) {
    return load_file<Digraph>(path, [](std::istream& in, const std::string& name) { return read_digraph(in, name); });
}

ArborealDecomposition load_decomposition(const std::string& path) {
    return load_file<ArborealDecomposition>(
        path, [](std::istream& in, const std::string& name) { return read_decomposition(in, name); });
}

StarsPathsPattern load_pattern(const std::string& path) {
    return load_file<StarsPathsPattern>(
        path, [](std::istream& in, const std::string& name) { return read_pattern(in, name); });
}

SaddpSpec load_saddp(const std::string& path) {
    return load_file<SaddpSpec>(path, [](std::istream& in, const std::string& name) { return read_saddp(in, name); });
}

void save_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        fail(ErrorKind::Parse, path + ": cannot open for writing");
    out << content;
}

} // namespace sps

#include "gibbs/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gibbs {

using nlohmann::json;

namespace {

json graph_json(const Graph& g) {
    json j;
    j["vertices"] = g.n_vertices;
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    j["ghost"] = g.has_ghost() ? json(g.ghost) : json(nullptr);
    j["boundary"] = g.boundary;
    if (g.embedding.empty()) {
        j["embedding"] = nullptr;
    } else {
        json emb = json::array();
        for (const auto& c : g.embedding)
            emb.push_back(c.empty() ? json(nullptr) : json(c));
        j["embedding"] = std::move(emb);
    }
    if (g.is_torus()) {
        j["torus_length"] = g.torus_length;
        j["edge_shift"] = g.edge_shift;
    }
    return j;
}

Graph graph_from(const json& j) {
    Graph g;
    g.n_vertices = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges")) {
        const int u = e.at(0).get<int>(), v = e.at(1).get<int>();
        if (u < 0 || u >= g.n_vertices || v < 0 || v >= g.n_vertices)
            throw std::invalid_argument("graph json: edge endpoint out of range");
        g.edges.emplace_back(u, v);
    }
    g.ghost = j.at("ghost").is_null() ? -1 : j.at("ghost").get<int>();
    g.boundary = j.at("boundary").get<std::vector<int>>();
    if (!j.at("embedding").is_null())
        for (const auto& c : j.at("embedding"))
            g.embedding.push_back(c.is_null() ? std::vector<int>{} : c.get<std::vector<int>>());
    if (j.contains("torus_length")) {
        g.torus_length = j.at("torus_length").get<int>();
        g.edge_shift = j.at("edge_shift").get<std::vector<std::vector<int>>>();
    }

    // ghost edges must form the trailing index range, one per original vertex
    g.n_internal_edges = g.n_edges();
    if (g.has_ghost()) {
        int first_ghost = g.n_edges();
        for (int e = 0; e < g.n_edges(); ++e) {
            const bool touches = g.edges[e].first == g.ghost || g.edges[e].second == g.ghost;
            if (touches && first_ghost == g.n_edges()) first_ghost = e;
            if (!touches && first_ghost < g.n_edges())
                throw std::invalid_argument("graph json: ghost edges must trail the edge list");
        }
        g.n_internal_edges = first_ghost;
        if (g.n_edges() - first_ghost != g.n_vertices - 1)
            throw std::invalid_argument("graph json: expected one ghost edge per vertex");
    }
    for (int b : g.boundary)
        if (b < 0 || b >= g.n_vertices || b == g.ghost)
            throw std::invalid_argument("graph json: bad boundary vertex");
    return g;
}

}  // namespace

std::string graph_to_json(const Graph& g) { return graph_json(g).dump(2); }

Graph graph_from_json(const std::string& text) { return graph_from(json::parse(text)); }

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << graph_to_json(g) << "\n";
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return graph_from_json(ss.str());
}

std::string model_to_json(const ModelSpec& m) {
    json j;
    j["type"] = m.tag_name();
    switch (m.tag) {
        case ModelTag::ising:
            j["beta"] = m.beta;
            j["h"] = m.h;
            j["convention"] =
                m.convention == EnergyConvention::pair_product ? "pair-product" : "disagreement";
            break;
        case ModelTag::bernoulli:
            j["p"] = m.p;
            break;
        case ModelTag::random_cluster:
            j["p"] = m.p;
            j["q"] = m.q;
            j["h"] = m.h;
            break;
        default:
            j["x"] = m.x;
            break;
    }
    return j.dump();
}

ModelSpec model_from_json(const std::string& text) {
    const json j = json::parse(text);
    const std::string type = j.at("type").get<std::string>();
    if (type == "ising") {
        const auto conv = j.value("convention", std::string("pair-product")) == "disagreement"
                              ? EnergyConvention::disagreement_count
                              : EnergyConvention::pair_product;
        return ModelSpec::ising(j.at("beta").get<double>(), j.value("h", 0.0), conv);
    }
    if (type == "bernoulli") return ModelSpec::bernoulli(j.at("p").get<double>());
    if (type == "random-cluster")
        return ModelSpec::random_cluster(j.at("p").get<double>(), j.value("q", 2.0),
                                         j.value("h", 0.0));
    if (type == "loop-o1") return ModelSpec::loop_o1(j.at("x").get<double>());
    if (type == "single-current") return ModelSpec::single_current(j.at("x").get<double>());
    if (type == "double-current") return ModelSpec::double_current(j.at("x").get<double>());
    throw std::invalid_argument("model json: unknown type " + type);
}

void save_distribution_csv(const ExactDistribution& dist, const ModelSpec& m,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    out << "# graph_hash=" << std::hex << dist.graph_hash << std::dec
        << " model=" << model_to_json(m) << "\n";
    out << "config_bits_hex,weight,probability\n";
    const int nibbles = (dist.width + 3) / 4;
    for (std::size_t idx = 0; idx < dist.n_states(); ++idx) {
        if (dist.prob[idx] == 0.0) continue;
        std::ostringstream hexs;
        hexs << std::hex << idx;
        std::string h = hexs.str();
        while (static_cast<int>(h.size()) < nibbles) h.insert(h.begin(), '0');
        out << h << "," << dist.prob[idx] * dist.z << "," << dist.prob[idx] << "\n";
    }
}

void save_batch(const SampleBatch& batch, const std::string& prefix) {
    std::ofstream hex(prefix + ".hex");
    if (!hex) throw std::runtime_error("cannot write " + prefix + ".hex");
    if (batch.kind == SampleBatch::Kind::edge) {
        for (const auto& c : batch.edge_configs) hex << c.to_hex() << "\n";
    } else {
        for (const auto& s : batch.spin_configs) {
            EdgeConfig bits(s.size(), batch.graph_hash);
            for (int v = 0; v < s.size(); ++v)
                if (s.spin(v) > 0) bits.set(v);
            hex << bits.to_hex() << "\n";
        }
    }

    json side;
    side["kind"] = batch.kind == SampleBatch::Kind::edge ? "edge" : "spin";
    side["model"] = json::parse(model_to_json(batch.model));
    side["graph_hash"] = batch.graph_hash;
    side["n_samples"] = batch.size();
    side["chain"] = {{"seed", batch.chain.seed},
                     {"burn_in", batch.chain.burn_in},
                     {"thinning", batch.chain.thinning},
                     {"n_samples", batch.chain.n_samples}};
    std::ofstream meta(prefix + ".json");
    if (!meta) throw std::runtime_error("cannot write " + prefix + ".json");
    meta << side.dump(2) << "\n";
}

SampleBatch load_batch(const std::string& prefix, const Graph& g) {
    std::ifstream meta(prefix + ".json");
    if (!meta) throw std::runtime_error("cannot read " + prefix + ".json");
    json side;
    meta >> side;

    SampleBatch batch;
    batch.kind =
        side.at("kind").get<std::string>() == "edge" ? SampleBatch::Kind::edge : SampleBatch::Kind::spin;
    batch.model = model_from_json(side.at("model").dump());
    batch.graph_hash = side.at("graph_hash").get<std::uint64_t>();
    batch.chain.seed = side.at("chain").at("seed").get<std::uint64_t>();
    batch.chain.burn_in = side.at("chain").at("burn_in").get<int>();
    batch.chain.thinning = side.at("chain").at("thinning").get<int>();
    batch.chain.n_samples = side.at("chain").at("n_samples").get<int>();
    if (batch.graph_hash != g.hash())
        throw std::invalid_argument("load_batch: batch belongs to a different graph");

    std::ifstream hex(prefix + ".hex");
    if (!hex) throw std::runtime_error("cannot read " + prefix + ".hex");
    std::string line;
    while (std::getline(hex, line)) {
        if (line.empty()) continue;
        if (batch.kind == SampleBatch::Kind::edge) {
            batch.edge_configs.push_back(EdgeConfig::from_hex(g.n_edges(), batch.graph_hash, line));
        } else {
            const EdgeConfig bits = EdgeConfig::from_hex(g.n_vertices, batch.graph_hash, line);
            SpinConfig s;
            s.graph_id = batch.graph_hash;
            s.spins.assign(g.n_vertices, -1);
            for (int v = 0; v < g.n_vertices; ++v)
                if (bits.test(v)) s.spins[v] = 1;
            batch.spin_configs.push_back(std::move(s));
        }
    }
    return batch;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_manifest(const std::vector<std::string>& files, const std::string& path) {
    json j;
    j["files"] = json::array();
    auto sorted = files;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& f : sorted) {
        std::ostringstream hexs;
        hexs << std::hex << fnv1a_file(f);
        j["files"].push_back({{"path", f}, {"fnv1a64", hexs.str()}});
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace gibbs

// Batch experiment runner: build graphs, run samplers and the exact engine,
// compute estimators, execute verification suites, and emit CSV/JSON files
// for external plotting.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "gibbs/estimators.hpp"
#include "gibbs/exact.hpp"
#include "gibbs/graph.hpp"
#include "gibbs/io.hpp"
#include "gibbs/model.hpp"
#include "gibbs/reliability.hpp"
#include "gibbs/rng.hpp"
#include "gibbs/samplers.hpp"
#include "gibbs/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gibbs;

namespace {

// "path:4", "cycle:6", "complete:4", "box:2:1", "torus:2:2", "grid:2:3",
// or a JSON file path
Graph parse_graph_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    auto arg = [&](std::size_t i) { return std::stoi(parts.at(i)); };
    if (parts[0] == "path") return make_path(arg(1));
    if (parts[0] == "cycle") return make_cycle(arg(1));
    if (parts[0] == "complete") return make_complete(arg(1));
    if (parts[0] == "box") return build_box(arg(1), arg(2));
    if (parts[0] == "torus") return build_torus(arg(1), arg(2));
    if (parts[0] == "grid") return build_grid_2d(arg(1), arg(2));
    return load_graph(spec);
}

Graph finish_graph(Graph g, bool ghost, const std::string& bc) {
    if (bc == "wired") {
        if (g.boundary.empty()) throw std::invalid_argument("wired bc needs a boundary");
        BoundaryCondition wired;
        wired.blocks.push_back(g.boundary);
        g = apply_boundary_condition(g, wired).graph;
    } else if (!bc.empty() && bc != "free") {
        throw std::invalid_argument("unknown boundary condition: " + bc);
    }
    if (ghost) g = attach_ghost(g);
    return g;
}

ModelSpec model_from_flags(const std::string& type, double beta, double h, double p, double q,
                           double x, const std::string& convention) {
    const auto conv = convention == "disagreement" ? EnergyConvention::disagreement_count
                                                   : EnergyConvention::pair_product;
    if (type == "ising") return ModelSpec::ising(beta, h, conv);
    if (type == "bernoulli") return ModelSpec::bernoulli(p);
    if (type == "random-cluster") return ModelSpec::random_cluster(p, q, h);
    if (type == "loop-o1") return ModelSpec::loop_o1(x);
    if (type == "single-current") return ModelSpec::single_current(x);
    if (type == "double-current") return ModelSpec::double_current(x);
    throw std::invalid_argument("unknown model type: " + type);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string estimate_csv(const std::string& header, const std::vector<std::string>& rows) {
    std::string text = header + "\n";
    for (const auto& r : rows) text += r + "\n";
    return text;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------- verify ---

struct VerifyArgs {
    double beta = 0.5;
    double h = 0.0;
    std::vector<double> betas;
    std::vector<int> inner_edges;
    double p_low = 0.3;
    double p_high = 0.5;
    int box_n = 2;
    std::vector<double> p_list{0.05, 0.1, 0.2};
    double tol = 1e-10;
};

int run_verify_suite(const std::string& suite, const Graph& g, const VerifyArgs& a,
                     std::ostream& out) {
    std::vector<CheckReport> reports;
    if (suite == "couplings" || suite == "all") {
        auto r = check_coupling_identities(g, a.beta, a.tol);
        reports.insert(reports.end(), r.begin(), r.end());
    }
    if (suite == "es" || suite == "all")
        reports.push_back(check_edwards_sokal(g, a.beta, a.h, a.tol));
    if (suite == "dc" || suite == "all")
        reports.push_back(check_double_current_identity(
            g, a.betas.empty() ? std::vector<double>{a.beta} : a.betas, a.tol));
    if (suite == "dmp") reports.push_back(check_dmp(g, a.inner_edges, a.p_low, 2.0, a.tol));
    if (suite == "domination") {
        const auto low = enumerate_measure(g, ModelSpec::bernoulli(a.p_low));
        const auto high = enumerate_measure(g, ModelSpec::bernoulli(a.p_high));
        reports.push_back(check_stochastic_domination(low, high));
    }
    if (suite == "decay") reports.push_back(check_decay_bounds(a.box_n, a.p_list));

    bool any_fail = false;
    for (const auto& r : reports) {
        out << to_json_line(r) << "\n";
        any_fail |= r.status == CheckStatus::fail;
    }
    return any_fail ? 3 : 0;
}

// -------------------------------------------------------------------- run ---

struct TaskOutcome {
    std::string file;
    bool verify_failed = false;
};

TaskOutcome run_task(const json& task, const Graph& g, const ModelSpec& model,
                     const SampleBatch* batch, const std::string& out_dir) {
    const std::string type = task.at("type").get<std::string>();
    const std::string output = out_dir + "/" + task.at("output").get<std::string>();
    TaskOutcome outcome;
    outcome.file = output;

    auto need_batch = [&]() -> const SampleBatch& {
        if (!batch) throw std::runtime_error("task needs samples but no chain was configured");
        return *batch;
    };

    if (type == "connectivity") {
        const int a = task.at("a").get<int>(), b = task.at("b").get<int>();
        const bool ghost_free = task.value("ghost_free", false);
        EstimateResult r;
        if (task.value("exact", false))
            r = connectivity(g, enumerate_measure(g, model), a, b, ghost_free);
        else
            r = connectivity(g, need_batch(), a, b, ghost_free);
        write_text(output, estimate_csv("a,b,ghost_free,mean,stderr,n",
                                        {std::to_string(a) + "," + std::to_string(b) + "," +
                                         (ghost_free ? "1" : "0") + "," + fmt(r.mean) + "," +
                                         fmt(r.stderr_) + "," + std::to_string(r.n)}));
    } else if (type == "connectivity-profile") {
        const int from = task.at("from").get<int>();
        std::vector<std::string> rows;
        std::optional<ExactDistribution> law;
        if (task.value("exact", false)) law = enumerate_measure(g, model);
        for (int to : task.at("to").get<std::vector<int>>()) {
            const EstimateResult r = law ? connectivity(g, *law, from, to)
                                         : connectivity(g, need_batch(), from, to);
            int dist = std::abs(to - from);
            if (!g.embedding.empty() && !g.embedding[from].empty()) {
                dist = 0;
                for (std::size_t k = 0; k < g.embedding[from].size(); ++k)
                    dist += std::abs(g.embedding[from][k] - g.embedding[to][k]);
            }
            rows.push_back(std::to_string(dist) + "," + fmt(r.mean) + "," + fmt(r.stderr_));
        }
        write_text(output, estimate_csv("distance,tau,stderr", rows));
    } else if (type == "reach") {
        std::vector<std::string> rows;
        for (int k = 0; k <= task.at("k_max").get<int>(); ++k) {
            const auto r = boundary_reach(g, need_batch(), k, task.value("ghost_free", false));
            rows.push_back(std::to_string(k) + "," + fmt(r.mean) + "," + fmt(r.stderr_));
        }
        write_text(output, estimate_csv("k,reach,stderr", rows));
    } else if (type == "crossing") {
        const auto r = crossing_probability(g, need_batch(), task.value("axis", 0));
        write_text(output, estimate_csv("axis,mean,stderr,n",
                                        {std::to_string(task.value("axis", 0)) + "," +
                                         fmt(r.mean) + "," + fmt(r.stderr_) + "," +
                                         std::to_string(r.n)}));
    } else if (type == "wrap") {
        const auto r = wrap_around_probability(g, need_batch(), task.value("axis", 0));
        write_text(output, estimate_csv("axis,mean,stderr,n",
                                        {std::to_string(task.value("axis", 0)) + "," +
                                         fmt(r.mean) + "," + fmt(r.stderr_) + "," +
                                         std::to_string(r.n)}));
    } else if (type == "criterion") {
        const auto rep = finite_size_criterion(g, model, task.at("x0").get<int>(),
                                               task.at("K").get<double>(),
                                               task.at("d").get<int>());
        const json j{{"b", rep.b_value},
                     {"satisfied", rep.satisfied},
                     {"K", rep.coupling_k},
                     {"d", rep.dimension},
                     {"S", rep.s_descriptor}};
        write_text(output, j.dump(2) + "\n");
    } else if (type == "sample-export") {
        save_batch(need_batch(), output);
        outcome.file = output + ".hex";
    } else if (type == "verify-couplings" || type == "verify-es" || type == "verify-dc") {
        VerifyArgs args;
        args.beta = task.at("beta").get<double>();
        args.h = task.value("h", 0.0);
        args.tol = task.value("tol", 1e-10);
        args.betas = task.value("betas", std::vector<double>{});
        std::ostringstream os;
        const std::string suite = type.substr(std::string("verify-").size());
        const int code = run_verify_suite(suite, g, args, os);
        write_text(output, os.str());
        outcome.verify_failed = code != 0;
    } else {
        throw std::runtime_error("unknown task type: " + type);
    }
    return outcome;
}

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
};

int run_experiment(const std::string& config_path, const RunOverrides& overrides) {
    json cfg;
    Graph g;
    ModelSpec model;
    std::optional<ChainConfig> chain;
    std::string out_dir;
    int workers = 1;

    // validation phase: exit 2 on any problem before producing outputs
    try {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot read config " + config_path);
        in >> cfg;
        if (overrides.seed) cfg["seed"] = *overrides.seed;
        if (overrides.workers) cfg["workers"] = *overrides.workers;
        if (overrides.out) cfg["out"] = *overrides.out;

        const auto& gspec = cfg.at("graph");
        g = gspec.contains("file") ? load_graph(gspec.at("file").get<std::string>())
                                   : parse_graph_spec(gspec.at("type").get<std::string>());
        g = finish_graph(std::move(g), gspec.value("ghost", false), gspec.value("bc", "free"));
        model = model_from_json(cfg.at("model").dump());
        if (cfg.contains("chain")) {
            ChainConfig c;
            c.seed = cfg.value("seed", 1);
            c.burn_in = cfg.at("chain").value("burn_in", 10000);
            c.thinning = cfg.at("chain").value("thinning", 1);
            c.n_samples = cfg.at("chain").at("n_samples").get<int>();
            chain = c;
        }
        out_dir = cfg.value("out", "out");
        workers = std::max(1, cfg.value("workers", 1));

        for (const auto& task : cfg.at("tasks")) {
            task.at("type").get<std::string>();
            task.at("output").get<std::string>();
            for (const char* key : {"a", "b", "x0", "from"})
                if (task.contains(key)) {
                    const int v = task.at(key).get<int>();
                    if (v < 0 || v >= g.n_vertices || v == g.ghost)
                        throw std::runtime_error(std::string("task vertex out of range: ") + key);
                }
            if (task.contains("to"))
                for (int v : task.at("to").get<std::vector<int>>())
                    if (v < 0 || v >= g.n_vertices || v == g.ghost)
                        throw std::runtime_error("task vertex out of range: to");
        }
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    }

    try {
        fs::create_directories(out_dir);
        std::optional<SampleBatch> batch;
        if (chain) batch = sample_model(g, model, *chain);

        // bounded worker pool; tasks own disjoint output files, so results
        // and the manifest are independent of the worker count
        const auto& tasks = cfg.at("tasks");
        std::vector<json> task_list(tasks.begin(), tasks.end());
        std::vector<TaskOutcome> outcomes(task_list.size());
        std::vector<std::string> errors;
        std::mutex err_mutex;
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < task_list.size();
                     i = next.fetch_add(1)) {
                    try {
                        outcomes[i] =
                            run_task(task_list[i], g, model, batch ? &*batch : nullptr, out_dir);
                    } catch (const std::exception& e) {
                        std::lock_guard lock(err_mutex);
                        errors.push_back(e.what());
                    }
                }
            });
        for (auto& t : pool) t.join();
        if (!errors.empty()) {
            for (const auto& e : errors) std::cerr << "task failure: " << e << "\n";
            return 1;
        }

        std::vector<std::string> files;
        bool verify_failed = false;
        for (const auto& o : outcomes) {
            files.push_back(o.file);
            verify_failed |= o.verify_failed;
        }
        write_manifest(files, out_dir + "/manifest.json");
        return verify_failed ? 3 : 0;
    } catch (const std::exception& e) {
        std::cerr << "task failure: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ising-model graphical representations: samplers, exact oracle, estimators"};
    app.require_subcommand(1);

    std::string graph_spec = "cycle:4", out_path, bc = "free";
    bool ghost = false;

    auto add_graph_flags = [&](CLI::App* cmd) {
        cmd->add_option("--graph", graph_spec,
                        "path:K, cycle:K, complete:K, box:d:n, torus:d:n, grid:rows:cols, or a "
                        "JSON file");
        cmd->add_flag("--ghost", ghost, "attach a ghost vertex");
        cmd->add_option("--bc", bc, "boundary condition: free or wired");
    };

    auto* cmd_build = app.add_subcommand("build-graph", "construct a graph and write JSON");
    add_graph_flags(cmd_build);
    cmd_build->add_option("--out", out_path, "output file")->required();

    std::string model_type = "bernoulli", convention = "pair-product";
    double beta = 0.5, h = 0.0, p = 0.5, q = 2.0, x = 0.5;
    auto add_model_flags = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_type,
                        "ising, bernoulli, random-cluster, loop-o1, single-current, "
                        "double-current");
        cmd->add_option("--beta", beta, "inverse temperature");
        cmd->add_option("--field", h, "external field h");
        cmd->add_option("--p", p, "edge probability");
        cmd->add_option("--q", q, "cluster weight");
        cmd->add_option("--x", x, "loop weight");
        cmd->add_option("--convention", convention, "pair-product or disagreement");
    };

    auto* cmd_enum = app.add_subcommand("enumerate", "exact law of a model on a small graph");
    add_graph_flags(cmd_enum);
    add_model_flags(cmd_enum);
    cmd_enum->add_option("--out", out_path, "distribution CSV")->required();

    std::uint64_t seed = 1;
    int burn_in = 10000, thinning = 1, n_samples = 1000;
    auto* cmd_sample = app.add_subcommand("sample", "draw configurations from a sampler");
    add_graph_flags(cmd_sample);
    add_model_flags(cmd_sample);
    cmd_sample->add_option("--seed", seed);
    cmd_sample->add_option("--burn-in", burn_in);
    cmd_sample->add_option("--thinning", thinning);
    cmd_sample->add_option("--n", n_samples);
    cmd_sample->add_option("--out", out_path, "batch prefix (.hex/.json)")->required();

    std::string task = "connectivity", batch_prefix, fit_csv;
    int va = 0, vb = 1, k_max = 0, axis = 0, x0 = 0, dim = 2;
    double coupling_k = 1.0;
    bool ghost_free = false, exact_mode = false;
    auto* cmd_est = app.add_subcommand("estimate", "statistics over a batch or exact law");
    add_graph_flags(cmd_est);
    add_model_flags(cmd_est);
    cmd_est->add_option("--task", task,
                        "connectivity, connectivity-profile, reach, crossing, wrap, criterion, "
                        "fit-xi");
    cmd_est->add_option("--batch", batch_prefix, "batch prefix from `sample`");
    cmd_est->add_flag("--exact", exact_mode, "use the exact engine instead of a batch");
    cmd_est->add_option("--a", va);
    cmd_est->add_option("--b", vb);
    cmd_est->add_option("--k-max", k_max);
    cmd_est->add_option("--axis", axis);
    cmd_est->add_option("--x0", x0);
    cmd_est->add_option("--d", dim);
    auto* opt_k = cmd_est->add_option(
        "--K", coupling_k, "criterion coupling constant (defaults to p for bernoulli)");
    cmd_est->add_flag("--ghost-free", ghost_free);
    cmd_est->add_option("--fit-csv", fit_csv, "(distance,tau,stderr) table for fit-xi");
    cmd_est->add_option("--out", out_path, "output CSV/JSON")->required();

    std::string suite = "couplings";
    VerifyArgs vargs;
    auto* cmd_verify = app.add_subcommand("verify", "machine checks of the exact identities");
    add_graph_flags(cmd_verify);
    cmd_verify->add_option("--suite", suite, "couplings, es, dc, dmp, domination, decay, or all");
    cmd_verify->add_option("--beta", vargs.beta);
    cmd_verify->add_option("--field", vargs.h);
    cmd_verify->add_option("--betas", vargs.betas, "beta grid for the dc suite");
    cmd_verify->add_option("--inner", vargs.inner_edges, "inner edge indices for the dmp suite");
    cmd_verify->add_option("--p-low", vargs.p_low);
    cmd_verify->add_option("--p-high", vargs.p_high);
    cmd_verify->add_option("--box-n", vargs.box_n, "box radius for the decay suite");
    cmd_verify->add_option("--p-list", vargs.p_list, "edge probabilities for the decay suite");
    cmd_verify->add_option("--tol", vargs.tol);
    cmd_verify->add_option("--out", out_path, "JSON-lines report (default stdout)");

    std::string p_grid = "0.51:0.99:0.01", h_grid = "0.0:1.0:0.25", proxy_out;
    int lower_k = 1, proxy_box = 0, proxy_samples = 2000;
    auto* cmd_kertesz = app.add_subcommand("kertesz", "analytic bound curves on a (p,h) sweep");
    cmd_kertesz->add_option("--d", dim);
    cmd_kertesz->add_option("--q", q);
    cmd_kertesz->add_option("--p-grid", p_grid, "lo:hi:step");
    cmd_kertesz->add_option("--k", lower_k, "box scale for the lower-bound threshold");
    cmd_kertesz->add_option("--out", out_path, "CSV output")->required();
    cmd_kertesz->add_option("--proxy-box", proxy_box,
                            "box radius for sampled ghost-free percolation proxies (0 = off)");
    cmd_kertesz->add_option("--h-grid", h_grid, "field grid for the proxies, lo:hi:step");
    cmd_kertesz->add_option("--proxy-samples", proxy_samples);
    cmd_kertesz->add_option("--proxy-out", proxy_out, "proxy CSV (default <out>.proxy.csv)");
    cmd_kertesz->add_option("--seed", seed);

    int max_edges = 10;
    double x_step = 0.01;
    std::string family = "all";
    auto* cmd_scan = app.add_subcommand("scan", "monotonicity scan over even-graph families");
    cmd_scan->add_option("--max-edges", max_edges);
    cmd_scan->add_option("--x-step", x_step);
    cmd_scan->add_option("--family", family, "single-cycle, two-cycle, or all");
    cmd_scan->add_option("--out", out_path, "CSV output")->required();

    std::string config_path;
    std::uint64_t run_seed = 0;
    int run_workers = 0;
    std::string run_out;
    auto* cmd_run = app.add_subcommand("run", "execute an experiment config");
    cmd_run->add_option("--config", config_path, "experiment JSON")->required();
    auto* opt_run_seed = cmd_run->add_option("--seed", run_seed, "override the config seed");
    auto* opt_run_workers =
        cmd_run->add_option("--workers", run_workers, "override the worker count");
    auto* opt_run_out = cmd_run->add_option("--out", run_out, "override the output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_build->parsed()) {
            save_graph(finish_graph(parse_graph_spec(graph_spec), ghost, bc), out_path);
        } else if (cmd_enum->parsed()) {
            const Graph g = finish_graph(parse_graph_spec(graph_spec), ghost, bc);
            const ModelSpec m = model_from_flags(model_type, beta, h, p, q, x, convention);
            save_distribution_csv(enumerate_measure(g, m), m, out_path);
        } else if (cmd_sample->parsed()) {
            const Graph g = finish_graph(parse_graph_spec(graph_spec), ghost, bc);
            const ModelSpec m = model_from_flags(model_type, beta, h, p, q, x, convention);
            const ChainConfig chain{seed, burn_in, thinning, n_samples};
            save_batch(sample_model(g, m, chain), out_path);
        } else if (cmd_est->parsed()) {
            const Graph g = finish_graph(parse_graph_spec(graph_spec), ghost, bc);
            if (task == "fit-xi") {
                std::ifstream in(fit_csv);
                if (!in) throw std::runtime_error("cannot read " + fit_csv);
                std::string line;
                std::getline(in, line);  // header
                std::vector<double> dist, tau;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    std::stringstream row(line);
                    std::string cell;
                    std::getline(row, cell, ',');
                    dist.push_back(std::stod(cell));
                    std::getline(row, cell, ',');
                    tau.push_back(std::stod(cell));
                }
                const auto fit = fit_correlation_length(dist, tau);
                const json j{{"xi", fit.xi},
                             {"amplitude", fit.amplitude},
                             {"r2", fit.r2},
                             {"window", {fit.window_lo, fit.window_hi}}};
                write_text(out_path, j.dump(2) + "\n");
            } else {
                if (!*opt_k && model_type == "bernoulli") coupling_k = p;
                const json task_json{{"type", task},
                                     {"output", fs::path(out_path).filename().string()},
                                     {"a", va},
                                     {"b", vb},
                                     {"k_max", k_max},
                                     {"axis", axis},
                                     {"x0", x0},
                                     {"K", coupling_k},
                                     {"d", dim},
                                     {"ghost_free", ghost_free},
                                     {"exact", exact_mode}};
                const ModelSpec m = model_from_flags(model_type, beta, h, p, q, x, convention);
                std::optional<SampleBatch> batch;
                if (!batch_prefix.empty()) batch = load_batch(batch_prefix, g);
                const auto parent = fs::path(out_path).parent_path().string();
                run_task(task_json, g, m, batch ? &*batch : nullptr,
                         parent.empty() ? "." : parent);
            }
        } else if (cmd_verify->parsed()) {
            const Graph g = finish_graph(parse_graph_spec(graph_spec), ghost, bc);
            std::ofstream file_out;
            if (!out_path.empty()) file_out.open(out_path);
            std::ostream& out = out_path.empty() ? std::cout : file_out;
            return run_verify_suite(suite, g, vargs, out);
        } else if (cmd_kertesz->parsed()) {
            double lo, hi, step;
            if (std::sscanf(p_grid.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
                throw std::invalid_argument("bad --p-grid, expected lo:hi:step");
            std::ostringstream csv;
            csv.precision(17);
            csv << "p,h_upper_bound,p_h_lower_threshold\n";
            const double threshold = kertesz_lower_bound_ph(dim, lower_k);
            for (double pv = lo; pv <= hi + 1e-12; pv += step) {
                const double upper = kertesz_upper_bound_h(std::min(pv, 1.0 - 1e-12));
                csv << pv << "," << (std::isinf(upper) ? "inf" : fmt(upper)) << "," << threshold
                    << "\n";
            }
            write_text(out_path, csv.str());
            if (proxy_box > 0) {
                // sampled ghost-free reach on a ghosted box as a percolation
                // proxy across the (p, h) grid
                double hlo, hhi, hstep;
                if (std::sscanf(h_grid.c_str(), "%lf:%lf:%lf", &hlo, &hhi, &hstep) != 3)
                    throw std::invalid_argument("bad --h-grid, expected lo:hi:step");
                const Graph g = attach_ghost(build_box(2, proxy_box));
                std::ostringstream proxy;
                proxy.precision(17);
                proxy << "p,h,ghost_free_reach,stderr\n";
                std::uint64_t stream = 0;
                for (double pv = lo; pv <= hi + 1e-12; pv += step)
                    for (double hv = hlo; hv <= hhi + 1e-12; hv += hstep) {
                        const ChainConfig chain{CounterRng::derive(seed, stream++), 2000, 2,
                                                proxy_samples};
                        const auto batch = sample_rc_general(g, pv, q, hv, chain);
                        const auto reach = boundary_reach(g, batch, proxy_box, true);
                        proxy << pv << "," << hv << "," << fmt(reach.mean) << ","
                              << fmt(reach.stderr_) << "\n";
                    }
                write_text(proxy_out.empty() ? out_path + ".proxy.csv" : proxy_out, proxy.str());
            }
        } else if (cmd_scan->parsed()) {
            std::vector<ScanGraph> graphs;
            if (family == "single-cycle" || family == "all") {
                auto f = single_cycle_family(max_edges);
                graphs.insert(graphs.end(), f.begin(), f.end());
            }
            if (family == "two-cycle" || family == "all") {
                auto f = two_cycle_family(max_edges);
                graphs.insert(graphs.end(), f.begin(), f.end());
            }
            const auto results = scan_monotonicity(graphs, x_step);
            std::ostringstream csv;
            csv.precision(17);
            csv << "description,non_monotone,x_lo,x_hi,drop\n";
            for (const auto& r : results)
                csv << r.description << "," << r.non_monotone << "," << r.x_lo << "," << r.x_hi
                    << "," << r.drop << "\n";
            write_text(out_path, csv.str());
            std::cout << to_json_line(summarize_scan(results, true)) << "\n";
        } else if (cmd_run->parsed()) {
            RunOverrides overrides;
            if (*opt_run_seed) overrides.seed = run_seed;
            if (*opt_run_workers) overrides.workers = run_workers;
            if (*opt_run_out) overrides.out = run_out;
            return run_experiment(config_path, overrides);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

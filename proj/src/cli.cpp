#include "tricolor/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tricolor/verify.hpp"

namespace tricolor::cli {

namespace {

constexpr const char* kSchema = "1";

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + out_path);
    os << payload;
}

Vec parse_slope(const std::string& text, int d) {
    Vec m = Vec::zero(d);
    std::stringstream ss(text);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= d) throw CLI::ValidationError("--m has more entries than the dimension");
        m[i++] = std::stoi(part);
    }
    if (i != d) throw CLI::ValidationError("--m needs exactly d comma-separated integers");
    return m;
}

Json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open input file " + path);
    return Json::parse(is);
}

struct SampleOptions {
    int d = 2, n = 4;
    std::string method = "exact";
    uint64_t draws = 100, steps = 1, burn_in = 100, chains = 1, seed = 0;
    std::string out, format = "jsonl";
};

int run_sample(const SampleOptions& o) {
    Dims dims = Dims::of(o.d, o.n);
    std::ostringstream payload;
    const bool csv = o.format == "csv";
    if (csv) {
        payload << "chain,index";
        for (int64_t i = 0; i < dims.cells(); ++i) payload << ",v" << i;
        payload << "\n";
    }
    auto emit = [&](uint64_t chain, uint64_t index, const Coloring& f) {
        if (csv) {
            payload << chain << "," << index;
            for (uint8_t c : f.values) payload << "," << static_cast<int>(c);
            payload << "\n";
            return;
        }
        Json rec;
        rec["schema"] = kSchema;
        rec["kind"] = "sample";
        rec["chain"] = chain;
        rec["index"] = index;
        rec["values"] = f.values;
        payload << rec.dump() << "\n";
    };

    if (o.method == "exact") {
        ExactSampler sampler(dims);
        for (uint64_t chain = 0; chain < o.chains; ++chain) {
            Rng rng = Rng::seeded(o.seed, chain);
            for (uint64_t i = 0; i < o.draws; ++i) emit(chain, i, sampler.draw_normalized(rng));
        }
    } else if (o.method == "glauber") {
        Grid g = Grid::torus_grid(dims);
        for (uint64_t chain = 0; chain < o.chains; ++chain) {
            Rng rng = Rng::seeded(o.seed, chain);
            Coloring f{dims, std::vector<uint8_t>(static_cast<size_t>(g.cell_count()))};
            for (int64_t i = 0; i < g.cell_count(); ++i)
                f.values[static_cast<size_t>(i)] = static_cast<uint8_t>(parity(g.vertex(i)));
            glauber_sweeps(f, rng, o.burn_in);
            for (uint64_t i = 0; i < o.draws; ++i) {
                glauber_sweeps(f, rng, o.steps);
                emit(chain, i, normalized(f));
            }
        }
    } else {
        throw CLI::ValidationError("--method must be exact or glauber");
    }
    write_output(o.out, payload.str());
    return 0;
}

std::vector<Coloring> load_samples(const std::string& path, const Dims& dims) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open samples file " + path);
    std::vector<Coloring> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '{') {
            Json j = Json::parse(line);
            out.push_back(Coloring{dims, j.at("values").get<std::vector<uint8_t>>()});
            continue;
        }
        if (line.rfind("chain,", 0) == 0) continue;  // csv header
        std::vector<uint8_t> values;
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col++ < 2) continue;  // chain, index
            values.push_back(static_cast<uint8_t>(std::stoi(cell)));
        }
        out.push_back(Coloring{dims, std::move(values)});
    }
    return out;
}

int run_stats(const std::string& in, int d, int n, const std::string& x_text, const std::string& out) {
    Dims dims = Dims::of(d, n);
    std::vector<Coloring> samples = load_samples(in, dims);
    Json j;
    j["schema"] = kSchema;
    j["kind"] = "stats";
    j["samples"] = samples.size();

    // average color proportions per bipartition class (exact rationals)
    std::array<std::array<Rational, 3>, 2> acc{};
    std::array<Rational, 3> min_acc{};
    for (const Coloring& f : samples) {
        RigidityStats st = rho_stats(f);
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 3; ++k) acc[static_cast<size_t>(i)][static_cast<size_t>(k)] += st.rho[static_cast<size_t>(i)][static_cast<size_t>(k)];
        for (int k = 0; k < 3; ++k) min_acc[static_cast<size_t>(k)] += st.min_rho[static_cast<size_t>(k)];
    }
    auto rat_str = [](const Rational& r) {
        return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
    };
    if (!samples.empty()) {
        const int64_t s = static_cast<int64_t>(samples.size());
        Json rho = Json::array();
        for (int i = 0; i < 2; ++i) {
            Json row = Json::array();
            for (int k = 0; k < 3; ++k) row.push_back(rat_str(acc[static_cast<size_t>(i)][static_cast<size_t>(k)] / s));
            rho.push_back(row);
        }
        j["mean_rho"] = rho;
        Json mins = Json::array();
        for (int k = 0; k < 3; ++k) mins.push_back(rat_str(min_acc[static_cast<size_t>(k)] / s));
        j["mean_min_rho"] = mins;
        j["slope_event_freq"] = rat_str(slope_event_freq(samples));
    }

    if (!x_text.empty() && !samples.empty()) {
        Vec x = parse_slope(x_text, d);
        AxConditionals cond = a_x_conditionals(samples, x);
        Json ax;
        ax["events"] = cond.events;
        ax["center_one"] = cond.center_one;
        ax["neighbor_one"] = cond.neighbor_one;
        j["a_x"] = ax;
    }

    // boundary-size histogram over the slope-0 samples
    std::map<int64_t, int64_t> hist;
    for (const Coloring& f : samples) {
        QpHeight h = lift(normalized(f));
        if (!h.slope.is_zero()) continue;
        for (const auto& [size, mult] : boundary_size_histogram(to_torus_hhf(h))) hist[size] += mult;
    }
    Json jh = Json::array();
    for (const auto& [size, mult] : hist) {
        Json e;
        e["boundary"] = size;
        e["count"] = mult;
        jh.push_back(e);
    }
    j["boundary_histogram"] = jh;
    write_output(out, j.dump(2));
    return 0;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"verification-grade toolkit for proper 3-colorings and height functions on discrete tori"};
    app.require_subcommand(1);

    // count
    auto* count = app.add_subcommand("count", "count colorings and partition them by slope");
    int c_d = 1, c_n = 6;
    std::string c_method = "dfs", c_out;
    count->add_option("--d", c_d, "dimension")->required();
    count->add_option("--n", c_n, "side length")->required();
    count->add_option("--method", c_method, "dfs|transfer (dfs also partitions by slope)");
    count->add_option("--out", c_out, "output file (default stdout)");

    // classify
    auto* classify = app.add_subcommand("classify", "slope of a function file");
    std::string cl_in, cl_out;
    classify->add_option("--in", cl_in, "function file (json)")->required();
    classify->add_option("--out", cl_out, "output file");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite;
    int v_d = 1, v_n = 6, v_samples = 100;
    uint64_t v_seed = 0;
    int64_t v_draws = 60000;
    std::string v_out;
    verify->add_option("suite", v_suite, "bijection|height-formula|trichotomy|embedding|steep|stats")->required();
    verify->add_option("--d", v_d, "dimension")->required();
    verify->add_option("--n", v_n, "side length")->required();
    verify->add_option("--samples", v_samples, "function budget for sampled suites");
    verify->add_option("--seed", v_seed, "sampling seed");
    verify->add_option("--draws", v_draws, "draw budget for the stats suite");
    verify->add_option("--out", v_out, "output file");

    // sample
    auto* sample = app.add_subcommand("sample", "draw colorings (exact or Glauber)");
    SampleOptions so;
    sample->add_option("--d", so.d, "dimension")->required();
    sample->add_option("--n", so.n, "side length")->required();
    sample->add_option("--method", so.method, "exact|glauber");
    sample->add_option("--draws", so.draws, "samples per chain");
    sample->add_option("--steps", so.steps, "glauber sweeps between samples");
    sample->add_option("--burn-in", so.burn_in, "glauber sweeps before the first sample");
    sample->add_option("--chains", so.chains, "independent chains");
    sample->add_option("--seed", so.seed, "rng seed");
    sample->add_option("--out", so.out, "output file");
    sample->add_option("--format", so.format, "jsonl|csv");

    // psi / psi-inverse
    auto* psi_cmd = app.add_subcommand("psi", "apply the slope-flattening map to a function file");
    std::string p_in, p_out, p_scaffold;
    int p_k = kDefaultWindowK;
    psi_cmd->add_option("--in", p_in, "qp function file")->required();
    psi_cmd->add_option("--out", p_out, "output file");
    psi_cmd->add_option("--window-k", p_k, "initial window radius");
    psi_cmd->add_option("--scaffold-out", p_scaffold, "also dump the scaffold (debugging)");
    auto* psi_inv = app.add_subcommand("psi-inverse", "invert the slope-flattening map");
    std::string pi_in, pi_out, pi_m;
    int pi_k = kDefaultWindowK;
    psi_inv->add_option("--in", pi_in, "slope-0 function file")->required();
    psi_inv->add_option("--m", pi_m, "original slope, comma separated")->required();
    psi_inv->add_option("--out", pi_out, "output file");
    psi_inv->add_option("--window-k", pi_k, "initial window radius");

    // stats
    auto* stats = app.add_subcommand("stats", "statistics over a sample stream");
    std::string st_in, st_out, st_x;
    int st_d = 2, st_n = 4;
    stats->add_option("--in", st_in, "samples file (jsonl or csv)")->required();
    stats->add_option("--d", st_d, "dimension")->required();
    stats->add_option("--n", st_n, "side length")->required();
    stats->add_option("--x", st_x, "probe vertex for the distance-2 event, comma separated");
    stats->add_option("--out", st_out, "output file");

    // CLI11 consumes arguments in reverse order
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? 0 : 2;
    }

    // progress notes for long enumerations go to stderr; results never do
    auto note_progress = [](const Dims& dims, const char* what) {
        if (dims.cells() >= 36) std::cerr << "# " << what << " d=" << dims.d << " n=" << dims.n << "\n";
    };

    if (count->parsed()) {
        Dims dims = Dims::of(c_d, c_n);
        note_progress(dims, "enumerating");
        Json j;
        j["schema"] = kSchema;
        j["kind"] = "count";
        j["d"] = dims.d;
        j["n"] = dims.n;
        if (c_method == "transfer") {
            j["total"] = count_colorings(dims, CountMethod::transfer).str();
            j["method"] = "transfer";
        } else {
            SlopePartition p = partition_by_slope(dims);
            Json pj = to_json(p);
            j["total"] = pj["total"];
            j["counts"] = pj["counts"];
            j["method"] = "dfs";
        }
        write_output(c_out, j.dump(2));
        return 0;
    }

    if (classify->parsed()) {
        Json in = load_json(cl_in);
        Json j;
        j["schema"] = kSchema;
        j["kind"] = "classify";
        Vec slope;
        if (in.at("kind") == "coloring") {
            slope = slope_of(coloring_from_json(in));
        } else if (in.at("kind") == "qp") {
            slope = slope_of(qp_from_json(in));
        } else {
            slope = Vec::zero(in.at("d").get<int>());  // torus HHFs are slope 0
        }
        std::vector<int32_t> mv(slope.c.begin(), slope.c.begin() + slope.d);
        j["slope"] = mv;
        write_output(cl_out, j.dump(2));
        return 0;
    }

    if (verify->parsed()) {
        Dims dims = Dims::of(v_d, v_n);
        note_progress(dims, "verifying");
        Report r;
        if (v_suite == "bijection") r = verify_bijection(dims);
        else if (v_suite == "height-formula") r = verify_height_formula(dims, v_samples, v_seed);
        else if (v_suite == "trichotomy") r = verify_trichotomy(dims, v_samples, v_seed);
        else if (v_suite == "embedding") r = verify_embedding(dims);
        else if (v_suite == "steep") r = verify_steep(dims);
        else if (v_suite == "stats") r = verify_stats(dims, v_seed, v_draws);
        else throw CLI::ValidationError("unknown suite " + v_suite);
        write_output(v_out, report_to_json(r).dump(2));
        return r.ok() ? 0 : 1;
    }

    if (sample->parsed()) return run_sample(so);

    if (psi_cmd->parsed()) {
        QpHeight h = qp_from_json(load_json(p_in));
        if (!p_scaffold.empty()) {
            Scaffold sc = build_scaffold(h, /*steep=*/false, p_k);
            write_output(p_scaffold, to_json(sc).dump(2));
            write_output(p_out, to_json(sc.tf.inverse().apply(psi_from_scaffold(sc))).dump(2));
            return 0;
        }
        write_output(p_out, to_json(psi(h, p_k)).dump(2));
        return 0;
    }
    if (psi_inv->parsed()) {
        QpHeight t = qp_from_json(load_json(pi_in));
        Vec m = parse_slope(pi_m, t.dims.d);
        write_output(pi_out, to_json(psi_inverse(t, m, pi_k)).dump(2));
        return 0;
    }
    if (stats->parsed()) return run_stats(st_in, st_d, st_n, st_x, st_out);
    return 2;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const TooLarge& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const WindowUnstable& e) {
        std::cerr << "window unstable: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        Json j;
        j["schema"] = kSchema;
        j["kind"] = "violation";
        j["error"] = e.what();
        std::cerr << j.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tricolor::cli

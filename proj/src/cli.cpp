#include "metnet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "metnet/clustering.hpp"
#include "metnet/curvature.hpp"
#include "metnet/degree_stats.hpp"
#include "metnet/embedding.hpp"
#include "metnet/error.hpp"
#include "metnet/graph.hpp"
#include "metnet/ingest.hpp"
#include "metnet/motifs.hpp"
#include "metnet/null_models.hpp"
#include "metnet/persistence.hpp"
#include "metnet/report.hpp"
#include "metnet/rng.hpp"
#include "metnet/roles.hpp"
#include "metnet/stats.hpp"

namespace metnet {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Options {
    std::string corpus;
    std::string sizes;
    std::string embeddings;
    std::string out;
    std::string format = "auto";
    std::string on_self_loop = "reject";
    std::uint64_t seed = 0;
    int replicates = 1000;
    std::optional<std::uint64_t> swaps;
    bool multi = false;
    bool sample_std = false;
    unsigned threads = 1;
    std::string model = "er";
    double bin_width = 1.0;
    double forman_bin_width = 1.0;
    double ollivier_bin_width = 0.05;
    int bins = 32;
    double threshold = 2.0;
    std::string size = "all";
    std::string closure = "return";
    std::size_t cap = 10000;
    double tie_epsilon = 1e-12;
    std::int64_t degree_threshold = 90;
    double frac = 0.5;
    bool rank = false;
    bool weighted = false;
    std::size_t dim = 0;
    int dip_simulations = 2000;
    bool gnuplot = false;
    bool record_wall_time = false;
};

struct InputFile {
    std::string role;
    std::string path;
    std::string bytes;
};

InputFile read_input(const std::string& role, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + role + " file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return {role, path, ss.str()};
}

// Files written by this invocation; removed again when the command fails.
class OutputSet {
public:
    explicit OutputSet(const std::string& dir) : dir_(dir) {
        if (dir.empty()) throw ArgumentError("--out is required");
        std::error_code ec;
        if (!fs::exists(dir_, ec)) {
            fs::create_directories(dir_, ec);
            if (ec) throw InputError("cannot create output directory '" + dir + "'");
            created_ = true;
        } else if (!fs::is_directory(dir_, ec)) {
            throw InputError("output path '" + dir + "' is not a directory");
        }
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path p = dir_ / name;
        written_.push_back(p);
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        if (!f) throw InputError("cannot write '" + p.string() + "'");
        f << content;
        if (!f) throw InputError("cannot write '" + p.string() + "'");
        digests_[name] = sha256_hex(content);
    }

    const std::map<std::string, std::string>& digests() const { return digests_; }

    void discard() noexcept {
        std::error_code ec;
        for (const auto& p : written_) fs::remove(p, ec);
        if (created_ && fs::is_empty(dir_, ec)) fs::remove(dir_, ec);
    }

private:
    fs::path dir_;
    bool created_ = false;
    std::vector<fs::path> written_;
    std::map<std::string, std::string> digests_;
};

struct Inputs {
    std::vector<InputFile> files;
    Corpus corpus;
    CategorySizeTable sizes;
    DirectedMultigraph multigraph;
    DirectedGraph simple;
};

struct Context {
    const Options& opt;
    const Inputs& in;
    OutputSet& out;
    json config = json::object();
    json seeds = json::object();

    const std::string& name(VertexId v) const { return in.corpus.categories.name(CategoryId{v}); }

    std::uint64_t seed_for(const std::string& analysis) {
        const std::uint64_t s = splitmix64(opt.seed ^ fnv1a(analysis));
        seeds[analysis] = s;
        return s;
    }

    void write_json(const std::string& file, const json& j) { out.write(file, j.dump(2) + "\n"); }
};

Inputs load_inputs(const Options& opt, bool need_embeddings) {
    if (opt.corpus.empty()) throw ArgumentError("--corpus is required");
    Inputs in;
    in.files.push_back(read_input("corpus", opt.corpus));

    CorpusFormat format = CorpusFormat::Csv;
    if (opt.format == "tsv" || (opt.format == "auto" && fs::path(opt.corpus).extension() == ".tsv"))
        format = CorpusFormat::Tsv;
    const SelfLoopPolicy policy = opt.on_self_loop == "skip" ? SelfLoopPolicy::Skip : SelfLoopPolicy::Reject;
    {
        std::istringstream s(in.files.back().bytes);
        in.corpus = parse_corpus(s, format, policy);
    }
    if (!opt.sizes.empty()) {
        in.files.push_back(read_input("sizes", opt.sizes));
        std::istringstream s(in.files.back().bytes);
        in.sizes = parse_category_sizes(s, in.corpus.categories);
    } else {
        in.sizes = derive_category_sizes(in.corpus.records, in.corpus.categories);
    }
    if (need_embeddings || !opt.embeddings.empty()) {
        if (opt.embeddings.empty()) throw ArgumentError("--embeddings is required");
        in.files.push_back(read_input("embeddings", opt.embeddings));
    }
    in.multigraph = build_multigraph(in.corpus.records, in.corpus.categories.size());
    in.simple = project_simple(in.multigraph);
    return in;
}

NullModel resolve_model(const Options& opt) {
    if (opt.model == "config") return opt.multi ? NullModel::ConfigMulti : NullModel::ConfigSimple;
    return parse_null_model(opt.model);
}

json swaps_json(const Options& opt) { return opt.swaps ? json(*opt.swaps) : json("10N"); }

std::string gnuplot_header(const std::string& output) {
    return "set datafile separator ','\nset terminal pngcairo size 900,600\nset output '" + output + "'\n";
}

// ---------------------------------------------------------------- analyses

void ingest_check(Context& c) {
    const auto& in = c.in;
    const std::size_t n = in.corpus.categories.size();
    std::size_t isolated = 0;
    for (VertexId v = 0; v < n; ++v)
        if (in.multigraph.in_degree(v) == 0 && in.multigraph.out_degree(v) == 0) ++isolated;
    std::int64_t max_mult = 0;
    for (const auto& a : in.multigraph.arcs()) max_mult = std::max(max_mult, a.multiplicity);

    json j;
    j["records"] = in.corpus.records.size();
    j["categories"] = n;
    j["pairs"] = in.multigraph.pair_count();
    j["edges"] = in.multigraph.edge_count();
    j["skipped_self_loops"] = in.corpus.skipped_self_loops;
    j["duplicate_rows"] = in.corpus.duplicate_rows;
    j["isolated_categories"] = isolated;
    j["max_multiplicity"] = max_mult;
    j["category_sizes"] = in.sizes.derived ? "derived" : "file";
    c.write_json("ingest.json", j);

    CsvTable t({"id", "name", "size"});
    for (VertexId v = 0; v < n; ++v)
        t.add({std::to_string(v), c.name(v), std::to_string(in.sizes.at(CategoryId{v}))});
    c.out.write("categories.csv", t.str());
}

std::string degree_csv(const Context& c, const std::vector<DegreeRecord>& records) {
    CsvTable t({"category", "in", "out", "size", "in_density", "out_density"});
    for (const auto& r : records)
        t.add({c.name(r.category.value), std::to_string(r.in_degree), std::to_string(r.out_degree),
               std::to_string(r.size), format_number(r.in_density), format_number(r.out_density)});
    return t.str();
}

void degrees_cmd(Context& c) {
    const auto kind = c.opt.rank ? CorrelationKind::Spearman : CorrelationKind::Pearson;
    const auto simple = degrees(c.in.simple, c.in.sizes);
    const auto multi = degrees(c.in.multigraph, c.in.sizes);
    c.out.write("degrees_simple.csv", degree_csv(c, simple));
    c.out.write("degrees_multigraph.csv", degree_csv(c, multi));

    const auto scatter = degree_scatter_stats(simple, c.opt.degree_threshold, kind);
    const auto density = density_anticorrelation(multi, c.opt.frac, kind);

    CsvTable s({"category", "in", "out", "in_subset"});
    for (const auto& r : simple)
        s.add({c.name(r.category.value), std::to_string(r.in_degree), std::to_string(r.out_degree),
               r.out_degree > c.opt.degree_threshold ? "1" : "0"});
    c.out.write("degree_scatter.csv", s.str());

    CsvTable d({"category", "in_density", "out_density", "in_subset", "outlier"});
    for (const auto& r : multi) {
        const bool sub = std::find(density.subset.begin(), density.subset.end(), r.category) != density.subset.end();
        const bool outl =
            std::find(density.outliers.begin(), density.outliers.end(), r.category) != density.outliers.end();
        d.add({c.name(r.category.value), format_number(r.in_density), format_number(r.out_density), sub ? "1" : "0",
               outl ? "1" : "0"});
    }
    c.out.write("density_scatter.csv", d.str());

    json j;
    j["correlation"] = kind == CorrelationKind::Pearson ? "pearson" : "spearman";
    j["scatter"] = {{"degrees", "simple"},
                    {"threshold", scatter.threshold},
                    {"n_all", scatter.n_all},
                    {"n_subset", scatter.n_subset},
                    {"r_all", scatter.r_all ? json(*scatter.r_all) : json()},
                    {"r_subset", scatter.r_subset ? json(*scatter.r_subset) : json()}};
    json outliers = json::array();
    for (auto id : density.outliers) outliers.push_back(c.name(id.value));
    j["density"] = {{"degrees", "multigraph"},
                    {"frac", density.frac},
                    {"max_in_density", density.max_in_density},
                    {"max_out_density", density.max_out_density},
                    {"n_subset", density.subset.size()},
                    {"r", density.r ? json(*density.r) : json()},
                    {"outliers", outliers}};
    c.write_json("degree_stats.json", j);
    c.config["degree_threshold"] = c.opt.degree_threshold;
    c.config["density_frac"] = c.opt.frac;
    c.config["correlation"] = j["correlation"];

    if (c.opt.gnuplot) {
        c.out.write("degree_scatter.gp", gnuplot_header("degree_scatter.png") +
                                             "set xlabel 'out-degree'\nset ylabel 'in-degree'\n"
                                             "plot 'degree_scatter.csv' every ::1 using 3:2 with points notitle\n");
        c.out.write("density_scatter.gp", gnuplot_header("density_scatter.png") +
                                              "set xlabel 'out-degree density'\nset ylabel 'in-degree density'\n"
                                              "plot 'density_scatter.csv' every ::1 using 3:2 with points notitle\n");
    }
}

void nullband_cmd(Context& c) {
    NullbandOptions o;
    o.model = resolve_model(c.opt);
    o.replicates = c.opt.replicates;
    o.seed = c.seed_for("nullband");
    o.swaps = c.opt.swaps;
    o.bins = BinSpec{0.0, c.opt.bin_width};
    o.weighted = c.opt.weighted;
    o.sample_std = c.opt.sample_std;
    o.threads = c.opt.threads;
    const auto band = degree_nullband(c.in.multigraph, o);

    CsvTable t({"side", "bin", "lower", "data", "mean", "std", "min", "max"});
    for (const auto& r : band.rows)
        t.add({r.side == DegreeSide::In ? "in" : "out", std::to_string(r.bin), format_number(r.lower),
               std::to_string(r.data), format_number(r.mean), format_number(r.std), format_number(r.min),
               format_number(r.max)});
    c.out.write("nullband.csv", t.str());

    json j;
    j["model"] = to_string(o.model);
    j["replicates"] = o.replicates;
    j["swaps"] = o.model == NullModel::ErdosRenyi ? json() : json(band.swaps);
    j["degrees"] = o.weighted ? "multigraph" : "simple";
    j["bin_width"] = o.bins.width;
    j["data_max_in"] = band.data_max_in;
    j["data_max_out"] = band.data_max_out;
    j["null_max_in"] = band.null_max_in;
    j["null_max_out"] = band.null_max_out;
    j["null_mean_max_in"] = band.null_mean_max_in;
    j["null_mean_max_out"] = band.null_mean_max_out;
    j["in_tail_exceeds"] = band.in_tail_exceeds();
    j["out_tail_exceeds"] = band.out_tail_exceeds();
    c.write_json("nullband.json", j);
    c.config["nullband"] = {{"model", to_string(o.model)}, {"bin_width", o.bins.width}, {"weighted", o.weighted}};

    if (c.opt.gnuplot) {
        std::string gp = gnuplot_header("nullband.png");
        gp += "set multiplot layout 1,2\n";
        for (const char* side : {"out", "in"}) {
            gp += std::string("set title '") + side + "-degree'\n";
            gp += std::string("plot '< grep ^") + side +
                  ", nullband.csv' using 3:5:($5-$6):($5+$6) with yerrorbars title 'null mean +/- std', "
                  "'' using 3:4 with points title 'data'\n";
        }
        gp += "unset multiplot\n";
        c.out.write("nullband.gp", gp);
    }
}

void motifs_cmd(Context& c) {
    std::vector<int> sizes;
    if (c.opt.size == "all") sizes = {2, 3};
    else if (c.opt.size == "2") sizes = {2};
    else if (c.opt.size == "3") sizes = {3};
    else throw ArgumentError("--size must be 2, 3 or all");

    json j = json::object();
    for (int size : sizes) {
        MotifOptions o;
        o.size = size;
        o.replicates = c.opt.replicates;
        o.seed = c.seed_for("motifs" + std::to_string(size));
        o.swaps = c.opt.swaps;
        o.threshold = c.opt.threshold;
        o.sample_std = c.opt.sample_std;
        o.threads = c.opt.threads;
        const auto rep = motif_significance(c.in.simple, o);
        CsvTable t({"code", "class", "shape", "n_real", "rand_mean", "rand_std", "z", "flag"});
        json classes = json::array();
        for (const auto& s : rep.scores) {
            t.add({std::to_string(s.cls.code), s.cls.triad, s.cls.label, std::to_string(s.n_real),
                   format_number(s.rand_mean), format_number(s.rand_std), format_number(s.z), s.flag});
            classes.push_back({{"class", s.cls.triad}, {"z", s.z ? json(*s.z) : json()}, {"flag", s.flag}});
        }
        c.out.write("motifs_size" + std::to_string(size) + ".csv", t.str());
        j["size" + std::to_string(size)] = {{"model", to_string(NullModel::ConfigSimple)},
                                            {"replicates", rep.replicates},
                                            {"swaps", rep.swaps},
                                            {"threshold", rep.threshold},
                                            {"classes", classes}};
    }
    c.write_json("motifs.json", j);
    c.config["motif_threshold"] = c.opt.threshold;
}

void transitivity_cmd(Context& c) {
    TransitivityClosure closure;
    if (c.opt.closure == "return") closure = TransitivityClosure::ReturnArc;
    else if (c.opt.closure == "forward") closure = TransitivityClosure::ForwardArc;
    else throw ArgumentError("--closure must be 'return' or 'forward'");
    const auto recs = outward_transitivity(c.in.simple, closure);
    CsvTable t({"category", "paths", "closed", "value"});
    std::size_t defined = 0;
    double sum = 0.0;
    for (const auto& r : recs) {
        t.add({c.name(r.category.value), std::to_string(r.paths), std::to_string(r.closed), format_number(r.value)});
        if (r.value) {
            ++defined;
            sum += *r.value;
        }
    }
    c.out.write("transitivity.csv", t.str());
    json j;
    j["closure"] = c.opt.closure;
    j["categories"] = recs.size();
    j["defined"] = defined;
    j["mean"] = defined ? json(sum / static_cast<double>(defined)) : json();
    c.write_json("transitivity.json", j);
    c.config["closure"] = c.opt.closure;
}

void persistence_cmd(Context& c) {
    PersistenceOptions o;
    o.replicates = c.opt.replicates;
    o.seed = c.seed_for("persistence");
    o.swaps = c.opt.swaps;
    o.threshold = c.opt.threshold;
    o.sample_std = c.opt.sample_std;
    o.threads = c.opt.threads;
    const auto rep = persistence_test(c.in.multigraph, o);

    CsvTable t({"multiplicity", "data", "rand_mean", "rand_std", "exceeds"});
    for (const auto& b : rep.bins)
        t.add({std::to_string(b.multiplicity), std::to_string(b.data_count), format_number(b.rand_mean),
               format_number(b.rand_std), b.exceeds ? "1" : "0"});
    c.out.write("persistence.csv", t.str());
    CsvTable l({"log2_bin", "lower", "upper", "data", "rand_mean", "rand_std", "exceeds"});
    for (const auto& b : rep.log_bins)
        l.add({std::to_string(b.multiplicity), std::to_string(std::int64_t{1} << b.multiplicity),
               std::to_string((std::int64_t{1} << (b.multiplicity + 1)) - 1), std::to_string(b.data_count),
               format_number(b.rand_mean), format_number(b.rand_std), b.exceeds ? "1" : "0"});
    c.out.write("persistence_log2.csv", l.str());

    json j;
    j["model"] = to_string(NullModel::ConfigMulti);
    j["replicates"] = rep.replicates;
    j["swaps"] = rep.swaps;
    j["threshold"] = rep.threshold;
    j["onset"] = rep.onset ? json(*rep.onset) : json();
    j["data_mass"] = rep.data_mass;
    j["replicate_mass_min"] = rep.replicate_mass_min;
    j["replicate_mass_max"] = rep.replicate_mass_max;
    c.write_json("persistence.json", j);
    c.config["persistence_threshold"] = c.opt.threshold;

    if (c.opt.gnuplot)
        c.out.write("persistence.gp",
                    gnuplot_header("persistence.png") +
                        "set logscale xy\nset xlabel 'words per mapping'\nset ylabel 'mappings'\n"
                        "plot 'persistence.csv' every ::1 using 1:3:($3-$4):($3+$4) with yerrorbars title "
                        "'configuration model', '' every ::1 using 1:2 with points title 'data'\n");
}

std::string hash_hex(std::uint64_t h) {
    static const char* hex = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = hex[h & 15];
    return s;
}

void cluster_cmd(Context& c) {
    const auto dist = role_distance(c.in.simple);
    const std::size_t n = dist.size();
    {
        CsvTable t({"a", "b", "distance"});
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                t.add({c.name(static_cast<VertexId>(a)), c.name(static_cast<VertexId>(b)), format_number(dist(a, b))});
        c.out.write("role_distance.csv", t.str());
    }

    WardOptions w;
    w.cap = c.opt.cap;
    w.tie_epsilon = c.opt.tie_epsilon;
    const auto set = ward_hca_all(dist, w);
    const auto& names = c.in.corpus.categories.names();

    json dendros = json::array();
    std::string nwk;
    for (const auto& d : set.dendrograms) {
        json merges = json::array();
        for (const auto& m : d.merges) merges.push_back({m.left, m.right, m.height, m.size});
        const std::string newick = d.newick(names);
        nwk += newick + "\n";
        dendros.push_back({{"newick", newick}, {"merges", merges}});
    }
    c.out.write("dendrograms.nwk", nwk);

    const auto rows = cluster_stability(set);
    CsvTable t({"size", "subtree_fraction", "leafset_fraction", "leafset_hash", "members", "subtree"});
    std::size_t leafsets = 0, in_all = 0, leafsets_in_all = 0;
    std::map<std::string, bool> seen_sets;
    for (const auto& r : rows) {
        std::vector<std::string> member_names;
        for (auto m : r.members) member_names.push_back(names[m]);
        std::sort(member_names.begin(), member_names.end());
        std::string joined;
        std::uint64_t h = 1469598103934665603ull;
        for (const auto& s : member_names) {
            if (!joined.empty()) joined += "; ";
            joined += s;
            h = fnv1a(s + "\n", h);
        }
        t.add({std::to_string(r.members.size()), format_number(r.subtree_fraction), format_number(r.leafset_fraction),
               hash_hex(h), joined, r.subtree});
        if (r.subtree_fraction == 1.0) ++in_all;
        if (seen_sets.emplace(joined, true).second) {
            ++leafsets;
            if (r.leafset_fraction == 1.0) ++leafsets_in_all;
        }
    }
    c.out.write("cluster_stability.csv", t.str());

    json j;
    j["leaves"] = set.leaves;
    j["dendrograms"] = set.dendrograms.size();
    j["truncated"] = set.truncated;
    j["cap"] = set.cap;
    j["tie_epsilon"] = w.tie_epsilon;
    j["distinct_clusters"] = rows.size();
    j["clusters_in_all"] = in_all;
    j["distinct_leafsets"] = leafsets;
    j["leafsets_in_all"] = leafsets_in_all;
    j["empty_in_neighborhood"] = dist.empty_in.size();
    j["empty_out_neighborhood"] = dist.empty_out.size();
    c.write_json("cluster.json", j);
    c.write_json("dendrograms.json", {{"leaves", names}, {"dendrograms", dendros}});
    c.config["cap_dendrograms"] = w.cap;
    c.config["tie_epsilon"] = w.tie_epsilon;
}

void curvature_cmd(Context& c) {
    const auto recs = curvature_all(c.in.multigraph, c.opt.threads);
    CsvTable t({"source", "target", "multiplicity", "forman", "ollivier", "ollivier_flag"});
    std::map<std::string, std::size_t> status;
    std::vector<double> ollivier;
    for (const auto& e : recs) {
        t.add({c.name(e.source), c.name(e.target), std::to_string(e.multiplicity), std::to_string(e.forman),
               format_number(e.ollivier), std::string(to_string(e.status))});
        ++status[std::string(to_string(e.status))];
        if (e.ollivier) ollivier.push_back(*e.ollivier);
    }
    c.out.write("curvature.csv", t.str());

    const BinSpec fb{0.0, c.opt.forman_bin_width};
    const BinSpec ob{0.0, c.opt.ollivier_bin_width};
    const auto h = curvature_histograms(recs, fb, ob);
    auto hist_csv = [](const Histogram& hist) {
        CsvTable ht({"bin", "lower", "count"});
        for (const auto& [bin, count] : hist.counts)
            ht.add({std::to_string(bin), format_number(hist.bins.lower_edge(bin)), std::to_string(count)});
        return ht.str();
    };
    c.out.write("curvature_forman_hist.csv", hist_csv(h.forman));
    c.out.write("curvature_ollivier_hist.csv", hist_csv(h.ollivier));

    json j;
    j["pairs"] = recs.size();
    j["ollivier_status"] = status;
    j["forman_bin_width"] = fb.width;
    j["ollivier_bin_width"] = ob.width;
    if (!h.forman.counts.empty()) {
        auto mode = std::max_element(h.forman.counts.begin(), h.forman.counts.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
        j["forman_mode_lower"] = h.forman.bins.lower_edge(mode->first);
        j["forman_min"] = recs.empty() ? 0 : std::min_element(recs.begin(), recs.end(), [](auto& a, auto& b) {
                                                 return a.forman < b.forman;
                                             })->forman;
    }
    if (ollivier.size() >= 2) {
        const auto dip = dip_test(ollivier, c.opt.dip_simulations, c.seed_for("curvature_dip"));
        j["ollivier_dip"] = {{"dip", dip.dip}, {"p_value", dip.p_value}, {"simulations", dip.simulations}};
    } else {
        j["ollivier_dip"] = nullptr;
    }
    c.write_json("curvature.json", j);
    c.config["curvature"] = {{"forman_bin_width", fb.width},
                             {"ollivier_bin_width", ob.width},
                             {"dip_simulations", c.opt.dip_simulations}};

    if (c.opt.gnuplot) {
        c.out.write("curvature_hist.gp",
                    gnuplot_header("curvature_hist.png") +
                        "set multiplot layout 1,2\nset style fill solid 0.5\n"
                        "plot 'curvature_forman_hist.csv' every ::1 using 2:3 with boxes title 'Forman'\n"
                        "plot 'curvature_ollivier_hist.csv' every ::1 using 2:3 with boxes title 'Ollivier'\n"
                        "unset multiplot\n");
        c.out.write("curvature_scatter.gp", gnuplot_header("curvature_scatter.png") +
                                                "set xlabel 'Forman'\nset ylabel 'Ollivier'\n"
                                                "plot 'curvature.csv' every ::1 using 4:5 with points notitle\n");
    }
}

void embed_cmd(Context& c) {
    const InputFile* file = nullptr;
    for (const auto& f : c.in.files)
        if (f.role == "embeddings") file = &f;
    if (!file) throw ArgumentError("--embeddings is required");
    std::istringstream s(file->bytes);
    const auto table = parse_embeddings(s, c.opt.dim);
    const auto dist = role_distance(c.in.simple);
    const auto sample = paired_distances(dist, c.in.corpus.categories, table);
    const auto kind = c.opt.rank ? CorrelationKind::Spearman : CorrelationKind::Pearson;

    CsvTable t({"a", "b", "role", "euclidean", "cosine"});
    for (const auto& r : sample.rows)
        t.add({c.name(r.a.value), c.name(r.b.value), format_number(r.role), format_number(r.euclidean),
               format_number(r.cosine)});
    c.out.write("embedding_pairs.csv", t.str());

    json excluded = json::array();
    for (auto id : sample.excluded) excluded.push_back(c.name(id.value));
    std::map<std::string, std::size_t> resolution;
    for (const auto& [id, src] : sample.resolved) ++resolution[std::string(to_string(src))];

    json j;
    j["n_pairs"] = sample.rows.size();
    j["excluded"] = excluded;
    j["resolution"] = resolution;
    j["dim"] = table.dim;
    j["duplicate_keys"] = table.duplicate_keys;
    j["bins"] = c.opt.bins;
    j["log_base"] = "e";
    j["correlation"] = kind == CorrelationKind::Pearson ? "pearson" : "spearman";
    if (sample.rows.size() >= 2) {
        const auto cmp = compare(sample, c.opt.bins, kind);
        j["pearson_cos"] = cmp.corr_cos ? json(*cmp.corr_cos) : json();
        j["pearson_euc"] = cmp.corr_euc ? json(*cmp.corr_euc) : json();
        j["mi_cos"] = cmp.mi_cos;
        j["mi_euc"] = cmp.mi_euc;
    } else {
        j["pearson_cos"] = j["pearson_euc"] = j["mi_cos"] = j["mi_euc"] = nullptr;
    }
    c.write_json("embedding_compare.json", j);
    c.config["mi_bins"] = c.opt.bins;
    c.config["embedding_dim"] = c.opt.dim;
}

// ---------------------------------------------------------------- driver

void write_manifest(Context& c, const std::string& command, double seconds) {
    json j;
    j["tool"] = "metnet";
    j["version"] = std::string(kVersion);
    j["command"] = command;
    j["seed"] = c.opt.seed;
    json inputs = json::array();
    for (const auto& f : c.in.files)
        inputs.push_back({{"role", f.role},
                          {"file", fs::path(f.path).filename().string()},
                          {"bytes", f.bytes.size()},
                          {"sha256", sha256_hex(f.bytes)}});
    j["inputs"] = inputs;
    j["category_sizes"] = c.in.sizes.derived ? "derived" : "file";

    json config = {{"replicates", c.opt.replicates},      {"swaps", swaps_json(c.opt)},
                   {"config_variant", c.opt.multi ? "multi" : "simple"},
                   {"sample_std", c.opt.sample_std},       {"threads", c.opt.threads},
                   {"on_self_loop", c.opt.on_self_loop},   {"format", c.opt.format}};
    for (auto& [k, v] : c.config.items()) config[k] = v;
    j["config"] = config;
    j["seeds"] = c.seeds;
    json outputs = json::array();
    for (const auto& [file, digest] : c.out.digests()) outputs.push_back({{"file", file}, {"sha256", digest}});
    j["outputs"] = outputs;
    if (c.opt.record_wall_time) j["wall_time_seconds"] = seconds;
    c.out.write("manifest.json", j.dump(2) + "\n");
}

using Analysis = std::function<void(Context&)>;

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--corpus", o.corpus, "Mapping corpus (CSV or TSV)")->required();
    sub->add_option("--sizes", o.sizes, "Category sizes CSV name,size");
    sub->add_option("--out", o.out, "Output directory")->required();
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--threads", o.threads, "Worker threads");
    sub->add_option("--format", o.format, "Corpus format")->check(CLI::IsMember({"auto", "csv", "tsv"}));
    sub->add_option("--on-self-loop", o.on_self_loop, "Self-mapping rows")->check(CLI::IsMember({"reject", "skip"}));
    sub->add_flag("--gnuplot", o.gnuplot, "Also emit gnuplot scripts");
    sub->add_flag("--record-wall-time", o.record_wall_time, "Store elapsed time in the manifest");
}

void add_ensemble(CLI::App* sub, Options& o) {
    sub->add_option("--replicates", o.replicates, "Null-model replicates")->check(CLI::PositiveNumber);
    sub->add_option("--swaps", o.swaps, "Swap attempts per replicate (default 10N)");
    sub->add_flag("--multi,!--simple", o.multi, "Configuration variant for --model config");
    sub->add_flag("--sample-std", o.sample_std, "Use the R-1 standard deviation");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Statistical analysis of metaphor mapping networks", "metnet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::map<CLI::App*, std::pair<std::string, std::vector<Analysis>>> commands;
    auto sub = [&](const std::string& name, const std::string& help, std::vector<Analysis> steps) {
        CLI::App* s = app.add_subcommand(name, help);
        add_common(s, o);
        commands[s] = {name, std::move(steps)};
        return s;
    };
    auto motif_opts = [&](CLI::App* s) {
        s->add_option("--threshold", o.threshold, "Significance threshold in standard deviations");
    };
    auto degree_opts = [&](CLI::App* s) {
        s->add_option("--degree-threshold", o.degree_threshold, "Out-degree cut for the subset correlation");
        s->add_option("--frac", o.frac, "Density cut as a fraction of the maximum");
        s->add_flag("--rank", o.rank, "Spearman instead of Pearson");
    };
    auto nullband_opts = [&](CLI::App* s) {
        s->add_option("--model", o.model, "Null model")
            ->check(CLI::IsMember({"er", "config", "config-simple", "config-multi"}));
        s->add_option("--bin-width", o.bin_width, "Degree bin width")->check(CLI::PositiveNumber);
        s->add_flag("--weighted", o.weighted, "Multiplicity-weighted degrees");
    };
    auto cluster_opts = [&](CLI::App* s) {
        s->add_option("--cap-dendrograms", o.cap, "Maximum number of dendrograms")->check(CLI::PositiveNumber);
        s->add_option("--tie-epsilon", o.tie_epsilon, "Relative tolerance for tied distances");
    };
    auto curvature_opts = [&](CLI::App* s) {
        s->add_option("--forman-bin-width", o.forman_bin_width)->check(CLI::PositiveNumber);
        s->add_option("--ollivier-bin-width", o.ollivier_bin_width)->check(CLI::PositiveNumber);
        s->add_option("--dip-simulations", o.dip_simulations)->check(CLI::PositiveNumber);
    };
    auto embed_opts = [&](CLI::App* s, bool required) {
        auto* e = s->add_option("--embeddings", o.embeddings, "Word vectors, one 'key v1 ... vD' per line");
        if (required) e->required();
        s->add_option("--dim", o.dim, "Expected vector dimension (0 = infer)");
        s->add_option("--bins", o.bins, "Equal-frequency bins for mutual information")->check(CLI::Range(2, 1 << 20));
    };

    sub("ingest-check", "Validate inputs and summarize the network", {ingest_check});
    auto* deg = sub("degrees", "Degree tables, in/out scatter and density correlation", {degrees_cmd});
    degree_opts(deg);
    auto* nb = sub("nullband", "Degree distributions against a null-model ensemble", {nullband_cmd});
    add_ensemble(nb, o);
    nullband_opts(nb);
    auto* mo = sub("motifs", "Dyad and triad significance profiles", {motifs_cmd});
    add_ensemble(mo, o);
    motif_opts(mo);
    mo->add_option("--size", o.size, "Motif size: 2, 3 or all");
    auto* tr = sub("transitivity", "Outward transitivity per category", {transitivity_cmd});
    tr->add_option("--closure", o.closure, "Closing arc: return (w->v) or forward (v->w)");
    auto* pe = sub("persistence", "Edge multiplicity distribution against the multigraph ensemble", {persistence_cmd});
    add_ensemble(pe, o);
    motif_opts(pe);
    auto* cl = sub("cluster", "Role distance and Ward clustering with ties", {cluster_cmd});
    cluster_opts(cl);
    auto* cu = sub("curvature", "Forman and Ollivier curvature", {curvature_cmd});
    curvature_opts(cu);
    auto* em = sub("embed-compare", "Compare role distance with embedding distances", {embed_cmd});
    embed_opts(em, true);
    em->add_flag("--rank", o.rank, "Spearman instead of Pearson");

    auto* all = sub("report-all", "Every analysis", {});
    add_ensemble(all, o);
    motif_opts(all);
    degree_opts(all);
    nullband_opts(all);
    cluster_opts(all);
    curvature_opts(all);
    embed_opts(all, false);
    all->add_option("--size", o.size, "Motif size: 2, 3 or all");
    all->add_option("--closure", o.closure, "Closing arc: return or forward");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    auto [command, steps] = commands.at(chosen);
    if (command == "report-all") {
        steps = {ingest_check, degrees_cmd, nullband_cmd, motifs_cmd, transitivity_cmd, persistence_cmd, cluster_cmd,
                 curvature_cmd};
        if (!o.embeddings.empty()) steps.push_back(embed_cmd);
    }

    std::optional<OutputSet> outputs;
    try {
        const auto start = std::chrono::steady_clock::now();
        const Inputs inputs = load_inputs(o, command == "embed-compare");
        outputs.emplace(o.out);
        Context ctx{o, inputs, *outputs};
        for (const auto& step : steps) step(ctx);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_manifest(ctx, command, secs);
        return kExitOk;
    } catch (const InputError& e) {
        if (outputs) outputs->discard();
        err << "metnet: input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ArgumentError& e) {
        if (outputs) outputs->discard();
        err << "metnet: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        if (outputs) outputs->discard();
        err << "metnet: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace metnet

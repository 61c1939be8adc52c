// cloneasm: clone-based whole-genome assembly from validated fragment
// overlaps, with an interval-graph consistency engine and a ground-truth
// simulator. One binary, four subcommands: assemble, simulate, report,
// compare.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cloneasm/pipeline.hpp"
#include "cloneasm/report.hpp"
#include "cloneasm/score.hpp"

namespace {

using namespace cloneasm;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

void apply_kv(PipelineParams& p, SimParams& s, const std::string& key,
              const std::string& value) {
    auto as_i = [&] { return static_cast<bp>(std::stoll(value)); };
    auto as_d = [&] { return std::stod(value); };
    if (key == "end_error_finished") p.end_error_finished = as_i();
    else if (key == "end_error_draft_fraction") p.end_error_draft_fraction = as_d();
    else if (key == "end_error_draft_cap") p.end_error_draft_cap = as_i();
    else if (key == "min_identity") p.min_identity = as_d();
    else if (key == "implied_overlap_threshold") p.implied_overlap_threshold = as_i();
    else if (key == "offset_tolerance") p.offset_tolerance = as_i();
    else if (key == "warp_flag_threshold") p.warp_flag_threshold = as_d();
    else if (key == "long_bac_length_flag") p.long_bac_length_flag = as_i();
    else if (key == "min_clone_length_floor") p.min_clone_length_floor = as_i();
    else if (key == "gap_spacer") p.gap_spacer = as_i();
    else if (key == "random_seed") p.random_seed = std::stoull(value);
    else if (key == "sim_genome_length") s.genome_length = as_i();
    else if (key == "sim_n_chromosomes") s.n_chromosomes = static_cast<int>(std::stol(value));
    else if (key == "sim_clone_length_mean") s.clone_length_mean = as_i();
    else if (key == "sim_clone_length_spread") s.clone_length_spread = as_i();
    else if (key == "sim_target_coverage") s.target_coverage = as_d();
    else if (key == "sim_phase_mix_p1") s.phase_mix_p1 = as_d();
    else if (key == "sim_phase_mix_p2") s.phase_mix_p2 = as_d();
    else if (key == "sim_phase_mix_p3") s.phase_mix_p3 = as_d();
    else if (key == "sim_fragments_per_draft_mean") s.fragments_per_draft_mean = as_d();
    else if (key == "sim_fragments_per_draft_spread") s.fragments_per_draft_spread = as_d();
    else if (key == "sim_fp_rate") s.fp_rate = as_d();
    else if (key == "sim_fp_consistent_fraction") s.fp_consistent_fraction = as_d();
    else if (key == "sim_fn_rate") s.fn_rate = as_d();
    else if (key == "sim_chimera_rate") s.chimera_rate = as_d();
    else if (key == "sim_mislabel_rate") s.mislabel_rate = as_d();
    else if (key == "sim_emit_sequences") s.emit_sequences = value == "1" || value == "true";
    else if (key == "sim_seed") s.seed = std::stoull(value);
    else throw InputError("unknown parameter key '" + key + "'");
}

struct CommonOpts {
    std::string params_file;
    std::vector<std::string> sets;
    std::string out_dir;
    uint64_t seed = 0;
    bool seed_given = false;
    bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--params", o.params_file, "flat key=value config file");
    cmd->add_option("--set", o.sets, "override one key=value")->take_all();
    cmd->add_option("--out", o.out_dir, "output directory")->required();
    cmd->add_option("--seed", o.seed, "random seed")->each([&](const std::string&) {
        o.seed_given = true;
    });
    cmd->add_flag("--verbose", o.verbose, "stream per-step counts");
}

void load_params(const CommonOpts& o, PipelineParams& p, SimParams& s) {
    if (!o.params_file.empty()) {
        std::ifstream f(o.params_file);
        if (!f) throw InputError("cannot open params file " + o.params_file);
        std::string line;
        int line_no = 0;
        while (std::getline(f, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw InputError(o.params_file + " line " + std::to_string(line_no) +
                                 ": expected key=value");
            apply_kv(p, s, line.substr(0, eq), line.substr(eq + 1));
        }
    }
    for (const std::string& kv : o.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw InputError("--set expects key=value, got " + kv);
        apply_kv(p, s, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed_given) {
        p.random_seed = o.seed;
        s.seed = o.seed;
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open input file " + path);
    return f;
}

AssemblyInputs load_inputs(const std::string& clones, const std::string& alignments,
                           const std::string& orient, const std::string& nt,
                           const std::string& sequences) {
    AssemblyInputs in;
    {
        auto f = open_input(clones);
        in.ds = parse_clone_table(f);
    }
    {
        auto f = open_input(alignments);
        in.alignments = parse_alignments(f, in.ds, in.diagnostics);
    }
    if (!orient.empty()) {
        auto f = open_input(orient);
        in.orientation_pairs = parse_orientation_pairs(f, in.ds, in.diagnostics);
    }
    if (!nt.empty()) {
        auto f = open_input(nt);
        in.nt_pairs = parse_nt_pairs(f, in.ds, in.diagnostics);
    }
    if (!sequences.empty()) {
        auto f = open_input(sequences);
        parse_sequences(f, in.ds, in.diagnostics);
    }
    return in;
}

int cmd_assemble(const CommonOpts& o, const std::string& clones, const std::string& alignments,
                 const std::string& orient, const std::string& nt,
                 const std::string& sequences, const std::string& truth_path) {
    PipelineParams params;
    SimParams sim;
    load_params(o, params, sim);
    AssemblyInputs in = load_inputs(clones, alignments, orient, nt, sequences);
    for (const std::string& w : in.diagnostics.warnings) std::cerr << "warning: " << w << '\n';
    PipelineResult res = run_pipeline(in, params, o.verbose ? &std::cerr : nullptr);
    write_artifacts(o.out_dir, in, res, params);
    auto stats = collect_stats(in, res, params);
    {
        std::ofstream f(o.out_dir + "/summary.tsv");
        write_summary(f, stats, true);
    }
    {
        std::ofstream f(o.out_dir + "/summary.txt");
        write_summary(f, stats, false);
    }
    {
        std::ofstream f(o.out_dir + "/warp_histogram.tsv");
        write_warp_histogram(f, stats, params.warp_flag_threshold);
    }
    {
        std::ofstream f(o.out_dir + "/length_histogram.tsv");
        write_length_histogram(f, stats, params.warp_flag_threshold);
    }
    {
        std::ofstream f(o.out_dir + "/long_clones.tsv");
        write_long_clones(f, in.ds, stats, params.long_bac_length_flag);
    }
    if (!truth_path.empty()) {
        auto f = open_input(truth_path);
        GroundTruth truth = read_truth(f, in.ds);
        auto score = score_assembly(in, res, truth, params);
        std::ofstream sf(o.out_dir + "/score.tsv");
        write_score(sf, score);
    }
    return kExitOk;
}

int cmd_simulate(const CommonOpts& o) {
    PipelineParams params;
    SimParams sim;
    load_params(o, params, sim);
    SimBundle bundle = simulate(sim);
    write_bundle(o.out_dir, bundle);
    std::cerr << "simulated " << bundle.dataset.clone_count() << " clones, "
              << bundle.dataset.fragment_count() << " fragments, "
              << bundle.alignments.size() << " alignments (seed " << sim.seed << ")\n";
    if (o.verbose) {
        std::cerr << "genome_length=" << sim.genome_length
                  << " n_chromosomes=" << sim.n_chromosomes
                  << " coverage=" << sim.target_coverage << " fp_rate=" << sim.fp_rate
                  << " fn_rate=" << sim.fn_rate << " chimera_rate=" << sim.chimera_rate
                  << " mislabel_rate=" << sim.mislabel_rate << '\n';
    }
    return kExitOk;
}

int cmd_report(const CommonOpts& o, const std::string& assembly_dir,
               const std::string& clones) {
    PipelineParams params;
    SimParams sim;
    load_params(o, params, sim);
    auto f = open_input(clones);
    Dataset ds = parse_clone_table(f);
    AssemblyView view = load_assembly_view(assembly_dir, ds);

    AssemblyStats stats;
    stats.clones = view.clones;
    std::filesystem::create_directories(o.out_dir);
    {
        std::ofstream out(o.out_dir + "/warp_histogram.tsv");
        write_warp_histogram(out, stats, params.warp_flag_threshold);
    }
    {
        std::ofstream out(o.out_dir + "/length_histogram.tsv");
        write_length_histogram(out, stats, params.warp_flag_threshold);
    }
    {
        std::ofstream out(o.out_dir + "/long_clones.tsv");
        write_long_clones(out, ds, stats, params.long_bac_length_flag);
    }
    {
        std::ofstream out(o.out_dir + "/report.txt");
        out << "assembled clones: " << view.clones.size() << '\n'
            << "contigs: " << view.contigs << '\n'
            << "fragments used: " << view.fragments_used << '\n'
            << "clones removed/sidelined: " << view.removed.size() << '\n';
        auto h = stats.warp_histogram();
        out << "warp histogram:\n";
        for (size_t i = 0; i < kWarpBucketNames.size(); ++i)
            out << "  " << kWarpBucketNames[i] << '\t' << h[i] << '\n';
    }
    return kExitOk;
}

int cmd_compare(const CommonOpts& o, const std::string& dir_a, const std::string& dir_b,
                const std::string& clones, const std::string& truth_path) {
    PipelineParams params;
    SimParams sim;
    load_params(o, params, sim);
    auto f = open_input(clones);
    Dataset ds = parse_clone_table(f);
    AssemblyView a = load_assembly_view(dir_a, ds);
    AssemblyView b = load_assembly_view(dir_b, ds);
    std::filesystem::create_directories(o.out_dir);
    std::ofstream out(o.out_dir + "/comparison.tsv");
    write_comparison(out, ds, a, b, params.warp_flag_threshold);
    if (!truth_path.empty()) {
        // Truth-based metrics need the full pipeline state; the comparison
        // here sticks to what the artifacts carry.
        auto tf = open_input(truth_path);
        GroundTruth truth = read_truth(tf, ds);
        std::set<CloneIndex> chimeras(truth.chimeras.begin(), truth.chimeras.end());
        auto removed_hits = [&](const AssemblyView& v) {
            int hits = 0;
            for (const auto& [id, disp] : v.removed) {
                CloneIndex c = ds.find_clone(id);
                if (c != kNoIndex && disp == "removed" && chimeras.count(c)) ++hits;
            }
            return hits;
        };
        out << "planted_chimeras\t" << truth.chimeras.size() << '\n'
            << "chimera_removals_a\t" << removed_hits(a) << '\n'
            << "chimera_removals_b\t" << removed_hits(b) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clone-based whole-genome assembly toolkit"};
    app.require_subcommand(1);

    CommonOpts o_asm, o_sim, o_rep, o_cmp;
    std::string clones, alignments, orient, nt, sequences, truth;
    std::string assembly_dir, dir_a, dir_b;

    auto* c_asm = app.add_subcommand("assemble", "run the full assembly pipeline");
    add_common(c_asm, o_asm);
    c_asm->add_option("--clones", clones, "clone table")->required();
    c_asm->add_option("--alignments", alignments, "raw alignments TSV")->required();
    c_asm->add_option("--orient", orient, "orientation pairs TSV");
    c_asm->add_option("--ntpairs", nt, "nt-pairs TSV");
    c_asm->add_option("--sequences", sequences, "fragment sequences side file");
    c_asm->add_option("--truth", truth, "truth.tsv for scoring");

    auto* c_sim = app.add_subcommand("simulate", "generate a synthetic input bundle");
    add_common(c_sim, o_sim);

    auto* c_rep = app.add_subcommand("report", "regenerate reports from assembly artifacts");
    add_common(c_rep, o_rep);
    c_rep->add_option("--assembly", assembly_dir, "assembly artifact directory")->required();
    c_rep->add_option("--clones", clones, "clone table")->required();

    auto* c_cmp = app.add_subcommand("compare", "compare two assemblies");
    add_common(c_cmp, o_cmp);
    c_cmp->add_option("--a", dir_a, "first assembly directory")->required();
    c_cmp->add_option("--b", dir_b, "second assembly directory")->required();
    c_cmp->add_option("--clones", clones, "clone table")->required();
    c_cmp->add_option("--truth", truth, "truth.tsv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_asm->parsed())
            return cmd_assemble(o_asm, clones, alignments, orient, nt, sequences, truth);
        if (c_sim->parsed()) return cmd_simulate(o_sim);
        if (c_rep->parsed()) return cmd_report(o_rep, assembly_dir, clones);
        if (c_cmp->parsed()) return cmd_compare(o_cmp, dir_a, dir_b, clones, truth);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInput;
}

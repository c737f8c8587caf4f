#include "pud/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "pud/dataset.hpp"
#include "pud/errors.hpp"
#include "pud/evaluation.hpp"
#include "pud/feature_index.hpp"
#include "pud/presets.hpp"
#include "pud/report.hpp"

namespace pud {
namespace {

namespace fs = std::filesystem;

// Flag values before preset resolution.
struct Settings {
    std::string preset = std::string(kDefaultPreset.name);
    double beta1 = kDefaultPreset.beta1;
    double beta2 = kDefaultPreset.beta2;
    int k = kDefaultPreset.k;
    double alpha = kDefaultPreset.alpha;
    double sigma = kDefaultPreset.sigma;
    std::string method = "l1";
    std::string descriptor = "pud";
    std::string solver = "auto";
    double tol = 1e-10;
    int maxIters = 5000;
    int directLimit = 2000;
    int returns = 20;
    std::string protocol = "pr";
    bool skipBad = false;
};

struct Flags {
    CLI::Option* beta1 = nullptr;
    CLI::Option* beta2 = nullptr;
    CLI::Option* k = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* sigma = nullptr;
};

void add_preset(CLI::App* cmd, Settings& s) {
    cmd->add_option("--preset", s.preset, "Parameter preset: corel1k, corel10k, coil100, ukbench, cifar10")
        ->capture_default_str()
        ->check(CLI::IsMember({"corel1k", "corel10k", "coil100", "ukbench", "cifar10"}));
}

void add_descriptor_flags(CLI::App* cmd, Settings& s, Flags& f) {
    f.beta1 = cmd->add_option("--beta1", s.beta1, "Colour block weight")->check(CLI::NonNegativeNumber);
    f.beta2 = cmd->add_option("--beta2", s.beta2, "Orientation block weight")->check(CLI::NonNegativeNumber);
}

void add_ranking_flags(CLI::App* cmd, Settings& s, Flags& f) {
    cmd->add_option("--method", s.method, "Ranking method")
        ->capture_default_str()
        ->check(CLI::IsMember({"l1", "l2", "mr1", "mr2"}));
    f.k = cmd->add_option("--k", s.k, "kNN graph neighbourhood size")->check(CLI::PositiveNumber);
    f.alpha = cmd->add_option("--alpha", s.alpha, "Manifold ranking damping in [0,1)")
                  ->check(CLI::Range(0.0, 1.0));
    f.sigma = cmd->add_option("--sigma", s.sigma, "Affinity kernel bandwidth")->check(CLI::PositiveNumber);
    cmd->add_option("--solver", s.solver, "Manifold solver")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "direct", "iterative"}));
    cmd->add_option("--tol", s.tol, "Iterative solver tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", s.maxIters, "Iterative solver iteration cap")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--direct-limit", s.directLimit, "Largest corpus solved directly under --solver auto")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
}

// Preset values fill every parameter the user did not set explicitly.
void resolve_preset(Settings& s, const Flags& f) {
    const ParameterPreset p = *find_preset(s.preset);
    if (f.beta1 && f.beta1->count() == 0) s.beta1 = p.beta1;
    if (f.beta2 && f.beta2->count() == 0) s.beta2 = p.beta2;
    if (f.k && f.k->count() == 0) s.k = p.k;
    if (f.alpha && f.alpha->count() == 0) s.alpha = p.alpha;
    if (f.sigma && f.sigma->count() == 0) s.sigma = p.sigma;
}

EvalParams eval_params(const Settings& s) {
    if (s.alpha >= 1.0) {
        throw Error(ErrorCode::InvalidParam, "alpha must be < 1");
    }
    EvalParams p;
    p.method = *parse_method(s.method);
    p.protocol = s.protocol == "ns" ? Protocol::NS : Protocol::PrecisionRecall;
    p.nReturns = s.returns;
    p.graph.k = s.k;
    p.graph.sigma = s.sigma;
    p.graph.metric = metric_of(p.method);
    p.manifold.alpha = s.alpha;
    p.manifold.solver = s.solver == "direct"      ? Solver::Direct
                        : s.solver == "iterative" ? Solver::Iterative
                                                  : Solver::Auto;
    p.manifold.directSolveLimit = s.directLimit;
    p.manifold.iterative.tol = s.tol;
    p.manifold.iterative.maxIters = s.maxIters;
    return p;
}

void print_rejections(const std::vector<Rejection>& rejected, std::ostream& err) {
    for (const Rejection& r : rejected) {
        err << "rejected " << r.path << ": " << r.reason << '\n';
    }
}

// Returns a nonzero exit status when rejections should abort the command.
int check_rejections(const std::vector<Rejection>& rejected, bool skipBad, std::ostream& err) {
    print_rejections(rejected, err);
    if (!rejected.empty() && !skipBad) {
        err << rejected.size() << " entries rejected; rerun with --skip-bad to ignore them\n";
        return exit_code_for(ErrorCode::DataError);
    }
    return 0;
}

int cmd_ingest(const std::string& source, const Settings& s, std::ostream& out, std::ostream& err) {
    const IngestResult ingested = ingest(source);
    if (const int rc = check_rejections(ingested.rejected, s.skipBad, err)) {
        return rc;
    }
    for (const ManifestEntry& e : ingested.manifest.entries) {
        out << e.imageId << '\t' << e.classLabel << '\t' << e.relativePath << '\n';
    }
    return 0;
}

int cmd_extract(const std::string& source, const std::string& outPath, const Settings& s,
                std::ostream& out, std::ostream& err) {
    const IngestResult ingested = ingest(source);
    if (const int rc = check_rejections(ingested.rejected, s.skipBad, err)) {
        return rc;
    }
    ExtractOptions options;
    options.kind = *parse_descriptor_kind(s.descriptor);
    options.params = {s.beta1, s.beta2};
    const ExtractResult extracted = extract_index(ingested.manifest, options);
    if (const int rc = check_rejections(extracted.rejected, s.skipBad, err)) {
        return rc;
    }
    if (extracted.index.records.empty()) {
        throw Error(ErrorCode::EmptyDataset, "no descriptors extracted");
    }
    write_index_file(extracted.index, outPath);
    out << "wrote " << extracted.index.records.size() << " " << to_string(options.kind)
        << " descriptors (dim " << extracted.index.dim << ") to " << outPath << '\n';
    return 0;
}

void warn_if_clamped(const RankGraph& g, std::ostream& err) {
    if (g.k_clamped()) {
        err << "warning: K=" << g.requestedK << " clamped to " << g.k << " for a corpus of " << g.n << '\n';
    }
}

int cmd_query(const std::string& indexPath, const std::string& queryId, const std::string& imagePath,
              int top, const Settings& s, std::ostream& out, std::ostream& err) {
    const FeatureIndex index = read_index_file(indexPath);
    const LabeledCorpus corpus = to_corpus(index);
    if (corpus.size() == 0) {
        throw Error(ErrorCode::EmptyDataset, "index holds no records");
    }
    const EvalParams p = eval_params(s);

    Ranking ranking;
    if (!imagePath.empty()) {
        if (is_manifold(p.method)) {
            throw Error(ErrorCode::MethodUnavailable,
                        "manifold ranking is transductive; query an indexed id or use l1/l2");
        }
        ExtractOptions options;
        options.kind = index.kind;
        options.params = {index.beta1, index.beta2};
        const std::vector<double> raw = compute_descriptor(load_raster(imagePath), options);
        // Same f32 rounding as stored records, so an indexed image matches itself exactly.
        std::vector<double> rounded(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            rounded[i] = static_cast<double>(static_cast<float>(raw[i]));
        }
        ranking = rank_by_norm(corpus.descriptors(), rounded, metric_of(p.method));
    } else {
        const auto q = corpus.find(queryId);
        if (!q) {
            throw Error(ErrorCode::UnknownQueryId, "no record with id '" + queryId + "'");
        }
        if (is_manifold(p.method)) {
            const RankGraph graph = build_graph(corpus.descriptors(), p.graph);
            warn_if_clamped(graph, err);
            ranking = ManifoldRanker(graph, p.manifold).rank(*q);
        } else {
            ranking = rank_by_norm(corpus.descriptors(), *q, metric_of(p.method));
        }
    }

    const int rows = std::min<int>(top, corpus.size());
    out << "rank\tid\tlabel\tscore\n";
    out << std::setprecision(10);
    for (int r = 0; r < rows; ++r) {
        const int idx = ranking.order[static_cast<std::size_t>(r)];
        const CorpusItem& item = corpus.item(idx);
        out << (r + 1) << '\t' << item.imageId << '\t' << item.classLabel << '\t'
            << ranking.scores[static_cast<std::size_t>(idx)] << '\n';
    }
    return 0;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) {
        throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    }
}

int cmd_evaluate(const std::string& indexPath, const std::string& reportPrefix, const Settings& s,
                 std::ostream& out, std::ostream& err) {
    const LabeledCorpus corpus = to_corpus(read_index_file(indexPath));
    const EvalParams p = eval_params(s);
    const EvalReport report = run_protocol(corpus, p);
    if (report.kClamped) {
        err << "warning: K=" << p.graph.k << " clamped to " << report.effectiveK << '\n';
    }
    const std::string table = report_to_table(report);
    out << table;
    if (!reportPrefix.empty()) {
        write_text(reportPrefix + ".txt", table);
        write_text(reportPrefix + ".json", report_to_json(report, p));
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Perceptual uniform descriptor image retrieval"};
    app.require_subcommand(1);

    Settings s;
    std::string source, outPath, indexPath, queryId, imagePath, reportPrefix;
    int top = 10;

    auto* ingestCmd = app.add_subcommand("ingest", "List the images a dataset directory or manifest provides");
    ingestCmd->add_option("source", source, "Dataset directory or manifest file")->required();
    ingestCmd->add_flag("--skip-bad", s.skipBad, "Ignore entries that fail to load");

    Flags extractFlags;
    auto* extractCmd = app.add_subcommand("extract", "Extract descriptors into an index file");
    extractCmd->add_option("source", source, "Dataset directory or manifest file")->required();
    extractCmd->add_option("--out,-o", outPath, "Index file to write")->required();
    extractCmd->add_option("--descriptor", s.descriptor, "Descriptor kind")
        ->capture_default_str()
        ->check(CLI::IsMember({"pud", "hsv"}));
    add_preset(extractCmd, s);
    add_descriptor_flags(extractCmd, s, extractFlags);
    extractCmd->add_flag("--skip-bad", s.skipBad, "Ignore entries that fail to load");

    Flags queryFlags;
    auto* queryCmd = app.add_subcommand("query", "Rank an index against one query");
    queryCmd->add_option("index", indexPath, "Index file")->required();
    auto* idOpt = queryCmd->add_option("--id", queryId, "Image id inside the index");
    auto* imageOpt = queryCmd->add_option("--image", imagePath, "External image (l1/l2 only)");
    idOpt->excludes(imageOpt);
    queryCmd->add_option("--top", top, "Rows to print")->capture_default_str()->check(CLI::PositiveNumber);
    add_preset(queryCmd, s);
    add_ranking_flags(queryCmd, s, queryFlags);

    Flags evalFlags;
    auto* evalCmd = app.add_subcommand("evaluate", "Run the every-image-as-query protocol");
    evalCmd->add_option("index", indexPath, "Index file")->required();
    evalCmd->add_option("--returns,-n", s.returns, "Returns per query")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    evalCmd->add_option("--protocol", s.protocol, "pr (precision/recall) or ns (N-S score)")
        ->capture_default_str()
        ->check(CLI::IsMember({"pr", "ns"}));
    evalCmd->add_option("--report", reportPrefix, "Write <prefix>.txt and <prefix>.json");
    add_preset(evalCmd, s);
    add_ranking_flags(evalCmd, s, evalFlags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (ingestCmd->parsed()) {
            return cmd_ingest(source, s, out, err);
        }
        if (extractCmd->parsed()) {
            resolve_preset(s, extractFlags);
            return cmd_extract(source, outPath, s, out, err);
        }
        if (queryCmd->parsed()) {
            if (queryId.empty() && imagePath.empty()) {
                err << "query needs --id or --image\n";
                return 1;
            }
            resolve_preset(s, queryFlags);
            return cmd_query(indexPath, queryId, imagePath, top, s, out, err);
        }
        if (evalCmd->parsed()) {
            resolve_preset(s, evalFlags);
            return cmd_evaluate(indexPath, reportPrefix, s, out, err);
        }
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace pud

#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <optional>
#include <sstream>

#include "ectop/cubtop.hpp"
#include "ectop/featstats.hpp"
#include "ectop/graphtop.hpp"
#include "ectop/io.hpp"
#include "ectop/synth.hpp"

namespace ectop::cli {
namespace {

namespace fs = std::filesystem;

Direction parse_direction(const std::string& s) {
    if (s == "sublevel") return Direction::sublevel;
    if (s == "superlevel") return Direction::superlevel;
    throw Error(ErrorCode::InvalidParameter, "direction must be sublevel or superlevel, got '" + s + "'");
}

std::pair<double, double> parse_pair(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::InvalidParameter, std::string(what) + " expects a,b");
    const io::CsvTable t = io::parse_csv(s);
    if (t.rows.size() != 1 || t.cols() != 2) throw Error(ErrorCode::InvalidParameter, std::string(what) + " expects a,b");
    return {t.rows[0][0], t.rows[0][1]};
}

std::optional<std::size_t> parse_count(const std::string& s) {
    std::size_t m = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), m);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return m;
}

// --thresholds is either a count m or a file listing the thresholds in
// filtration order. A count spans --range when given, else [min, max] of
// the filtered values.
FiltrationSpec resolve_thresholds(const std::string& arg, const std::string& range, std::span<const double> values,
                                  Direction direction) {
    if (const auto m = parse_count(arg)) {
        if (*m == 0) throw Error(ErrorCode::InvalidParameter, "threshold count must be >= 1");
        if (!range.empty()) {
            const auto [lo, hi] = parse_pair(range, "--range");
            if (*m == 1) return FiltrationSpec(direction, {direction == Direction::sublevel ? hi : lo});
            return uniform_thresholds(lo, hi, *m, direction);
        }
        if (*m == 1 && !values.empty()) {
            const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
            return FiltrationSpec(direction, {direction == Direction::sublevel ? *hi : *lo});
        }
        return default_thresholds(values, direction, std::max<std::size_t>(*m, 2));
    }
    const io::CsvTable t = io::read_csv(arg);
    std::vector<double> levels;
    for (const auto& row : t.rows) levels.insert(levels.end(), row.begin(), row.end());
    return FiltrationSpec(direction, std::move(levels));
}

void emit(const std::string& output, const std::string& text, std::ostream& out) {
    if (output.empty() || output == "-") {
        out << text;
    } else {
        io::atomic_write(output, text);
    }
}

Matrix read_matrix(const fs::path& path) {
    const io::CsvTable t = io::read_csv(path);
    if (t.rows.empty()) throw Error(ErrorCode::ParseError, path.string() + " has no data rows");
    std::vector<double> v;
    for (const auto& row : t.rows) v.insert(v.end(), row.begin(), row.end());
    return Matrix(t.rows.size(), t.cols(), std::move(v));
}

std::vector<int> read_labels(const fs::path& path) {
    const Matrix m = read_matrix(path);
    if (m.cols() != 1) throw Error(ErrorCode::ParseError, "labels file must have one column");
    std::vector<int> out;
    for (double v : m.values()) {
        if (v != 1.0 && v != -1.0) throw Error(ErrorCode::ParseError, "labels must be +1 or -1");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// Off-diagonal nonzero entries are edges; the diagonal is ignored.
WeightedGraph graph_from_matrix(const Matrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::InvalidDimensions, "adjacency matrix must be square");
    if (!a.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "adjacency matrix must be symmetric");
    WeightedGraph g;
    g.node_count = a.rows();
    g.edge_weights.emplace();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            if (a(i, j) == 0.0) continue;
            g.edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
            g.edge_weights->push_back(a(i, j));
        }
    }
    return g;
}

struct EcGraphArgs {
    std::string input, mode = "edge", direction = "sublevel", thresholds = "100", range, node_weights, output;
};

void cmd_ec_graph(const EcGraphArgs& a, std::ostream& out) {
    const Direction dir = parse_direction(a.direction);
    WeightedGraph g = graph_from_matrix(read_matrix(a.input));
    GraphFiltrationMode mode;
    std::vector<double> filtered;
    if (a.mode == "edge") {
        mode = GraphFiltrationMode::edge;
        filtered = *g.edge_weights;
    } else if (a.mode == "node") {
        mode = GraphFiltrationMode::node;
        if (a.node_weights.empty()) throw Error(ErrorCode::MissingNodeWeights, "node mode needs --node-weights");
        const Matrix w = read_matrix(a.node_weights);
        if (w.cols() != 1) throw Error(ErrorCode::ParseError, "node weights must be a single column");
        g.node_weights.emplace(w.values().begin(), w.values().end());
        filtered = *g.node_weights;
    } else {
        throw Error(ErrorCode::InvalidParameter, "mode must be edge or node");
    }
    const FiltrationSpec spec = resolve_thresholds(a.thresholds, a.range, filtered, dir);
    const FiltrationCurves curves = incremental_filtration_curve(g, spec, mode);
    emit(a.output, io::format_curve_csv(curves.ec, &curves.betti), out);
}

struct EcFieldArgs {
    std::string input, direction = "superlevel", thresholds = "100", range, output;
    bool betti = false;
};

void cmd_ec_field(const EcFieldArgs& a, std::ostream& out) {
    const Direction dir = parse_direction(a.direction);
    const GridField field = io::read_field(a.input);
    const FiltrationSpec spec = resolve_thresholds(a.thresholds, a.range, field.values(), dir);
    const ECCurve ec = ec_curve_incremental(field, spec);
    if (a.betti) {
        const BettiCurve b = betti_curve_field(field, spec);
        emit(a.output, io::format_curve_csv(ec, &b), out);
    } else {
        emit(a.output, io::format_curve_csv(ec), out);
    }
}

struct PrecisionArgs {
    std::string input, output;
    std::optional<double> ridge;
    bool zscore = false;
};

void cmd_precision(const PrecisionArgs& a, std::ostream& out) {
    const Matrix raw = read_matrix(a.input);
    TimeSeriesMatrix ts(raw.rows(), raw.cols(), std::vector<double>(raw.values().begin(), raw.values().end()));
    if (a.zscore) ts = zscore_columns(ts);
    const SquareMatrix cov = covariance(ts);
    const double ridge = a.ridge.value_or(default_ridge(cov));
    const WeightedGraph g = partial_correlation_graph(precision_matrix(cov, ridge));

    io::CsvTable table;
    table.rows.assign(g.node_count, std::vector<double>(g.node_count, 0.0));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        table.rows[g.edges[e].u][g.edges[e].v] = (*g.edge_weights)[e];
        table.rows[g.edges[e].v][g.edges[e].u] = (*g.edge_weights)[e];
    }
    emit(a.output, io::format_csv(table), out);
}

struct KdeArgs {
    std::string input, grid = "64,64", output;
    double bandwidth = 0.0;
};

void cmd_kde(const KdeArgs& a) {
    const io::CsvTable t = io::read_csv(a.input);
    if (t.rows.empty()) throw Error(ErrorCode::EmptyCloud, "no points in " + a.input);
    if (t.cols() != 2) throw Error(ErrorCode::ParseError, "points CSV must have two columns");
    std::vector<Point2> pts;
    for (const auto& row : t.rows) pts.push_back({row[0], row[1]});
    const PointCloud2D pc(std::move(pts));
    const auto [gx, gy] = parse_pair(a.grid, "--grid");
    if (gx < 1 || gy < 1 || gx != std::floor(gx) || gy != std::floor(gy)) {
        throw Error(ErrorCode::InvalidParameter, "--grid needs positive integers");
    }
    const KdeGrid grid = padded_kde_grid(pc, a.bandwidth, static_cast<std::size_t>(gx), static_cast<std::size_t>(gy));
    io::write_ecf1(a.output, gaussian_kde_grid(pc, a.bandwidth, grid));
}

struct RdArgs {
    RDParams p;
    std::string output, output_v;
};

void cmd_rdsim(const RdArgs& a) {
    const RDResult r = rd_simulate(a.p);
    io::write_ecf1(a.output, r.u);
    if (!a.output_v.empty()) io::write_ecf1(a.output_v, r.v);
}

struct ProjectArgs {
    std::string input, output, svg;
    std::size_t k = 2;
};

void cmd_project(const ProjectArgs& a, std::ostream& out) {
    if (!fs::is_directory(a.input)) throw Error(ErrorCode::IoError, a.input + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error(ErrorCode::IoError, "no .csv curves in " + a.input);
    std::vector<ECCurve> curves;
    std::vector<std::string> names;
    for (const auto& f : files) {
        curves.push_back(io::parse_curve_csv(io::read_file(f)));
        names.push_back(f.stem().string());
    }
    if (a.k > curves.size()) throw Error(ErrorCode::InvalidParameter, "k exceeds the number of curves");
    const Projection proj = svd_project(ECFeatureMatrix(curves), a.k);

    io::CsvTable table;
    table.header.emplace();
    for (std::size_t c = 0; c < a.k; ++c) table.header->push_back("pc" + std::to_string(c + 1));
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto row = proj.scores.row(i);
        table.rows.emplace_back(row.begin(), row.end());
    }
    emit(a.output, io::format_csv(table), out);
    if (!a.svg.empty()) {
        std::vector<double> x(curves.size());
        std::vector<double> y(curves.size(), 0.0);
        for (std::size_t i = 0; i < curves.size(); ++i) {
            x[i] = proj.scores(i, 0);
            if (a.k > 1) y[i] = proj.scores(i, 1);
        }
        io::atomic_write(a.svg, io::format_svg_scatter(names, x, y));
    }
}

struct ClassifyArgs {
    std::string train, test;
    SvmOptions options;
    bool raw = false;
};

void cmd_classify(const ClassifyArgs& a, std::ostream& out) {
    auto split = [](const std::string& s) {
        const auto comma = s.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::InvalidParameter, "expected features.csv,labels.csv");
        return std::pair{s.substr(0, comma), s.substr(comma + 1)};
    };
    const auto [train_x, train_y] = split(a.train);
    const auto [test_x, test_y] = split(a.test);
    Matrix xtr = read_matrix(train_x);
    Matrix xte = read_matrix(test_x);
    const auto ytr = read_labels(train_y);
    const auto yte = read_labels(test_y);
    if (xtr.cols() != xte.cols()) throw Error(ErrorCode::DimMismatch, "train and test feature widths differ");
    if (yte.size() != xte.rows()) throw Error(ErrorCode::DimMismatch, "one test label per row required");
    if (!a.raw) {
        const Standardizer z(xtr);
        xtr = z.apply(xtr);
        xte = z.apply(xte);
    }
    const LinearModel model = svm_train(xtr, ytr, a.options);
    out << io::format_double(accuracy(svm_predict(model, xte), yte)) << '\n';
}

void cmd_dist(const std::string& a, const std::string& b, std::ostream& out) {
    const ECCurve ca = io::parse_curve_csv(io::read_file(a));
    const ECCurve cb = io::parse_curve_csv(io::read_file(b));
    out << io::format_double(ec_distance(ca, cb)) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Euler characteristic curves of graphs, fields and point clouds", "ectop"};
    app.require_subcommand(1);

    EcGraphArgs g;
    auto* ec_graph = app.add_subcommand("ec-graph", "EC/Betti curve of a weighted graph given as a matrix CSV");
    ec_graph->add_option("--input", g.input, "Symmetric matrix CSV; nonzero off-diagonal entries are edges")->required();
    ec_graph->add_option("--mode", g.mode, "edge or node")->capture_default_str();
    ec_graph->add_option("--direction", g.direction, "sublevel (weights <= threshold)")->capture_default_str();
    ec_graph->add_option("--thresholds", g.thresholds, "Threshold count m or a file of thresholds")->capture_default_str();
    ec_graph->add_option("--range", g.range, "lo,hi span for a threshold count");
    ec_graph->add_option("--node-weights", g.node_weights, "Single-column CSV of node weights (node mode)");
    ec_graph->add_option("--output", g.output, "Output CSV (default stdout)");

    EcFieldArgs f;
    auto* ec_field = app.add_subcommand("ec-field", "EC curve of a 1D/2D/3D field (ECF1 or CSV)");
    ec_field->add_option("--input", f.input, "ECF1 file or CSV grid")->required();
    ec_field->add_option("--direction", f.direction, "superlevel or sublevel")->capture_default_str();
    ec_field->add_option("--thresholds", f.thresholds, "Threshold count m or a file of thresholds")->capture_default_str();
    ec_field->add_option("--range", f.range, "lo,hi span for a threshold count");
    ec_field->add_flag("--betti", f.betti, "Add beta0 (and beta1 for 2D) columns");
    ec_field->add_option("--output", f.output, "Output CSV (default stdout)");

    PrecisionArgs p;
    auto* precision = app.add_subcommand("precision", "Partial-correlation network of a multivariate time series");
    precision->add_option("--input", p.input, "m x n CSV, rows are observations")->required();
    precision->add_option("--ridge", p.ridge, "Diagonal shift before inversion (default 1e-8 trace/n)");
    precision->add_flag("--zscore", p.zscore, "Standardise columns first");
    precision->add_option("--output", p.output, "n x n weight CSV (default stdout)");

    KdeArgs k;
    auto* kde = app.add_subcommand(
        "kde", "Gaussian KDE of a 2D point cloud onto a grid. Silverman's rule h = 1.06 sd N^(-1/5) is a reasonable start");
    kde->add_option("--input", k.input, "Two-column CSV of points")->required();
    kde->add_option("--bandwidth", k.bandwidth, "Kernel width h > 0")->required();
    kde->add_option("--grid", k.grid, "nx,ny")->capture_default_str();
    kde->add_option("--output", k.output, "Output ECF1 field")->required();

    RdArgs r;
    auto* rdsim = app.add_subcommand("rdsim", "Simulate the two-species reaction-diffusion system");
    rdsim->add_option("--D", r.p.diffusion, "Diffusion coefficient")->capture_default_str();
    rdsim->add_option("--R", r.p.reaction, "Reaction coefficient")->capture_default_str();
    rdsim->add_option("--n", r.p.n, "Grid side")->capture_default_str();
    rdsim->add_option("--T", r.p.snapshots, "Stored snapshots")->capture_default_str();
    rdsim->add_option("--steps", r.p.steps, "Integration steps")->capture_default_str();
    rdsim->add_option("--dt", r.p.dt, "Time step")->capture_default_str();
    rdsim->add_option("--seed", r.p.seed, "Seed")->capture_default_str();
    rdsim->add_option("--output", r.output, "ECF1 file for u")->required();
    rdsim->add_option("--output-v", r.output_v, "ECF1 file for v");

    ProjectArgs pr;
    auto* project = app.add_subcommand("project", "Project a directory of EC curves on leading singular vectors");
    project->add_option("--input", pr.input, "Directory of curve CSVs with identical thresholds")->required();
    project->add_option("--k", pr.k, "Number of components")->capture_default_str();
    project->add_option("--output", pr.output, "Scores CSV, rows in file-name order (default stdout)");
    project->add_option("--svg", pr.svg, "Optional SVG scatter of the first two scores");

    ClassifyArgs c;
    auto* classify = app.add_subcommand("classify", "Train a linear SVM and print test accuracy");
    classify->add_option("--train", c.train, "features.csv,labels.csv")->required();
    classify->add_option("--test", c.test, "features.csv,labels.csv")->required();
    classify->add_option("--seed", c.options.seed, "Shuffle seed")->capture_default_str();
    classify->add_option("--epochs", c.options.epochs, "Passes over the data")->capture_default_str();
    classify->add_option("--step", c.options.step, "Initial step size")->capture_default_str();
    classify->add_option("--lambda", c.options.regularizer, "L2 regularisation")->capture_default_str();
    classify->add_flag("--raw", c.raw, "Skip per-feature standardisation");

    std::string dist_a, dist_b;
    auto* dist = app.add_subcommand("dist", "Euclidean distance between two EC curves");
    dist->add_option("--a", dist_a, "Curve CSV")->required();
    dist->add_option("--b", dist_b, "Curve CSV")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ectop: " << e.what() << '\n';
        return 2;
    }

    try {
        if (ec_graph->parsed()) cmd_ec_graph(g, out);
        else if (ec_field->parsed()) cmd_ec_field(f, out);
        else if (precision->parsed()) cmd_precision(p, out);
        else if (kde->parsed()) cmd_kde(k);
        else if (rdsim->parsed()) cmd_rdsim(r);
        else if (project->parsed()) cmd_project(pr, out);
        else if (classify->parsed()) cmd_classify(c, out);
        else if (dist->parsed()) cmd_dist(dist_a, dist_b, out);
    } catch (const Error& e) {
        err << "ectop: " << e.what() << '\n';
        if (e.code() == ErrorCode::SingularMatrix) err << "ectop: try a larger --ridge\n";
        return e.is_numeric() ? 3 : 2;
    } catch (const std::exception& e) {
        err << "ectop: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace ectop::cli

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsp/error.hpp"
#include "gsp/experiments.hpp"
#include "gsp/filterbank.hpp"
#include "gsp/io.hpp"
#include "gsp/linalg.hpp"
#include "gsp/random.hpp"
#include "gsp/sampler_design.hpp"
#include "gsp/ssl.hpp"

namespace gsp::cli {

namespace {

const std::vector<std::string> kCommands = {
    "decompose",   "sample",     "interpolate", "design",   "er-success",
    "frame-bound", "cyclic-demo", "filterbank", "classify", "golden-example"};

struct Common {
  Seed seed = 1;
  std::string out;
  std::string format;
  std::string config;
};

struct GraphSource {
  std::string path;
  Index er_n = 0;
  double er_p = 0.3;
  bool directed = false;
  bool no_normalize = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master random seed")->capture_default_str();
  sub->add_option("--out", c.out, "Output file (default: standard output)");
  sub->add_option("--format", c.format, "Input matrix format: mm | csv (default: from extension)")
      ->check(CLI::IsMember({"mm", "mtx", "matrix-market", "csv", "dense-csv"}));
  sub->add_option("--config", c.config, "JSON file of option values; flags take precedence");
}

void add_graph(CLI::App* sub, GraphSource& g) {
  sub->add_option("--graph", g.path, "Adjacency matrix file (.mtx or dense .csv)");
  sub->add_option("--er-n", g.er_n, "Generate an Erdos-Renyi graph with this many vertices");
  sub->add_option("--er-p", g.er_p, "Edge probability for --er-n")->capture_default_str();
  sub->add_flag("--directed", g.directed, "Directed Erdos-Renyi graph");
  sub->add_flag("--no-normalize", g.no_normalize, "Keep the raw adjacency scale");
}

GraphShift load_graph(const GraphSource& g, const Common& c) {
  if (!g.path.empty()) {
    const io::MatrixFormat fmt =
        c.format.empty() ? io::format_from_path(g.path) : io::parse_matrix_format(c.format);
    return build_shift(io::read_matrix(g.path, fmt), !g.no_normalize);
  }
  if (g.er_n > 0) return gen_erdos_renyi(g.er_n, g.er_p, c.seed, g.directed, !g.no_normalize);
  fail(ErrorCode::BadFlag, "a graph is required: pass --graph PATH or --er-n N");
}

OrderingPolicy parse_order(const std::string& s) {
  if (s == "desc") return OrderingPolicy::DescendingReal;
  if (s == "asc") return OrderingPolicy::AscendingReal;
  return OrderingPolicy::SolverOrder;
}

std::vector<Index> parse_index_list(const std::string& s) {
  std::vector<Index> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Index>(v));
    } catch (const std::exception&) {
      fail(ErrorCode::BadFlag, "not an index list: '" + s + "'");
    }
  }
  return out;
}

std::vector<double> parse_grid(const std::string& s) {
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream ss(s);
  if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !ss.eof() || step <= 0 || b < a) {
    fail(ErrorCode::BadFlag, "--p-grid expects start:stop:step with step > 0, got '" + s + "'");
  }
  const auto count = static_cast<Index>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> grid;
  for (Index i = 0; i < count; ++i) grid.push_back(a + static_cast<double>(i) * step);
  return grid;
}

RealVector read_signal(const std::string& path, const std::string& column) {
  const auto cols = io::read_signal_csv(path);
  if (cols.empty()) fail(ErrorCode::ParseError, path + ": no columns");
  if (column.empty()) return cols.front().second;
  for (const auto& [name, values] : cols) {
    if (name == column) return values;
  }
  fail(ErrorCode::BadFlag, "column '" + column + "' not found in " + path);
}

RealVector iota(Index n) {
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = static_cast<double>(i);
  return v;
}

void emit_csv(const Common& c, std::ostream& out, const std::vector<io::SignalColumn>& cols) {
  if (c.out.empty()) {
    io::write_signal_csv(out, cols);
  } else {
    io::write_signal_csv(c.out, cols);
  }
}

void emit_matrix(const Common& c, std::ostream& out, const Matrix& m) {
  if (c.out.empty()) {
    io::write_dense_csv(out, m);
  } else {
    io::write_matrix(c.out, m);
  }
}

std::string fixed(double v, int decimals = 4) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void print_matrix(std::ostream& out, const std::string& title, const Matrix& m) {
  out << title << " (" << m.rows() << "x" << m.cols() << ")\n";
  const bool complex = linalg::imaginary_ratio(m) > 1e-12;
  for (Index i = 0; i < m.rows(); ++i) {
    out << " ";
    for (Index j = 0; j < m.cols(); ++j) {
      std::string cell = fixed(m(i, j).real());
      if (complex) cell += (m(i, j).imag() < 0 ? "-" : "+") + fixed(std::abs(m(i, j).imag())) + "j";
      out << ' ' << std::string(cell.size() < 8 ? 8 - cell.size() : 0, ' ') << cell;
    }
    out << '\n';
  }
  out << '\n';
}

void print_vector(std::ostream& out, const std::string& title, const Vector& v) {
  print_matrix(out, title, Matrix(v.transpose()));
}

void golden_report(std::ostream& out) {
  const Walkthrough w = five_node_walkthrough();
  print_matrix(out, "A", w.shift.weights());
  print_matrix(out, "V", w.decomp.v);
  print_vector(out, "Lambda", w.decomp.eigenvalues);
  print_vector(out, "x_hat", w.x_hat);
  print_vector(out, "x", w.x.values);
  print_vector(out, "x - A x", w.difference.values);
  out << "sampled vertices (1-based): ";
  for (std::size_t i = 0; i < w.indices.size(); ++i) out << (i ? "," : "") << w.indices[i] + 1;
  out << "\n\n";
  print_matrix(out, "Psi", SamplingOperator(w.indices, 5).matrix().cast<Complex>());
  print_vector(out, "x_M", w.x_m);
  print_matrix(out, "Phi", w.interp.phi);
  print_matrix(out, "U^-1", w.sampled.u_inv);
  print_matrix(out, "Lambda_(3)", Matrix(w.sampled.lambda_k.asDiagonal()));
  print_matrix(out, "U", w.sampled.u);
  print_matrix(out, "A_M", w.sampled.shift);
  print_vector(out, "x_M - A_M x_M", w.sampled_difference);
  print_vector(out, "Phi x_M", w.recovered.values);
  out << "sigma_min(Psi V_(3)) = " << fixed(w.sigma_min, 6) << '\n';
  out << "||Phi x_M - x||_2 = " << io::format_double((w.recovered.values - w.x.values).norm()) << '\n';
  out << "||(x_M - A_M x_M) - Psi (x - A x)||_2 = "
      << io::format_double((w.sampled_difference - SamplingOperator(w.indices, 5).apply(w.difference.values)).norm())
      << '\n';
}

// Config keys become leading flags, so explicit flags (parsed later, last one
// wins) override them.
std::vector<std::string> config_args(const std::string& path, CLI::App* sub) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, "config " + path + ": " + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::ParseError, "config " + path + ": top level must be an object");
  std::vector<std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (key == "config" || sub->get_option_no_throw("--" + key) == nullptr) {
      fail(ErrorCode::BadFlag, "config " + path + ": unknown key '" + key + "' for " + sub->get_name());
    }
    auto scalar = [&](const nlohmann::json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number() || v.is_boolean()) return v.dump();
      fail(ErrorCode::BadFlag, "config " + path + ": unsupported value for '" + key + "'");
    };
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back("--" + key);
    } else if (value.is_array()) {
      std::string joined;
      for (std::size_t i = 0; i < value.size(); ++i) joined += (i ? "," : "") + scalar(value[i]);
      out.push_back("--" + key);
      out.push_back(joined);
    } else {
      out.push_back("--" + key);
      out.push_back(scalar(value));
    }
  }
  return out;
}

std::string find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sampling, interpolation and filter banks for graph signals", "gsp"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "gsp 0.1.0");

  std::function<void()> run;

  // decompose
  Common dc;
  GraphSource dg;
  std::string d_order = "desc", d_vectors;
  auto* dec = app.add_subcommand("decompose", "Eigendecomposition of a graph shift; eigenvalues as CSV");
  add_common(dec, dc);
  add_graph(dec, dg);
  dec->add_option("--order", d_order, "Spectrum ordering")->check(CLI::IsMember({"desc", "asc", "solver"}))->capture_default_str();
  dec->add_option("--vectors", d_vectors, "Also write V to this file");
  dec->callback([&] {
    run = [&] {
      const GraphShift shift = load_graph(dg, dc);
      const SpectralDecomposition d = spectral_decompose(shift, parse_order(d_order));
      if (!d_vectors.empty()) io::write_matrix(d_vectors, d.v);
      emit_csv(dc, out, {{"slot", iota(d.size())}, {"eigenvalue", d.eigenvalues}});
      err << "# reconstruction error " << io::format_double(reconstruction_error(d, shift)) << '\n';
    };
  });

  // sample
  Common sc;
  std::string s_signal, s_column, s_indices;
  Index s_m = 0;
  auto* smp = app.add_subcommand("sample", "Sample a signal at chosen or random vertices");
  add_common(smp, sc);
  smp->add_option("--signal", s_signal, "Signal CSV (header row)")->required();
  smp->add_option("--column", s_column, "Signal column (default: first)");
  smp->add_option("--indices", s_indices, "Comma-separated 0-based vertices");
  smp->add_option("--m", s_m, "Number of uniformly random vertices when --indices is absent");
  smp->callback([&] {
    run = [&] {
      const RealVector x = read_signal(s_signal, s_column);
      const Index n = x.size();
      const SamplingOperator psi = !s_indices.empty() ? SamplingOperator(parse_index_list(s_indices), n)
                                   : s_m > 0         ? random_sampler(n, s_m, sc.seed)
                                                     : throw Error(ErrorCode::BadFlag, "pass --indices or --m");
      std::vector<double> vertices;
      for (Index v : psi.indices()) vertices.push_back(static_cast<double>(v));
      emit_csv(sc, out, {{"sample", iota(psi.size())}, {"vertex", vertices},
                         {"value", psi.apply(x.cast<Complex>()).real().eval()}});
    };
  });

  // interpolate
  Common ic;
  GraphSource ig;
  Index i_k = 0;
  std::string i_indices, i_signal, i_samples, i_column;
  auto* itp = app.add_subcommand("interpolate", "Recover a bandlimited signal from its samples");
  add_common(itp, ic);
  add_graph(itp, ig);
  itp->add_option("--k", i_k, "Bandwidth")->required();
  itp->add_option("--indices", i_indices, "Sampled vertices (default: greedy design with M = K)");
  itp->add_option("--signal", i_signal, "Full signal CSV; it is sampled first");
  itp->add_option("--samples", i_samples, "CSV of the M sample values");
  itp->add_option("--column", i_column, "Column to read (default: first)");
  itp->callback([&] {
    run = [&] {
      const GraphShift shift = load_graph(ig, ic);
      const SpectralDecomposition d = spectral_decompose(shift);
      const Index n = d.size();
      if (i_k < 1 || i_k > n) fail(ErrorCode::BandExceedsN, "--k must lie in [1, N]");
      const SamplingOperator psi = i_indices.empty() ? greedy_optimal_sampler(d, i_k, i_k).op(n)
                                                     : SamplingOperator(parse_index_list(i_indices), n);
      std::optional<Vector> original;
      Vector x_m;
      if (!i_samples.empty()) {
        x_m = read_signal(i_samples, i_column).cast<Complex>();
        if (x_m.size() != psi.size()) fail(ErrorCode::SampleCountMismatch, "sample count differs from the vertex count");
      } else {
        if (!i_signal.empty()) {
          original = read_signal(i_signal, i_column).cast<Complex>();
          if (original->size() != n) fail(ErrorCode::DimensionMismatch, "signal length differs from N");
        } else {
          Rng rng(derive_seed(ic.seed, 0));
          original = d.band_basis(i_k) * gaussian_vector(i_k, rng).cast<Complex>();
        }
        x_m = psi.apply(*original);
      }
      const Interpolator interp = build_interpolator(psi, d, i_k);
      const Vector rec = interpolate(interp, x_m).values;
      const bool real = linalg::imaginary_ratio(rec) < 1e-9 &&
                        (!original || linalg::imaginary_ratio(*original) < 1e-9);
      std::vector<io::SignalColumn> cols{{"vertex", iota(n)}};
      auto column = [&](const std::string& name, const Vector& v) {
        cols.push_back(real ? io::SignalColumn{name, v.real().eval()} : io::SignalColumn{name, v});
      };
      if (original) column("original", *original);
      column("recovered", rec);
      if (original) cols.push_back({"error", (rec - *original).cwiseAbs().eval()});
      emit_csv(ic, out, cols);
      if (interp.ill_conditioned) err << "# warning: interpolation is ill-conditioned\n";
    };
  });

  // design
  Common gc;
  GraphSource gg;
  Index g_k = 0, g_m = 0;
  std::string g_policy = "greedy";
  auto* des = app.add_subcommand("design", "Choose a sampling operator for bandwidth K");
  add_common(des, gc);
  add_graph(des, gg);
  des->add_option("--k", g_k, "Bandwidth")->required();
  des->add_option("--m", g_m, "Number of samples (default: K)");
  des->add_option("--policy", g_policy, "greedy | brute | random")->check(CLI::IsMember({"greedy", "brute", "random"}))->capture_default_str();
  des->callback([&] {
    run = [&] {
      const SpectralDecomposition d = spectral_decompose(load_graph(gg, gc));
      const Index m = g_m > 0 ? g_m : g_k;
      std::vector<Index> chosen;
      if (g_policy == "greedy") chosen = greedy_optimal_sampler(d, g_k, m).indices;
      else if (g_policy == "brute") chosen = brute_force_optimal_sampler(d, g_k, m).indices;
      else chosen = random_sampler(d.size(), m, gc.seed).indices();
      std::vector<double> step, vertex, score;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        step.push_back(static_cast<double>(i));
        vertex.push_back(static_cast<double>(chosen[i]));
        score.push_back(sigma_min_of_subset(d, g_k, std::span(chosen).first(i + 1)));
      }
      emit_csv(gc, out, {{"step", step}, {"vertex", vertex}, {"sigma_min", score}});
    };
  });

  // er-success
  Common ec;
  Index e_n = 50, e_k = 10, e_trials = 25;
  std::string e_grid = "0.05:0.5:0.05", e_preset;
  auto* ers = app.add_subcommand("er-success", "Qualified fraction of random samplers on Erdos-Renyi graphs");
  add_common(ers, ec);
  ers->add_option("--n", e_n, "Vertices")->capture_default_str();
  ers->add_option("--k", e_k, "Bandwidth (and sample count)")->capture_default_str();
  ers->add_option("--p-grid", e_grid, "start:stop:step")->capture_default_str();
  ers->add_option("--trials", e_trials, "Graphs per p")->capture_default_str();
  ers->add_option("--preset", e_preset, "full: N = 500, K = 10, p = 0.01:0.5:0.01, 100 trials")->check(CLI::IsMember({"full"}));
  ers->callback([&] {
    run = [&] {
      if (e_preset == "full") {
        e_n = 500;
        e_k = 10;
        e_grid = "0.01:0.5:0.01";
        e_trials = 100;
      }
      const auto grid = parse_grid(e_grid);
      const SuccessCurve curve = success_curve(e_n, e_k, grid, e_trials, ec.seed);
      std::vector<double> p, rate;
      for (const auto& pt : curve.points) {
        p.push_back(pt.p);
        rate.push_back(pt.rate);
      }
      emit_csv(ec, out, {{"p", p}, {"rate", rate}});
    };
  });

  // frame-bound
  Common fc;
  GraphSource fg;
  fg.er_n = 200;
  Index f_k = 5, f_m = 60, f_trials = 50;
  auto* frb = app.add_subcommand("frame-bound", "Deviation of (1/M) B^H B from I under random sampling");
  add_common(frb, fc);
  add_graph(frb, fg);
  frb->add_option("--k", f_k, "Bandwidth")->capture_default_str();
  frb->add_option("--m", f_m, "Samples per trial")->capture_default_str();
  frb->add_option("--trials", f_trials, "Trials")->capture_default_str();
  frb->callback([&] {
    run = [&] {
      const SpectralDecomposition d = frame_scaled(spectral_decompose(load_graph(fg, fc)));
      const FrameBoundReport r = frame_bound_check(d, f_k, f_m, f_trials, derive_seed(fc.seed, 1));
      emit_csv(fc, out, {{"trial", iota(f_trials)}, {"deviation", r.deviations}});
      err << "# fraction within 1/2: " << r.fraction_within_half << ", frame bounds ["
          << r.lower_frame_bound << ", " << r.upper_frame_bound << "]\n";
    };
  });

  // cyclic-demo
  Common cc;
  Index c_n = 8;
  auto* cyc = app.add_subcommand("cyclic-demo", "Downsample the cyclic graph by two; prints A_M");
  add_common(cyc, cc);
  cyc->add_option("--n", c_n, "Even cycle length")->capture_default_str();
  cyc->callback([&] {
    run = [&] {
      const SampledGraph g = cyclic_downsample_demo(c_n);
      Matrix m = g.shift;
      // Snap rounding noise so the permutation prints exactly.
      for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
          const double r = std::round(m(i, j).real());
          if (std::abs(m(i, j) - r) < 1e-12) m(i, j) = r == 0.0 ? 0.0 : r;
        }
      }
      emit_matrix(cc, out, m);
    };
  });

  // filterbank
  Common bc;
  GraphSource bg;
  std::string b_widths, b_signal, b_column, b_policy = "greedy";
  double b_threshold = 0.0;
  auto* fbk = app.add_subcommand("filterbank", "Analyze and resynthesize a signal with a graph filter bank");
  add_common(fbk, bc);
  add_graph(fbk, bg);
  fbk->add_option("--widths", b_widths, "Comma-separated channel widths summing to N (default: two halves)");
  fbk->add_option("--signal", b_signal, "Signal CSV (default: random full-band signal)");
  fbk->add_option("--column", b_column, "Signal column (default: first)");
  fbk->add_option("--policy", b_policy, "greedy | random")->check(CLI::IsMember({"greedy", "random"}))->capture_default_str();
  fbk->add_option("--threshold", b_threshold, "Flag channels whose sampled energy exceeds this")->capture_default_str();
  fbk->callback([&] {
    run = [&] {
      const SpectralDecomposition d = spectral_decompose(load_graph(bg, bc));
      const Index n = d.size();
      const std::vector<Index> widths = b_widths.empty() ? std::vector<Index>{n / 2, n - n / 2}
                                                         : parse_index_list(b_widths);
      const FilterBank bank =
          make_filter_bank(d, widths, b_policy == "greedy" ? ChannelPolicy::Greedy : ChannelPolicy::RandomWithRetry,
                           derive_seed(bc.seed, 1));
      RealVector x;
      if (!b_signal.empty()) {
        x = read_signal(b_signal, b_column);
        if (x.size() != n) fail(ErrorCode::DimensionMismatch, "signal length differs from N");
      } else {
        Rng rng(derive_seed(bc.seed, 2));
        x = gaussian_vector(n, rng);
      }
      const GraphSignal xs = GraphSignal::from_real(x);
      const Vector rec = synthesize(bank, analyze(bank, xs)).values;
      emit_csv(bc, out, {{"vertex", iota(n)}, {"original", x}, {"reconstructed", rec.real().eval()},
                         {"error", (rec - xs.values).cwiseAbs().eval()}});
      for (const auto& e : channel_energy_report(bank, xs, b_threshold)) {
        err << "# channel [" << e.band.begin << ", " << e.band.end << ") energy " << e.energy
            << (e.flagged ? " FLAGGED" : "") << '\n';
      }
    };
  });

  // classify
  Common lc;
  std::string l_features, l_policy = "greedy";
  Index l_neighbors = 12, l_m = 2, l_bandwidth = 0, l_per_cluster = 100;
  double l_spread = 1.0;
  auto* cls = app.add_subcommand("classify", "Active semi-supervised classification on a k-NN graph");
  add_common(cls, lc);
  cls->add_option("--features", l_features, "Feature CSV with a final integer label column (default: two Gaussian blobs)");
  cls->add_option("--neighbors", l_neighbors, "k of the k-NN graph")->capture_default_str();
  cls->add_option("--m", l_m, "Number of label queries")->capture_default_str();
  cls->add_option("--bandwidth", l_bandwidth, "Bandwidth (0: equal to --m)")->capture_default_str();
  cls->add_option("--policy", l_policy, "greedy | random")->check(CLI::IsMember({"greedy", "random"}))->capture_default_str();
  cls->add_option("--per-cluster", l_per_cluster, "Blob size for the synthetic benchmark")->capture_default_str();
  cls->add_option("--spread", l_spread, "Blob standard deviation")->capture_default_str();
  cls->callback([&] {
    run = [&] {
      FeatureSet fs;
      if (!l_features.empty()) {
        fs = io::read_feature_csv(l_features, true);
      } else {
        RealMatrix centers(2, 2);
        centers << -2.0, 0.0, 2.0, 0.0;
        fs = make_gaussian_blobs(centers, l_per_cluster, l_spread, derive_seed(lc.seed, 0));
      }
      const ClassificationResult r = active_classification_pipeline(
          fs, l_neighbors, l_bandwidth, l_m, l_policy == "greedy" ? QueryPolicy::Greedy : QueryPolicy::Random,
          derive_seed(lc.seed, 1));
      const Index n = fs.size();
      std::vector<double> truth, predicted, queried(static_cast<std::size_t>(n), 0.0);
      const auto pred = classes_from_labels(r.predicted);
      for (Index i = 0; i < n; ++i) {
        truth.push_back((*fs.labels)[static_cast<std::size_t>(i)]);
        predicted.push_back(pred[static_cast<std::size_t>(i)]);
      }
      for (Index v : r.indices) queried[static_cast<std::size_t>(v)] = 1.0;
      emit_csv(lc, out, {{"vertex", iota(n)}, {"truth", truth}, {"predicted", predicted}, {"queried", queried}});
      err << "# accuracy " << r.accuracy << (r.qualified ? "" : " (operator not qualified)") << '\n';
    };
  });

  // golden-example
  Common xc;
  auto* gold = app.add_subcommand("golden-example", "Five-node sampling walkthrough with every intermediate");
  add_common(gold, xc);
  gold->callback([&] {
    run = [&] {
      if (xc.out.empty()) {
        golden_report(out);
      } else {
        std::ofstream f(xc.out);
        if (!f) fail(ErrorCode::IoError, "cannot write " + xc.out);
        golden_report(f);
      }
    };
  });

  try {
    if (args.empty()) {
      err << "gsp: missing subcommand\n\n" << app.help();
      return 1;
    }
    const std::string& first = args.front();
    const bool is_flag = !first.empty() && first[0] == '-';
    if (!is_flag && std::find(kCommands.begin(), kCommands.end(), first) == kCommands.end()) {
      err << "gsp: " << to_string(ErrorCode::UnknownCommand) << ": '" << first << "'\n\n" << app.help();
      return 1;
    }
    std::vector<std::string> full = args;
    if (!is_flag) {
      const std::string config = find_config(args);
      if (!config.empty()) {
        auto extra = config_args(config, app.get_subcommand(first));
        full.insert(full.begin() + 1, extra.begin(), extra.end());
      }
    }
    std::vector<std::string> reversed(full.rbegin(), full.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "gsp: " << to_string(ErrorCode::BadFlag) << ": " << e.what() << "\n\n";
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 1;
  } catch (const Error& e) {
    err << "gsp: " << e.what() << '\n';
    return is_numerical(e.code()) ? 2 : 1;
  }

  try {
    run();
  } catch (const Error& e) {
    err << "gsp: " << e.what() << '\n';
    return is_numerical(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "gsp: " << to_string(ErrorCode::NumericalFailure) << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace gsp::cli

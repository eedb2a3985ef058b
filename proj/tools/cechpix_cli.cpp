// Command-line driver: build towers, run the exact oracle, compute and
// compare persistence diagrams, plot them, and print schedule statistics.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cechpix/cech.hpp"
#include "cechpix/diagram_metrics.hpp"
#include "cechpix/errors.hpp"
#include "cechpix/filtration.hpp"
#include "cechpix/io.hpp"
#include "cechpix/pipeline.hpp"
#include "cechpix/tower.hpp"
#include "cechpix/wspd.hpp"

using namespace cechpix;

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  std::string approx, exact;
  double epsilon = 0.5;
  int skeleton = 1;
  std::string mode = "lazy";
  std::uint64_t seed = 0;
  std::optional<double> alpha_min, alpha_max;
  std::size_t max_tokens = 0;
};

void validate(const RunConfig& c, bool needs_input = true) {
  if (needs_input && c.input.empty()) throw ValidationError("--input is required");
  internal_epsilon(c.epsilon);
  if (c.skeleton < 0 || static_cast<std::size_t>(c.skeleton) + 2 > kMaxSimplexSize)
    throw ValidationError("--skeleton must lie in [0, " + std::to_string(kMaxSimplexSize - 2) + "]");
  parse_mode(c.mode);
  if ((c.alpha_min || c.alpha_max) && c.mode != "simple")
    std::cerr << "warning: --alpha-min/--alpha-max only affect simple mode\n";
  if (c.epsilon > 0.05)
    std::cerr << "warning: epsilon " << c.epsilon
              << " exceeds 0.05; the interleaving guarantee is then checked empirically only\n";
}

// Writes to the output path, or to stdout when none is given.
void emit(const RunConfig& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw ValidationError("cannot write '" + c.output + "'");
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TowerOptions tower_options(const RunConfig& c) {
  TowerOptions o;
  o.epsilon_user = c.epsilon;
  o.skeleton = c.skeleton + 1;
  o.mode = parse_mode(c.mode);
  o.alpha_min = c.alpha_min;
  o.alpha_max = c.alpha_max;
  o.max_tokens = c.max_tokens;
  return o;
}

int cmd_build(const RunConfig& c) {
  validate(c);
  PointCloud pts = read_points_file(c.input);
  auto t0 = std::chrono::steady_clock::now();
  TowerResult r = build_tower(pts, tower_options(c));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream toks;
  write_tokens(r.stream, toks);
  if (c.output.empty())
    std::cout << toks.str();
  else
    emit(c, toks.str());
  std::ostream& log = c.output.empty() ? std::cerr : std::cout;
  log << "tokens " << r.stream.size() << " scales " << r.stream.scale_count() << " adds " << r.stream.add_count()
      << " contracts " << r.stream.contract_count() << "\n";
  for (int q = 0; q <= c.skeleton + 1; ++q) log << "adds_dim" << q << " " << r.stream.add_count(q) << "\n";
  log << "floods " << r.stats.floods << " max_flood " << r.stats.max_flood << " flood_bound " << r.stats.flood_bound
      << "\n";
  log << "seconds " << secs << "\n";
  log << "scale pixels added contracted simplices\n";
  for (const auto& s : r.stats.scales)
    log << format_real(s.scale) << ' ' << s.pixels << ' ' << s.pixels_added << ' ' << s.contractions << ' '
        << s.simplices_added << "\n";
  return 0;
}

int cmd_exact(const RunConfig& c) {
  if (c.input.empty()) throw ValidationError("--input is required");
  PointCloud pts = read_points_file(c.input);
  const double amax = c.alpha_max.value_or(pts.size() > 1 ? pts.diameter() : 1.0);
  FilteredComplex fc = cech_filtration(pts, c.skeleton + 1, amax);
  std::ostringstream o;
  write_filtration(fc, o);
  emit(c, o.str());
  return 0;
}

int cmd_persistence(const RunConfig& c) {
  if (c.input.empty()) throw ValidationError("--input is required");
  std::string text = slurp(c.input);
  std::istringstream in(text);
  std::string first;
  in >> first;
  in.clear();
  in.seekg(0);
  FilteredComplex fc =
      first == "scale" ? tower_to_filtration(read_tokens(in), c.skeleton + 1) : read_filtration(in);
  PersistenceDiagram d = persistence_diagram(fc, c.skeleton);
  std::ostringstream o;
  write_diagram_csv(d, o);
  emit(c, o.str());
  return 0;
}

PersistenceDiagram read_csv_file(const std::string& path) {
  std::string text = slurp(path);
  std::istringstream in(text);
  return read_diagram_csv(in);
}

int cmd_compare(const RunConfig& c) {
  validate(c, false);
  const TowerMode mode = parse_mode(c.mode);
  ReportContext ctx;
  ctx.mode = c.mode;
  ctx.k = c.skeleton;
  InterleavingReport rep;
  if (!c.approx.empty() || !c.exact.empty()) {
    if (c.approx.empty() || c.exact.empty()) throw ValidationError("--approx and --exact must be given together");
    rep = check_interleaving(read_csv_file(c.approx), read_csv_file(c.exact), c.epsilon, c.skeleton);
  } else {
    if (c.input.empty()) throw ValidationError("--input (points) or --approx/--exact (diagrams) is required");
    PointCloud pts = read_points_file(c.input);
    if (pts.size() > kOracleMaxPoints)
      throw ValidationError("oracle limit: compare supports at most " + std::to_string(kOracleMaxPoints) + " points");
    ComparisonRun run = compare_with_exact(pts, tower_options(c), c.skeleton);
    rep = run.report;
    ctx.n = pts.size();
    ctx.d = pts.dim();
    ctx.adds = run.tower.stream.add_count();
    ctx.contracts = run.tower.stream.contract_count();
    ctx.scales = run.tower.stream.scale_count();
  }
  emit(c, report_json(rep, ctx));
  return 0;
}

int cmd_plot(const RunConfig& c) {
  if (c.input.empty()) throw ValidationError("--input is required");
  emit(c, diagram_svg(read_csv_file(c.input)));
  return 0;
}

int cmd_stats(const RunConfig& c) {
  validate(c);
  PointCloud pts = read_points_file(c.input);
  const double eps = internal_epsilon(c.epsilon);
  ScaleLadder ladder(eps);
  std::cout << "points " << pts.size() << " dim " << pts.dim() << "\n";
  if (pts.size() > 1) {
    std::cout << "min_distance " << format_real(pts.min_distance()) << " diameter " << format_real(pts.diameter())
              << " spread " << format_real(pts.diameter() / pts.min_distance()) << "\n";
  }
  std::cout << "simple_scales " << simple_exponents(pts, ladder, c.alpha_min, c.alpha_max).size() << "\n";
  ActiveSchedule sched = build_wspd(pts, eps / 8.0, ladder);
  const auto crit = sched.critical_exponents();
  std::cout << "wspd_pairs " << sched.pairs().size() << " pairs_per_point "
            << (pts.empty() ? 0.0 : static_cast<double>(sched.pairs().size()) / static_cast<double>(pts.size()))
            << "\n";
  std::cout << "critical_scales " << crit.size() << "\n";
  std::cout << "initial_scale " << format_real(ladder.scale(lazy_initial_exponent(sched))) << "\n";
  if (!c.output.empty()) {
    std::ofstream out(c.output);
    if (!out) throw ValidationError("cannot write '" + c.output + "'");
    sched.write_pairs(out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate Cech persistence via cubical digitization"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "input file");
    sub->add_option("--output", cfg.output, "output file (default: stdout)");
    sub->add_option("--epsilon", cfg.epsilon, "approximation quality in (0, 1]");
    sub->add_option("--skeleton", cfg.skeleton, "highest homology dimension reported");
    sub->add_option("--mode", cfg.mode, "simple or lazy");
    sub->add_option("--seed", cfg.seed, "seed for randomized steps");
    sub->add_option("--alpha-min", cfg.alpha_min, "smallest scale (simple mode)");
    sub->add_option("--alpha-max", cfg.alpha_max, "largest scale (simple mode; exact: filtration cap)");
    sub->add_option("--max-tokens", cfg.max_tokens, "abort once the tower exceeds this many tokens (0: no limit)");
  };
  auto* build = app.add_subcommand("build", "build a tower and write its token stream");
  auto* exact = app.add_subcommand("exact", "write the exact Cech filtration");
  auto* pers = app.add_subcommand("persistence", "diagram of a token stream or filtration file");
  auto* compare = app.add_subcommand("compare", "interleaving report against the exact filtration");
  auto* plot = app.add_subcommand("plot", "SVG plot of a diagram CSV");
  auto* stats = app.add_subcommand("stats", "WSPD and scale statistics; --output dumps the pairs");
  for (auto* s : {build, exact, pers, compare, plot, stats}) add_common(s);
  compare->add_option("--approx", cfg.approx, "approximate diagram CSV");
  compare->add_option("--exact", cfg.exact, "exact diagram CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    if (*build) return cmd_build(cfg);
    if (*exact) return cmd_exact(cfg);
    if (*pers) return cmd_persistence(cfg);
    if (*compare) return cmd_compare(cfg);
    if (*plot) return cmd_plot(cfg);
    if (*stats) return cmd_stats(cfg);
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const IndeterminateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

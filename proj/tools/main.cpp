// Command-line front end: integration, Fubini consistency checks, Jordan
// measure brackets, oscillation maps, slices, and the counterexample table.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "riemann2d/analysis.hpp"
#include "riemann2d/errors.hpp"
#include "riemann2d/integrate.hpp"
#include "riemann2d/serialize.hpp"

namespace {

using nlohmann::json;
using namespace riemann2d;

struct Flags {
  std::string domain = "disk";
  std::string field = "one";
  std::string rect = "0,0,1,1";
  double tol = 1e-3;
  int max_level = 24;
  double eps0 = 0.0;
  int eps_terms = 12;
  int level = 8;
  double delta = 0.5;
  double x = 0.0;
  double eps = 0.01;
  int depth = 6;
  std::uint64_t seed = 0;
  std::string output = "json";
  bool via_rectangle = false;
  bool dump_grid = false;
};

IntegrateOptions options_from(const Flags& f) {
  IntegrateOptions opts;
  opts.grid.max_level = f.max_level;
  opts.eps0 = f.eps0;
  opts.eps_terms = f.eps_terms;
  opts.seed = f.seed;
  return opts;
}

BoundingRect parse_rect_arg(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  if (v.size() != 4) throw std::invalid_argument("--rect expects x0,y0,x1,y1");
  BoundingRect r{v[0], v[2], v[1], v[3]};
  if (!r.valid()) throw std::invalid_argument("--rect is empty");
  return r;
}

int exit_for(RunStatus status) { return status == RunStatus::Converged ? 0 : 2; }

void emit_json(const json& j) { std::cout << j.dump() << "\n"; }

int cmd_integrate(const Flags& f) {
  const auto domain = make_domain(f.domain);
  const auto field = make_field(f.field);
  const IntegralReport rep = integrate_double(*field, *domain, f.tol, options_from(f));
  if (f.output == "table") {
    std::cout << "integrate " << f.field << " over " << f.domain << "\n"
              << "  value  " << format_double(rep.value) << "\n"
              << "  gap    " << format_double(rep.gap) << "\n"
              << "  status " << to_string(rep.status) << "\n";
  } else {
    json j = json::parse(to_json_string(rep));
    j["config"] = {{"domain", f.domain}, {"field", f.field},     {"tol", f.tol},
                   {"max_level", f.max_level}, {"eps0", f.eps0}, {"eps_terms", f.eps_terms},
                   {"seed", f.seed},      {"output", f.output}};
    emit_json(j);
  }
  return exit_for(rep.status);
}

int cmd_fubini_check(const Flags& f) {
  const auto field = make_field(f.field);
  FubiniReport rep;
  if (f.via_rectangle) {
    const auto domain = make_domain(f.domain);
    rep = rectangle_fubini(*field, domain->bounds(), f.tol, options_from(f));
  } else {
    const auto domain = make_domain(f.domain);
    rep = fubini_check(*field, *domain, f.tol, options_from(f));
  }
  if (f.output == "table") {
    std::cout << "fubini-check " << f.field << " over " << f.domain << "\n"
              << "  double          " << format_double(rep.double_value) << "\n"
              << "  iterated        " << format_double(rep.iterated_value) << "\n"
              << "  discrepancy     " << format_double(rep.discrepancy) << "\n"
              << "  predicted_bound " << format_double(rep.predicted_bound) << "\n"
              << "  bound holds     " << (rep.bound_holds() ? "yes" : "no") << "\n";
  } else {
    json j = json::parse(to_json_string(rep));
    j["config"] = {{"domain", f.domain}, {"field", f.field},     {"tol", f.tol},
                   {"max_level", f.max_level}, {"eps0", f.eps0}, {"eps_terms", f.eps_terms},
                   {"seed", f.seed},      {"output", f.output},
                   {"via_rectangle", f.via_rectangle}};
    emit_json(j);
  }
  return rep.bound_holds() ? 0 : 2;
}

int cmd_counterexample(const Flags& f) {
  if (f.depth < 1 || f.depth > 20) {
    throw std::invalid_argument("counterexample: --depth must be in [1, 20]");
  }
  const int env_level = f.level > 0 ? f.level : f.depth + 4;
  const PaperExample ex = paper_example_field(f.depth);
  IntegrateOptions opts = options_from(f);

  const IntegralReport dbl = integrate_double(*ex.field, *ex.domain, f.tol, opts);
  const IntegralReport itr = iterated_integral(*ex.field, *ex.domain, f.tol, opts);
  const std::vector<double> eps_seq = default_eps_sequence(ex.domain->bounds(), opts);
  const IntegralReport h1 =
      inner_improper_integral(*ex.field, *ex.domain, 1.0, eps_seq, 1e-6, opts);
  const auto [env_lo, env_hi] = upper_lower_partial(*ex.field, 1.0, 1.0, 2.0, env_level, opts);
  const bool outside = h1.value < env_lo || h1.value > env_hi;

  if (f.output == "json") {
    json j;
    j["config"] = {{"depth", f.depth}, {"level", env_level}, {"tol", f.tol},
                   {"output", f.output}};
    j["cantor_measure"] = ex.cantor.measure();
    j["double"] = dbl.value;
    j["double_gap"] = dbl.gap;
    j["iterated"] = itr.value;
    j["iterated_gap"] = itr.gap;
    j["h1"] = h1.value;
    j["h1_gap"] = h1.gap;
    j["envelope_lower"] = env_lo;
    j["envelope_upper"] = env_hi;
    j["claimed_lower"] = -2.0;
    j["claimed_upper"] = -1.0;
    j["h1_outside_envelope"] = outside;
    emit_json(j);
  } else {
    std::cout << "counterexample field on the L-shaped domain (depth " << f.depth << ")\n"
              << "  fat Cantor measure m(P)          " << format_double(ex.cantor.measure())
              << "\n"
              << "  double integral                  " << format_double(dbl.value) << "  (gap "
              << format_double(dbl.gap) << ")\n"
              << "  iterated integral                " << format_double(itr.value) << "  (gap "
              << format_double(itr.gap) << ")\n"
              << "  h(1) = inner integral at x=1     " << format_double(h1.value) << "  (gap "
              << format_double(h1.gap) << ")\n"
              << "  Darboux envelope of f(1,.) on [1,2], level " << env_level << ":\n"
              << "    lower                          " << format_double(env_lo) << "\n"
              << "    upper                          " << format_double(env_hi) << "\n"
              << "  claimed lower/upper              -2 / -1\n"
              << "  h(1) outside envelope:           " << (outside ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_measure(const Flags& f) {
  const auto domain = make_domain(f.domain);
  GridOptions grid;
  grid.max_level = f.max_level;
  if (f.dump_grid) {
    write_grid_csv(std::cout, classify_grid(*domain, f.level, grid));
    return 0;
  }
  const MeasureBounds mb = jordan_measure_bounds(*domain, f.level, grid);
  if (f.output == "json") {
    json j;
    j["config"] = {{"domain", f.domain}, {"level", f.level}, {"max_level", f.max_level},
                   {"output", f.output}};
    j["level"] = f.level;
    j["inner"] = mb.inner;
    j["outer"] = mb.outer;
    emit_json(j);
  } else if (f.output == "table") {
    std::cout << "measure " << f.domain << " at level " << f.level << "\n"
              << "  inner " << format_double(mb.inner) << "\n"
              << "  outer " << format_double(mb.outer) << "\n";
  } else {
    write_measure_csv(std::cout, f.level, mb);
  }
  return 0;
}

int cmd_oscillation(const Flags& f) {
  const auto field = make_field(f.field);
  const BoundingRect rect = parse_rect_arg(f.rect);
  const OscillationMap map = oscillation_map(*field, rect, f.level, f.delta, options_from(f));
  if (f.output == "json") {
    json cells = json::array();
    for (const FlaggedCell& c : map.flagged_cells) {
      cells.push_back(json::array(
          {c.rect.x_lo, c.rect.y_lo, c.rect.x_hi, c.rect.y_hi, c.oscillation}));
    }
    json j;
    j["config"] = {{"field", f.field}, {"rect", f.rect},   {"level", f.level},
                   {"delta", f.delta}, {"seed", f.seed},   {"output", f.output}};
    j["flagged_area"] = map.flagged_area;
    j["flagged_count"] = map.flagged_cells.size();
    j["cells"] = cells;
    emit_json(j);
  } else {
    write_oscillation_csv(std::cout, map);
  }
  return 0;
}

int cmd_slice(const Flags& f) {
  const auto domain = make_domain(f.domain);
  GridOptions grid;
  grid.max_level = f.max_level;
  const EpsCover cover = build_eps_cover(*domain, f.eps, grid);
  const SliceSet sl = slice(*domain, cover, f.x);
  if (f.output == "json") {
    json ivs = json::array();
    for (const Interval& iv : sl.intervals) ivs.push_back(json::array({iv.lo, iv.hi}));
    json j;
    j["config"] = {{"domain", f.domain}, {"x", f.x}, {"eps", f.eps},
                   {"max_level", f.max_level}, {"output", f.output}};
    j["cover_level"] = cover.level();
    j["cover_area"] = cover.total_area();
    j["intervals"] = ivs;
    j["total_length"] = sl.total_length();
    emit_json(j);
  } else if (f.output == "table") {
    std::cout << "slice of " << f.domain << " at x = " << format_double(f.x) << " (eps "
              << format_double(f.eps) << ")\n";
    for (const Interval& iv : sl.intervals) {
      std::cout << "  [" << format_double(iv.lo) << ", " << format_double(iv.hi) << "]\n";
    }
    std::cout << "  total length " << format_double(sl.total_length()) << "\n";
  } else {
    write_slice_csv(std::cout, sl);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann double integrals over Jordan domains with improper slice integrals"};
  app.require_subcommand(1);

  Flags f;

  auto join = [](const std::vector<std::string>& names) {
    std::string out;
    for (const std::string& n : names) {
      if (!out.empty()) out += ", ";
      out += n;
    }
    return out;
  };
  const std::string domain_help = "domain spec: " + join(builtin_domain_names());
  const std::string field_help = "field spec: " + join(builtin_field_names());

  auto add_domain_field = [&](CLI::App* sub) {
    sub->add_option("--domain", f.domain, domain_help);
    sub->add_option("--field", f.field, field_help);
    sub->add_option("--tol", f.tol, "target tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-level", f.max_level, "deepest dyadic refinement level");
    sub->add_option("--eps0", f.eps0, "first cover area target (0 = auto)");
    sub->add_option("--eps-terms", f.eps_terms, "length of the eps sequence");
    sub->add_option("--seed", f.seed, "seed for sampled value bounds");
  };

  CLI::App* integrate = app.add_subcommand("integrate", "double integral over a domain");
  add_domain_field(integrate);
  integrate->add_option("--output", f.output)->check(CLI::IsMember({"json", "table"}));

  CLI::App* fubini = app.add_subcommand("fubini-check", "double vs iterated integral");
  add_domain_field(fubini);
  fubini->add_option("--output", f.output)->check(CLI::IsMember({"json", "table"}));
  fubini->add_flag("--via-rectangle", f.via_rectangle,
                   "treat the domain bounds as the rectangle and cover the field's "
                   "discontinuity set instead of the boundary");

  CLI::App* counter = app.add_subcommand("counterexample",
                                         "reproduce the L-shape counterexample table");
  counter->add_option("--depth", f.depth, "fat Cantor construction depth (1..20)");
  counter->add_option("--level", f.level, "envelope partition level (default depth+4)");
  counter->add_option("--tol", f.tol)->check(CLI::PositiveNumber);
  counter->add_option("--output", f.output)->check(CLI::IsMember({"json", "table"}));

  CLI::App* measure = app.add_subcommand("measure", "inner/outer Jordan measure bracket");
  measure->add_option("--domain", f.domain, domain_help);
  measure->add_option("--level", f.level, "grid level");
  measure->add_option("--max-level", f.max_level);
  measure->add_flag("--dump-grid", f.dump_grid, "dump the classified grid as CSV");
  measure->add_option("--output", f.output)->check(CLI::IsMember({"json", "csv", "table"}));

  CLI::App* oscillation = app.add_subcommand("oscillation", "oscillation map CSV dump");
  oscillation->add_option("--field", f.field, field_help);
  oscillation->add_option("--rect", f.rect, "rectangle x0,y0,x1,y1");
  oscillation->add_option("--level", f.level);
  oscillation->add_option("--delta", f.delta, "oscillation threshold")
      ->check(CLI::PositiveNumber);
  oscillation->add_option("--seed", f.seed);
  oscillation->add_option("--output", f.output)->check(CLI::IsMember({"json", "csv"}));

  CLI::App* slice_cmd = app.add_subcommand("slice", "vertical slice through a cover");
  slice_cmd->add_option("--domain", f.domain, domain_help);
  slice_cmd->add_option("--x", f.x, "abscissa");
  slice_cmd->add_option("--eps", f.eps, "cover area target")->check(CLI::PositiveNumber);
  slice_cmd->add_option("--max-level", f.max_level);
  slice_cmd->add_option("--output", f.output)->check(CLI::IsMember({"json", "csv", "table"}));

  // Per-command defaults: table for the counterexample report (with the
  // envelope level tracking the requested depth), CSV for the dumps.
  counter->preparse_callback([&](std::size_t) {
    f.output = "table";
    f.level = 0;
  });
  measure->preparse_callback([&](std::size_t) { f.output = "csv"; });
  oscillation->preparse_callback([&](std::size_t) { f.output = "csv"; });
  slice_cmd->preparse_callback([&](std::size_t) { f.output = "csv"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (integrate->parsed()) return cmd_integrate(f);
    if (fubini->parsed()) return cmd_fubini_check(f);
    if (counter->parsed()) return cmd_counterexample(f);
    if (measure->parsed()) return cmd_measure(f);
    if (oscillation->parsed()) return cmd_oscillation(f);
    if (slice_cmd->parsed()) return cmd_slice(f);
  } catch (const CoverNotAchievable& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}

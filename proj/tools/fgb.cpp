#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fgb/besov.hpp"
#include "fgb/measure.hpp"
#include "fgb/mobius.hpp"
#include "fgb/rng.hpp"
#include "fgb/sample.hpp"
#include "fgb/verify.hpp"
#include "json.hpp"

using nlohmann::ordered_json;

namespace {

// exit codes: 0 all pass, 1 verification failure, 2 input/config error
constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kInputError = 2;

std::string scalar_str(const fgb::ExactScalar& v) { return v.to_string(); }

ordered_json scalar_json(const fgb::ExactScalar& v) { return v.to_string(); }
ordered_json scalar_json(double v) { return v; }

ordered_json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  ordered_json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

// ----- metric space / map ingestion ----------------------------------------

struct LoadedSpace {
  bool exact;
  std::vector<std::string> labels;
  std::vector<fgb::ExactScalar> exact_dist;
  std::vector<double> approx_dist;
};

LoadedSpace load_space_json(const ordered_json& j, double tolerance) {
  if (!j.contains("points") || !j.contains("dist"))
    throw std::invalid_argument("space file needs \"points\" and \"dist\"");
  LoadedSpace sp;
  sp.labels = j.at("points").get<std::vector<std::string>>();
  const auto& rows = j.at("dist");
  std::size_t n = sp.labels.size();
  if (rows.size() != n) throw std::invalid_argument("dist row count != point count");
  bool saw_string = false, saw_number = false;
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("dist matrix is not square");
    for (const auto& e : row) {
      if (e.is_string())
        saw_string = true;
      else if (e.is_number())
        saw_number = true;
      else
        throw std::invalid_argument("dist entries must be \"a/b\" strings or numbers");
    }
  }
  if (saw_string && saw_number)
    throw std::invalid_argument("dist mixes exact strings and numbers; pick one mode");
  sp.exact = saw_string;
  for (const auto& row : rows)
    for (const auto& e : row) {
      if (sp.exact)
        sp.exact_dist.push_back(fgb::ExactScalar::from_string(e.get<std::string>()));
      else
        sp.approx_dist.push_back(e.get<double>());
    }
  (void)tolerance;
  return sp;
}

// CSV alternative: header line of labels, then the matrix rows.
LoadedSpace load_space_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  LoadedSpace sp;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty space file");
  std::stringstream head(line);
  std::string cell;
  while (std::getline(head, cell, ',')) sp.labels.push_back(cell);
  std::size_t n = sp.labels.size();
  std::vector<std::string> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    while (std::getline(row, cell, ',')) cells.push_back(cell);
  }
  if (cells.size() != n * n) throw std::invalid_argument("space matrix is not n x n");
  sp.exact = !cells.empty() && cells[0].find_first_not_of("0123456789-/") == std::string::npos &&
             cells[0].find('.') == std::string::npos;
  for (const auto& c : cells) {
    if (sp.exact)
      sp.exact_dist.push_back(fgb::ExactScalar::from_string(c));
    else
      sp.approx_dist.push_back(std::stod(c));
  }
  return sp;
}

LoadedSpace load_space(const std::string& path, double tolerance) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return load_space_csv(path);
  return load_space_json(parse_json_file(path), tolerance);
}

fgb::PointMap load_map(const std::string& path) {
  ordered_json j = parse_json_file(path);
  const ordered_json& arr = j.is_object() && j.contains("images") ? j.at("images") : j;
  if (!arr.is_array()) throw std::invalid_argument("map file must be an image-index list");
  std::vector<std::int64_t> images;
  for (const auto& e : arr) {
    if (e.is_null())
      images.push_back(-1);
    else
      images.push_back(e.get<std::int64_t>());
  }
  return fgb::PointMap(std::move(images));
}

// ----- subcommand bodies ----------------------------------------------------

int cmd_levelsets(int rank_n, long n_max, const std::string& format) {
  fgb::Rank rank(rank_n);
  fgb::LevelSetTable table = fgb::levelset_table(rank, n_max);
  if (format == "csv") {
    std::cout << "n,mass,cumulative\n";
    for (const auto& row : table.rows)
      std::cout << row.n << "," << scalar_str(row.mass) << "," << scalar_str(row.cumulative)
                << "\n";
  } else {
    ordered_json out;
    out["q"] = table.q;
    out["rows"] = ordered_json::array();
    for (const auto& row : table.rows)
      out["rows"].push_back({{"n", row.n},
                             {"mass", scalar_str(row.mass)},
                             {"cumulative", scalar_str(row.cumulative)}});
    std::cout << out.dump(2) << "\n";
  }
  return kOk;
}

int cmd_norm_table(int rank_n, double p, long length_max, std::uint64_t seed,
                   const std::string& format) {
  fgb::Rank rank(rank_n);
  long q = rank.q();
  bool exact = p == static_cast<long>(p);
  long ip = static_cast<long>(p);
  fgb::SplitMix64 rng(seed);

  fgb::ExactScalar lb_coef = fgb::ExactScalar(q - 1, q + 1) * fgb::ExactScalar(q - 1, q + 1);
  fgb::ExactScalar ub_coef = fgb::ExactScalar(q, q + 1) * fgb::ExactScalar(q, q + 1);
  std::vector<fgb::ExactScalar> s =
      exact ? fgb::s_sum_table(length_max, ip, q) : std::vector<fgb::ExactScalar>{};

  bool all_ok = true;
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "length,element,norm_p,s_n,lower,upper\n";
  for (long len = 1; len <= length_max; ++len) {
    fgb::ReducedWord g = fgb::random_reduced_word(rng, rank, static_cast<std::size_t>(len));
    if (exact) {
      fgb::ExactScalar norm = fgb::cocycle_lp_norm_p(rank, g, ip);
      fgb::ExactScalar lo = lb_coef * s[static_cast<std::size_t>(len)];
      fgb::ExactScalar hi = ub_coef * s[static_cast<std::size_t>(len)];
      all_ok = all_ok && lo <= norm && norm <= hi;
      if (format == "csv")
        csv << len << "," << fgb::format_word(g) << "," << scalar_str(norm) << ","
            << scalar_str(s[static_cast<std::size_t>(len)]) << "," << scalar_str(lo) << ","
            << scalar_str(hi) << "\n";
      else
        rows.push_back({{"length", len},
                        {"element", fgb::format_word(g)},
                        {"norm_p", scalar_str(norm)},
                        {"s_n", scalar_str(s[static_cast<std::size_t>(len)])},
                        {"lower", scalar_str(lo)},
                        {"upper", scalar_str(hi)}});
    } else {
      double norm = fgb::cocycle_lp_norm_real(rank, len, p);
      if (format == "csv")
        csv << len << "," << fgb::format_word(g) << "," << norm << ",,,\n";
      else
        rows.push_back({{"length", len}, {"element", fgb::format_word(g)}, {"norm_p", norm}});
    }
  }
  if (format == "csv") {
    std::cout << csv.str();
  } else {
    ordered_json out;
    out["q"] = q;
    out["p"] = p;
    out["mode"] = exact ? "exact" : "float (non-integer p, relative accuracy 1e-9)";
    out["rows"] = rows;
    std::cout << out.dump(2) << "\n";
  }
  if (exact && !all_ok) {
    std::cerr << "norm-table: bracketing violated\n";
    return kVerifyFail;
  }
  return kOk;
}

fgb::GroupFunction load_group_function(const fgb::Rank& rank, const std::string& path) {
  ordered_json j = parse_json_file(path);
  if (!j.contains("radius")) throw std::invalid_argument("function file needs \"radius\"");
  fgb::CayleyBall ball(rank, j.at("radius").get<long>());
  auto read_table = [&](const ordered_json& obj) {
    std::map<fgb::ReducedWord, fgb::ExactScalar> t;
    for (const auto& [key, val] : obj.items())
      t.emplace(fgb::parse_word(rank, key), fgb::ExactScalar::from_string(val.get<std::string>()));
    return t;
  };
  if (j.contains("values")) return fgb::GroupFunction::from_vertex_table(ball, read_table(j.at("values")));
  if (j.contains("subtree"))
    return fgb::GroupFunction::structured(
        ball, read_table(j.at("subtree")),
        j.contains("overrides") ? read_table(j.at("overrides"))
                                : std::map<fgb::ReducedWord, fgb::ExactScalar>{});
  throw std::invalid_argument("function file needs \"values\" (dense) or \"subtree\" (structured)");
}

int cmd_besov(int rank_n, long p, long length_max, long radius, long count, long depth,
              std::uint64_t seed, const std::string& function_file, const std::string& format) {
  fgb::Rank rank(rank_n);
  if (!function_file.empty()) {
    fgb::GroupFunction phi = load_group_function(rank, function_file);
    long n = depth >= 0 ? depth : static_cast<long>(phi.structure_depth());
    fgb::CylinderFunction f = fgb::boundary_extension(phi, n);
    ordered_json out;
    out["radius"] = phi.ball().radius;
    out["p"] = p;
    out["extension_depth"] = n;
    out["ep_p"] = scalar_str(fgb::ep_seminorm_p(phi, p));
    out["besov_p"] = scalar_str(fgb::besov_seminorm_p(f, p));
    std::cout << out.dump(2) << "\n";
    return kOk;
  }

  fgb::SplitMix64 rng(seed);
  std::vector<fgb::ReducedWord> elements;
  for (long i = 0; i < count; ++i) {
    long len = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(length_max)));
    elements.push_back(fgb::random_reduced_word(rng, rank, static_cast<std::size_t>(len)));
  }
  long r = radius > 0 ? radius : length_max + 1;
  auto rows = fgb::properness_table(rank, elements, p, r);
  bool all_ok = true;
  for (const auto& row : rows)
    all_ok = all_ok && row.lower <= row.besov && row.besov <= row.upper &&
             row.ep == fgb::ExactScalar(row.length);
  if (format == "csv") {
    std::cout << "length,ep_p,besov_p,lower_bracket,upper_bracket\n";
    for (const auto& row : rows)
      std::cout << row.length << "," << scalar_str(row.ep) << "," << scalar_str(row.besov) << ","
                << scalar_str(row.lower) << "," << scalar_str(row.upper) << "\n";
  } else {
    ordered_json out;
    out["q"] = rank.q();
    out["p"] = p;
    out["radius"] = r;
    out["rows"] = ordered_json::array();
    for (const auto& row : rows)
      out["rows"].push_back({{"element", fgb::format_word(row.g)},
                             {"length", row.length},
                             {"ep_p", scalar_str(row.ep)},
                             {"besov_p", scalar_str(row.besov)},
                             {"lower_bracket", scalar_str(row.lower)},
                             {"upper_bracket", scalar_str(row.upper)}});
    std::cout << out.dump(2) << "\n";
  }
  if (!all_ok) {
    std::cerr << "besov: properness brackets violated\n";
    return kVerifyFail;
  }
  return kOk;
}

template <typename S>
int mobius_report(const fgb::MetricSpace<S>& space, const fgb::PointMap& map, const S& tolerance,
                  const char* mode) {
  auto verdict = fgb::is_mobius<S>(space, map, tolerance);
  auto deriv = fgb::derivative_table(space, map);
  auto mv = fgb::check_mean_value(space, map, deriv);
  auto lip = fgb::lipschitz_bound_check(space, map);
  auto coc = fgb::cocycle_bound_check(space, map);
  auto alpha = fgb::alpha_bound_check(space, map);

  ordered_json out;
  out["mode"] = mode;
  out["points"] = space.size();
  out["domain"] = map.domain().size();
  out["mobius"] = verdict.mobius;
  out["max_cross_ratio_deviation"] = scalar_json(verdict.max_deviation);
  out["quadruples_tested"] = verdict.quadruples_tested;
  if (!verdict.mobius) {
    ordered_json worst = ordered_json::array();
    for (std::size_t i : verdict.worst) worst.push_back(space.label(i));
    out["worst_quadruple"] = worst;
  }
  ordered_json dj = ordered_json::object();
  for (std::size_t i : map.domain()) dj[space.label(i)] = scalar_json(deriv[i]);
  out["derivative"] = dj;
  out["mean_value_residual"] = scalar_json(mv.max_residual);
  out["lipschitz_bound"] = lip.holds;
  out["cocycle_bound"] = coc.holds;
  out["kappa"] = scalar_json(fgb::kappa(space));
  out["alpha_bound"] = {{"applicable", alpha.applicable},
                        {"holds", alpha.holds},
                        {"displacement", scalar_json(alpha.displacement)},
                        {"kappa", scalar_json(alpha.kappa_value)}};
  std::cout << out.dump(2) << "\n";

  bool pass = verdict.mobius && lip.holds && coc.holds && (!alpha.applicable || alpha.holds);
  if constexpr (fgb::detail::is_exact<S>) {
    pass = pass && mv.max_residual.is_zero();
  } else {
    pass = pass && mv.max_residual <= tolerance + fgb::detail::kApproxSlack;
  }
  return pass ? kOk : kVerifyFail;
}

int cmd_mobius_check(const std::string& space_file, const std::string& map_file,
                     double tolerance) {
  LoadedSpace sp = load_space(space_file, tolerance);
  fgb::PointMap map = load_map(map_file);
  if (map.size() != sp.labels.size())
    throw std::invalid_argument("map size does not match the space");
  if (sp.exact) {
    fgb::MetricSpace<fgb::ExactScalar> space(sp.labels, sp.exact_dist);
    long num = std::lround(tolerance * 1000000000.0);
    fgb::ExactScalar tol = fgb::ExactScalar(num, 1000000000L);
    return mobius_report<fgb::ExactScalar>(space, map, tol, "exact");
  }
  fgb::MetricSpace<double> space(sp.labels, sp.approx_dist, tolerance);
  return mobius_report<double>(space, map, tolerance, "approximate");
}

int cmd_kappa(const std::string& space_file, double tolerance) {
  LoadedSpace sp = load_space(space_file, tolerance);
  ordered_json out;
  if (sp.exact) {
    fgb::MetricSpace<fgb::ExactScalar> space(sp.labels, sp.exact_dist);
    out["kappa"] = scalar_json(fgb::kappa(space));
  } else {
    fgb::MetricSpace<double> space(sp.labels, sp.approx_dist, tolerance);
    out["kappa"] = scalar_json(fgb::kappa(space));
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_export_sample(int rank_n, long count, long depth, std::uint64_t seed,
                      const std::vector<std::string>& element_words, const std::string& out_prefix,
                      const std::string& format) {
  fgb::Rank rank(rank_n);
  std::vector<fgb::ReducedWord> elements;
  for (const auto& s : element_words) elements.push_back(fgb::parse_word(rank, s));

  std::vector<fgb::BoundaryPoint> seeds;
  for (int s = 0; s < rank.alphabet(); ++s)
    seeds.push_back(fgb::BoundaryPoint::letter_power(static_cast<fgb::Letter>(s)));
  fgb::SplitMix64 rng(seed);
  while (static_cast<long>(seeds.size()) < count) {
    fgb::BoundaryPoint xi = fgb::random_boundary_point(
        rng, rank, static_cast<std::size_t>(depth), static_cast<std::size_t>(depth) + 1);
    if (std::find(seeds.begin(), seeds.end(), xi) == seeds.end()) seeds.push_back(xi);
  }
  fgb::BoundarySample sample = fgb::build_boundary_sample(rank, seeds, elements);

  std::size_t n = sample.points.size();
  std::string space_text;
  if (format == "csv") {
    std::ostringstream csv;
    for (std::size_t i = 0; i < n; ++i) csv << (i ? "," : "") << sample.space.label(i);
    csv << "\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) csv << (j ? "," : "") << scalar_str(sample.space.d(i, j));
      csv << "\n";
    }
    space_text = csv.str();
  } else {
    ordered_json space_json;
    space_json["points"] = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) space_json["points"].push_back(sample.space.label(i));
    space_json["dist"] = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(scalar_str(sample.space.d(i, j)));
      space_json["dist"].push_back(row);
    }
    space_text = space_json.dump(2) + "\n";
  }

  if (out_prefix.empty()) {
    std::cout << space_text;
    return kOk;
  }
  std::string ext = format == "csv" ? ".csv" : ".json";
  std::string space_path = out_prefix + ".space" + ext;
  write_text(space_path, space_text);
  std::cout << "wrote " << space_path << " (" << n << " points, " << sample.seed_count
            << " seeds)\n";
  for (std::size_t k = 0; k < sample.elements.size(); ++k) {
    ordered_json mj;
    mj["element"] = fgb::format_word(sample.elements[k]);
    mj["images"] = sample.maps[k].raw();
    std::string map_path = out_prefix + ".map-" + std::to_string(k) + ".json";
    write_text(map_path, mj.dump(2) + "\n");
    std::cout << "wrote " << map_path << " (domain " << sample.maps[k].domain().size() << ")\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact boundary measure theory of free groups: Poisson kernels, the invariant "
               "measure nu, cocycle L^p norms, Mobius calculus, and Besov/l^p seminorms"};
  app.require_subcommand(1);

  int rank_n = 2;
  std::uint64_t seed = 1;
  std::string format = "json";
  app.add_option("--rank", rank_n, "free group rank n >= 2")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed; identical seeds give identical bytes")
      ->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run every exact-identity suite");
  bool perturb = false;
  fgb::VerifyOptions vopt;
  verify->add_flag("--perturb", perturb, "inject one deliberate fault (run must FAIL)");
  verify->add_option("--checks", vopt.identity_checks, "instances per identity check")
      ->capture_default_str();

  auto* levelsets = app.add_subcommand("levelsets", "nu(K_n) level-set table");
  long ls_depth = 20;
  levelsets->add_option("--depth", ls_depth, "largest level n")->capture_default_str();

  auto* norm_table = app.add_subcommand("norm-table", "cocycle L^p norms with S_N brackets");
  double nt_p = 2.0;
  long nt_len = 50;
  norm_table->add_option("--p", nt_p, "exponent (integer = exact, else float path)")
      ->capture_default_str();
  norm_table->add_option("--length-max", nt_len, "one row per length 1..L")->capture_default_str();

  auto* besov = app.add_subcommand("besov", "properness table / Besov seminorm of a function");
  long bs_p = 2, bs_len = 12, bs_radius = 0, bs_count = 12, bs_depth = -1;
  std::string bs_function;
  besov->add_option("--p", bs_p, "integer exponent p >= 2")->capture_default_str();
  besov->add_option("--length-max", bs_len, "element lengths drawn from 1..L")
      ->capture_default_str();
  besov->add_option("--count", bs_count, "number of random elements")->capture_default_str();
  besov->add_option("--radius", bs_radius, "Cayley ball radius (default max length + 1)");
  besov->add_option("--depth", bs_depth, "extension depth for --function (default structure depth)");
  besov->add_option("--function", bs_function, "JSON GroupFunction to measure instead");

  auto* mobius = app.add_subcommand("mobius-check", "Mobius-calculus report for a space and map");
  std::string mb_space, mb_map;
  double mb_tol = 0.0;
  mobius->add_option("space", mb_space, "metric space JSON/CSV file")->required();
  mobius->add_option("map", mb_map, "point map JSON file")->required();
  mobius->add_option("--tolerance", mb_tol, "cross-ratio tolerance")->capture_default_str();

  auto* kappa_cmd = app.add_subcommand("kappa", "covering-radius constant of a finite space");
  std::string kp_space;
  double kp_tol = 0.0;
  kappa_cmd->add_option("space", kp_space, "metric space JSON/CSV file")->required();
  kappa_cmd->add_option("--tolerance", kp_tol, "metric validation tolerance")
      ->capture_default_str();

  auto* exports = app.add_subcommand("export-sample", "boundary sample as space + map files");
  long ex_count = 8, ex_depth = 3;
  std::vector<std::string> ex_elements;
  std::string ex_out;
  // global flags (--rank, --seed, --format) may follow the subcommand name
  for (CLI::App* sub : {verify, levelsets, norm_table, besov, mobius, kappa_cmd, exports})
    sub->fallthrough();
  exports->add_option("--count", ex_count, "number of seed points (>= 2n)")->capture_default_str();
  exports->add_option("--depth", ex_depth, "random point preperiod/period size")
      ->capture_default_str();
  exports->add_option("--element", ex_elements, "group element (repeatable), e.g. a1.A2");
  exports->add_option("--out", ex_out, "output path prefix (default: space to stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (verify->parsed()) {
      vopt.rank_n = rank_n;
      vopt.seed = seed;
      vopt.perturb = perturb;
      return fgb::run_verify(vopt, std::cout) ? kOk : kVerifyFail;
    }
    if (levelsets->parsed()) return cmd_levelsets(rank_n, ls_depth, format);
    if (norm_table->parsed()) return cmd_norm_table(rank_n, nt_p, nt_len, seed, format);
    if (besov->parsed())
      return cmd_besov(rank_n, bs_p, bs_len, bs_radius, bs_count, bs_depth, seed, bs_function,
                       format);
    if (mobius->parsed()) return cmd_mobius_check(mb_space, mb_map, mb_tol);
    if (kappa_cmd->parsed()) return cmd_kappa(kp_space, kp_tol);
    if (exports->parsed())
      return cmd_export_sample(rank_n, ex_count, ex_depth, seed, ex_elements, ex_out, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

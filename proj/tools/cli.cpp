#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pfcme/bounds.hpp"
#include "pfcme/decomposition.hpp"
#include "pfcme/distribution.hpp"
#include "pfcme/errors.hpp"
#include "pfcme/nilt.hpp"

namespace pfcme::cli {

namespace {

using nlohmann::json;

enum class Format { kCsv, kJson };

struct RunConfig {
  std::string subcommand;
  int m = 0;
  std::vector<int> m_list;
  Format format = Format::kCsv;
  std::uint64_t seed = 1;
  std::int64_t count = 0;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::string transform;
  std::string rational;
  std::vector<double> t_list;
  double a1 = kDefaultA1;
  double a2 = kDefaultA2;
  int grid_points = kDefaultGridPoints;
  bool allow_large_m = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits; parsing recovers the double exactly.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << (i ? "," : "");
    if constexpr (std::is_floating_point_v<T>) {
      os << num(values[i]);
    } else {
      os << values[i];
    }
  }
  return os.str();
}

void check_m(int m, const RunConfig& cfg) {
  if (m < 3) throw UsageError("m must be >= 3, got " + std::to_string(m));
  if (m > kMaxDefaultM && !cfg.allow_large_m) {
    throw UsageError("m=" + std::to_string(m) + " exceeds " +
                     std::to_string(kMaxDefaultM) +
                     "; pass --allow-large-m to override");
  }
}

// Writes a table either as CSV (one comment line, header, rows) or JSON
// ({"tool", "version", "command", "parameters", "columns", "rows"}).
void emit_table(std::ostream& out, const RunConfig& cfg, const json& params,
                const std::vector<std::string>& columns,
                const std::vector<std::vector<json>>& rows) {
  if (cfg.format == Format::kJson) {
    json doc = {{"tool", "pfcme"},
                {"version", kVersion},
                {"command", cfg.subcommand},
                {"parameters", params},
                {"columns", columns},
                {"rows", json::array()}};
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
      doc["rows"].push_back(obj);
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << "# pfcme " << kVersion << ' ' << cfg.subcommand;
  for (const auto& [key, value] : params.items()) {
    out << ' ' << key << '=';
    if (value.is_string()) {
      out << value.get<std::string>();
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << (i ? "," : "");
        if (value[i].is_number_float()) {
          out << num(value[i].get<double>());
        } else {
          out << value[i].dump();
        }
      }
    } else if (value.is_number_float()) {
      out << num(value.get<double>());
    } else {
      out << value.dump();
    }
  }
  out << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << columns[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "");
      const json& cell = row[i];
      if (cell.is_null()) {
        // empty field
      } else if (cell.is_number_float()) {
        out << num(cell.get<double>());
      } else if (cell.is_string()) {
        out << cell.get<std::string>();
      } else {
        out << cell.dump();
      }
    }
    out << '\n';
  }
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  if (cfg.m_list.empty()) throw UsageError("table needs a nonempty --m-list");
  for (int m : cfg.m_list) check_m(m, cfg);
  const auto dists = build_many(cfg.m_list);
  std::vector<std::vector<json>> rows;
  for (const auto& d : dists) {
    const auto diag = diagnostics(d);
    rows.push_back({d.params().m, d.params().r, d.params().n, d.moments().scv,
                    diag.scv_times_n, diag.m2_over_logm_scv,
                    diag.n2_over_log3n_scv});
  }
  emit_table(out, cfg, {{"m_list", cfg.m_list}},
             {"m", "r_m", "n_m", "scv", "scv_times_n", "m2_over_logm_scv",
              "n2_over_log3n_scv"},
             rows);
  return kSuccess;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
  std::vector<int> ms = cfg.m_list;
  if (cfg.m != 0) ms.insert(ms.begin(), cfg.m);
  if (ms.empty()) throw UsageError("moments needs --m or --m-list");
  for (int m : ms) check_m(m, cfg);
  const auto dists = build_many(ms);
  std::vector<std::vector<json>> rows;
  for (const auto& d : dists) {
    const auto& p = d.params();
    const auto& mo = d.moments();
    rows.push_back({p.m, p.r, p.L, p.n, p.h, p.omega, d.normalization(), mo.M0,
                    mo.M1, mo.M2, mo.mean, mo.second_moment, mo.variance,
                    mo.scv, erlang_scv(p.n)});
  }
  emit_table(out, cfg, {{"m_list", ms}},
             {"m", "r", "L", "n", "h", "omega", "C", "M0", "M1", "M2", "mean",
              "second_moment", "variance", "scv", "erlang_scv"},
             rows);
  return kSuccess;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  check_m(cfg.m, cfg);
  if (!(cfg.step > 0.0)) throw UsageError("--step must be > 0");
  if (cfg.start < 0.0) throw UsageError("density range must start at t >= 0");
  if (cfg.stop < cfg.start) throw UsageError("--stop must be >= --start");
  const PfCmeDistribution dist(cfg.m);
  // floor((stop - start) / step) + 1 rows; the 1e-9 absorbs quotients such
  // as 3 / 0.001 landing just below an integer.
  const auto rows_count = static_cast<std::int64_t>(
                              std::floor((cfg.stop - cfg.start) / cfg.step + 1e-9)) +
                          1;
  std::vector<std::vector<json>> rows;
  rows.reserve(static_cast<std::size_t>(rows_count));
  for (std::int64_t i = 0; i < rows_count; ++i) {
    const double t = cfg.start + static_cast<double>(i) * cfg.step;
    rows.push_back({t, dist.density(t)});
  }
  emit_table(out, cfg,
             {{"m", cfg.m}, {"start", cfg.start}, {"stop", cfg.stop}, {"step", cfg.step}},
             {"t", "density"}, rows);
  return kSuccess;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  check_m(cfg.m, cfg);
  if (cfg.count < 1) throw UsageError("--count must be >= 1");
  const PfCmeDistribution dist(cfg.m);
  SamplerState state(cfg.seed);
  const auto draws = sample(dist, state, cfg.count);
  std::vector<std::vector<json>> rows;
  rows.reserve(draws.size());
  for (double x : draws) rows.push_back({x});
  emit_table(out, cfg,
             {{"m", cfg.m},
              {"count", cfg.count},
              {"seed", cfg.seed},
              {"generator", std::string(SamplerState::kGeneratorName)}},
             {"x"}, rows);
  return kSuccess;
}

std::string catalog_names() {
  std::string names;
  for (const auto& f : catalog()) names += (names.empty() ? "" : ", ") + f.name;
  return names;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out) {
  check_m(cfg.m, cfg);
  if (cfg.t_list.empty()) throw UsageError("invert needs --t-list");
  for (double t : cfg.t_list) {
    if (!(t > 0.0)) throw UsageError("inversion times must be > 0");
  }
  std::optional<TransformFunction> F;
  if (!cfg.rational.empty()) {
    if (!cfg.transform.empty()) {
      throw UsageError("give either --transform or --rational, not both");
    }
    try {
      F = parse_rational(cfg.rational);
    } catch (const DomainError& e) {
      throw UsageError(std::string("bad --rational: ") + e.what());
    }
  } else {
    F = find_transform(cfg.transform);
    if (!F) {
      throw UsageError("unknown transform '" + cfg.transform +
                       "'; catalog: " + catalog_names());
    }
  }
  const PfCmeDistribution dist(cfg.m);
  const PoleResidueForm form = pole_residue(dist);
  std::vector<std::vector<json>> rows;
  for (double T : cfg.t_list) {
    const double value = invert(form, *F, T);
    if (F->inverse) {
      const double exact = (*F->inverse)(T);
      rows.push_back({T, value, exact, std::abs(value - exact)});
    } else {
      rows.push_back({T, value, nullptr, nullptr});
    }
  }
  emit_table(out, cfg,
             {{"m", cfg.m}, {"transform", F->name}, {"definition", F->description}},
             {"T", "value", "known_inverse", "abs_error"}, rows);
  return kSuccess;
}

int cmd_verify_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<int> ms = cfg.m_list;
  if (cfg.m != 0) ms.insert(ms.begin(), cfg.m);
  if (ms.empty()) throw UsageError("verify-bounds needs --m or --m-list");
  for (int m : ms) {
    if (m < 2) throw UsageError("bound verification needs m >= 2");
  }
  if (!(cfg.a1 > 0.0 && cfg.a1 < cfg.a2)) throw UsageError("need 0 < a1 < a2");
  if (cfg.grid_points < 2) throw UsageError("--grid-points must be >= 2");

  bool failed = false;
  json reports = json::array();
  std::vector<std::vector<json>> rows;
  for (int m : ms) {
    const BoundReport rep = verify_all(m, cfg.a1, cfg.a2, cfg.grid_points);
    if (rep.below_recommended) {
      err << "note: m=" << m << " is below the recommended m >= "
          << kRecommendedMinOrder << "; reported, not asserted\n";
    } else if (!rep.ok()) {
      failed = true;
    }
    reports.push_back(to_json(rep));
    rows.push_back({m, rep.peak_ok(), rep.transition_ok(), rep.tail_ok(),
                    rep.below_recommended, rep.peak_upper.worst_margin,
                    rep.peak_lower.worst_margin, rep.transition.worst_margin,
                    rep.tail.worst_margin});
  }
  if (cfg.format == Format::kJson) {
    json doc = {{"tool", "pfcme"},
                {"version", kVersion},
                {"command", "verify-bounds"},
                {"parameters",
                 {{"m_list", ms},
                  {"a1", cfg.a1},
                  {"a2", cfg.a2},
                  {"grid_points", cfg.grid_points}}},
                {"reports", reports},
                {"ok", !failed}};
    out << doc.dump(2) << '\n';
  } else {
    emit_table(out, cfg,
               {{"m_list", ms}, {"a1", cfg.a1}, {"a2", cfg.a2},
                {"grid_points", cfg.grid_points}},
               {"m", "peak_ok", "transition_ok", "tail_ok", "below_recommended",
                "peak_upper_margin", "peak_lower_margin", "transition_margin",
                "tail_margin"},
               rows);
  }
  if (failed) err << "bound verification failed\n";
  return failed ? kBoundFailure : kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  std::string format = "csv";
  CLI::App app{"PF-CME distributions: construction, moments, sampling, "
               "kernel bounds and Laplace inversion",
               "pfcme"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--allow-large-m", cfg.allow_large_m,
                  "Lift the m <= 5000 guardrail");
  };

  auto* table = app.add_subcommand("table", "SCV and Erlang comparison per m");
  table->add_option("--m-list", cfg.m_list, "Comma-separated indices")
      ->delimiter(',');
  add_common(table);

  auto* moments = app.add_subcommand("moments", "Parameters and exact moments");
  moments->add_option("--m", cfg.m, "Index m >= 3");
  moments->add_option("--m-list", cfg.m_list, "Comma-separated indices")
      ->delimiter(',');
  add_common(moments);

  auto* dens = app.add_subcommand("density", "Density on a uniform t grid");
  dens->add_option("--m", cfg.m, "Index m >= 3")->required();
  dens->add_option("--start", cfg.start, "First t")->default_val(0.0);
  dens->add_option("--stop", cfg.stop, "Last t")->required();
  dens->add_option("--step", cfg.step, "Grid step")->required();
  add_common(dens);

  auto* samp = app.add_subcommand("sample", "Reproducible random draws");
  samp->add_option("--m", cfg.m, "Index m >= 3")->required();
  samp->add_option("--count", cfg.count, "Number of draws")->required();
  samp->add_option("--seed", cfg.seed, "64-bit seed")->default_val(1);
  add_common(samp);

  auto* inv = app.add_subcommand("invert", "Laplace inversion at times T");
  inv->add_option("--m", cfg.m, "Index m >= 3")->required();
  inv->add_option("--transform", cfg.transform,
                  "Catalog name (const, ramp, exp, sin, step)");
  inv->add_option("--rational", cfg.rational,
                  "Rational transform, e.g. \"num=1; den=1,1\" (highest power first)");
  inv->add_option("--t-list", cfg.t_list, "Comma-separated times")
      ->delimiter(',')
      ->required();
  add_common(inv);

  auto* vb = app.add_subcommand("verify-bounds", "Scan the Fejér kernel bounds");
  vb->add_option("--m", cfg.m, "Index m");
  vb->add_option("--m-list", cfg.m_list, "Comma-separated indices")
      ->delimiter(',');
  vb->add_option("--a1", cfg.a1, "Upper Gaussian constant");
  vb->add_option("--a2", cfg.a2, "Lower Gaussian constant");
  vb->add_option("--grid-points", cfg.grid_points, "Points per region");
  add_common(vb);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = (format == "json") ? Format::kJson : Format::kCsv;
  if (inv->parsed() && cfg.transform.empty() && cfg.rational.empty()) {
    err << "usage error: invert needs --transform or --rational; catalog: "
        << catalog_names() << '\n';
    return kUsageError;
  }

  try {
    if (cfg.subcommand == "table") return cmd_table(cfg, out);
    if (cfg.subcommand == "moments") return cmd_moments(cfg, out);
    if (cfg.subcommand == "density") return cmd_density(cfg, out);
    if (cfg.subcommand == "sample") return cmd_sample(cfg, out);
    if (cfg.subcommand == "invert") return cmd_invert(cfg, out);
    return cmd_verify_bounds(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kNumericError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace pfcme::cli

// mixent: command-line front end for the entropy-number toolkit.
//
// Exit codes: 0 success, 2 bad flags, 3 hypothesis violated, 4 verification failed.
// Errors go to stderr as one JSON object.

#include "mixent/besov.hpp"
#include "mixent/covering.hpp"
#include "mixent/crosscheck.hpp"
#include "mixent/designs.hpp"
#include "mixent/dyadic_grid.hpp"
#include "mixent/oracle.hpp"
#include "mixent/packing.hpp"
#include "mixent/rates.hpp"
#include "mixent/serialization.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

using namespace mixent;

namespace {

enum Exit { kOk = 0, kFlags = 2, kHypothesis = 3, kVerification = 4 };

/// Thrown by handlers that already know which exit status they want.
struct ExitWith {
  int code;
  Json error;
};

void emit_error(const Json& j) { std::cerr << j.dump() << '\n'; }

Json error_json(const char* kind, const std::string& message) {
  return Json{{"error", kind}, {"message", message}};
}

struct RunConfig {
  std::string p = "1", q = "1", r = "inf", u = "inf";
  int b = 1, d = 1;
  std::uint64_t seed = 0x5eed;
  std::size_t samples = 10000;
  std::string out;

  [[nodiscard]] ExponentTuple params() const {
    return {Exponent::parse(p), Exponent::parse(q), Exponent::parse(r), Exponent::parse(u)};
  }
  [[nodiscard]] Shape shape() const { return {b, d}; }
};

void add_exponents(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--p", cfg.p, "source outer exponent");
  cmd->add_option("--q", cfg.q, "source inner exponent");
  cmd->add_option("--r", cfg.r, "target outer exponent");
  cmd->add_option("--u", cfg.u, "target inner exponent");
}

void add_shape(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--b", cfg.b, "rows")->check(CLI::PositiveNumber);
  cmd->add_option("--d", cfg.d, "columns")->check(CLI::PositiveNumber);
}

void add_output(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out,-o", cfg.out, "output file (relative paths resolve under $MIXENT_OUTPUT_DIR)");
}

std::string resolve_output(const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("MIXENT_OUTPUT_DIR"); dir && *dir) p = fs::path(dir) / p;
  }
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p.string();
}

/// Writes to cfg.out if given, else stdout.
void deliver(const RunConfig& cfg, const std::string& text, const std::string& summary = {}) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  const std::string path = resolve_output(cfg.out);
  write_text_file(path, text);
  std::cout << (summary.empty() ? std::string("wrote") : summary) << ' ' << path << '\n';
}

std::string seed_header(std::uint64_t seed, const std::string& what) {
  return "# seed=" + std::to_string(seed) + " " + what + "\n";
}

std::string describe(const RunConfig& cfg) {
  return cfg.params().str() + " b=" + std::to_string(cfg.b) + " d=" + std::to_string(cfg.d);
}

// ---------------------------------------------------------------- grid

void grid_enum(int b, const std::optional<std::string>& p_text) {
  const DyadicGrid grid = enumerate_grid(b);
  std::string text;
  if (p_text) {
    const Exponent p = Exponent::parse(*p_text);
    const RowMajorMatrix rows = transform_grid(grid, p);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      std::vector<std::string> f;
      for (Eigen::Index j = 0; j < rows.cols(); ++j) f.push_back(format_number(rows(i, j)));
      text += csv_line(f);
    }
    text += "# p=" + p.str() + " cardinality=" + std::to_string(rows.rows()) + "\n";
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto r = grid.at(i).rationals();
      std::string line;
      for (std::size_t j = 0; j < r.size(); ++j) line += (j ? " " : "") + r[j];
      text += line + '\n';
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "# b=%d cardinality=%zu max_l1=%s\n", b, grid.size(),
                format_number(grid.max_l1_mass()).c_str());
  text += buf;
  std::cout << text;
}

// ---------------------------------------------------------------- pack

PackingCertificate build_packing(const std::string& construction, const RunConfig& cfg, int s, int t, int levels,
                                 std::size_t max_points) {
  const ExponentTuple params = cfg.params();
  PackingOptions opts;
  opts.max_points = max_points;
  opts.seed = cfg.seed;
  if (construction == "two_level") return two_level_sparse_packing(params, cfg.b, cfg.d, s, t, opts);
  if (construction == "signed_unit") return signed_unit_packing(params, cfg.shape());
  if (construction == "antipodal") return antipodal_packing(params, cfg.shape());
  if (construction == "cube_lattice") return cube_lattice_packing(params, cfg.shape(), levels, opts);
  throw PreconditionError("unknown packing construction '" + construction + "'");
}

Json packing_report_json(const PackingReport& rep) {
  return Json{{"ok", rep.ok},
              {"count", rep.count},
              {"min_distance", rep.min_distance},
              {"pair", {rep.worst_i, rep.worst_j}},
              {"max_norm", rep.max_norm},
              {"message", rep.message}};
}

int verify_packing_file(const Json& doc) {
  const PackingCertificate cert = packing_from_json(doc);
  const PackingReport rep = verify_packing(cert);
  std::cout << packing_report_json(rep).dump() << '\n';
  if (!rep.ok) {
    Json err = error_json("verification", rep.message);
    err["pair"] = {rep.worst_i, rep.worst_j};
    err["distance"] = rep.min_distance;
    err["claimed_separation"] = cert.claimed_separation;
    throw ExitWith{kVerification, err};
  }
  return kOk;
}

// ---------------------------------------------------------------- cover

int verify_covering_file(const Json& doc, std::size_t samples, std::uint64_t seed) {
  const CoveringCertificate cert = covering_from_json(doc);
  if (cert.recompute_count() != cert.count)
    throw ExitWith{kVerification, error_json("verification", "center count does not match the blocks")};
  const CoverageEvidence ev = verify_covering(cert, samples, seed);
  std::cout << Json{{"ok", ev.misses == 0},
                    {"count", cert.count},
                    {"certified_index", cert.certified_index},
                    {"claimed_radius", cert.claimed_radius},
                    {"samples", ev.samples},
                    {"max_distance", ev.max_distance},
                    {"misses", ev.misses},
                    {"seed", ev.seed}}
                   .dump()
            << '\n';
  if (ev.misses > 0) {
    Json err = error_json("verification", "sample points farther than the claimed radius");
    err["misses"] = ev.misses;
    err["max_distance"] = ev.max_distance;
    throw ExitWith{kVerification, err};
  }
  return kOk;
}

std::unique_ptr<InnerCoveringProvider> make_provider(const std::string& name, const ExponentTuple& params, int d) {
  if (name == "interval") {
    if (d != 1) throw PreconditionError("the interval provider needs d = 1");
    return std::make_unique<IntervalProvider>();
  }
  if (name == "lattice") return std::make_unique<LatticeProvider>(params.q, params.u, d);
  throw PreconditionError("unknown provider '" + name + "'");
}

Json klss_json(const RunConfig& cfg, int k, double alpha) {
  const ExponentTuple params = cfg.params();
  const std::vector<int> budgets = klss_budgets(cfg.b, k, alpha);
  const std::vector<InnerEntropyProfile> profiles(std::size_t(cfg.b),
                                                  InnerEntropyProfile::schuett(params.q, params.u, cfg.d));
  const KlssResult res = klss_bound(profiles, budgets, params.p, params.r);
  return Json{{"construction", "klss"},
              {"params", {{"p", exponent_to_json(params.p)},
                          {"q", exponent_to_json(params.q)},
                          {"r", exponent_to_json(params.r)},
                          {"u", exponent_to_json(params.u)}}},
              {"shape", {{"b", cfg.b}, {"d", cfg.d}}},
              {"budget", k},
              {"alpha", alpha},
              {"budgets", budgets},
              {"certified_index", res.index},
              {"value", res.value},
              {"seed", cfg.seed}};
}

// ---------------------------------------------------------------- rates

std::string rates_table(const RunConfig& cfg, int kmin, int kmax, const std::string& compare) {
  const ExponentTuple params = cfg.params();
  std::vector<double> comparator(std::size_t(kmax + 1), std::numeric_limits<double>::quiet_NaN());
  if (compare == "oracle") {
    if (cfg.shape().size() > kMaxOracleSize) throw PreconditionError("oracle comparison needs b*d <= 6");
    const EntropyBracket br = empirical_entropy_curve(params, cfg.shape(), kmax);
    for (int k = kmin; k <= kmax; ++k) comparator[k] = std::sqrt(*br.lower.value_at(k) * *br.upper.value_at(k));
  } else if (compare == "scan") {
    for (int k = kmin; k <= kmax; ++k) comparator[k] = proof_scan_rate(params, cfg.b, cfg.d, k);
  } else if (compare == "certificates") {
    const BoundCurve c = best_covering_curve(params, cfg.shape(), kmax, cfg.samples, cfg.seed);
    for (int k = kmin; k <= kmax; ++k) comparator[k] = *c.value_at(k);
  } else if (!compare.empty()) {
    throw PreconditionError("--compare must be oracle, scan or certificates");
  }

  std::string text = seed_header(cfg.seed, describe(cfg));
  text += compare.empty() ? csv_line({"k", "value", "regime"})
                          : csv_line({"k", "value", "regime", compare, "ratio"});
  for (int k = kmin; k <= kmax; ++k) {
    const RegimeResult f = matching_rate(params, cfg.b, cfg.d, k);
    std::vector<std::string> row = {std::to_string(k), format_number(f.value), f.regime};
    if (!compare.empty()) {
      row.push_back(format_number(comparator[k]));
      row.push_back(format_number(f.value / comparator[k]));
    }
    text += csv_line(row);
  }
  return text;
}

// ---------------------------------------------------------------- besov

struct BesovFlags {
  double r0 = 0.0, r1 = 0.0;
  std::string p0 = "2", p1 = "2", q0 = "1", q1 = "inf";
  int n = 2;
  std::string flavor = "bb";
  long long mmin = 64, mmax = 16384;

  [[nodiscard]] SmoothnessParams params() const {
    if (n < 1) throw PreconditionError("--n must be >= 1");
    return {r0, r1, Exponent::parse(p0), Exponent::parse(p1), Exponent::parse(q0), Exponent::parse(q1), n};
  }
};

void add_besov_flags(CLI::App* cmd, BesovFlags& f) {
  cmd->add_option("--r0", f.r0, "source smoothness");
  cmd->add_option("--r1", f.r1, "target smoothness");
  cmd->add_option("--p0", f.p0, "source integrability");
  cmd->add_option("--p1", f.p1, "target integrability");
  cmd->add_option("--q0", f.q0, "source fine index");
  cmd->add_option("--q1", f.q1, "target fine index");
  cmd->add_option("--n", f.n, "dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--flavor", f.flavor, "bb, bf or fb");
}

std::string besov_slope(const BesovFlags& flags, std::uint64_t seed) {
  const SmoothnessParams sp = flags.params();
  const BesovFlavor flavor = parse_flavor(flags.flavor);
  if (flags.mmin < 1 || flags.mmax < flags.mmin) throw PreconditionError("need 1 <= mmin <= mmax");
  const int lo = int(std::ceil(std::log2(double(flags.mmin)) - 1e-12));
  const int hi = int(std::floor(std::log2(double(flags.mmax)) + 1e-12));
  if (hi - lo + 1 < 4) throw PreconditionError("the slope fit needs at least 4 powers of two in [mmin, mmax]");

  std::string text = seed_header(seed, sp.str() + " flavor=" + flavor_name(flavor));
  text += csv_line({"m", "value", "L", "M", "low", "middle", "tail"});
  std::vector<std::pair<double, double>> samples;
  for (int j = lo; j <= hi; ++j) {
    const long long m = 1LL << j;
    const PipelineResult res = besov_upper_pipeline(sp, m, flavor);
    samples.emplace_back(double(m), res.value);
    text += csv_line({std::to_string(m), format_number(res.value), std::to_string(res.L), std::to_string(res.M),
                      format_number(res.low_term), format_number(res.middle_term), format_number(res.tail)});
  }
  const double slope = fit_rate_slope(samples);
  text += "# slope=" + format_number(slope) + " expected=" + format_number(-(sp.r0 - sp.r1)) + "\n";
  return text;
}

int besov_check(const BesovFlags& flags) {
  const SmoothnessParams sp = flags.params();
  const BesovFlavor flavor = parse_flavor(flags.flavor);
  const auto checks = check_hypotheses(sp, flavor);
  bool all = true;
  std::cout << sp.str() << " flavor=" << flavor_name(flavor) << '\n';
  for (const auto& c : checks) {
    std::cout << (c.passed ? "  ok    " : "  FAIL  ") << c.name << "  " << c.detail << '\n';
    all = all && c.passed;
  }
  std::cout << "route: " << route_description(sp, flavor) << '\n';
  if (!all) {
    for (const auto& c : checks)
      if (!c.passed) {
        Json err = error_json("hypothesis", c.detail);
        err["hypothesis"] = c.name;
        throw ExitWith{kHypothesis, err};
      }
  }
  return kOk;
}

// ---------------------------------------------------------------- dispatch

int run(int argc, char** argv) {
  CLI::App app{"Entropy numbers of mixed-norm embeddings: bounds, certificates and cross-checks"};
  app.require_subcommand(1);
  std::function<int()> action;

  // grid
  auto* grid = app.add_subcommand("grid", "dyadic grid");
  grid->require_subcommand(1);
  int grid_b = 1;
  std::optional<std::string> grid_p;
  auto* grid_enum_cmd = grid->add_subcommand("enum", "list the grid vectors");
  grid_enum_cmd->add_option("--b", grid_b, "dimension")->required()->check(CLI::Range(1, kMaxGridDimension));
  grid_enum_cmd->add_option("--p", grid_p, "print the p-transformed rows instead");
  grid_enum_cmd->callback([&] { action = [&] { grid_enum(grid_b, grid_p); return kOk; }; });

  // designs
  auto* designs = app.add_subcommand("designs", "codes and subset families");
  designs->require_subcommand(1);
  int gv_m = 2, gv_s = 1, sub_n = 8, sub_s = 1;
  std::size_t gv_limit = 0;
  std::uint64_t designs_seed = 0x5eed;
  auto* gv = designs->add_subcommand("gv", "greedy Gilbert-Varshamov code");
  gv->add_option("--m", gv_m, "alphabet parameter")->required()->check(CLI::PositiveNumber);
  gv->add_option("--s", gv_s, "word length parameter")->required()->check(CLI::PositiveNumber);
  gv->add_option("--limit", gv_limit, "stop after this many words (0: none)");
  gv->callback([&] {
    action = [&] {
      std::cout << to_json(build_gv_code(gv_m, gv_s, gv_limit)).dump(1) << '\n';
      return kOk;
    };
  });
  auto* subsets = designs->add_subcommand("subsets", "s-subsets with small pairwise intersections");
  subsets->add_option("--n", sub_n, "ground set size")->required()->check(CLI::Range(1, kMaxSubsetGround));
  subsets->add_option("--s", sub_s, "subset size")->required()->check(CLI::PositiveNumber);
  subsets->add_option("--seed", designs_seed, "seed for the randomized fallback");
  subsets->callback([&] {
    action = [&] {
      std::cout << to_json(build_subset_family(sub_n, sub_s, designs_seed)).dump(1) << '\n';
      return kOk;
    };
  });

  // pack
  auto* pack = app.add_subcommand("pack", "packing certificates");
  pack->require_subcommand(1);
  RunConfig pack_cfg;
  std::string pack_construction = "two_level";
  int pack_s = 1, pack_t = 1, pack_levels = 3;
  std::size_t pack_max = 1024;
  auto* pack_build = pack->add_subcommand("build", "build and self-verify a packing");
  add_exponents(pack_build, pack_cfg);
  add_shape(pack_build, pack_cfg);
  add_output(pack_build, pack_cfg);
  pack_build->add_option("--construction", pack_construction)
      ->check(CLI::IsMember({"two_level", "signed_unit", "antipodal", "cube_lattice"}));
  pack_build->add_option("--s", pack_s, "nonzero rows")->check(CLI::PositiveNumber);
  pack_build->add_option("--t", pack_t, "nonzero entries per row")->check(CLI::PositiveNumber);
  pack_build->add_option("--levels", pack_levels, "cube lattice levels per axis")->check(CLI::Range(2, 1 << 16));
  pack_build->add_option("--max-points", pack_max, "point cap")->check(CLI::PositiveNumber);
  pack_build->add_option("--seed", pack_cfg.seed);
  pack_build->callback([&] {
    action = [&] {
      const PackingCertificate cert = build_packing(pack_construction, pack_cfg, pack_s, pack_t, pack_levels, pack_max);
      const PackingReport rep = verify_packing(cert);
      if (!rep.ok) throw VerificationError(rep.message);
      deliver(pack_cfg, to_json(cert).dump() + "\n",
              "packing " + cert.construction + " points=" + std::to_string(cert.size()) +
                  " separation=" + format_number(cert.claimed_separation));
      return kOk;
    };
  });
  std::string pack_file;
  auto* pack_verify = pack->add_subcommand("verify", "re-verify a packing certificate");
  pack_verify->add_option("file", pack_file)->required()->check(CLI::ExistingFile);
  pack_verify->callback([&] { action = [&] { return verify_packing_file(read_json_file(pack_file)); }; });

  // cover
  auto* cover = app.add_subcommand("cover", "covering certificates");
  cover->require_subcommand(1);
  RunConfig cover_cfg;
  cover_cfg.p = "1";
  cover_cfg.r = "1";
  cover_cfg.q = "1";
  cover_cfg.u = "1";
  std::string cover_construction = "et", cover_provider = "lattice";
  int cover_k = 8;
  double klss_alpha = 1.0;
  auto* cover_build = cover->add_subcommand("build", "build a covering and attach sampled evidence");
  add_exponents(cover_build, cover_cfg);
  add_shape(cover_build, cover_cfg);
  add_output(cover_build, cover_cfg);
  cover_build->add_option("--construction", cover_construction)
      ->check(CLI::IsMember({"cuboid", "et", "et_cuboid", "klss", "trivial"}));
  cover_build->add_option("--provider", cover_provider, "row covering: lattice or interval")
      ->check(CLI::IsMember({"lattice", "interval"}));
  cover_build->add_option("--k", cover_k, "budget")->check(CLI::PositiveNumber);
  cover_build->add_option("--alpha", klss_alpha, "budget decay for klss")->check(CLI::PositiveNumber);
  cover_build->add_option("--samples", cover_cfg.samples)->check(CLI::NonNegativeNumber);
  cover_build->add_option("--seed", cover_cfg.seed);
  cover_build->callback([&] {
    action = [&] {
      const ExponentTuple params = cover_cfg.params();
      if (cover_construction == "klss") {
        deliver(cover_cfg, klss_json(cover_cfg, cover_k, klss_alpha).dump(1) + "\n", "klss bound");
        return kOk;
      }
      CoveringCertificate cert;
      if (cover_construction == "trivial") {
        cert = trivial_covering(params, cover_cfg.shape());
      } else {
        const auto provider = make_provider(cover_provider, params, cover_cfg.d);
        if (cover_construction == "cuboid")
          cert = cuboid_covering(*provider, params.p, params.r, cover_cfg.b, cover_k);
        else
          cert = et_sparse_covering(*provider, params.p, params.r, cover_cfg.b, cover_k,
                                    cover_construction == "et_cuboid" ? SparseMode::cuboid : SparseMode::product);
      }
      attach_evidence(cert, cover_cfg.samples, cover_cfg.seed);
      deliver(cover_cfg, to_json(cert).dump() + "\n",
              "covering " + cert.construction + " count=" + std::to_string(cert.count) +
                  " radius=" + format_number(cert.claimed_radius));
      return kOk;
    };
  });
  std::string cover_file;
  std::size_t cover_samples = 10000;
  std::uint64_t cover_seed = 0x5eed;
  auto* cover_verify = cover->add_subcommand("verify", "sample-check a covering certificate");
  cover_verify->add_option("file", cover_file)->required()->check(CLI::ExistingFile);
  cover_verify->add_option("--samples", cover_samples)->check(CLI::NonNegativeNumber);
  cover_verify->add_option("--seed", cover_seed);
  cover_verify->callback(
      [&] { action = [&] { return verify_covering_file(read_json_file(cover_file), cover_samples, cover_seed); }; });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force entropy brackets on small balls");
  oracle->require_subcommand(1);
  RunConfig oracle_cfg;
  int oracle_kmax = 8;
  double oracle_mesh = 0.0;
  std::size_t oracle_points = kDefaultMeshPoints;
  auto* sweep = oracle->add_subcommand("sweep", "lower/upper e_k bracket");
  add_exponents(sweep, oracle_cfg);
  add_shape(sweep, oracle_cfg);
  add_output(sweep, oracle_cfg);
  sweep->add_option("--kmax", oracle_kmax)->check(CLI::Range(1, 24));
  sweep->add_option("--mesh", oracle_mesh, "mesh width 1/n (default: finest within --max-points)");
  sweep->add_option("--max-points", oracle_points)->check(CLI::PositiveNumber);
  sweep->callback([&] {
    action = [&] {
      OracleOptions opts;
      opts.max_points = oracle_points;
      if (oracle_mesh != 0.0) {
        if (!(oracle_mesh > 0.0 && oracle_mesh <= 1.0)) throw PreconditionError("--mesh must lie in (0, 1]");
        const double n = 1.0 / oracle_mesh;
        if (std::abs(n - std::round(n)) > 1e-6 * n) throw PreconditionError("--mesh must be 1/n for an integer n");
        opts.mesh_cells = int(std::lround(n));
      }
      const EntropyBracket br = empirical_entropy_curve(oracle_cfg.params(), oracle_cfg.shape(), oracle_kmax, opts);
      std::string text = seed_header(oracle_cfg.seed, describe(oracle_cfg) + " mesh=1/" + std::to_string(br.n) +
                                                          " points=" + std::to_string(br.mesh_points));
      text += csv_line({"k", "lower", "upper"});
      for (int k = 1; k <= oracle_kmax; ++k)
        text += csv_line({std::to_string(k), format_number(*br.lower.value_at(k)),
                          format_number(*br.upper.value_at(k))});
      deliver(oracle_cfg, text);
      return kOk;
    };
  });

  // rates
  auto* rates = app.add_subcommand("rates", "closed-form entropy rates");
  rates->require_subcommand(1);
  RunConfig rates_cfg;
  int rates_kmin = 1, rates_kmax = 16;
  std::string rates_compare;
  auto* table = rates->add_subcommand("table", "formula values per k");
  add_exponents(table, rates_cfg);
  add_shape(table, rates_cfg);
  add_output(table, rates_cfg);
  table->add_option("--kmin", rates_kmin)->check(CLI::PositiveNumber);
  table->add_option("--kmax", rates_kmax)->check(CLI::PositiveNumber);
  table->add_option("--compare", rates_compare)->check(CLI::IsMember({"oracle", "scan", "certificates"}));
  table->add_option("--samples", rates_cfg.samples)->check(CLI::NonNegativeNumber);
  table->add_option("--seed", rates_cfg.seed);
  table->callback([&] {
    action = [&] {
      if (rates_kmax < rates_kmin) throw PreconditionError("need kmin <= kmax");
      deliver(rates_cfg, rates_table(rates_cfg, rates_kmin, rates_kmax, rates_compare));
      return kOk;
    };
  });

  // besov
  auto* besov = app.add_subcommand("besov", "dimension-free rates for small mixed smoothness");
  besov->require_subcommand(1);
  BesovFlags besov_flags;
  RunConfig besov_cfg;
  auto* slope = besov->add_subcommand("slope", "pipeline values on powers of two and the fitted slope");
  add_besov_flags(slope, besov_flags);
  add_output(slope, besov_cfg);
  slope->add_option("--mmin", besov_flags.mmin)->check(CLI::PositiveNumber);
  slope->add_option("--mmax", besov_flags.mmax)->check(CLI::PositiveNumber);
  slope->callback([&] {
    action = [&] {
      deliver(besov_cfg, besov_slope(besov_flags, besov_cfg.seed));
      return kOk;
    };
  });
  auto* hyp = besov->add_subcommand("check-hypotheses", "hypotheses and the reduction route");
  add_besov_flags(hyp, besov_flags);
  hyp->callback([&] { action = [&] { return besov_check(besov_flags); }; });

  // verify
  std::string verify_file;
  std::size_t verify_samples = 10000;
  std::uint64_t verify_seed = 0x5eed;
  auto* verify = app.add_subcommand("verify", "re-verify any certificate file");
  verify->add_option("file", verify_file)->required()->check(CLI::ExistingFile);
  verify->add_option("--samples", verify_samples, "coverings only")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", verify_seed, "coverings only");
  verify->callback([&] {
    action = [&] {
      const Json doc = read_json_file(verify_file);
      if (doc.contains("points")) return verify_packing_file(doc);
      if (doc.contains("row_sets")) return verify_covering_file(doc, verify_samples, verify_seed);
      throw PreconditionError("not a packing or covering certificate");
    };
  });

  // crosscheck
  RunConfig cc_cfg;
  cc_cfg.samples = 4000;
  int cc_kmin = 1, cc_kmax = 8;
  bool cc_no_oracle = false;
  auto* cc = app.add_subcommand("crosscheck", "formula, scan, certificates and oracle side by side");
  add_exponents(cc, cc_cfg);
  add_shape(cc, cc_cfg);
  add_output(cc, cc_cfg);
  cc->add_option("--kmin", cc_kmin)->check(CLI::PositiveNumber);
  cc->add_option("--kmax", cc_kmax)->check(CLI::Range(1, 24));
  cc->add_option("--samples", cc_cfg.samples)->check(CLI::NonNegativeNumber);
  cc->add_option("--seed", cc_cfg.seed);
  cc->add_flag("--no-oracle", cc_no_oracle);
  cc->callback([&] {
    action = [&] {
      CrosscheckOptions opts;
      opts.samples = cc_cfg.samples;
      opts.seed = cc_cfg.seed;
      opts.oracle = !cc_no_oracle;
      const auto rows = crosscheck(cc_cfg.params(), cc_cfg.shape(), cc_kmin, cc_kmax, opts);
      deliver(cc_cfg, seed_header(cc_cfg.seed, describe(cc_cfg)) + crosscheck_csv(rows));
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(error_json("flags", e.what()));
    return kFlags;
  }
  return action ? action() : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ExitWith& e) {
    emit_error(e.error);
    return e.code;
  } catch (const PreconditionError& e) {
    emit_error(error_json("precondition", e.what()));
    return kFlags;
  } catch (const HypothesisError& e) {
    Json err = error_json("hypothesis", e.what());
    err["hypothesis"] = e.hypothesis;
    emit_error(err);
    return kHypothesis;
  } catch (const VerificationError& e) {
    emit_error(error_json("verification", e.what()));
    return kVerification;
  } catch (const ConstructionError& e) {
    emit_error(error_json("construction", e.what()));
    return kVerification;
  } catch (const std::exception& e) {
    emit_error(error_json("internal", e.what()));
    return 1;
  }
}

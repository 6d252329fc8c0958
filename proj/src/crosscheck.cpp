#include "mixent/crosscheck.hpp"

#include "mixent/covering.hpp"
#include "mixent/packing.hpp"
#include "mixent/rates.hpp"
#include "mixent/serialization.hpp"

#include <cmath>
#include <limits>

namespace mixent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxLatticePoints = 4096;

std::vector<PackingCertificate> packing_candidates(const ExponentTuple& params, Shape shape) {
  std::vector<PackingCertificate> out;
  out.push_back(antipodal_packing(params, shape));
  out.push_back(signed_unit_packing(params, shape));
  PackingOptions opts;
  opts.max_points = kMaxLatticePoints;
  for (int levels = 2; std::pow(double(levels), shape.size()) <= double(kMaxLatticePoints); ++levels)
    out.push_back(cube_lattice_packing(params, shape, levels, opts));
  if (shape.b >= 8 && shape.d >= 8) {
    try {
      out.push_back(two_level_sparse_packing(params, shape.b, shape.d, 1, 1, opts));
    } catch (const std::exception&) {
      // not every exponent combination admits the construction
    }
  }
  return out;
}

/// Certificates whose index is at most kmax, each sample-verified.
std::vector<CoveringCertificate> covering_candidates(const ExponentTuple& params, Shape shape, int kmax,
                                                     std::size_t samples, std::uint64_t seed) {
  std::vector<CoveringCertificate> out;
  out.push_back(trivial_covering(params, shape));
  if (params.is_embedding_monotone()) {
    const LatticeProvider provider(params.q, params.u, shape.d);
    for (int k = 1; k <= kmax; ++k) {
      auto attempt = [&](auto&& build) {
        try {
          CoveringCertificate cert = build();
          if (cert.certified_index <= kmax) out.push_back(std::move(cert));
        } catch (const PreconditionError&) {
          // outside the construction's range of k
        }
      };
      attempt([&] { return et_sparse_covering(provider, params.p, params.r, shape.b, k); });
      if (k <= shape.b)
        attempt([&] { return et_sparse_covering(provider, params.p, params.r, shape.b, k, SparseMode::cuboid); });
      if (k >= 8 * shape.b) attempt([&] { return cuboid_covering(provider, params.p, params.r, shape.b, k); });
    }
  }
  for (auto& cert : out) attach_evidence(cert, samples, seed);
  return out;
}

double ratio(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || b == 0.0) return kNaN;
  return a / b;
}

}  // namespace

BoundCurve best_packing_curve(const ExponentTuple& params, Shape shape, int kmax) {
  if (kmax < 1) throw PreconditionError("kmax must be >= 1");
  std::vector<double> best(kmax, 0.0);
  std::vector<std::string> label(kmax, "none");
  for (const auto& cert : packing_candidates(params, shape)) {
    const PackingReport rep = verify_packing(cert);
    if (!rep.ok) throw VerificationError(cert.construction + ": " + rep.message);
    const BoundCurve c = packing_to_entropy_lower(cert);
    if (c.empty()) continue;
    const auto& pt = c.points().front();
    // a packing certifying index k also certifies every smaller index
    for (int k = 1; k <= std::min(pt.k, kmax); ++k)
      if (pt.value > best[k - 1]) {
        best[k - 1] = pt.value;
        label[k - 1] = pt.regime;
      }
  }
  BoundCurve out;
  for (int k = 1; k <= kmax; ++k) out.push(k, best[k - 1], label[k - 1]);
  return out;
}

BoundCurve best_covering_curve(const ExponentTuple& params, Shape shape, int kmax, std::size_t samples,
                               std::uint64_t seed) {
  if (kmax < 1) throw PreconditionError("kmax must be >= 1");
  std::vector<double> best(kmax, std::numeric_limits<double>::infinity());
  std::vector<std::string> label(kmax, "none");
  for (const auto& cert : covering_candidates(params, shape, kmax, samples, seed))
    for (int k = cert.certified_index; k <= kmax; ++k)
      if (cert.claimed_radius < best[k - 1]) {
        best[k - 1] = cert.claimed_radius;
        label[k - 1] = cert.construction + "(k=" + std::to_string(cert.budget) + ")";
      }
  BoundCurve out;
  for (int k = 1; k <= kmax; ++k) out.push(k, best[k - 1], label[k - 1]);
  return out;
}

std::vector<CrosscheckRow> crosscheck(const ExponentTuple& params, Shape shape, int kmin, int kmax,
                                      const CrosscheckOptions& options) {
  if (kmin < 1 || kmax < kmin) throw PreconditionError("need 1 <= kmin <= kmax");
  const BoundCurve packing = best_packing_curve(params, shape, kmax);
  const BoundCurve covering = best_covering_curve(params, shape, kmax, options.samples, options.seed);
  EntropyBracket bracket;
  const bool with_oracle = options.oracle && shape.size() <= kMaxOracleSize;
  if (with_oracle) bracket = empirical_entropy_curve(params, shape, kmax, options.oracle_options);

  std::vector<CrosscheckRow> rows;
  for (int k = kmin; k <= kmax; ++k) {
    CrosscheckRow row;
    row.k = k;
    try {
      const RegimeResult f = matching_rate(params, shape.b, shape.d, k);
      row.formula = f.value;
      row.regime = f.regime;
    } catch (const std::exception&) {
      row.formula = kNaN;
      row.regime = "n/a";
    }
    try {
      row.scan = proof_scan_rate(params, shape.b, shape.d, k);
    } catch (const std::exception&) {
      row.scan = kNaN;
    }
    const auto& cp = covering.points()[std::size_t(k - 1)];
    row.covering_upper = cp.value;
    row.covering = cp.regime;
    const auto& pp = packing.points()[std::size_t(k - 1)];
    row.packing_lower = pp.value;
    row.packing = pp.regime;
    row.oracle_lower = with_oracle ? *bracket.lower.value_at(k) : kNaN;
    row.oracle_upper = with_oracle ? *bracket.upper.value_at(k) : kNaN;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string crosscheck_csv(const std::vector<CrosscheckRow>& rows) {
  static const char* names[] = {"formula", "scan", "covering", "packing", "oracle"};
  std::vector<std::string> header = {"k",        "formula",         "regime",       "scan",
                                     "covering", "covering_source", "packing",      "packing_source",
                                     "oracle_lower", "oracle_upper"};
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) header.push_back(std::string(names[a]) + "/" + names[b]);
  std::string out = csv_line(header);
  for (const auto& r : rows) {
    const double oracle = std::sqrt(r.oracle_lower * r.oracle_upper);
    const double v[5] = {r.formula, r.scan, r.covering_upper, r.packing_lower, oracle};
    std::vector<std::string> f = {std::to_string(r.k),           format_number(r.formula),
                                  r.regime,                      format_number(r.scan),
                                  format_number(r.covering_upper), r.covering,
                                  format_number(r.packing_lower), r.packing,
                                  format_number(r.oracle_lower), format_number(r.oracle_upper)};
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) f.push_back(format_number(ratio(v[a], v[b])));
    out += csv_line(f);
  }
  return out;
}

}  // namespace mixent

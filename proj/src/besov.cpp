#include "mixent/besov.hpp"

#include "mixent/rates.hpp"

#include <cmath>
#include <cstdio>

namespace mixent {

namespace {

constexpr double kTol = 1e-12;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// One leg of a factorization: blocks of ℓ_{outer}(ℓ_{inner}) with smoothness r.
struct Space {
  Exponent outer, inner;
  double r;
};

std::string space_name(const Space& s) {
  return "s^{" + fmt(s.r) + "}_{" + s.inner.str() + "," + s.outer.str() + "}b";
}

struct Route {
  Space source_low, target_low, source_mid, target_mid;
  std::string text;
};

Route make_route(const SmoothnessParams& sp, BesovFlavor flavor) {
  const Space src{sp.q0, sp.p0, sp.r0}, tgt{sp.q1, sp.p1, sp.r1};
  Route rt{src, tgt, src, tgt, "direct"};
  switch (flavor) {
    case BesovFlavor::bb:
      break;
    case BesovFlavor::bf:
      if (sp.p1 >= sp.q1) {
        rt.text = "through " + space_name(tgt) + " (norm-1 leg into f)";
      } else {
        rt.target_low = {sp.q1, sp.q1, sp.r1};
        rt.target_mid = {sp.p1, sp.p1, sp.r1};
        rt.text = "split: low levels through " + space_name(rt.target_low) + ", middle levels through " +
                  space_name(rt.target_mid);
      }
      break;
    case BesovFlavor::fb:
      if (sp.p0 <= sp.q0) {
        rt.text = "through " + space_name(src) + " (norm-1 leg out of f)";
      } else {
        rt.source_low = {sp.q0, sp.q0, sp.r0};
        rt.source_mid = {sp.p0, sp.p0, sp.r0};
        rt.text = "split: low levels through " + space_name(rt.source_low) + ", middle levels through " +
                  space_name(rt.source_mid);
      }
      break;
  }
  return rt;
}

HypothesisCheck check(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

double group_rate(const Space& s, const Space& t, const std::vector<std::pair<long long, long long>>& dims,
                  long long m, WeightedRegime regime) {
  const ExponentTuple params{s.outer, s.inner, t.outer, t.inner};
  const double alpha = s.r - s.inner.reciprocal();
  const double beta = t.r - t.inner.reciprocal();
  return weighted_block_rate(alpha, beta, params, dims, m, regime);
}

}  // namespace

bool SmoothnessParams::is_small_smoothness() const {
  const double s = r0 - r1;
  return p0.reciprocal() - p1.reciprocal() < s && s <= q0.reciprocal() - q1.reciprocal() + kTol;
}

std::string SmoothnessParams::str() const {
  return "r0-r1=" + fmt(r0 - r1) + " p0=" + p0.str() + " p1=" + p1.str() + " q0=" + q0.str() +
         " q1=" + q1.str() + " n=" + std::to_string(n);
}

long long BlockModel::rows(int mu) const {
  if (mu < 0) throw PreconditionError("level must be nonnegative");
  const double v = std::pow(double(mu) + 1.0, double(n - 1));
  return v >= double(kSaturation) ? kSaturation : static_cast<long long>(std::llround(v));
}

long long BlockModel::cols(int mu) const {
  if (mu < 0) throw PreconditionError("level must be nonnegative");
  return mu >= 62 ? kSaturation : (1LL << mu);
}

double BlockModel::weight(int mu, double r, Exponent p) { return std::exp2(mu * (r - p.reciprocal())); }

std::vector<std::pair<long long, long long>> BlockModel::dims(int mu_lo, int mu_hi) const {
  std::vector<std::pair<long long, long long>> out;
  for (int mu = mu_lo; mu <= mu_hi; ++mu) out.emplace_back(rows(mu), cols(mu));
  return out;
}

int BlockModel::mu0() const {
  if (n < 1) throw PreconditionError("dimension n must be >= 1");
  // 2^μ outgrows (μ+1)^{n−1} for good once μ > 2(n−1)log2(n−1)+4; scanning a little beyond is enough
  const int horizon = 64 + 8 * n * n;
  int last_bad = -1;
  for (int mu = 0; mu <= horizon; ++mu)
    if (std::ldexp(1.0, mu) < std::pow(mu + 1.0, double(n - 1))) last_bad = mu;
  return last_bad + 1;
}

double block_operator_norm(const SmoothnessParams& params, int mu) {
  if (mu < 0) throw PreconditionError("level must be nonnegative");
  if (!params.is_compact())
    throw HypothesisError("compactness", "r0-r1 > 1/p0-1/p1 violated (delta=" + fmt(params.delta()) + ")");
  return std::exp2(-mu * params.delta());
}

BesovFlavor parse_flavor(const std::string& text) {
  if (text == "bb" || text == "b->b" || text == "b2b") return BesovFlavor::bb;
  if (text == "bf" || text == "b->f" || text == "b2f") return BesovFlavor::bf;
  if (text == "fb" || text == "f->b" || text == "f2b") return BesovFlavor::fb;
  if (text == "ff" || text == "f->f") throw PreconditionError("the f->f case is not covered");
  throw PreconditionError("unknown flavor '" + text + "' (expected bb, bf or fb)");
}

std::string flavor_name(BesovFlavor flavor) {
  switch (flavor) {
    case BesovFlavor::bb: return "b->b";
    case BesovFlavor::bf: return "b->f";
    case BesovFlavor::fb: return "f->b";
  }
  return "?";
}

std::vector<HypothesisCheck> check_hypotheses(const SmoothnessParams& sp, BesovFlavor flavor) {
  const std::string tag = flavor_name(flavor) + ":";
  const double s = sp.r0 - sp.r1;
  const double outer = sp.p0.reciprocal() - sp.p1.reciprocal();
  const double inner = sp.q0.reciprocal() - sp.q1.reciprocal();
  std::vector<HypothesisCheck> out;
  out.push_back(check(tag + "n>=1", sp.n >= 1, "n=" + std::to_string(sp.n)));
  out.push_back(check(tag + "q0<q1", sp.q0 < sp.q1, "q0=" + sp.q0.str() + " q1=" + sp.q1.str()));
  out.push_back(check(tag + "p0<=p1", sp.p0 <= sp.p1, "p0=" + sp.p0.str() + " p1=" + sp.p1.str()));
  out.push_back(check(tag + "compactness", outer < s, "1/p0-1/p1=" + fmt(outer) + " r0-r1=" + fmt(s)));
  out.push_back(check(tag + "small_smoothness", s <= inner + kTol, "r0-r1=" + fmt(s) + " 1/q0-1/q1=" + fmt(inner)));
  if (flavor == BesovFlavor::bf) {
    out.push_back(check(tag + "p1<inf", !sp.p1.is_inf(), "p1=" + sp.p1.str()));
    out.push_back(check(tag + "q0<p0", sp.q0 < sp.p0, "q0=" + sp.q0.str() + " p0=" + sp.p0.str()));
    out.push_back(check(tag + "r0>r1", sp.r0 > sp.r1, "r0-r1=" + fmt(s)));
  } else if (flavor == BesovFlavor::fb) {
    out.push_back(check(tag + "p1<inf", !sp.p1.is_inf(), "p1=" + sp.p1.str()));
    out.push_back(check(tag + "q1>p1", sp.q1 > sp.p1, "q1=" + sp.q1.str() + " p1=" + sp.p1.str()));
    out.push_back(check(tag + "r0>r1", sp.r0 > sp.r1, "r0-r1=" + fmt(s)));
  }
  return out;
}

std::string route_description(const SmoothnessParams& params, BesovFlavor flavor) {
  return flavor_name(flavor) + " " + make_route(params, flavor).text;
}

PipelineResult besov_upper_pipeline(const SmoothnessParams& sp, long long m, BesovFlavor flavor) {
  if (m < 1) throw PreconditionError("m must be >= 1");
  if (m > (1LL << 30)) throw PreconditionError("m must be <= 2^30");
  PipelineResult out;
  out.log = check_hypotheses(sp, flavor);
  for (const auto& c : out.log)
    if (!c.passed) throw HypothesisError(c.name, c.name + " violated (" + c.detail + ")");

  const Route rt = make_route(sp, flavor);
  out.route = route_description(sp, flavor);
  out.rho = std::min({1.0, sp.p1.value(), sp.q1.value()});
  out.L = int(std::floor(std::log2(double(m)) + 1e-12));
  out.M = m / 8;
  out.certified_index = 2 * m;

  out.log.push_back(check("M_m>=1", out.M >= 1, "m=" + std::to_string(m)));
  if (out.M < 1) throw HypothesisError("M_m>=1", "M_m = floor(m/8) >= 1 violated (m=" + std::to_string(m) + ")");
  if (out.L + out.M > 4000000) throw PreconditionError("too many levels");

  const BlockModel model{sp.n};
  auto run_group = [&](const char* name, const Space& s, const Space& t, int lo, int hi, WeightedRegime regime) {
    try {
      const double v = group_rate(s, t, model.dims(lo, hi), m, regime);
      out.log.push_back(check(name, true, "levels " + std::to_string(lo) + ".." + std::to_string(hi)));
      return v;
    } catch (const HypothesisError& e) {
      out.log.push_back(check(std::string(name) + ":" + e.hypothesis, false, e.what()));
      throw HypothesisError(std::string(name) + ":" + e.hypothesis, std::string(name) + ": " + e.what());
    }
  };
  out.low_term = run_group("low_levels", rt.source_low, rt.target_low, 0, out.L, WeightedRegime::large_k);
  out.middle_term = run_group("middle_levels", rt.source_mid, rt.target_mid, out.L + 1, out.L + int(out.M),
                              WeightedRegime::small_k);

  // Σ_{μ>T} 2^{−ϱμδ} in closed form
  const double rd = out.rho * sp.delta();
  const double T = double(out.L) + double(out.M);
  out.tail = std::exp2(-rd * (T + 1.0)) / (1.0 - std::exp2(-rd));

  out.value = std::pow(std::pow(out.low_term, out.rho) + std::pow(out.middle_term, out.rho) + out.tail,
                       1.0 / out.rho);
  return out;
}

long long besov_m0(const SmoothnessParams& params, BesovFlavor flavor) {
  for (const auto& c : check_hypotheses(params, flavor))
    if (!c.passed) throw HypothesisError(c.name, c.name + " violated (" + c.detail + ")");
  constexpr long long kScan = 1LL << 12;
  long long last_bad = 0;
  for (long long m = 1; m <= kScan; ++m) {
    try {
      besov_upper_pipeline(params, m, flavor);
    } catch (const HypothesisError&) {
      last_bad = m;
    }
  }
  if (last_bad == kScan) throw HypothesisError("m0", "no admissible m up to 2^12");
  return last_bad + 1;
}

double fit_rate_slope(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4) throw PreconditionError("slope fit needs at least 4 points");
  const Eigen::Index n = Eigen::Index(samples.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [m, v] = samples[std::size_t(i)];
    if (!(m > 0.0) || !(v > 0.0)) throw PreconditionError("slope fit needs positive m and values");
    A(i, 0) = std::log(m);
    A(i, 1) = 1.0;
    y(i) = std::log(v);
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  return coef(0);
}

double fit_rate_slope(const SmoothnessParams& params, BesovFlavor flavor, int log2_lo, int log2_hi) {
  if (log2_lo < 0 || log2_hi > 30 || log2_hi - log2_lo + 1 < 4)
    throw PreconditionError("slope fit needs at least 4 grid points in 2^0..2^30");
  std::vector<std::pair<double, double>> samples;
  for (int e = log2_lo; e <= log2_hi; ++e) {
    const long long m = 1LL << e;
    samples.emplace_back(double(m), besov_upper_pipeline(params, m, flavor).value);
  }
  return fit_rate_slope(samples);
}

}  // namespace mixent

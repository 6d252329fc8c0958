#include "mixent/rates.hpp"

#include <limits>
#include <memory>

namespace mixent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double powi(double base, double e) { return e == 0.0 ? 1.0 : std::pow(base, e); }

struct Piece {
  std::string label;
  double lo, hi;
  std::function<double(double)> f;
};

// Max over all pieces whose closed interval contains t.
RegimeResult evaluate(const std::vector<Piece>& pieces, double t) {
  RegimeResult out;
  int hits = 0;
  for (const auto& pc : pieces) {
    if (t < pc.lo || t > pc.hi) continue;
    const double v = pc.f(t);
    if (hits == 0 || v > out.value) {
      out.value = v;
      out.regime = pc.label;
    }
    ++hits;
  }
  if (hits == 0) throw HypothesisError("unclassified", "no regime covers k=" + std::to_string(t));
  out.boundary = hits > 1;
  return out;
}

std::vector<BoundaryRatio> boundary_ratios(const std::vector<Piece>& pieces) {
  std::vector<double> cuts;
  for (const auto& pc : pieces) {
    if (std::isfinite(pc.lo)) cuts.push_back(pc.lo);
    if (std::isfinite(pc.hi)) cuts.push_back(pc.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<BoundaryRatio> out;
  for (double t : cuts) {
    double left = -1.0, right = -1.0;
    int li = -1, ri = -1;
    for (int i = 0; i < int(pieces.size()); ++i) {
      const auto& pc = pieces[i];
      if (pc.lo < t && t <= pc.hi && pc.f(t) > left) left = pc.f(t), li = i;
      if (pc.lo <= t && t < pc.hi && pc.f(t) > right) right = pc.f(t), ri = i;
    }
    if (li < 0 || ri < 0 || li == ri) continue;
    out.push_back({pieces[li].label + "|" + pieces[ri].label, t, left / right});
  }
  return out;
}

std::vector<Piece> schuett_pieces(Exponent p, Exponent q, int b) {
  if (p > q) throw PreconditionError("schuett_rate requires p <= q");
  if (b < 1) throw PreconditionError("schuett_rate requires b >= 1");
  const double g = p.reciprocal() - q.reciprocal();
  const double lb = std::log(double(b));
  const double bb = b;
  return {
      {"regime1", -kInf, lb, [](double) { return 1.0; }},
      {"regime2", lb, bb, [=](double t) { return powi(std::log1p(bb / t) / t, g); }},
      {"regime3", bb, kInf, [=](double t) { return std::exp2(-(t - 1.0) / bb) * powi(bb, -g); }},
  };
}

std::vector<Piece> matching_pieces(const ExponentTuple& prm, int b, int d) {
  if (!prm.is_embedding_monotone()) throw PreconditionError("matching_rate requires p <= r and q <= u");
  if (b < 1 || d < 1) throw PreconditionError("matching_rate requires b, d >= 1");
  const double go = prm.outer_gap(), gi = prm.inner_gap();
  const double B = b, D = d, L = std::log(B * D), BD = B * D;

  std::vector<Piece> mid;
  if (go > gi) {
    if (prm.q == prm.u) {
      mid = {{"i.a", 0, D, [](double) { return 1.0; }},
             {"i.a", D, kInf, [=](double t) { return powi((std::log(M_E * B / t) + D) / t, go); }}};
    } else if (b <= d) {
      mid = {{"i.b", 0, D, [=](double t) { return powi(std::log(M_E * D / t) / t, gi); }},
             {"i.b", D, kInf, [=](double t) { return powi(D / t, go) * powi(D, -gi); }}};
    } else {
      auto outer = [=](double t) { return powi(std::log(M_E * B / t) / t, go); };
      auto inner = [=](double t) { return powi(std::log(M_E * D / t) / t, gi); };
      auto tail = [=](double t) { return powi(D / t, go) * powi(D, -gi); };
      mid = {{"i.c", 0, D, [=](double t) { return std::max(outer(t), inner(t)); }},
             {"i.c", D, B, [=](double t) { return std::max(outer(t), tail(t)); }},
             {"i.c", B, kInf, tail}};
    }
  } else {
    const double cut = B * std::log(D);
    mid = {{"ii", 0, cut, [=](double t) { return powi(std::log(M_E * BD / t) / t, go); }},
           {"ii", cut, kInf, [=](double t) { return powi(B, -go) * powi(B * std::log(M_E * BD / t) / t, gi); }}};
  }

  std::vector<Piece> pieces;
  pieces.push_back({"small_k", -kInf, L, [](double) { return 1.0; }});
  for (auto& pc : mid) {
    pc.lo = std::max(pc.lo, L);
    pc.hi = std::min(pc.hi, BD);
    if (pc.lo <= pc.hi) pieces.push_back(std::move(pc));
  }
  pieces.push_back({"large_k", BD, kInf,
                    [=](double t) { return powi(B, -go) * powi(D, -gi) * std::exp2(-(t - 1.0) / BD); }});
  return pieces;
}

}  // namespace

InnerEntropyProfile InnerEntropyProfile::constant(double c) {
  return {[c](int) { return c; }, 1, std::numeric_limits<int>::max()};
}

InnerEntropyProfile InnerEntropyProfile::schuett(Exponent q, Exponent u, int d) {
  auto pieces = std::make_shared<const std::vector<Piece>>(schuett_pieces(q, u, d));
  return {[pieces](int l) { return evaluate(*pieces, l).value; }, 1, std::numeric_limits<int>::max()};
}

InnerEntropyProfile InnerEntropyProfile::table(std::vector<double> values) {
  const int n = int(values.size());
  return {[v = std::move(values)](int l) { return v.at(l - 1); }, 1, n};
}

RegimeResult schuett_rate(Exponent p, Exponent q, int k, int b) {
  if (k < 1) throw PreconditionError("schuett_rate requires k >= 1");
  return evaluate(schuett_pieces(p, q, b), k);
}

double edne_D(int m, int k, Exponent p, Exponent r, const InnerEntropyProfile& profile) {
  if (m < 1 || m > k) throw PreconditionError("edne_D requires 1 <= m <= k");
  if (m < profile.first || k > profile.last) throw PreconditionError("edne_D: profile does not cover [m, k]");
  const double g = p.reciprocal() - r.reciprocal();
  double best = 0.0;
  for (int l = m; l <= k; ++l) best = std::max(best, powi(double(l) / k, g) * profile.value(l));
  return best;
}

double edne_A(int k, int b, Exponent p, Exponent r, double op_norm, const InnerEntropyProfile& profile) {
  if (k < 1 || k > b) throw PreconditionError("edne_A requires 1 <= k <= b");
  const double g = p.reciprocal() - r.reciprocal();
  const double first = op_norm * powi(std::log(M_E * b / k) / k, g);
  return std::max(first, edne_D(1, k, p, r, profile));
}

RegimeResult matching_rate(const ExponentTuple& params, int b, int d, int k) {
  if (k < 1) throw PreconditionError("matching_rate requires k >= 1");
  return evaluate(matching_pieces(params, b, d), k);
}

double proof_scan_rate(const ExponentTuple& params, int b, int d, int k) {
  if (!params.is_embedding_monotone()) throw PreconditionError("proof_scan_rate requires p <= r and q <= u");
  if (k < 1) throw PreconditionError("proof_scan_rate requires k >= 1");
  const auto profile = InnerEntropyProfile::schuett(params.q, params.u, d);
  if (k <= b) return edne_A(k, b, params.p, params.r, 1.0, profile);
  return edne_D((k + b - 1) / b, k, params.p, params.r, profile);
}

std::vector<double> proof_scan_curve(const ExponentTuple& params, int b, int d, int kmax) {
  if (!params.is_embedding_monotone()) throw PreconditionError("proof_scan_rate requires p <= r and q <= u");
  if (kmax < 1) throw PreconditionError("proof_scan_curve requires kmax >= 1");
  const auto profile = InnerEntropyProfile::schuett(params.q, params.u, d);
  const double g = params.outer_gap();
  // max_l (l/k)^g e_l in log form: g log l + log e_l − g log k
  std::vector<double> term(std::size_t(kmax) + 1);
  for (int l = 1; l <= kmax; ++l) term[l] = g * std::log(double(l)) + std::log(profile.value(l));
  std::vector<double> out(static_cast<std::size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) {
    const int m = k <= b ? 1 : (k + b - 1) / b;
    double best = -kInf;
    for (int l = m; l <= k; ++l) best = std::max(best, term[l]);
    double v = std::exp(best - g * std::log(double(k)));
    if (k <= b) v = std::max(v, powi(std::log(M_E * b / k) / k, g));
    out[k - 1] = v;
  }
  return out;
}

double mixed_ball_volume_root(Exponent p, int b, int d, double vol_BX_root) {
  if (b < 1 || d < 1) throw PreconditionError("mixed_ball_volume_root requires b, d >= 1");
  if (p.is_inf()) return vol_BX_root;
  const double ip = p.reciprocal();
  const double log_ratio = std::lgamma(1.0 + d * ip) / d - std::lgamma(1.0 + double(d) * b * ip) / (double(d) * b);
  return std::exp(log_ratio) * vol_BX_root;
}

double volumetric_entropy_bound(Exponent p, Exponent r, int b, int d, int k) {
  if (k < b * d) throw PreconditionError("volumetric_entropy_bound requires k >= bd");
  return powi(double(b), -(p.reciprocal() - r.reciprocal())) * std::exp2(-(k - 1.0) / (double(b) * d));
}

double weighted_block_rate(double alpha, double beta, const ExponentTuple& params,
                           const std::vector<std::pair<long long, long long>>& dims, long long k,
                           WeightedRegime regime) {
  if (dims.empty()) throw PreconditionError("weighted_block_rate needs at least one block");
  const double go = params.outer_gap(), gi = params.inner_gap();
  const long long b = static_cast<long long>(dims.size());
  if (!(go > gi && gi >= 0.0))
    throw HypothesisError("gap_order", "1/p-1/r > 1/q-1/u >= 0 violated");
  if (k < 8 * b) throw HypothesisError("k>=8b", "k >= 8b violated (k=" + std::to_string(k) + ", b=" + std::to_string(b) + ")");
  long long dmax = 0, dmin = std::numeric_limits<long long>::max();
  for (auto [bm, dm] : dims) {
    if (bm < 1 || dm < 1) throw PreconditionError("block dimensions must be positive");
    dmax = std::max(dmax, dm);
    dmin = std::min(dmin, dm);
  }
  const double ab = alpha - beta;
  if (regime == WeightedRegime::large_k) {
    if (ab > go - gi + 1e-12)
      throw HypothesisError("large_k:smoothness", "alpha-beta <= (1/p-1/r)-(1/q-1/u) violated");
    if (k < dmax) throw HypothesisError("large_k:k>=max_d", "k >= max d_mu violated");
  } else {
    if (!(ab > 0.0)) throw HypothesisError("small_k:alpha>beta", "alpha-beta > 0 violated");
    if (k > dmin) throw HypothesisError("small_k:k<=min_d", "k <= min d_mu violated");
  }
  return std::pow(double(k), -(ab + gi));
}

std::vector<BoundaryRatio> schuett_boundary_ratios(Exponent p, Exponent q, int b) {
  return boundary_ratios(schuett_pieces(p, q, b));
}

std::vector<BoundaryRatio> matching_boundary_ratios(const ExponentTuple& params, int b, int d) {
  return boundary_ratios(matching_pieces(params, b, d));
}

}  // namespace mixent

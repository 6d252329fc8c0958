#include "mixent/packing.hpp"

#include "mixent/designs.hpp"

namespace mixent {

namespace {

double row_norm(const RowMajorMatrix& pts, std::size_t i, Exponent e) { return lp_norm(pts.row(i), e); }

std::size_t ceil_count(double x) {
  if (!(x > 1.0)) return 1;
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

}  // namespace

void BasePacking::verify() const {
  if (size() == 0) throw VerificationError("base packing is empty");
  if (!(separation > 0.0)) throw VerificationError("base packing separation must be positive");
  for (std::size_t i = 0; i < size(); ++i) {
    if (row_norm(points, i, x_exp) > 1.0 + kBallTolerance)
      throw VerificationError("base point " + std::to_string(i) + " leaves the unit ball of X");
    if (row_norm(points, i, y_exp) < min_norm * (1.0 - kRelativeTolerance))
      throw VerificationError("base point " + std::to_string(i) + " is below min_norm in Y");
  }
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) {
      const double dist = lp_norm((points.row(i) - points.row(j)).eval(), y_exp);
      if (dist < separation * (1.0 - kRelativeTolerance))
        throw VerificationError("base points " + std::to_string(i) + "," + std::to_string(j) +
                                " closer than the separation");
    }
}

MixedMatrix PackingCertificate::point(std::size_t i) const {
  MixedMatrix x(shape.b, shape.d);
  for (int r = 0; r < shape.b; ++r)
    for (int c = 0; c < shape.d; ++c) x(r, c) = points(i, r * shape.d + c);
  return x;
}

PackingReport verify_packing(const PackingCertificate& cert) {
  PackingReport rep;
  rep.count = cert.size();
  const auto [p, q, r, u] = cert.params;
  const int b = cert.shape.b, d = cert.shape.d;
  if (cert.points.cols() != Eigen::Index(b) * d) {
    rep.ok = false;
    rep.message = "point width does not match shape";
    return rep;
  }
  const std::vector<double> origin(std::size_t(b) * d, 0.0);
  for (std::size_t i = 0; i < cert.size(); ++i) {
    const double nrm = mixed_distance(cert.points.row(i).data(), origin.data(), b, d, p, q);
    if (nrm > 1.0 + kBallTolerance && rep.ok) {
      rep.ok = false;
      rep.message = "point " + std::to_string(i) + " has norm " + std::to_string(nrm) + " > 1";
    }
    rep.max_norm = std::max(rep.max_norm, nrm);
  }
  for (std::size_t i = 0; i < cert.size(); ++i) {
    const double* xi = cert.points.row(i).data();
    for (std::size_t j = i + 1; j < cert.size(); ++j) {
      const double dist = mixed_distance(xi, cert.points.row(j).data(), b, d, r, u);
      if (dist < rep.min_distance) rep.min_distance = dist, rep.worst_i = i, rep.worst_j = j;
    }
  }
  if (rep.ok && cert.size() >= 2 && rep.min_distance < cert.claimed_separation * (1.0 - kRelativeTolerance)) {
    rep.ok = false;
    rep.message = "pair (" + std::to_string(rep.worst_i) + "," + std::to_string(rep.worst_j) + ") at distance " +
                  std::to_string(rep.min_distance) + " below claimed separation " +
                  std::to_string(cert.claimed_separation);
  }
  if (rep.ok && cert.size() < cert.advertised_count) {
    rep.ok = false;
    rep.message = "cardinality " + std::to_string(cert.size()) + " below advertised " +
                  std::to_string(cert.advertised_count);
  }
  return rep;
}

PackingCertificate block_sparse_packing(const BasePacking& base, Exponent p, Exponent r, int b, int s,
                                        QuasiNormConstant alpha_Y, const PackingOptions& options) {
  if (b < 8) throw PreconditionError("block_sparse_packing requires b >= 8");
  if (s < 1 || s > b / 8) throw PreconditionError("block_sparse_packing requires 1 <= s <= floor(b/8)");
  base.verify();
  const double eps = base.separation;
  if (base.min_norm < eps / (2.0 * alpha_Y.alpha) * (1.0 - kRelativeTolerance))
    throw PreconditionError("block_sparse_packing requires min_norm >= eps/(2 alpha_Y)");

  const auto family = build_subset_family(b, s, options.seed);
  const std::size_t per_word = family.size();
  const std::size_t words_needed = (options.max_points + per_word - 1) / per_word;
  const auto code = build_gv_code(int(base.size()), s, words_needed);

  const double m = double(base.size());
  const std::size_t advertised = ceil_count(std::pow(b * m / (32.0 * s), s));
  const double gv_size = code.complete ? double(code.size()) : std::max(double(code.size()), code.gv_fraction());
  const double constructible = double(family.size()) * gv_size;
  if (constructible < double(advertised))
    throw ConstructionError("construction yields fewer points than the advertised count");
  if (options.max_points < advertised)
    throw PreconditionError("max_points is below the advertised count " + std::to_string(advertised));

  const int dim = base.dim();
  const double scale = std::pow(2.0 * s, -p.reciprocal());
  const std::size_t total = std::min<std::size_t>(options.max_points, family.size() * code.size());

  PackingCertificate cert;
  cert.construction = "block_sparse";
  cert.params = {p, base.x_exp, r, base.y_exp};
  cert.shape = {b, dim};
  cert.s = s;
  cert.seed = family.seed;
  cert.claimed_separation = std::pow(double(s), r.reciprocal() - p.reciprocal()) * eps /
                            (std::pow(2.0, 1.0 + p.reciprocal()) * alpha_Y.alpha);
  cert.advertised_count = advertised;
  cert.constructible_count = constructible;
  cert.points = RowMajorMatrix::Zero(Eigen::Index(total), Eigen::Index(b) * dim);
  cert.metadata["base_size"] = m;
  cert.metadata["base_separation"] = eps;
  cert.metadata["family_size"] = double(family.size());
  cert.metadata["gv_words"] = double(code.size());
  cert.metadata["alpha_Y"] = alpha_Y.alpha;

  // word-major order so that a prefix already mixes supports
  std::size_t row = 0;
  for (std::size_t w = 0; w < code.size() && row < total; ++w) {
    const int* word = code.word(w);
    for (std::size_t f = 0; f < family.size() && row < total; ++f, ++row) {
      const auto members = family.members(f);
      for (int j = 0; j < 2 * s; ++j)
        cert.points.row(row).segment(members[j] * dim, dim) = scale * base.points.row(word[j]);
    }
  }
  return cert;
}

PackingCertificate two_level_sparse_packing(const ExponentTuple& params, int b, int d, int s, int t,
                                            const PackingOptions& options) {
  if (b < 8 || d < 8) throw PreconditionError("two_level_sparse_packing requires b, d >= 8");
  if (s < 1 || s > b / 8 || t < 1 || t > d / 8)
    throw PreconditionError("two_level_sparse_packing requires s <= floor(b/8) and t <= floor(d/8)");

  BasePacking signs;
  signs.points = RowMajorMatrix(2, 1);
  signs.points << -1.0, 1.0;
  signs.separation = 2.0;
  signs.min_norm = 1.0;
  signs.x_exp = params.q;
  signs.y_exp = params.u;
  PackingOptions inner_opts = options;
  inner_opts.max_points = 100000;
  const auto inner = block_sparse_packing(signs, params.q, params.u, d, t, QuasiNormConstant{1.0}, inner_opts);

  BasePacking rows;
  rows.points = inner.points;  // each inner point is a d×1 matrix, i.e. a row vector of length d
  rows.separation = inner.claimed_separation;
  rows.x_exp = params.q;
  rows.y_exp = params.u;
  rows.min_norm = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inner.size(); ++i) rows.min_norm = std::min(rows.min_norm, lp_norm(rows.points.row(i), params.u));
  const auto alpha_Y = quasi_norm_constant(params.u);

  auto outer = block_sparse_packing(rows, params.p, params.r, b, s, alpha_Y, options);
  outer.construction = "two_level_sparse";
  outer.params = params;
  outer.t = t;
  outer.metadata["inner_separation"] = inner.claimed_separation;
  outer.metadata["inner_count"] = double(inner.size());
  outer.metadata["lemma_count"] = double(outer.advertised_count);
  outer.metadata["nominal_separation"] =
      std::pow(double(s), params.r.reciprocal() - params.p.reciprocal()) *
      std::pow(double(t), params.u.reciprocal() - params.q.reciprocal());
  outer.advertised_count =
      ceil_count(std::pow(b / (32.0 * s), s) * std::pow(d / (8.0 * t), double(s) * t));

  const double outer_factor = std::pow(double(s), params.r.reciprocal() - params.p.reciprocal()) /
                              (std::pow(2.0, 1.0 + params.p.reciprocal()) * alpha_Y.alpha);
  if (outer.claimed_separation > outer_factor * inner.claimed_separation * (1.0 + kRelativeTolerance))
    throw ConstructionError("two-level separation exceeds the product of its single-level factors");
  return outer;
}

PackingCertificate row_replication_packing(const Eigen::VectorXd& witness, const ExponentTuple& params, int b,
                                           int s, const PackingOptions& options) {
  const int d = int(witness.size());
  if (d < 1) throw PreconditionError("row_replication_packing needs a nonempty witness");
  if (s < 1 || 2 * s >= b) throw PreconditionError("row_replication_packing requires 1 <= s < b/2");
  const double x_norm = lp_norm(witness, params.q);
  const double y_norm = lp_norm(witness, params.u);
  if (x_norm > 1.0 + kBallTolerance) throw PreconditionError("witness leaves the unit ball of X");
  const double id_norm = std::pow(double(d), std::max(0.0, params.u.reciprocal() - params.q.reciprocal()));
  if (!(y_norm > 0.0) || y_norm < id_norm / 2.0 * (1.0 - kRelativeTolerance))
    throw PreconditionError("witness Y-norm must be at least ||id||/2");

  const auto family = build_subset_family(b, s, options.seed);
  const std::size_t total = std::min(options.max_points, family.size());
  const double scale = std::pow(2.0 * s, -params.p.reciprocal());

  PackingCertificate cert;
  cert.construction = "row_replication";
  cert.params = params;
  cert.shape = {b, d};
  cert.s = s;
  cert.seed = family.seed;
  cert.claimed_separation = scale * std::pow(double(s), params.r.reciprocal()) * y_norm;
  cert.advertised_count = ceil_count(std::pow(b / (8.0 * s), s));
  cert.constructible_count = double(family.size());
  if (total < cert.advertised_count) throw PreconditionError("max_points is below the advertised count");
  cert.points = RowMajorMatrix::Zero(Eigen::Index(total), Eigen::Index(b) * d);
  for (std::size_t f = 0; f < total; ++f)
    for (int i : family.members(f)) cert.points.row(f).segment(i * d, d) = scale * witness.transpose();
  return cert;
}

PackingCertificate signed_unit_packing(const ExponentTuple& params, Shape shape) {
  if (shape.b < 1 || shape.d < 1) throw PreconditionError("signed_unit_packing needs b, d >= 1");
  const int n = shape.size();
  PackingCertificate cert;
  cert.construction = "signed_unit";
  cert.params = params;
  cert.shape = shape;
  cert.points = RowMajorMatrix::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    cert.points(2 * i, i) = 1.0;
    cert.points(2 * i + 1, i) = -1.0;
  }
  double sep = 2.0;
  if (shape.d > 1) sep = std::min(sep, std::pow(2.0, params.u.reciprocal()));
  if (shape.b > 1) sep = std::min(sep, std::pow(2.0, params.r.reciprocal()));
  cert.claimed_separation = sep;
  cert.advertised_count = std::size_t(2 * n);
  cert.constructible_count = 2.0 * n;
  return cert;
}

PackingCertificate antipodal_packing(const ExponentTuple& params, Shape shape) {
  if (shape.b < 1 || shape.d < 1) throw PreconditionError("antipodal_packing needs b, d >= 1");
  // spread over all rows (entries) exactly when the target exponent is the smaller one
  const int rows = params.r < params.p ? shape.b : 1;
  const int cols = params.u < params.q ? shape.d : 1;
  const double entry = std::pow(double(rows), -params.p.reciprocal()) * std::pow(double(cols), -params.q.reciprocal());
  MixedMatrix x = MixedMatrix::Zero(shape.b, shape.d);
  x.topLeftCorner(rows, cols).setConstant(entry);

  PackingCertificate cert;
  cert.construction = "antipodal";
  cert.params = params;
  cert.shape = shape;
  cert.points = RowMajorMatrix(2, shape.size());
  for (int i = 0; i < shape.b; ++i)
    for (int j = 0; j < shape.d; ++j) {
      cert.points(0, i * shape.d + j) = x(i, j);
      cert.points(1, i * shape.d + j) = -x(i, j);
    }
  cert.claimed_separation = mixed_norm(MixedMatrix(2.0 * x), params.r, params.u);
  cert.advertised_count = 2;
  cert.constructible_count = 2.0;
  return cert;
}

PackingCertificate cube_lattice_packing(const ExponentTuple& params, Shape shape, int levels,
                                        const PackingOptions& options) {
  if (levels < 2) throw PreconditionError("cube_lattice_packing needs at least two levels");
  const int n = shape.size();
  const double full = std::pow(double(levels), n);
  if (full > double(options.max_points))
    throw PreconditionError("cube_lattice_packing: levels^(bd) exceeds max_points");
  const MixedMatrix ones = MixedMatrix::Ones(shape.b, shape.d);
  const double c = 1.0 / mixed_norm(ones, params.p, params.q);
  const double h = 2.0 * c / (levels - 1);

  PackingCertificate cert;
  cert.construction = "cube_lattice";
  cert.params = params;
  cert.shape = shape;
  const auto count = static_cast<std::size_t>(full);
  cert.points = RowMajorMatrix(Eigen::Index(count), n);
  std::vector<int> digit(n, 0);
  for (std::size_t row = 0; row < count; ++row) {
    for (int i = 0; i < n; ++i) cert.points(Eigen::Index(row), i) = -c + h * digit[i];
    for (int i = n - 1; i >= 0 && ++digit[i] == levels; --i) digit[i] = 0;
  }
  cert.claimed_separation = h;
  cert.advertised_count = count;
  cert.constructible_count = full;
  cert.metadata["levels"] = levels;
  return cert;
}

BoundCurve packing_to_entropy_lower(const PackingCertificate& cert) {
  BoundCurve out;
  const std::size_t M = cert.size();
  if (M < 2) return out;
  int k = 1;
  while ((std::size_t(1) << k) < M) ++k;  // largest k with 2^{k−1} < M
  const double alpha = mixed_quasi_norm_constant(cert.params.r, cert.params.u).alpha;
  out.push(k, cert.claimed_separation / (2.0 * alpha), cert.construction);
  return out;
}

}  // namespace mixent

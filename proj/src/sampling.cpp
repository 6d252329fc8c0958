#include "mixent/sampling.hpp"

namespace mixent {

BallSampler::BallSampler(Exponent p, Exponent q, Shape shape, std::uint64_t seed)
    : p_(p), q_(q), shape_(shape), rng_(seed), outer_(shape.b) {
  if (shape.b < 1 || shape.d < 1) throw PreconditionError("BallSampler needs b, d >= 1");
}

void BallSampler::unit_direction(double* v, int n, Exponent e, bool sparse) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  int support = n;
  if (sparse && n > 1) support = std::uniform_int_distribution<int>(1, std::min(n, 2))(rng_);
  for (int i = 0; i < n; ++i) v[i] = 0.0;
  // choose the support uniformly by partial shuffle of indices
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < support; ++i) std::swap(idx[i], idx[std::uniform_int_distribution<int>(i, n - 1)(rng_)]);

  for (int j = 0; j < support; ++j) {
    double mag;
    if (e.is_inf()) {
      mag = unif(rng_);
    } else {
      std::gamma_distribution<double> gamma(1.0 / e.value(), 1.0);
      mag = std::pow(gamma(rng_), 1.0 / e.value());
    }
    v[idx[j]] = coin(rng_) ? mag : -mag;
  }
  LpAccumulator<double> acc(e);
  for (int i = 0; i < n; ++i) acc.add(std::abs(v[i]));
  const double nrm = acc.result();
  if (nrm > 0.0) {
    for (int i = 0; i < n; ++i) v[i] /= nrm;
  } else {
    v[idx[0]] = 1.0;
  }
}

void BallSampler::draw(double* out, SampleKind kind) {
  const int b = shape_.b, d = shape_.d;
  const bool sparse = kind == SampleKind::sparse;
  unit_direction(outer_.data(), b, p_, sparse);
  double radius = 1.0;
  if (kind == SampleKind::interior)
    radius = std::pow(std::uniform_real_distribution<double>(0.0, 1.0)(rng_), 1.0 / (double(b) * d));
  for (int i = 0; i < b; ++i) {
    unit_direction(out + i * d, d, q_, sparse);
    const double a = radius * std::abs(outer_[i]);
    for (int j = 0; j < d; ++j) out[i * d + j] *= a;
  }
  // guard against rounding just outside the ball
  const std::vector<double> origin(std::size_t(b) * d, 0.0);
  const double nrm = mixed_distance(out, origin.data(), b, d, p_, q_);
  if (nrm > 1.0)
    for (int i = 0; i < b * d; ++i) out[i] /= nrm;
}

MixedMatrix BallSampler::draw(SampleKind kind) {
  RowMajorMatrix x(shape_.b, shape_.d);
  draw(x.data(), kind);
  return x;
}

void BallSampler::draw_mixed(double* out, std::size_t index) {
  static constexpr SampleKind cycle[] = {SampleKind::interior, SampleKind::boundary, SampleKind::interior,
                                         SampleKind::sparse};
  draw(out, cycle[index % 4]);
}

}  // namespace mixent

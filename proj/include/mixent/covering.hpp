#pragma once

#include "mixent/core.hpp"
#include "mixent/rates.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace mixent {

inline constexpr double kCoverTolerance = 1e-9;

/// Centers (one per row) and the radius at which they cover B_X in Y.
struct RowSet {
  RowMajorMatrix centers;
  double radius = 0.0;
  [[nodiscard]] std::size_t size() const { return std::size_t(centers.rows()); }
};

/// Budget-indexed coverings of B_X in Y with at most 2^{m−1} centers.
class InnerCoveringProvider {
 public:
  virtual ~InnerCoveringProvider() = default;
  [[nodiscard]] virtual int dim() const = 0;
  [[nodiscard]] virtual Exponent x_exp() const = 0;
  [[nodiscard]] virtual Exponent y_exp() const = 0;
  [[nodiscard]] virtual RowSet cover(int m) const = 0;
  [[nodiscard]] virtual double radius(int m) const = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

/// [−1,1] by 2^{m−1} midpoints, radius 2^{−(m−1)}.
class IntervalProvider final : public InnerCoveringProvider {
 public:
  static constexpr int kMaxBudget = 24;
  [[nodiscard]] int dim() const override { return 1; }
  [[nodiscard]] Exponent x_exp() const override { return Exponent(1.0); }
  [[nodiscard]] Exponent y_exp() const override { return Exponent(1.0); }
  [[nodiscard]] RowSet cover(int m) const override;
  [[nodiscard]] double radius(int m) const override;
  [[nodiscard]] std::string name() const override { return "interval"; }
};

/// Centers of the cubes of side 2/n in [−1,1]^d that meet B_{ℓ_q^d}; radius d^{1/u}/n in ℓ_u^d.
class LatticeProvider final : public InnerCoveringProvider {
 public:
  static constexpr double kMaxCells = 4e6;
  LatticeProvider(Exponent q, Exponent u, int d);
  [[nodiscard]] int dim() const override { return d_; }
  [[nodiscard]] Exponent x_exp() const override { return q_; }
  [[nodiscard]] Exponent y_exp() const override { return u_; }
  [[nodiscard]] RowSet cover(int m) const override;
  [[nodiscard]] double radius(int m) const override;
  [[nodiscard]] std::string name() const override { return "lattice"; }
  /// Cells per axis used at budget m; 1 means the single center at the origin.
  [[nodiscard]] int cells_per_axis(int m) const;

 private:
  [[nodiscard]] std::size_t kept_cells(int n) const;
  Exponent q_, u_;
  int d_;
  double id_norm_;
  mutable std::mutex mutex_;
  mutable std::map<int, int> cells_cache_;
};

struct CoverageEvidence {
  std::size_t samples = 0;
  double max_distance = 0.0;
  std::size_t misses = 0;
  std::uint64_t seed = 0;
};

/// Centers stored in factored form: every block picks one row set per row and contributes
/// the Cartesian product of those sets.
struct CoveringCertificate {
  std::string construction;
  ExponentTuple params;
  Shape shape;
  std::vector<RowMajorMatrix> row_sets;  // each n × d
  std::vector<std::vector<int>> blocks;  // each of length b, indices into row_sets
  double claimed_radius = 0.0;
  int budget = 0;  // the k the construction was asked for
  std::uint64_t count = 0;
  int certified_index = 1;
  CoverageEvidence evidence;
  std::map<std::string, double> metadata;

  /// Exact Σ_blocks Π |set|, throws on overflow.
  [[nodiscard]] std::uint64_t recompute_count() const;
  /// All centers, row-major flattened; only for small counts.
  [[nodiscard]] RowMajorMatrix materialize(std::size_t max_count = 1u << 20) const;
};

/// 1 + ⌈log2 count⌉
int index_for_count(std::uint64_t count);

/// Distance in ℓ_r^b(ℓ_u^d) from x (row-major) to the nearest center.
class NearestCenter {
 public:
  explicit NearestCenter(const CoveringCertificate& cert);
  double operator()(const double* x);

 private:
  const CoveringCertificate& cert_;
  std::vector<bool> sorted_;
  std::vector<double> memo_;
};

/// Recomputes the count and index, then samples the source ball and records the worst distance.
CoverageEvidence verify_covering(const CoveringCertificate& cert, std::size_t samples, std::uint64_t seed);

/// Samples and stores the evidence; throws VerificationError on any miss.
void attach_evidence(CoveringCertificate& cert, std::size_t samples, std::uint64_t seed);

/// The single center 0 with radius ‖id‖.
CoveringCertificate trivial_covering(const ExponentTuple& params, Shape shape);

/// Union over Γ(b,p) of products of scaled provider coverings.
CoveringCertificate cuboid_covering(const InnerCoveringProvider& provider, Exponent p, Exponent r, int b, int k);

enum class SparseMode { product, cuboid };

/// Best-s-row split: s-row coverings padded with zero rows, over all s-subsets.
CoveringCertificate et_sparse_covering(const InnerCoveringProvider& row_provider, Exponent p, Exponent r, int b,
                                       int k, SparseMode mode = SparseMode::product);

inline constexpr double kMaxSparseBlocks = 1e5;

struct KlssResult {
  int index = 0;
  double value = 0.0;
};

/// index = Σ n_j + ⌈b log2 b⌉, value = (Σ j^{−r/p} e_{n_j}^r)^{1/r}.
KlssResult klss_bound(const std::vector<InnerEntropyProfile>& profiles, const std::vector<int>& budgets,
                      Exponent p, Exponent r);

/// n_j = max(1, round(c j^{−α})) with the largest c whose KLSS index stays ≤ k.
std::vector<int> klss_budgets(int b, int k, double alpha);

}  // namespace mixent

#pragma once

// Fast analysis/synthesis of SVD coefficients on polar product grids
// {(r_a, 2 pi b / n_angles)}. The angular direction goes through real FFTs,
// the radial direction through Jacobi recurrences (optionally tabulated).

#include "radneedlet/svd_basis.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace radneedlet {

class PolarTransform {
public:
  enum class RadialCache { Auto, Always, Never };

  /// Node (a, b) sits at (radii[a], 2 pi b / n_angles) with integration weight
  /// radial_weights[a] * 2 pi / n_angles. Values are laid out row-major, a-major.
  PolarTransform(std::vector<double> radii, std::vector<double> radial_weights, int n_angles, int max_degree,
                 RadialCache cache = RadialCache::Auto);
  ~PolarTransform();
  PolarTransform(const PolarTransform&) = delete;
  PolarTransform& operator=(const PolarTransform&) = delete;

  int n_radii() const { return static_cast<int>(radii_.size()); }
  int n_angles() const { return n_angles_; }
  int max_degree() const { return max_degree_; }
  std::size_t n_nodes() const { return radii_.size() * static_cast<std::size_t>(n_angles_); }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& radial_weights() const { return radial_weights_; }
  double angle(int b) const;
  double node_weight(int a) const;

  /// c_idx = sum_nodes w_node F(node) f_idx(node), for all idx of degree <= max_degree.
  CoefficientVector analyze(std::span<const double> values) const;

  /// values[node] = sum_idx c_idx f_idx(node). c may have any degree <= max_degree.
  void synthesize(const CoefficientVector& c, std::span<double> values) const;

  using RowVisitor = std::function<void(int radius, int item, std::span<const double> row)>;

  /// Synthesizes several vectors at once; the visitor receives each angular row.
  /// Rows are visited radius-major, then item. Requires the radial table.
  void synthesize_rows(std::span<const CoefficientVector* const> batch, const RowVisitor& visit) const;

  bool has_radial_table() const { return !table_offset_.empty(); }

private:
  struct FftPlans;

  int jcount(int l) const { return (max_degree_ - l) / 2 + 1; }
  // Radial factors for (l, radius a): a contiguous run of jcount(l) doubles.
  const double* table_row(int l, int a) const {
    return table_.data() + table_offset_[l] + static_cast<std::size_t>(a) * jcount(l);
  }

  std::vector<double> radii_;
  std::vector<double> radial_weights_;
  int n_angles_;
  int max_degree_;
  std::vector<double> table_;
  std::vector<std::size_t> table_offset_;
  std::unique_ptr<FftPlans> plans_;
};

/// The angular grid used by a PolarTransform aliases frequency l onto a
/// half-spectrum bin; exposed for tests.
struct AliasedBin {
  int bin;
  double sin_sign;  // sin(l theta_b) = sin_sign * sin(bin theta_b); 0 when the sine vanishes on the grid
};
AliasedBin alias_frequency(int l, int n_angles);

}  // namespace radneedlet

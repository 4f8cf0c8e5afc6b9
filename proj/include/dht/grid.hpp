#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dht {

using point_t = std::vector<int>;

// Box product of intervals I_{s_1} x ... x I_{s_n}. Points are stored
// row-major with the first coordinate most significant.
class grid_shape {
 public:
  grid_shape() = default;
  explicit grid_shape(std::vector<int> sides);
  static grid_shape cube(int m, int n) { return grid_shape(std::vector<int>(n, m)); }

  int dim() const { return static_cast<int>(sides_.size()); }
  int side(int k) const { return sides_[k]; }
  const std::vector<int>& sides() const { return sides_; }
  std::size_t size() const { return size_; }
  std::size_t stride(int k) const { return strides_[k]; }

  std::size_t index(std::span<const int> p) const;
  void point(std::size_t index, std::span<int> out) const;
  point_t point(std::size_t index) const;
  bool contains(std::span<const int> p) const;

  // f(a, b) for every grid edge with a < b.
  template <class F>
  void for_each_edge(F&& f) const {
    point_t p(sides_.size());
    for (std::size_t a = 0; a < size_; ++a) {
      point(a, p);
      for (int k = 0; k < dim(); ++k)
        if (p[k] < sides_[k]) f(a, a + strides_[k]);
    }
  }

  bool operator==(const grid_shape&) const = default;

 private:
  std::vector<int> sides_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

// A vertex function between grids, stored as the image index of every point.
struct grid_map {
  grid_shape domain;
  grid_shape codomain;
  std::vector<std::size_t> image;

  point_t operator()(std::span<const int> p) const {
    return codomain.point(image[domain.index(p)]);
  }
};

// Index maps for the cube operators on {0..m}^n, 1-based i as in the cubical
// identities. Entry k is the source point index read by target point k.
std::vector<std::uint32_t> face_index_map(int m, int n, int i, int eps);
std::vector<std::uint32_t> degeneracy_index_map(int m, int n, int i);  // n-cube -> (n+1)-cube
std::vector<std::uint32_t> connection_index_map(int m, int n, int i, int eps);

}  // namespace dht

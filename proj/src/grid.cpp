#include "dht/grid.hpp"

#include <algorithm>

#include "dht/errors.hpp"

namespace dht {

grid_shape::grid_shape(std::vector<int> sides) : sides_(std::move(sides)), strides_(sides_.size()) {
  for (int k = dim() - 1; k >= 0; --k) {
    if (sides_[k] < 0) throw invalid_argument("negative grid side");
    strides_[k] = size_;
    size_ *= static_cast<std::size_t>(sides_[k]) + 1;
  }
}

std::size_t grid_shape::index(std::span<const int> p) const {
  std::size_t idx = 0;
  for (int k = 0; k < dim(); ++k) idx += static_cast<std::size_t>(p[k]) * strides_[k];
  return idx;
}

void grid_shape::point(std::size_t index, std::span<int> out) const {
  for (int k = 0; k < dim(); ++k) {
    out[k] = static_cast<int>(index / strides_[k]);
    index %= strides_[k];
  }
}

point_t grid_shape::point(std::size_t index) const {
  point_t p(sides_.size());
  point(index, p);
  return p;
}

bool grid_shape::contains(std::span<const int> p) const {
  if (p.size() != sides_.size()) return false;
  for (int k = 0; k < dim(); ++k)
    if (p[k] < 0 || p[k] > sides_[k]) return false;
  return true;
}

namespace {

template <class F>
std::vector<std::uint32_t> build_map(int m, int target_dim, int source_dim, F&& source_of) {
  auto target = grid_shape::cube(m, target_dim);
  auto source = grid_shape::cube(m, source_dim);
  std::vector<std::uint32_t> out(target.size());
  point_t u(target_dim), v(source_dim);
  for (std::size_t k = 0; k < target.size(); ++k) {
    target.point(k, u);
    source_of(u, v);
    out[k] = static_cast<std::uint32_t>(source.index(v));
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> face_index_map(int m, int n, int i, int eps) {
  if (i < 1 || i > n) throw invalid_argument("face index out of range");
  return build_map(m, n - 1, n, [&](const point_t& u, point_t& v) {
    std::copy(u.begin(), u.begin() + (i - 1), v.begin());
    v[i - 1] = eps * m;
    std::copy(u.begin() + (i - 1), u.end(), v.begin() + i);
  });
}

std::vector<std::uint32_t> degeneracy_index_map(int m, int n, int i) {
  if (i < 1 || i > n + 1) throw invalid_argument("degeneracy index out of range");
  return build_map(m, n + 1, n, [&](const point_t& u, point_t& v) {
    std::copy(u.begin(), u.begin() + (i - 1), v.begin());
    std::copy(u.begin() + i, u.end(), v.begin() + (i - 1));
  });
}

std::vector<std::uint32_t> connection_index_map(int m, int n, int i, int eps) {
  if (i < 1 || i > n) throw invalid_argument("connection index out of range");
  return build_map(m, n + 1, n, [&](const point_t& u, point_t& v) {
    std::copy(u.begin(), u.begin() + (i - 1), v.begin());
    v[i - 1] = eps == 0 ? std::max(u[i - 1], u[i]) : std::min(u[i - 1], u[i]);
    std::copy(u.begin() + (i + 1), u.end(), v.begin() + i);
  });
}

}  // namespace dht

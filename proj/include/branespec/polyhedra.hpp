#pragma once

// Half-space descriptions { m : <normal, m> >= offset } and exact lattice
// point enumeration. Boundedness is decided from the recession cone, the box
// from the exact vertices.

#include <cstdint>
#include <optional>
#include <vector>

#include "branespec/errors.hpp"
#include "branespec/exact.hpp"

namespace branespec {

struct HalfSpace {
  std::vector<std::int64_t> normal;
  std::int64_t offset = 0;

  bool contains(const std::vector<std::int64_t>& m) const {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < m.size(); ++i) acc += normal[i] * m[i];
    return acc >= offset;
  }
};

/// Extreme rays of the cone { x : A x >= 0 } in Q^n, assumed pointed
/// (rank A = n). Returns an empty list when the cone is {0}.
inline std::vector<std::vector<Integer>> extreme_rays(const Matrix<Integer>& rows, std::size_t n) {
  std::vector<std::vector<Integer>> out;
  auto satisfies = [&](const std::vector<Integer>& d) {
    for (const auto& row : rows) {
      Integer acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * d[j];
      if (acc < 0) return false;
    }
    return true;
  };
  auto normalize = [&](std::vector<Integer> d) {
    Integer g = 0;
    for (const auto& x : d) g = gcd(g, x);
    if (g > 1)
      for (auto& x : d) x /= g;
    return d;
  };
  if (n == 0) return out;
  for_each_combination(rows.size(), n - 1, [&](const std::vector<std::size_t>& pick) {
    Matrix<Integer> sub;
    for (auto i : pick) sub.push_back(rows[i]);
    auto d = cofactor_kernel(sub, n);
    bool zero = true;
    for (const auto& x : d) zero = zero && x == 0;
    if (zero) return;
    for (int s : {1, -1}) {
      std::vector<Integer> cand = d;
      if (s < 0)
        for (auto& x : cand) x = -x;
      if (!satisfies(cand)) continue;
      cand = normalize(std::move(cand));
      bool seen = false;
      for (const auto& e : out) seen = seen || e == cand;
      if (!seen) out.push_back(std::move(cand));
    }
  });
  return out;
}

inline Matrix<Integer> normals_of(const std::vector<HalfSpace>& hs) {
  Matrix<Integer> rows;
  rows.reserve(hs.size());
  for (const auto& h : hs) rows.emplace_back(h.normal.begin(), h.normal.end());
  return rows;
}

/// True when the recession cone of the region is {0}, i.e. the region is
/// bounded whenever it is nonempty.
inline bool has_trivial_recession_cone(const std::vector<HalfSpace>& hs, std::size_t n) {
  if (n == 0) return true;
  Matrix<Integer> rows = normals_of(hs);
  if (branespec::rank(rows) < n) return false;
  return extreme_rays(rows, n).empty();
}

/// Exact vertices of a pointed polyhedron given by half-spaces.
inline std::vector<std::vector<Rational>> vertices(const std::vector<HalfSpace>& hs, std::size_t n) {
  std::vector<std::vector<Rational>> out;
  for_each_combination(hs.size(), n, [&](const std::vector<std::size_t>& pick) {
    Matrix<Integer> a;
    for (auto i : pick) a.emplace_back(hs[i].normal.begin(), hs[i].normal.end());
    Integer det = determinant(a);
    if (det == 0) return;
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<Integer> aj = a;
      for (std::size_t r = 0; r < n; ++r) aj[r][j] = hs[pick[r]].offset;
      x[j] = make_rational(determinant(std::move(aj)), det);
    }
    for (const auto& h : hs) {
      Rational acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += Rational(h.normal[j]) * x[j];
      if (acc < h.offset) return;
    }
    for (const auto& v : out)
      if (v == x) return;
    out.push_back(std::move(x));
  });
  return out;
}

struct EnumerationLimits {
  std::uint64_t max_box_points = 20'000'000;
};

struct LatticeEnumeration {
  bool bounded = true;
  std::vector<std::vector<std::int64_t>> points;  // lexicographic order
};

/// All integer points of { m in Z^n : <normal_k, m> >= offset_k for all k }.
/// Reports bounded = false (and no points) when the recession cone is
/// nontrivial.
inline LatticeEnumeration lattice_points(const std::vector<HalfSpace>& hs, std::size_t n,
                                         const EnumerationLimits& limits = {}) {
  LatticeEnumeration result;
  for (const auto& h : hs)
    if (h.normal.size() != n) throw DimensionMismatch("half-space normal has wrong length");
  if (n == 0) {
    bool ok = true;
    for (const auto& h : hs) ok = ok && h.offset <= 0;
    if (ok) result.points.emplace_back();
    return result;
  }
  if (!has_trivial_recession_cone(hs, n)) {
    result.bounded = false;
    return result;
  }
  auto verts = vertices(hs, n);
  if (verts.empty()) return result;

  std::vector<std::int64_t> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational mn = verts[0][j], mx = verts[0][j];
    for (const auto& v : verts) {
      if (v[j] < mn) mn = v[j];
      if (v[j] > mx) mx = v[j];
    }
    lo[j] = to_int64(ceil_div(mn));
    hi[j] = to_int64(floor_div(mx));
    if (lo[j] > hi[j]) return result;
  }
  std::uint64_t volume = 1;
  for (std::size_t j = 0; j < n; ++j) {
    auto width = static_cast<std::uint64_t>(hi[j] - lo[j] + 1);
    if (volume > limits.max_box_points / width)
      throw ResourceError("lattice enumeration box exceeds " + std::to_string(limits.max_box_points) +
                              " points",
                          "EnumerationCap");
    volume *= width;
  }

  std::vector<std::int64_t> m = lo;
  while (true) {
    bool inside = true;
    for (const auto& h : hs)
      if (!h.contains(m)) {
        inside = false;
        break;
      }
    if (inside) result.points.push_back(m);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (m[j] < hi[j]) {
        ++m[j];
        break;
      }
      m[j] = lo[j];
      if (j == 0) return result;
    }
  }
}

}  // namespace branespec

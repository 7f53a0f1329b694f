#include "oga/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

namespace oga {

BoxDomain::BoxDomain(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() < 1 || lower_.size() > kMaxDim) throw Error("box dimension must be 1, 2 or 3");
  if (lower_.size() != upper_.size()) throw Error("box bounds have mismatched dimension");
  for (int i = 0; i < dim(); ++i) {
    if (!(lower_[i] < upper_[i])) throw Error("box requires lower < upper on axis " + std::to_string(i));
  }
}

BoxDomain BoxDomain::unit(int dim) {
  if (dim < 1 || dim > kMaxDim) throw Error("box dimension must be 1, 2 or 3");
  return BoxDomain(Vector::Zero(dim), Vector::Ones(dim));
}

double BoxDomain::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= upper_[i] - lower_[i];
  return v;
}

std::vector<Vector> BoxDomain::corners() const {
  const int d = dim();
  std::vector<Vector> out;
  out.reserve(std::size_t{1} << d);
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Vector c(d);
    for (int i = 0; i < d; ++i) c[i] = (mask >> i) & 1u ? upper_[i] : lower_[i];
    out.push_back(c);
  }
  return out;
}

bool BoxDomain::contains_strictly(const Vector& x) const {
  if (x.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (!(x[i] > lower_[i] && x[i] < upper_[i])) return false;
  }
  return true;
}

namespace {

struct NodeWeight {
  double node;
  double weight;
};

// Nonnegative half of each symmetric rule, ascending node.
constexpr std::array<std::array<NodeWeight, 4>, 8> kHalfRules = {{
    {{{0.0, 2.0}}},
    {{{0.57735026918962576451, 1.0}}},
    {{{0.0, 0.88888888888888888889}, {0.77459666924148337704, 0.55555555555555555556}}},
    {{{0.33998104358485626480, 0.65214515486254614263}, {0.86113631159405257522, 0.34785484513745385737}}},
    {{{0.0, 0.56888888888888888889},
      {0.53846931010568309104, 0.47862867049936646804},
      {0.90617984593866399280, 0.23692688505618908751}}},
    {{{0.23861918608319690863, 0.46791393457269104739},
      {0.66120938646626451366, 0.36076157304813860757},
      {0.93246951420315202781, 0.17132449237917034504}}},
    {{{0.0, 0.41795918367346938776},
      {0.40584515137739716691, 0.38183005050511894495},
      {0.74153118559939443986, 0.27970539148927666790},
      {0.94910791234275852453, 0.12948496616886969327}}},
    {{{0.18343464249564980494, 0.36268378337836198297},
      {0.52553240991632898582, 0.31370664587788728734},
      {0.79666647741362673959, 0.22238103445337447054},
      {0.96028985649753623168, 0.10122853629037625915}}},
}};

}  // namespace

GaussRule gauss_legendre_1d(int t) {
  if (t < 1 || t > 8) throw Error("unsupported point count: " + std::to_string(t));
  const auto& half = kHalfRules[static_cast<std::size_t>(t - 1)];
  const int n_half = (t + 1) / 2;
  const bool odd = t % 2 == 1;

  GaussRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(t));
  rule.weights.reserve(static_cast<std::size_t>(t));
  for (int i = n_half - 1; i >= (odd ? 1 : 0); --i) {
    rule.nodes.push_back(-half[static_cast<std::size_t>(i)].node);
    rule.weights.push_back(half[static_cast<std::size_t>(i)].weight);
  }
  for (int i = 0; i < n_half; ++i) {
    rule.nodes.push_back(half[static_cast<std::size_t>(i)].node);
    rule.weights.push_back(half[static_cast<std::size_t>(i)].weight);
  }
  return rule;
}

QuadratureGrid::QuadratureGrid(const BoxDomain& domain, std::vector<int> cells_per_dim, int points_per_cell,
                               std::int64_t point_cap)
    : domain_(domain), cells_(std::move(cells_per_dim)), t_(points_per_cell) {
  const int d = domain_.dim();
  if (static_cast<int>(cells_.size()) != d) throw Error("cells_per_dim must have one entry per axis");
  const GaussRule rule = gauss_legendre_1d(t_);

  std::int64_t total = 1;
  for (int c : cells_) {
    if (c < 1) throw Error("cell counts must be positive");
    total *= static_cast<std::int64_t>(c) * t_;
    if (total > point_cap) throw Error("grid too large: more than " + std::to_string(point_cap) + " points");
  }

  // Per-axis 1D composite rules; a point index p encodes (cell, node) as cell * t + node.
  std::vector<std::vector<double>> axis_nodes(static_cast<std::size_t>(d));
  std::vector<std::vector<double>> axis_weights(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const double lo = domain_.lower()[a];
    const double h = (domain_.upper()[a] - lo) / cells_[static_cast<std::size_t>(a)];
    auto& xs = axis_nodes[static_cast<std::size_t>(a)];
    auto& ws = axis_weights[static_cast<std::size_t>(a)];
    xs.reserve(static_cast<std::size_t>(cells_[static_cast<std::size_t>(a)] * t_));
    for (int c = 0; c < cells_[static_cast<std::size_t>(a)]; ++c) {
      const double mid = lo + (c + 0.5) * h;
      for (int q = 0; q < t_; ++q) {
        xs.push_back(mid + 0.5 * h * rule.nodes[static_cast<std::size_t>(q)]);
        ws.push_back(0.5 * h * rule.weights[static_cast<std::size_t>(q)]);
      }
    }
  }

  nodes_.resize(total, d);
  weights_.resize(total);

  // Iterate cells lexicographically (axis 0 slowest), then tensor points inside.
  std::array<int, kMaxDim> cell{};
  std::array<int, kMaxDim> pt{};
  Eigen::Index j = 0;
  const auto advance = [d](std::array<int, kMaxDim>& idx, auto limit) {
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < limit(a)) return true;
      idx[static_cast<std::size_t>(a)] = 0;
    }
    return false;
  };
  do {
    pt.fill(0);
    do {
      double w = 1.0;
      for (int a = 0; a < d; ++a) {
        const auto p = static_cast<std::size_t>(cell[static_cast<std::size_t>(a)] * t_ + pt[static_cast<std::size_t>(a)]);
        nodes_(j, a) = axis_nodes[static_cast<std::size_t>(a)][p];
        w *= axis_weights[static_cast<std::size_t>(a)][p];
      }
      weights_[j] = w;
      ++j;
    } while (advance(pt, [this](int) { return t_; }));
  } while (advance(cell, [this](int a) { return cells_[static_cast<std::size_t>(a)]; }));
}

QuadratureGrid QuadratureGrid::refined(int factor) const {
  if (factor < 1) throw Error("refinement factor must be positive");
  std::vector<int> cells = cells_;
  for (int& c : cells) c *= factor;
  return QuadratureGrid(domain_, std::move(cells), t_);
}

double integrate(const QuadratureGrid& grid, const Eigen::VectorXd& values) {
  if (values.size() != grid.size()) throw Error("sample count does not match grid size");
  double sum = 0.0;
  const double* w = grid.weights().data();
  const double* v = values.data();
  for (Eigen::Index j = 0; j < grid.size(); ++j) sum += v[j] * w[j];
  return sum;
}

}  // namespace oga

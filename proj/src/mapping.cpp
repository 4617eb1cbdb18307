#include "corda/mapping.hpp"

#include <algorithm>

namespace corda {

namespace {

std::size_t leader_or_throw(const Configuration& q) {
  const auto l = agreement_leader(q);
  if (!l) throw Error(ErrorKind::NotAgreementConfiguration, "configuration has no agreement leader");
  return *l;
}

void check_sizes(const Configuration& q, std::size_t n) {
  if (q.size() != n) {
    throw Error(ErrorKind::SizeMismatch, "configuration and pattern differ in size");
  }
}

// Circle index of each point (-1 at the center) given circles sorted by decreasing radius.
std::vector<int> classify(std::span<const Point> pts, const std::vector<Circle>& circles, double eps) {
  std::vector<int> out(pts.size(), -1);
  const Point c = circles.front().center;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = distance(pts[i], c);
    if (d <= eps) continue;
    int best = 0;
    double gap = std::abs(d - circles[0].radius);
    for (std::size_t k = 1; k < circles.size(); ++k) {
      const double g = std::abs(d - circles[k].radius);
      if (g < gap) {
        gap = g;
        best = static_cast<int>(k);
      }
    }
    out[i] = best;
  }
  return out;
}

}  // namespace

std::size_t anchor_index(const TargetPattern& p, Tolerance tol, bool* fallback) {
  const auto circles = concentric_enclosing_circles(p.positions(), tol);
  const double eps = tol.eps(circles.front().radius);
  const auto on = classify(p.positions(), circles, eps);
  const int inner = static_cast<int>(circles.size()) - 1;
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (on[i] != inner) continue;
    if (!first) first = i;
    if (!is_critical(p[i], p.positions(), tol)) {
      if (fallback) *fallback = false;
      return i;
    }
  }
  if (fallback) *fallback = true;
  return *first;
}

MappedPattern map_pattern(const Configuration& q, const TargetPattern& p) {
  check_sizes(q, p.size());
  const std::size_t leader = leader_or_throw(q);
  const Tolerance tol = q.tolerance();
  const auto pcircles = concentric_enclosing_circles(p.positions(), tol);
  const Circle& psec = pcircles.front();
  const double peps = tol.eps(psec.radius);

  MappedPattern m;
  m.s_index = anchor_index(p, tol, &m.s_fallback);
  m.circle_of = classify(p.positions(), pcircles, peps);

  const Point oq = q.sec().center;
  const double scale = q.sec().radius / psec.radius;
  const double leader_angle = polar(q[leader], oq);
  const double turn = leader_angle - polar(p[m.s_index], psec.center);

  m.circles.reserve(pcircles.size());
  m.circles.push_back(q.sec());
  for (std::size_t k = 1; k < pcircles.size(); ++k) m.circles.push_back({oq, pcircles[k].radius * scale});

  m.positions.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int ring = m.circle_of[i];
    if (ring < 0) {
      m.positions[i] = oq;
      m.center_in_pattern = true;
      m.center_index = i;
      continue;
    }
    const double theta = i == m.s_index ? leader_angle : polar(p[i], psec.center) + turn;
    m.positions[i] = m.circles[static_cast<std::size_t>(ring)].at_polar(theta);
  }
  m.s = m.positions[m.s_index];
  return m;
}

bool is_partial_pattern(const Configuration& q, const MappedPattern& m, int k) {
  const std::size_t leader = leader_or_throw(q);
  const Point c = q.sec().center;
  const double eps = q.eps();
  if (!(distance(q[leader], c) < m.innermost().radius - eps)) return false;
  if (k == 0) return true;

  const auto qcircles = concentric_enclosing_circles(q.robots(), q.tolerance());
  const int bound = static_cast<int>(std::min(qcircles.size(), m.circles.size()));
  if (k < 1 || k > bound) return false;
  const auto kk = static_cast<std::size_t>(k - 1);

  // (b) every mapped position of the k-th circle hosts a robot of the k-th robot circle.
  for (std::size_t i = 0; i < m.positions.size(); ++i) {
    if (m.circle_of[i] != k - 1) continue;
    const auto j = q.find(m.positions[i]);
    if (!j || !qcircles[kk].on_boundary(q[*j], eps)) return false;
  }

  // (c) the k-1 outer circles coincide as sets of points.
  if (k >= 2) {
    const double cut = qcircles[kk - 1].radius - eps;
    std::size_t robots_outer = 0;
    for (const Point& r : q.robots()) {
      if (distance(r, c) >= cut) ++robots_outer;
    }
    std::size_t mapped_outer = 0;
    for (std::size_t i = 0; i < m.positions.size(); ++i) {
      if (m.circle_of[i] < 0 || m.circle_of[i] > k - 2) continue;
      ++mapped_outer;
      const auto j = q.find(m.positions[i]);
      if (!j || distance(q[*j], c) < cut) return false;
    }
    if (robots_outer != mapped_outer) return false;
  }
  return true;
}

PartialPatternStatus partial_pattern_k(const Configuration& q, const MappedPattern& m) {
  if (!is_partial_pattern(q, m, 0)) return {std::nullopt, true};
  const auto qcircles = concentric_enclosing_circles(q.robots(), q.tolerance());
  const int bound = static_cast<int>(std::min(qcircles.size(), m.circles.size()));
  int best = 0;
  for (int k = 1; k <= bound; ++k) {
    if (is_partial_pattern(q, m, k)) best = k;
  }
  return {best, true};
}

PartialPatternStatus partial_pattern_k(const Configuration& q, const TargetPattern& p) {
  return partial_pattern_k(q, map_pattern(q, p));
}

std::vector<std::size_t> extra_robots(const Configuration& q, const MappedPattern& m,
                                      const PartialPatternStatus& status) {
  if (!status.maximal) throw Error(ErrorKind::StatusNotMaximal, "extra robots need the maximal k");
  if (!status.k) throw Error(ErrorKind::NoPartialPattern, "configuration is not a partial pattern");
  const std::size_t leader = leader_or_throw(q);
  const Point c = q.sec().center;
  const double eps = q.eps();
  const int k = *status.k;
  std::vector<std::size_t> out;
  if (k == 0) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (j != leader && distance(q[j], c) < q.sec().radius - eps) out.push_back(j);
    }
    return out;
  }
  const Circle& ck = m.circles[static_cast<std::size_t>(k - 1)];
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (j == leader) continue;
    const double d = distance(q[j], c);
    if (d < ck.radius - eps) {
      out.push_back(j);
    } else if (ck.on_boundary(q[j], eps)) {
      bool placed = false;
      for (std::size_t i = 0; i < m.positions.size() && !placed; ++i) {
        placed = m.circle_of[i] == k - 1 && distance(q[j], m.positions[i]) <= eps;
      }
      if (!placed) out.push_back(j);
    }
  }
  return out;
}

std::vector<Point> extra_robots(const Configuration& q, const TargetPattern& p,
                                const PartialPatternStatus& status) {
  const auto idx = extra_robots(q, map_pattern(q, p), status);
  std::vector<Point> out;
  out.reserve(idx.size());
  for (std::size_t j : idx) out.push_back(q[j]);
  return out;
}

FinalPositions final_positions(const MappedPattern& m) {
  FinalPositions f;
  const std::size_t reserved = m.center_in_pattern ? m.center_index : m.s_index;
  f.reserved = m.positions[reserved];
  f.reserved_is_center = m.center_in_pattern;
  for (std::size_t i = 0; i < m.positions.size(); ++i) {
    if (i == reserved) continue;
    f.positions.push_back(m.positions[i]);
    f.indices.push_back(i);
  }
  return f;
}

FinalPositions final_positions(const Configuration& q, const TargetPattern& p) {
  return final_positions(map_pattern(q, p));
}

}  // namespace corda

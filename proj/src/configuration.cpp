#include "corda/configuration.hpp"

#include <algorithm>
#include <string>

namespace corda {

TargetPattern::TargetPattern(std::vector<Point> positions, Tolerance tol)
    : positions_(std::move(positions)) {
  if (positions_.size() < 4) {
    throw Error(ErrorKind::InvalidPattern, "a pattern needs at least four positions");
  }
  for (const Point& p : positions_) {
    if (!p.finite()) throw Error(ErrorKind::InvalidPattern, "non-finite pattern coordinate");
  }
  std::sort(positions_.begin(), positions_.end(), lex_less);
  try {
    const Circle sec = smallest_enclosing_circle(positions_, tol);
    const double eps = tol.eps(sec.radius);
    for (std::size_t i = 0; i + 1 < positions_.size(); ++i) {
      for (std::size_t j = i + 1; j < positions_.size(); ++j) {
        if (distance(positions_[i], positions_[j]) <= eps) {
          throw Error(ErrorKind::InvalidPattern, "pattern positions must be pairwise distinct");
        }
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidPattern) throw;
    throw Error(ErrorKind::InvalidPattern, e.what());
  }
}

Configuration::Configuration(std::vector<Point> robots, Tolerance tol)
    : robots_(std::move(robots)), tol_(tol) {
  if (robots_.size() < kMinRobots) {
    throw Error(ErrorKind::InvalidConfiguration,
                "a configuration needs at least " + std::to_string(kMinRobots) + " robots");
  }
  for (const Point& p : robots_) {
    if (!p.finite()) throw Error(ErrorKind::InvalidConfiguration, "non-finite robot coordinate");
  }
  try {
    sec_ = smallest_enclosing_circle(robots_, tol_);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfiguration, e.what());
  }
  const double e = eps();
  for (std::size_t i = 0; i + 1 < robots_.size(); ++i) {
    for (std::size_t j = i + 1; j < robots_.size(); ++j) {
      if (distance(robots_[i], robots_[j]) <= e) {
        throw Error(ErrorKind::InvalidConfiguration,
                    "robots " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
}

std::optional<std::size_t> Configuration::find(Point p) const {
  const double e = eps();
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    if (distance(robots_[i], p) <= e) return i;
  }
  return std::nullopt;
}

Configuration Configuration::canonical() const {
  std::vector<Point> sorted = robots_;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  return Configuration(std::move(sorted), tol_);
}

namespace {

struct SignatureEntry {
  double angle;   // clockwise from the candidate ray, degrees
  double radial;  // distance to the center over the enclosing radius
};

std::vector<SignatureEntry> signature(const Configuration& q, std::size_t candidate) {
  const Point c = q.sec().center;
  const double r = q.sec().radius;
  const double eps_a = q.tolerance().eps_angle();
  const double eps_r = q.tolerance().eps_rel;
  std::vector<SignatureEntry> sig;
  sig.reserve(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    double a = j == candidate ? 0.0 : clockwise_angle(q[candidate], c, q[j]).value();
    if (a >= 360.0 - eps_a) a = 0.0;
    sig.push_back({a, distance(q[j], c) / r});
  }
  std::sort(sig.begin(), sig.end(), [&](const SignatureEntry& x, const SignatureEntry& y) {
    if (std::abs(x.angle - y.angle) > eps_a) return x.angle < y.angle;
    if (std::abs(x.radial - y.radial) > eps_r) return x.radial < y.radial;
    return false;
  });
  return sig;
}

// -1, 0, +1 with tolerance on every component.
int compare(const std::vector<SignatureEntry>& a, const std::vector<SignatureEntry>& b,
            double eps_a, double eps_r) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].angle - b[i].angle) > eps_a) return a[i].angle < b[i].angle ? -1 : 1;
    if (std::abs(a[i].radial - b[i].radial) > eps_r) return a[i].radial < b[i].radial ? -1 : 1;
  }
  return 0;
}

}  // namespace

LeaderVerdict elect_leader(const Configuration& q) {
  const Point c = q.sec().center;
  const double eps = q.eps();
  std::vector<double> dist(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) dist[i] = distance(q[i], c);
  const double dmin = *std::min_element(dist.begin(), dist.end());

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (dist[i] <= dmin + eps) candidates.push_back(i);
  }
  if (candidates.size() == 1 || dmin <= eps) {
    // A robot at the center is necessarily the only candidate.
    return {LeaderVerdict::Kind::Elected, candidates.front()};
  }

  const double eps_a = q.tolerance().eps_angle();
  const double eps_r = q.tolerance().eps_rel;
  std::size_t best = candidates.front();
  auto best_sig = signature(q, best);
  bool tied = false;
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    auto sig = signature(q, candidates[k]);
    const int cmp = compare(sig, best_sig, eps_a, eps_r);
    if (cmp < 0) {
      best = candidates[k];
      best_sig = std::move(sig);
      tied = false;
    } else if (cmp == 0) {
      tied = true;
    }
  }
  if (tied) return {LeaderVerdict::Kind::Symmetric, 0};
  return {LeaderVerdict::Kind::Elected, best};
}

std::optional<std::size_t> agreement_leader(const Configuration& q) {
  const Point c = q.sec().center;
  const double eps = q.eps();
  std::size_t arg = 0;
  double dmin = distance(q[0], c);
  for (std::size_t i = 1; i < q.size(); ++i) {
    const double d = distance(q[i], c);
    if (d < dmin) {
      dmin = d;
      arg = i;
    }
  }
  if (dmin <= eps) return std::nullopt;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i != arg && distance(q[i], c) <= dmin + eps) return std::nullopt;
  }
  return arg;
}

bool is_agreement_configuration(const Configuration& q) { return agreement_leader(q).has_value(); }

bool equivalent_agreement(const Configuration& a, const Configuration& b) {
  const auto la = agreement_leader(a);
  const auto lb = agreement_leader(b);
  if (!la || !lb) {
    throw Error(ErrorKind::NotAgreementConfiguration, "both configurations must be agreement configurations");
  }
  const double eps = std::max(a.eps(), b.eps());
  if (!same_circle(a.sec(), b.sec(), eps)) return false;
  const double ang = clockwise_angle(a[*la], a.sec().center, b[*lb] - b.sec().center + a.sec().center);
  const double eps_a = std::max(a.tolerance().eps_angle(), b.tolerance().eps_angle());
  return ang <= eps_a || ang >= 360.0 - eps_a;
}

bool matches_pattern(std::span<const Point> q, std::span<const Point> p, double match_rel) {
  if (q.size() != p.size()) {
    throw Error(ErrorKind::SizeMismatch, "configuration has " + std::to_string(q.size()) +
                                             " robots but the pattern has " + std::to_string(p.size()));
  }
  const Circle sq = smallest_enclosing_circle(q);
  const Circle sp = smallest_enclosing_circle(p);
  auto normalize = [](std::span<const Point> pts, const Circle& s) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const Point& x : pts) out.push_back((x - s.center) * (1.0 / s.radius));
    return out;
  };
  const auto nq = normalize(q, sq);
  const auto np = normalize(p, sp);
  const double tol = match_rel;

  const Point origin{};
  std::size_t anchor = np.size();
  for (std::size_t i = 0; i < np.size(); ++i) {
    if (np[i].norm() >= 1.0 - tol) {
      anchor = i;
      break;
    }
  }
  if (anchor == np.size()) return false;

  std::vector<Point> rotated(np.size());
  std::vector<char> used(nq.size());
  for (const Point& b : nq) {
    if (b.norm() < 1.0 - tol) continue;
    const double theta = polar(b, origin) - polar(np[anchor], origin);
    const double cs = std::cos(theta), sn = std::sin(theta);
    for (std::size_t i = 0; i < np.size(); ++i) {
      rotated[i] = {np[i].x * cs - np[i].y * sn, np[i].x * sn + np[i].y * cs};
    }
    std::fill(used.begin(), used.end(), 0);
    bool all = true;
    for (const Point& x : rotated) {
      bool hit = false;
      for (std::size_t j = 0; j < nq.size(); ++j) {
        if (!used[j] && distance(x, nq[j]) <= tol) {
          used[j] = 1;
          hit = true;
          break;
        }
      }
      if (!hit) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool matches_pattern(const Configuration& q, const TargetPattern& p, double match_rel) {
  return matches_pattern(q.robots(), p.positions(), match_rel);
}

}  // namespace corda

#include "gcim/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace gcim {

namespace {

struct Probe {
  double a = 0.0;
  double f = 0.0;
  double d = 0.0;  // directional derivative
  Eigen::VectorXd g;
};

class LineSearch {
 public:
  LineSearch(const Objective& f, const Eigen::VectorXd& x, const Eigen::VectorXd& p,
             const Probe& start, const BfgsOptions& opts, int& evals)
      : f_(f), x_(x), p_(p), start_(start), opts_(opts), evals_(evals),
        slack_(1e-13 * std::max(1.0, std::abs(start.f))) {}

  // Strong-Wolfe step or nothing. Sufficient decrease carries a roundoff slack so
  // that steps near a minimum are not rejected on noise alone.
  std::optional<Probe> run(double a_init) {
    Probe prev = start_;
    double a = a_init;
    for (int i = 0; i < 30; ++i) {
      Probe cur = probe(a);
      if (!armijo(cur) || (i > 0 && cur.f >= prev.f)) return zoom(prev, cur);
      if (std::abs(cur.d) <= -opts_.c2 * start_.d) return cur;
      if (cur.d >= 0) return zoom(cur, prev);
      prev = std::move(cur);
      a *= 2.0;
    }
    return std::nullopt;
  }

 private:
  Probe probe(double a) {
    Probe out;
    out.a = a;
    out.g.resize(x_.size());
    out.f = f_(x_ + a * p_, out.g);
    out.d = out.g.dot(p_);
    ++evals_;
    return out;
  }

  bool armijo(const Probe& q) const {
    return std::isfinite(q.f) && q.f <= start_.f + opts_.c1 * q.a * start_.d + slack_;
  }

  std::optional<Probe> zoom(Probe lo, Probe hi) {
    for (int j = 0; j < 60; ++j) {
      const double width = std::abs(hi.a - lo.a);
      if (width < 1e-14 * std::max(1.0, std::abs(lo.a))) break;
      const double a = interpolate(lo, hi);
      Probe cur = probe(a);
      if (!armijo(cur) || cur.f >= lo.f) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.d) <= -opts_.c2 * start_.d) return cur;
        if (cur.d * (hi.a - lo.a) >= 0) hi = lo;
        lo = std::move(cur);
      }
    }
    if (lo.a > 0.0) return lo;
    return std::nullopt;
  }

  // Cubic minimizer from the two endpoint values and slopes, kept inside the
  // middle 80% of the bracket; bisection otherwise.
  static double interpolate(const Probe& lo, const Probe& hi) {
    const double left = std::min(lo.a, hi.a), right = std::max(lo.a, hi.a);
    const double mid = 0.5 * (left + right);
    const double guard = 0.1 * (right - left);
    const double d1 = lo.d + hi.d - 3.0 * (lo.f - hi.f) / (lo.a - hi.a);
    const double disc = d1 * d1 - lo.d * hi.d;
    if (!(disc >= 0.0) || !std::isfinite(d1)) return mid;
    const double d2 = std::copysign(std::sqrt(disc), hi.a - lo.a);
    const double denom = hi.d - lo.d + 2.0 * d2;
    if (denom == 0.0) return mid;
    const double a = hi.a - (hi.a - lo.a) * (hi.d + d2 - d1) / denom;
    if (!std::isfinite(a) || a < left + guard || a > right - guard) return mid;
    return a;
  }

  const Objective& f_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& p_;
  const Probe& start_;
  const BfgsOptions& opts_;
  int& evals_;
  double slack_;
};

}  // namespace

const char* to_string(BfgsStatus s) {
  switch (s) {
    case BfgsStatus::Converged: return "converged";
    case BfgsStatus::BudgetExhausted: return "budget-exhausted";
    default: return "line-search-stalled";
  }
}

BfgsResult bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0, const BfgsOptions& opts) {
  const Eigen::Index n = x0.size();
  BfgsResult r;
  r.x = x0;
  r.gradient.resize(n);
  r.value = f(r.x, r.gradient);
  r.evaluations = 1;
  if (n == 0 || r.gradient.lpNorm<Eigen::Infinity>() < opts.gradient_tol) return r;

  const double f0 = r.value;
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool identity = true;
  bool scaled = false;
  r.status = BfgsStatus::BudgetExhausted;

  while (r.rounds < opts.max_rounds) {
    Eigen::VectorXd p = -hinv * r.gradient;
    if (p.dot(r.gradient) >= 0.0) {
      hinv.setIdentity();
      identity = true;
      p = -r.gradient;
    }
    Probe start{0.0, r.value, p.dot(r.gradient), r.gradient};
    std::optional<Probe> step = LineSearch(f, r.x, p, start, opts, r.evaluations).run(1.0);
    if (!step && !identity) {
      hinv.setIdentity();
      identity = true;
      p = -r.gradient;
      start.d = p.dot(r.gradient);
      step = LineSearch(f, r.x, p, start, opts, r.evaluations).run(1.0);
    }
    if (!step) {
      r.status = BfgsStatus::LineSearchStalled;
      break;
    }

    const Eigen::VectorXd s = step->a * p;
    const Eigen::VectorXd y = step->g - r.gradient;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (!scaled) {
        hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = hinv * y;
      hinv += (rho * rho * y.dot(hy) + rho) * s * s.transpose() -
              rho * (hy * s.transpose() + s * hy.transpose());
      identity = false;
    }
    r.x += s;
    r.value = step->f;
    r.gradient = step->g;
    ++r.rounds;
    if (r.gradient.lpNorm<Eigen::Infinity>() < opts.gradient_tol) {
      r.status = BfgsStatus::Converged;
      break;
    }
  }

  if (r.value > f0) {
    // Only reachable through the roundoff slack; fall back to the start.
    r.x = x0;
    r.value = f(r.x, r.gradient);
    ++r.evaluations;
  }
  return r;
}

}  // namespace gcim

#include "gengm/owlqn.hpp"

#include <cmath>
#include <deque>

namespace gengm {

namespace {

double composite(double smooth, const Vector& v, const Vector& w) {
  if (!std::isfinite(smooth)) return smooth;
  return smooth + w.dot(v.cwiseAbs());
}

struct CurvaturePair {
  Vector s;
  Vector y;
  double sy = 0.0;
};

// Two-loop recursion: returns -H * pg.
Vector lbfgs_direction(const Vector& pg, const std::deque<CurvaturePair>& history) {
  Vector d = -pg;
  if (history.empty()) return d;
  std::vector<double> alpha(history.size());
  for (std::size_t k = history.size(); k-- > 0;) {
    alpha[k] = history[k].s.dot(d) / history[k].sy;
    d -= alpha[k] * history[k].y;
  }
  const auto& last = history.back();
  d *= last.sy / last.y.squaredNorm();
  for (std::size_t k = 0; k < history.size(); ++k) {
    const double b = history[k].y.dot(d) / history[k].sy;
    d += (alpha[k] - b) * history[k].s;
  }
  return d;
}

}  // namespace

std::string to_string(OwlqnStatus s) {
  switch (s) {
    case OwlqnStatus::kConverged: return "converged";
    case OwlqnStatus::kMaxIterations: return "max_iterations";
    case OwlqnStatus::kLineSearchFailed: return "line_search_failed";
    case OwlqnStatus::kStalled: return "stalled";
  }
  return "unknown";
}

void L1Problem::validate() const {
  if (dim < 0) throw InvalidInput("L1Problem: negative dimension");
  if (l1_weights.size() != dim) throw InvalidInput("L1Problem: weights length != dim");
  if ((l1_weights.array() < 0.0).any() || !l1_weights.allFinite()) {
    throw InvalidInput("L1Problem: weights must be finite and nonnegative");
  }
  if (!smooth_eval) throw InvalidInput("L1Problem: missing smooth callback");
}

void OwlqnSettings::validate() const {
  if (memory <= 0 || max_iters <= 0 || max_line_search <= 0 || !(grad_tol > 0.0)) {
    throw InvalidInput("OwlqnSettings: memory, max_iters, max_line_search, grad_tol must be positive");
  }
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw InvalidInput("OwlqnSettings: backtrack_factor must lie in (0,1)");
  }
  if (!(armijo > 0.0 && armijo < 1.0) || rel_decrease_tol < 0.0) {
    throw InvalidInput("OwlqnSettings: invalid armijo or rel_decrease_tol");
  }
}

Vector pseudo_gradient(const Vector& v, const Vector& grad, const Vector& weights) {
  if (v.size() != grad.size() || v.size() != weights.size()) {
    throw InvalidInput("pseudo_gradient: length mismatch");
  }
  Vector pg(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double w = weights(i);
    if (v(i) > 0.0) {
      pg(i) = grad(i) + w;
    } else if (v(i) < 0.0) {
      pg(i) = grad(i) - w;
    } else if (grad(i) + w < 0.0) {
      pg(i) = grad(i) + w;
    } else if (grad(i) - w > 0.0) {
      pg(i) = grad(i) - w;
    } else {
      pg(i) = 0.0;
    }
  }
  return pg;
}

OwlqnResult minimize(const L1Problem& problem, const Vector& start, const OwlqnSettings& settings) {
  problem.validate();
  settings.validate();
  if (start.size() != problem.dim) throw InvalidInput("owlqn::minimize: start has wrong length");
  if (!start.allFinite()) throw InvalidInput("owlqn::minimize: start is not finite");

  const Vector& w = problem.l1_weights;
  OwlqnResult result;
  Vector x = start;
  SmoothValue sv = problem.smooth_eval(x);
  if (!std::isfinite(sv.value)) {
    throw InvalidInput("owlqn::minimize: smooth part is infinite at the start point");
  }
  double f = composite(sv.value, x, w);
  Vector g = sv.gradient;
  Vector pg = pseudo_gradient(x, g, w);
  result.trace.push_back(f);

  std::deque<CurvaturePair> history;
  OwlqnStatus status = OwlqnStatus::kMaxIterations;
  int iter = 0;

  for (; iter < settings.max_iters; ++iter) {
    if (problem.dim == 0 || pg.lpNorm<Eigen::Infinity>() <= settings.grad_tol) {
      status = OwlqnStatus::kConverged;
      break;
    }

    Vector d = lbfgs_direction(pg, history);
    for (Index i = 0; i < d.size(); ++i) {
      if (d(i) * pg(i) >= 0.0) d(i) = 0.0;
    }
    if (d.lpNorm<Eigen::Infinity>() == 0.0) {
      history.clear();
      d = -pg;
    }

    // Orthant of the step: sign of x, or of -pg where x is zero.
    Vector orthant(x.size());
    for (Index i = 0; i < x.size(); ++i) {
      orthant(i) = x(i) != 0.0 ? (x(i) > 0.0 ? 1.0 : -1.0) : (pg(i) < 0.0 ? 1.0 : (pg(i) > 0.0 ? -1.0 : 0.0));
    }

    double step = history.empty() ? std::min(1.0, 1.0 / pg.norm()) : 1.0;
    bool accepted = false;
    Vector x_new;
    SmoothValue sv_new;
    double f_new = 0.0;
    for (int ls = 0; ls < settings.max_line_search; ++ls, step *= settings.backtrack_factor) {
      x_new = x + step * d;
      for (Index i = 0; i < x_new.size(); ++i) {
        if (w(i) > 0.0 && x_new(i) * orthant(i) <= 0.0) x_new(i) = 0.0;
      }
      const Vector delta = x_new - x;
      if (delta.lpNorm<Eigen::Infinity>() == 0.0) break;
      sv_new = problem.smooth_eval(x_new);
      f_new = composite(sv_new.value, x_new, w);
      if (!std::isfinite(f_new)) continue;
      const double decrease = settings.armijo * pg.dot(delta);
      if (f_new <= f + decrease && f_new <= f) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      status = OwlqnStatus::kLineSearchFailed;
      break;
    }

    CurvaturePair cp{x_new - x, sv_new.gradient - g, 0.0};
    cp.sy = cp.s.dot(cp.y);
    const double f_old = f;
    x = std::move(x_new);
    f = f_new;
    g = std::move(sv_new.gradient);
    pg = pseudo_gradient(x, g, w);
    result.trace.push_back(f);

    if (cp.sy > 1e-12 * cp.y.squaredNorm() && cp.sy > 0.0) {
      history.push_back(std::move(cp));
      if (static_cast<int>(history.size()) > settings.memory) history.pop_front();
    }

    if (settings.rel_decrease_tol > 0.0 &&
        f_old - f <= settings.rel_decrease_tol * std::max(1.0, std::abs(f))) {
      ++iter;
      status = pg.lpNorm<Eigen::Infinity>() <= settings.grad_tol ? OwlqnStatus::kConverged
                                                                  : OwlqnStatus::kStalled;
      break;
    }
  }

  result.solution = std::move(x);
  result.value = f;
  result.iterations = iter;
  result.pseudo_grad_norm = problem.dim == 0 ? 0.0 : pg.lpNorm<Eigen::Infinity>();
  result.status = status;
  result.converged = status == OwlqnStatus::kConverged;
  return result;
}

}  // namespace gengm

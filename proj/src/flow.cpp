#include "nilsol/flow.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace nilsol {

const char* to_string(FlowOutcome o) {
  switch (o) {
    case FlowOutcome::ConvergedMinimal: return "converged_minimal";
    case FlowOutcome::ConvergedDistinguished: return "converged_distinguished";
    case FlowOutcome::Degenerated: return "degenerated";
    case FlowOutcome::StepLimit: return "step_limit";
  }
  return "?";
}

const char* to_string(LimitClass c) {
  switch (c) {
    case LimitClass::Minimal: return "minimal";
    case LimitClass::Distinguished: return "distinguished";
    case LimitClass::Degenerated: return "degenerated";
    case LimitClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

StructureTuple gradient(const StructureTuple& c, Group group) {
  return moment_action(c, group);
}

StructureTuple projected_gradient(const StructureTuple& c, Group group) {
  StructureTuple grad = moment_action(c, group);
  const double cc = c.squared_norm();
  if (cc > 0.0) grad -= (inner(grad, c) / cc) * c;
  return grad;
}

namespace {

constexpr double kTinyNorm = 1e-300;
constexpr double kLyapunovSlack = 1e-8;
constexpr int kMaxHalvings = 40;
constexpr double kGrowth = 1.5;
constexpr double kMaxStepFactor = 8.0;

struct StepStats {
  StructureTuple grad;
  double norm_c = 0.0;
  double norm_moment = 0.0;
  double radial = 0.0;          // least-squares r*
  double projected_norm = 0.0;  // ||grad - r* C||
};

StepStats step_stats(const StructureTuple& c, Group group) {
  StepStats s{moment_action(c, group)};
  s.norm_c = c.norm();
  s.norm_moment = moment_norm(c, group);
  const double cc = s.norm_c * s.norm_c;
  s.radial = inner(s.grad, c) / cc;
  s.projected_norm = (s.grad - s.radial * c).norm();
  return s;
}

// Negative (optionally sphere-projected) gradient of ||m_G||^2.
StructureTuple rhs(const StructureTuple& c, Group group, bool projected) {
  StructureTuple dir = projected ? projected_gradient(c, group) : moment_action(c, group);
  dir *= -1.0;
  return dir;
}

StructureTuple rk4_step(const StructureTuple& c, double dt, Group group, bool projected) {
  const StructureTuple k1 = rhs(c, group, projected);
  const StructureTuple k2 = rhs(c + (0.5 * dt) * k1, group, projected);
  const StructureTuple k3 = rhs(c + (0.5 * dt) * k2, group, projected);
  const StructureTuple k4 = rhs(c + dt * k3, group, projected);
  return c + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

class TupleSampler {
 public:
  explicit TupleSampler(int budget) : budget_(std::max(budget, 2)) {}

  void offer(int step, const StructureTuple& c, std::vector<std::pair<int, StructureTuple>>& out) {
    if (step % stride_ != 0) return;
    if (static_cast<int>(out.size()) >= budget_) {
      // Thin to every other sample and double the stride.
      std::vector<std::pair<int, StructureTuple>> kept;
      kept.reserve(out.size() / 2 + 1);
      for (std::size_t i = 0; i < out.size(); i += 2) kept.push_back(std::move(out[i]));
      out = std::move(kept);
      stride_ *= 2;
      if (step % stride_ != 0) return;
    }
    out.emplace_back(step, c);
  }

 private:
  int budget_;
  int stride_ = 1;
};

void check_config(const FlowConfig& cfg) {
  if (cfg.step <= 0.0) throw ParameterError("flow: step must be positive");
  if (cfg.conv_tol <= 0.0) throw ParameterError("flow: conv_tol must be positive");
  if (cfg.max_steps < 1) throw ParameterError("flow: max_steps must be at least 1");
  if (cfg.blowdown_tol <= 0.0) throw ParameterError("flow: blowdown_tol must be positive");
}

}  // namespace

FlowTrace integrate(const StructureTuple& c0, const FlowConfig& cfg) {
  check_config(cfg);
  if (c0.squared_norm() == 0.0)
    throw DegenerateInputError("flow: the zero tuple is degenerate");

  FlowTrace trace;
  trace.config = cfg;
  trace.initial_norm = c0.norm();
  trace.samples.reserve(static_cast<std::size_t>(std::min(cfg.max_steps + 1, 1 << 20)));

  TupleSampler sampler(cfg.max_tuple_samples);
  StructureTuple c = c0;
  double step_factor = 1.0;

  int step = 0;
  for (;; ++step) {
    const StepStats stats = step_stats(c, cfg.group);
    trace.samples.push_back({step, stats.norm_c,
                             stats.norm_moment,
                             stats.projected_norm /
                                 (stats.norm_c * (1.0 + std::abs(stats.radial)))});
    sampler.offer(step, c, trace.tuple_samples);

    // Plain mode evaluates the stopping measure at the tuple rescaled back
    // to the initial norm (gradient scales cubically, moment quadratically);
    // otherwise a collapsing ray would look converged long before the
    // blowdown threshold is reached.
    const double u2 = cfg.projected
                          ? 1.0
                          : (trace.initial_norm / stats.norm_c) * (trace.initial_norm / stats.norm_c);
    const double scale = stats.norm_c * (1.0 + u2 * stats.norm_moment);
    const double conv_norm = cfg.projected ? stats.projected_norm : stats.grad.norm();
    if (u2 * conv_norm / scale < cfg.conv_tol) {
      trace.outcome = u2 * stats.grad.norm() / scale < 10.0 * cfg.conv_tol
                          ? FlowOutcome::ConvergedMinimal
                          : FlowOutcome::ConvergedDistinguished;
      break;
    }
    if (!cfg.projected && stats.norm_c / trace.initial_norm < cfg.blowdown_tol) {
      trace.outcome = FlowOutcome::Degenerated;
      break;
    }
    if (step >= cfg.max_steps) {
      trace.outcome = FlowOutcome::StepLimit;
      break;
    }

    const double lyapunov = stats.norm_moment * stats.norm_moment;
    int halvings = 0;
    for (;;) {
      const double dt =
          step_factor * cfg.step / std::max(stats.norm_c * stats.norm_c, kTinyNorm);
      StructureTuple next = rk4_step(c, dt, cfg.group, cfg.projected);
      bool ok = next.all_finite();
      if (ok && cfg.projected) {
        const double n = next.norm();
        ok = n > 0.0;
        if (ok) next *= trace.initial_norm / n;
      }
      if (ok) {
        const double next_moment = moment_norm(next, cfg.group);
        const double next_lyapunov = next_moment * next_moment;
        ok = std::isfinite(next_lyapunov) &&
             next_lyapunov <= lyapunov + kLyapunovSlack * (1.0 + lyapunov);
      }
      if (ok) {
        c = std::move(next);
        step_factor = std::min(step_factor * kGrowth, kMaxStepFactor);
        break;
      }
      step_factor *= 0.5;
      if (++halvings > kMaxHalvings) {
        trace.final_state = c;
        trace.steps_taken = step;
        std::ostringstream os;
        os << "flow: ||m_G||^2 still increases after " << kMaxHalvings
           << " step halvings at step " << step << " (last good ||C|| = " << stats.norm_c
           << "); last good state attached";
        throw FlowError(os.str(), trace);
      }
    }
  }

  trace.final_state = c;
  trace.steps_taken = step;
  if (trace.tuple_samples.empty() || trace.tuple_samples.back().first != step)
    trace.tuple_samples.emplace_back(step, c);
  return trace;
}

LimitReport detect_limit(const FlowTrace& trace, double tol) {
  LimitReport report;
  const StructureTuple& c = trace.final_state;
  const StepStats stats = step_stats(c, trace.config.group);
  const double scale = stats.norm_c * (1.0 + stats.norm_moment);
  report.minimality_residual = stats.grad.norm() / scale;
  report.distinguished_residual = stats.projected_norm / scale;

  const Eigen::MatrixXd glq = moment_glq(c);
  const double glq_norm = glq.norm();
  if (glq_norm > 0.0) {
    const double mean = glq.trace() / static_cast<double>(c.q());
    report.scalar_moment_residual =
        (glq - mean * Eigen::MatrixXd::Identity(c.q(), c.q())).norm() / glq_norm;
  }

  if (trace.outcome == FlowOutcome::Degenerated)
    report.limit = LimitClass::Degenerated;
  else if (report.minimality_residual < tol)
    report.limit = LimitClass::Minimal;
  else if (report.distinguished_residual < tol)
    report.limit = LimitClass::Distinguished;
  else
    report.limit = LimitClass::Inconclusive;

  report.effective_p_end = validate(c).effective_p;
  report.effective_p_start = trace.tuple_samples.empty()
                                 ? report.effective_p_end
                                 : validate(trace.tuple_samples.front().second).effective_p;
  report.rank_preserved = report.effective_p_start == report.effective_p_end;
  return report;
}

void write_trace_csv(const FlowTrace& trace, std::ostream& out) {
  out << "step,norm_C,norm_mG,residual\n";
  char buf[128];
  for (const FlowSample& s : trace.samples) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", s.step, s.norm_c, s.norm_moment,
                  s.residual);
    out << buf;
  }
}

}  // namespace nilsol

#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "nilsol/moment.hpp"

namespace nilsol {

struct FlowConfig {
  Group group = Group::SLq;
  double step = 1e-3;          // dimensionless; dt = step / ||C||^2
  int max_steps = 200000;
  double conv_tol = 1e-9;
  bool projected = true;       // keep ||C|| fixed at ||C0||
  double blowdown_tol = 1e-6;  // plain mode: ||C||/||C0|| below this => degenerated
  int max_tuple_samples = 1000;
};

enum class FlowOutcome { ConvergedMinimal, ConvergedDistinguished, Degenerated, StepLimit };

const char* to_string(FlowOutcome o);

struct FlowSample {
  int step = 0;
  double norm_c = 0.0;
  double norm_moment = 0.0;
  double residual = 0.0;  // distinguished-point residual at this step
};

/// Record of one integration: per-step scalars, decimated tuple snapshots
/// (at most max_tuple_samples, uniform stride, step 0 always kept) and the
/// final state.
struct FlowTrace {
  FlowConfig config;
  FlowOutcome outcome = FlowOutcome::StepLimit;
  int steps_taken = 0;
  double initial_norm = 0.0;
  std::vector<FlowSample> samples;                         // one per step
  std::vector<std::pair<int, StructureTuple>> tuple_samples;
  StructureTuple final_state = StructureTuple::zero(1, 1);
};

/// Integration failed (persistent Lyapunov violation or non-finite state);
/// carries everything recorded up to the failure.
struct FlowError : Error {
  FlowError(const std::string& what, FlowTrace partial)
      : Error(what), trace(std::move(partial)) {}
  FlowTrace trace;
};

/// Gradient of ||m_G||^2 at C, i.e. m_G(C) . C (same as moment_action).
StructureTuple gradient(const StructureTuple& c, Group group);

/// Gradient minus its radial component <grad, C> C / ||C||^2; the direction
/// actually integrated in projected mode.
StructureTuple projected_gradient(const StructureTuple& c, Group group);

/// Runs the classical 4th-order explicit integration of
/// dC/dt = -(projected) m_G(C) . C with step halving whenever ||m_G||^2
/// increases beyond a per-step slack of 1e-8 (1 + ||m_G||^2); more than 40
/// consecutive halvings or a persistent non-finite state aborts with
/// FlowError.  Projected mode renormalizes ||C|| to ||C0|| after every step.
FlowTrace integrate(const StructureTuple& c0, const FlowConfig& cfg);

enum class LimitClass { Minimal, Distinguished, Degenerated, Inconclusive };

const char* to_string(LimitClass c);

struct LimitReport {
  LimitClass limit = LimitClass::Inconclusive;
  double minimality_residual = 0.0;     // ||grad|| / (||C|| (1 + ||m_G||))
  double distinguished_residual = 0.0;  // same with the projected gradient
  double scalar_moment_residual = 0.0;  // ||m1 - (tr m1 / q) Id|| / ||m1||
  bool rank_preserved = false;
  int effective_p_start = 0;
  int effective_p_end = 0;
};

/// Classifies the end state of a trace: minimal (gradient ~ 0),
/// distinguished (projected gradient ~ 0, radial part not), degenerated, or
/// inconclusive.  The minimality and scalar-moment residuals are reported
/// independently; neither is inferred from the other.
LimitReport detect_limit(const FlowTrace& trace, double tol);

/// CSV columns: step, norm_C, norm_mG, residual; header row included.
void write_trace_csv(const FlowTrace& trace, std::ostream& out);

}  // namespace nilsol

// Copyright 2026 The qillum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qillum/sweep.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qillum/errors.h"

namespace qillum {
namespace {

constexpr double kOptimalMatchTol = 1e-6;

std::string mc_normalization(const RunConfig& cfg) {
  return std::string(to_string(cfg.estimate.denominator));
}

SweepRow analytic_row(std::string kind, double value, const RunConfig& cfg,
                      const PolPathState& scene) {
  const SchemeConfig& sc = cfg.experiment.scheme;
  SweepRow row;
  row.sweep_kind = std::move(kind);
  row.sweep_value = value;
  row.scheme = sc.scheme;
  row.convention = sc.convention;
  row.normalization = std::string(to_string(sc.normalization));
  row.quad = cfg.fixed_quad ? cfg.experiment.angle_quad
                            : optimize_angles(scene, sc, cfg.resolution).quad;
  row.e = correlations(scene, row.quad, sc);
  row.s = chsh_combination(row.e);
  return row;
}

SweepRow montecarlo_row(std::string kind, double value,
                        const ExperimentConfig& x, const RunConfig& cfg) {
  const SEstimate est = estimate_S(x, cfg.estimate);
  SweepRow row;
  row.sweep_kind = std::move(kind);
  row.sweep_value = value;
  row.scheme = x.scheme.scheme;
  row.convention = x.scheme.convention;
  row.normalization = mc_normalization(cfg);
  row.s = est.s_hat;
  row.s_sigma = est.sigma;
  row.quad = x.angle_quad;
  row.e = est.e_hat;
  row.seed = x.seed;
  return row;
}

bool wants_analytic(Engines e) { return e != Engines::montecarlo; }
bool wants_montecarlo(Engines e) { return e != Engines::analytic; }

// Quad used by Monte Carlo rows: the fixed one, or the analytic optimum of
// the noiseless scene.
AngleQuad mc_quad(const RunConfig& cfg, const PolPathState& scene) {
  if (cfg.fixed_quad) return cfg.experiment.angle_quad;
  return optimize_angles(scene, cfg.experiment.scheme, cfg.resolution).quad;
}

void require_in(double v, double lo, double hi, bool lo_open,
                const char* what) {
  const bool ok = (lo_open ? v > lo : v >= lo) && v <= hi && std::isfinite(v);
  if (!ok) {
    std::ostringstream msg;
    msg << what << " grid value " << v << " outside " << (lo_open ? "(" : "[")
        << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
}

}  // namespace

std::string_view to_string(SweepKind k) {
  switch (k) {
    case SweepKind::eta: return "eta";
    case SweepKind::noise: return "noise";
    case SweepKind::visibility: return "visibility";
    case SweepKind::angle_audit: return "angle_audit";
  }
  return "?";
}

void validate_sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) throw DomainError("sweep grid is empty");
  if (spec.grid.size() > 1) {
    const bool up = spec.grid[1] > spec.grid[0];
    for (std::size_t i = 1; i < spec.grid.size(); ++i) {
      const bool step_up = spec.grid[i] > spec.grid[i - 1];
      if (spec.grid[i] == spec.grid[i - 1] || step_up != up) {
        throw DomainError("sweep grid must be strictly monotone");
      }
    }
  }
  spec.base.experiment.validate();
  for (double v : spec.grid) {
    switch (spec.kind) {
      case SweepKind::eta: require_in(v, 0.0, 1.0, false, "eta"); break;
      case SweepKind::noise:
        require_in(v, 0.0, 1.0, true, "signal fraction");
        break;
      case SweepKind::visibility:
        require_in(v, 0.0, 1.0, false, "visibility");
        break;
      case SweepKind::angle_audit:
        require_in(v, 0.0, 1.0, false, "eta");
        break;
    }
  }
  if (spec.kind == SweepKind::visibility && spec.base.experiment.eta == 0.0) {
    throw DomainError("visibility sweep needs eta > 0");
  }
  if (wants_montecarlo(spec.base.engines) && spec.base.estimate.repeats < 1) {
    throw DomainError("repeats must be >= 1");
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate_sweep(spec);
  const RunConfig& base = spec.base;
  const ExperimentConfig& bx = base.experiment;
  const std::string kind(to_string(spec.kind));
  const std::string kind_mc = kind + "_mc";
  std::vector<SweepRow> rows;

  switch (spec.kind) {
    case SweepKind::eta:
      for (double eta : spec.grid) {
        const PolPathState scene = entangled_scene(eta, bx.depolarization_p);
        if (wants_analytic(base.engines)) {
          rows.push_back(analytic_row(kind, eta, base, scene));
        }
        if (wants_montecarlo(base.engines)) {
          ExperimentConfig x = bx;
          x.eta = eta;
          x.angle_quad = mc_quad(base, scene);
          rows.push_back(montecarlo_row(kind_mc, eta, x, base));
        }
      }
      break;

    case SweepKind::noise: {
      const PolPathState signal = entangled_scene(bx.eta, bx.depolarization_p);
      const AngleQuad quad = wants_montecarlo(base.engines)
                                 ? mc_quad(base, signal)
                                 : bx.angle_quad;
      for (double fraction : spec.grid) {
        if (wants_analytic(base.engines)) {
          const PolPathState scene =
              thermal_mixture(signal, 1.0 - fraction, bx.scheme.scheme);
          rows.push_back(analytic_row(kind, fraction, base, scene));
        }
        if (wants_montecarlo(base.engines)) {
          ExperimentConfig x = bx;
          x.angle_quad = quad;
          x.noise_rate = signal_fraction_to_noise_rate(x, fraction).noise_rate;
          rows.push_back(montecarlo_row(kind_mc, fraction, x, base));
        }
      }
      break;
    }

    case SweepKind::visibility: {
      const VisibilityMap map(bx.eta);
      for (double v : spec.grid) {
        const double p = map.depolarization_for(v);
        const PolPathState scene = entangled_scene(bx.eta, p);
        if (wants_analytic(base.engines)) {
          rows.push_back(analytic_row(kind, v, base, scene));
        }
        if (wants_montecarlo(base.engines)) {
          ExperimentConfig x = bx;
          x.depolarization_p = p;
          x.angle_quad = mc_quad(base, scene);
          rows.push_back(montecarlo_row(kind_mc, v, x, base));
        }
      }
      break;
    }

    case SweepKind::angle_audit: {
      AuditReport report = angle_audit(bx.scheme.scheme, base.resolution);
      rows = audit_rows(report);
      break;
    }
  }
  return rows;
}

SweepRow mc_run(const RunConfig& cfg) {
  ExperimentConfig x = cfg.experiment;
  x.validate();
  if (!cfg.fixed_quad) {
    x.angle_quad = optimize_angles(entangled_scene(x.eta, x.depolarization_p),
                                   x.scheme, cfg.resolution)
                       .quad;
  }
  double value = x.eta;
  if (cfg.signal_fraction) {
    x.noise_rate = signal_fraction_to_noise_rate(x, *cfg.signal_fraction).noise_rate;
    value = *cfg.signal_fraction;
  }
  return montecarlo_row("mc_run", value, x, cfg);
}

AuditReport angle_audit(Scheme scheme, double resolution) {
  AuditReport report;
  report.scheme = scheme;
  for (double eta : kAuditEtas) {
    const PolPathState scene = entangled_scene(eta);
    const PolPathState classical = classical_scene(eta);
    const PolPathState classical_raw = make_classical_state();
    for (auto conv : {WaveplateConvention::rotation,
                      WaveplateConvention::hwp_reflection}) {
      for (auto norm : {Normalization::per_trial, Normalization::post_selected}) {
        AuditEntry entry;
        entry.eta = eta;
        entry.scheme = {scheme, conv, norm};
        entry.e_quoted = correlations(scene, kQuotedQuad, entry.scheme);
        entry.s_quoted = chsh_combination(entry.e_quoted);
        entry.optimum = optimize_angles(scene, entry.scheme, resolution);
        entry.e_optimum = correlations(scene, entry.optimum.quad, entry.scheme);
        entry.s_classical = chsh_S(classical, entry.optimum.quad, entry.scheme);
        entry.s_classical_raw =
            chsh_S(classical_raw, entry.optimum.quad, entry.scheme);
        entry.quoted_quad_optimal =
            std::abs(entry.s_quoted - entry.optimum.s_max) < kOptimalMatchTol;
        report.entries.push_back(entry);
      }
    }
  }
  return report;
}

std::string render_audit(const AuditReport& report) {
  std::ostringstream out;
  char buf[256];
  out << "angle audit, scheme " << to_string(report.scheme) << "\n";
  out << "quoted quad (theta, delta, theta', delta') = (0, pi/16, 3pi/16, "
         "5pi/16); HWP angles (0, pi/32, 3pi/32, 5pi/32)\n";
  out << "  eta  convention  normalization   S(quoted)  S(optimizer)  "
         "optimizer quad / pi                 S(classical)  S(classical,raw)  "
         "quoted optimal?\n";
  for (const AuditEntry& e : report.entries) {
    const AngleQuad& q = e.optimum.quad;
    const double pi = std::numbers::pi;
    std::snprintf(buf, sizeof buf,
                  "  %-4.2g %-11s %-14s %10.6f %13.9f  (%.5f, %.5f, %.5f, "
                  "%.5f)  %12.6f %17.6f  %s\n",
                  e.eta, std::string(to_string(e.scheme.convention)).c_str(),
                  std::string(to_string(e.scheme.normalization)).c_str(),
                  e.s_quoted, e.optimum.s_max, q.theta / pi, q.delta / pi,
                  q.theta_p / pi, q.delta_p / pi, e.s_classical,
                  e.s_classical_raw, e.quoted_quad_optimal ? "yes" : "NO");
    out << buf;
  }
  std::size_t non_optimal = 0;
  for (const AuditEntry& e : report.entries) non_optimal += !e.quoted_quad_optimal;
  out << non_optimal << " of " << report.entries.size()
      << " combinations: quoted quad is not optimal under the literal "
         "receiver equations\n";
  return out.str();
}

std::vector<SweepRow> audit_rows(const AuditReport& report) {
  std::vector<SweepRow> rows;
  for (const AuditEntry& e : report.entries) {
    SweepRow base;
    base.sweep_value = e.eta;
    base.scheme = e.scheme.scheme;
    base.convention = e.scheme.convention;
    base.normalization = std::string(to_string(e.scheme.normalization));

    SweepRow quoted = base;
    quoted.sweep_kind = "angle_audit_quoted";
    quoted.s = e.s_quoted;
    quoted.quad = kQuotedQuad;
    quoted.e = e.e_quoted;
    rows.push_back(quoted);

    SweepRow opt = base;
    opt.sweep_kind = "angle_audit_optimizer";
    opt.s = e.optimum.s_max;
    opt.quad = e.optimum.quad;
    opt.e = e.e_optimum;
    rows.push_back(opt);

    SweepRow classical = base;
    classical.sweep_kind = "angle_audit_classical";
    classical.s = e.s_classical;
    classical.quad = e.optimum.quad;
    classical.e = correlations(classical_scene(e.eta), e.optimum.quad, e.scheme);
    rows.push_back(classical);
  }
  return rows;
}

}  // namespace qillum

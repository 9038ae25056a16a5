#include "euler/advect.hpp"

#include <algorithm>
#include <cmath>

#include "euler/errors.hpp"

namespace euler::advect {

using field::VortexField;

double polygon_area(const std::vector<Complex>& pts) {
  if (pts.size() < 3) return 0.0;
  KahanSum acc;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex& a = pts[i];
    const Complex& b = pts[(i + 1) % pts.size()];
    acc.add(a.real() * b.imag() - b.real() * a.imag());
  }
  return 0.5 * std::abs(acc.value());
}

namespace {

// Velocity evaluator over the full coupled system: entity positions are the
// staged values, circulation weights stay frozen.  Exited entities keep
// velocity zero but remain sources.
class Stepper {
 public:
  Stepper(const conf::ConformalMap& map, const VortexField& f, double exit_tol,
          double direction, const std::vector<char>* frozen)
      : map_(map), exit_tol_(exit_tol), dir_(direction), frozen_(frozen) {
    n_part_ = f.particles.size();
    n_total_ = n_part_ + f.tracers.size();
    w_.resize(n_part_);
    eps2_.resize(n_part_);
    for (std::size_t j = 0; j < n_part_; ++j) {
      w_[j] = f.particles[j].w;
      eps2_[j] = f.particles[j].eps * f.particles[j].eps;
    }
  }

  std::size_t total() const { return n_total_; }

  bool is_frozen(std::size_t i) const { return frozen_ && (*frozen_)[i]; }

  void check_inside(const std::vector<Complex>& pos) const {
    for (std::size_t i = 0; i < n_total_; ++i) {
      if (is_frozen(i)) continue;
      if (std::abs(pos[i]) >= 1.0 - exit_tol_)
        throw ParticleExited(static_cast<int>(i), std::abs(pos[i]));
    }
  }

  void velocities(const std::vector<Complex>& pos, std::vector<Complex>& out) const {
    check_inside(pos);
    img_.resize(n_part_);
    has_img_.resize(n_part_);
    for (std::size_t j = 0; j < n_part_; ++j) {
      has_img_[j] = pos[j] != Complex(0, 0);
      img_[j] = has_img_[j] ? circle_image(pos[j]) : Complex(0, 0);
    }
    out.resize(n_total_);
    for (std::size_t i = 0; i < n_total_; ++i) {
      if (is_frozen(i)) {
        out[i] = Complex(0, 0);
        continue;
      }
      const Complex xi = pos[i];
      KahanComplex acc;
      for (std::size_t j = 0; j < n_part_; ++j) {
        Complex d = xi - pos[j];
        Complex direct = d / (abs2(d) + eps2_[j]);
        if (has_img_[j]) {
          Complex ds = xi - img_[j];
          direct -= ds / abs2(ds);
        }
        acc.add(w_[j] * direct);
      }
      Complex r = perp(acc.value());
      out[i] = dir_ * r / (kTwoPi * map_.det_ds(xi));
    }
  }

 private:
  const conf::ConformalMap& map_;
  double exit_tol_;
  double dir_;
  const std::vector<char>* frozen_;
  std::size_t n_part_ = 0, n_total_ = 0;
  std::vector<double> w_, eps2_;
  mutable std::vector<Complex> img_;
  mutable std::vector<char> has_img_;
};

std::vector<Complex> gather_positions(const VortexField& f) {
  std::vector<Complex> pos;
  pos.reserve(f.particles.size() + f.tracers.size());
  for (const auto& p : f.particles) pos.push_back(p.z);
  for (const auto& t : f.tracers) pos.push_back(t);
  return pos;
}

void scatter_positions(VortexField& f, const std::vector<Complex>& pos) {
  std::size_t n = f.particles.size();
  for (std::size_t i = 0; i < n; ++i) f.particles[i].z = pos[i];
  for (std::size_t i = 0; i < f.tracers.size(); ++i) f.tracers[i] = pos[n + i];
}

// One RK4 step on the coupled system; throws ParticleExited on any stage.
// stage1, when provided, is the already-evaluated velocity at pos.
void rk4_step(const Stepper& st, std::vector<Complex>& pos, double dt,
              const std::vector<Complex>* stage1 = nullptr) {
  const std::size_t n = pos.size();
  std::vector<Complex> k1, k2, k3, k4, staged(n);
  if (stage1)
    k1 = *stage1;
  else
    st.velocities(pos, k1);
  for (std::size_t i = 0; i < n; ++i) staged[i] = pos[i] + 0.5 * dt * k1[i];
  st.velocities(staged, k2);
  for (std::size_t i = 0; i < n; ++i) staged[i] = pos[i] + 0.5 * dt * k2[i];
  st.velocities(staged, k3);
  for (std::size_t i = 0; i < n; ++i) staged[i] = pos[i] + dt * k3[i];
  st.velocities(staged, k4);
  for (std::size_t i = 0; i < n; ++i)
    staged[i] = pos[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  st.check_inside(staged);
  pos.swap(staged);
}

}  // namespace

field::VortexField step(const conf::ConformalMap& map, const VortexField& f, double dt,
                        double exit_tol) {
  if (!(dt > 0.0)) throw Error("BadStep", "dt must be positive");
  Stepper st(map, f, exit_tol, +1.0, nullptr);
  auto pos = gather_positions(f);
  rk4_step(st, pos, dt);
  VortexField out = f;
  scatter_positions(out, pos);
  return out;
}

static SimResult run(const conf::ConformalMap& map, const VortexField& f0,
                     const SimConfig& cfg, double direction) {
  SimResult result;
  result.final_field = f0;
  VortexField& f = result.final_field;

  const std::size_t n_part = f.particles.size();
  const std::size_t n_total = n_part + f.tracers.size();
  std::vector<char> frozen(n_total, 0);
  Stepper st(map, f, cfg.exit_tol, direction, &frozen);

  auto pos = gather_positions(f);
  result.trajectories.resize(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    auto& tr = result.trajectories[i];
    tr.id = static_cast<int>(i);
    tr.is_tracer = i >= n_part;
    tr.start_time = 0.0;
    tr.start_z = pos[i];
  }

  auto record = [&](double t) {
    scatter_positions(f, pos);
    std::vector<Complex> pvel;
    if (cfg.record_q) pvel = field::particle_disc_velocities(map, f);

    double min_gap = 1.0;
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < n_total; ++i) {
      double gap = 1.0 - std::abs(pos[i]);
      if (gap < min_gap) {
        min_gap = gap;
        argmin = i;
      }
    }

    for (std::size_t i = 0; i < n_total; ++i) {
      TrajSample s;
      s.t = t;
      s.z = pos[i];
      s.one_minus_abs_z = 1.0 - std::abs(pos[i]);
      s.phys_dist_est = s.one_minus_abs_z * std::abs(map.sprime(pos[i]));
      s.psi = field::stream_disc(f, pos[i]);
      if (cfg.record_x) s.x = map.eval_s(pos[i]);
      if (cfg.record_q) s.q = field::q_field_disc(f, pvel, pos[i]);
      result.trajectories[i].samples.push_back(s);
    }

    ConservationRow row;
    row.t = t;
    KahanSum sw;
    for (const auto& p : f.particles) sw.add(p.w);
    row.sum_w = sw.value();
    if (f.ring_offset >= 0 && f.ring_count >= 3) {
      std::vector<Complex> ring(f.tracers.begin() + f.ring_offset,
                                f.tracers.begin() + f.ring_offset + f.ring_count);
      row.ring_area = polygon_area(ring);
      row.has_ring = true;
    }
    row.min_gap = min_gap;
    row.min_phys_dist_est = min_gap * std::abs(map.sprime(pos[argmin]));
    result.conservation.push_back(row);
  };

  double t = 0.0;
  record(t);
  double next_sample = cfg.sample_dt;

  auto freeze = [&](std::size_t i) {
    frozen[i] = 1;
    result.trajectories[i].status = Trajectory::Status::exited;
    ++result.collapse_events;
  };

  while (t < cfg.t_end - 1e-14) {
    // entities already at the exit threshold can never step: freeze them up front
    for (std::size_t i = 0; i < n_total; ++i)
      if (!frozen[i] && std::abs(pos[i]) >= 1.0 - cfg.exit_tol) freeze(i);

    // boundary-proximity clamp, recomputed each step from the current state;
    // the same velocity evaluation doubles as RK stage 1
    std::vector<Complex> v0;
    st.velocities(pos, v0);
    double min_gap = 1.0, vmax = 0.0;
    for (std::size_t i = 0; i < n_total; ++i) {
      if (frozen[i]) continue;
      min_gap = std::min(min_gap, 1.0 - std::abs(pos[i]));
      vmax = std::max(vmax, std::abs(v0[i]));
    }
    double clamp = vmax > 0.0 ? cfg.cfl * min_gap / vmax : 1e300;
    double dt = std::min({cfg.dt0, clamp, cfg.t_end - t, next_sample - t});
    dt = std::max(dt, 0.0);
    if (dt == 0.0) dt = std::min(cfg.dt0, clamp);

    double dt_try = dt;
    while (true) {
      try {
        std::vector<Complex> trial = pos;
        rk4_step(st, trial, dt_try, &v0);
        pos.swap(trial);
        if (clamp < 1e299)
          result.max_dt_over_clamp = std::max(result.max_dt_over_clamp, dt_try / clamp);
        break;
      } catch (const ParticleExited& e) {
        dt_try *= 0.5;
        if (dt_try < cfg.collapse_dt) {
          // This trajectory is numerically reaching the boundary: freeze it,
          // keep it as a source, and continue the run for the rest.
          freeze(static_cast<std::size_t>(e.index()));
          dt_try = dt;
          st.velocities(pos, v0);  // refresh stage 1 with the frozen set
        }
      }
    }
    t += dt_try;

    if (t >= next_sample - 1e-12 || t >= cfg.t_end - 1e-14) {
      record(t);
      while (next_sample <= t + 1e-12) next_sample += cfg.sample_dt;
    }
  }

  scatter_positions(f, pos);
  for (std::size_t i = 0; i < n_total; ++i) {
    auto& tr = result.trajectories[i];
    if (frozen[i] || 1.0 - std::abs(pos[i]) <= cfg.exit_tol)
      tr.status = Trajectory::Status::exited;
    if (tr.status == Trajectory::Status::exited) ++result.exited_count;
  }
  return result;
}

SimResult simulate(const conf::ConformalMap& map, const VortexField& f0,
                   const SimConfig& cfg) {
  return run(map, f0, cfg, +1.0);
}

SimResult backward_simulate(const conf::ConformalMap& map, const VortexField& f0,
                            const SimConfig& cfg) {
  return run(map, f0, cfg, -1.0);
}

}  // namespace euler::advect

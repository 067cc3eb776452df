#include <sstream>
#include <stdexcept>

#include "hopkit/training/training.hpp"

namespace hopkit {

void DistillConfig::validate() const {
  if (!(0 < stage2_start && stage2_start < stage3_start && stage3_start < stage4_start)) {
    throw std::invalid_argument("distillation stage boundaries must be increasing");
  }
  if (ev_consecutive < 1 || ev_window < 1) {
    throw std::invalid_argument("EV gate needs >= 1 reading and window >= 1");
  }
}

bool ev_gate_open(std::span<const double> ev, const DistillConfig& cfg) {
  int run = 0;
  for (double v : ev) {
    run = v > cfg.ev_threshold ? run + 1 : 0;
    if (run >= cfg.ev_consecutive) return true;
  }
  return false;
}

DistillDecision distill_schedule(const DistillState& s, const DistillConfig& cfg) {
  if (s.epoch < 0) throw std::invalid_argument("epoch must be >= 0");
  DistillDecision d;
  if (s.epoch < cfg.stage2_start) {
    d.stage = 1;
    d.teacher_probability = 1.0;
    d.weights = {1.0, 0.0, 0.0, 0.0};
  } else if (s.epoch < cfg.stage3_start) {
    d.stage = 2;
    d.teacher_probability = static_cast<double>(cfg.stage3_start - s.epoch) /
                            static_cast<double>(cfg.stage3_start - cfg.stage2_start);
    d.weights = {1.0, 0.0, 0.0, 0.0};
  } else if (s.epoch < cfg.stage4_start) {
    d.stage = 3;
    d.teacher_probability = 0.0;
    d.weights = cfg.stage3;
    d.policy_gradient_active = ev_gate_open(s.ev_history, cfg);
    if (!d.policy_gradient_active) d.weights.policy_gradient = 0.0;
  } else {
    d.stage = 4;
    d.teacher_probability = 0.0;
    d.weights = cfg.stage4;
    d.policy_gradient_active = true;
  }
  return d;
}

std::string schedule_csv(long first, long last, long step, std::span<const double> ev,
                         const DistillConfig& cfg) {
  if (first < 0 || step < 1 || last < first) throw std::invalid_argument("bad epoch range");
  std::ostringstream out;
  out.precision(17);
  out << "epoch,stage,teacher_prob,expert,policy_gradient,value,boundary\n";
  for (long e = first; e <= last; e += step) {
    DistillState s{e, {}};
    // Readings for windows completed by this epoch, counted from stage III.
    if (e >= cfg.stage3_start) {
      const auto n = static_cast<std::size_t>((e - cfg.stage3_start) / cfg.ev_window);
      s.ev_history.assign(ev.begin(), ev.begin() + static_cast<long>(std::min(n, ev.size())));
    }
    const DistillDecision d = distill_schedule(s, cfg);
    out << e << ',' << d.stage << ',' << d.teacher_probability << ',' << d.weights.expert << ','
        << d.weights.policy_gradient << ',' << d.weights.value << ',' << d.weights.boundary << '\n';
  }
  return out.str();
}

}  // namespace hopkit

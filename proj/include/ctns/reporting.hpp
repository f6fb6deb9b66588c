#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ctns/config.hpp"
#include "ctns/littlewood_paley.hpp"
#include "ctns/monitor.hpp"
#include "ctns/snapshot.hpp"

namespace ctns {

namespace detail {

inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline const char* diagnostics_csv_header() {
  return "t,Lambda_u,Q_u,Lambda_c,Q_c,f,f_grad_c_part,f_besov_u_part,f_integral_to_t,"
         "I,II,III,IV,V,VI,D_n,D_c,D_u,residual_n,residual_c,residual_u,"
         "mass_n,max_c,energy_u,neg_n_frac";
}

inline std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  using detail::fmt_g17;
  std::string row;
  row += fmt_g17(r.time);
  row += "," + fmt_g17(r.lambda_u) + "," + std::to_string(r.q_u);
  row += "," + fmt_g17(r.lambda_c) + "," + std::to_string(r.q_c);
  row += "," + fmt_g17(r.f_value) + "," + fmt_g17(r.f_grad_c) + "," + fmt_g17(r.f_besov_u);
  row += "," + fmt_g17(r.f_integral);
  row += "," + fmt_g17(r.term_I) + "," + fmt_g17(r.term_II) + "," + fmt_g17(r.term_III);
  row += "," + fmt_g17(r.term_IV) + "," + fmt_g17(r.term_V) + "," + fmt_g17(r.term_VI);
  row += "," + fmt_g17(r.diss_n) + "," + fmt_g17(r.diss_c) + "," + fmt_g17(r.diss_u);
  row += "," + fmt_g17(r.residual_n) + "," + fmt_g17(r.residual_c) + "," + fmt_g17(r.residual_u);
  row += "," + fmt_g17(r.mass_n) + "," + fmt_g17(r.max_c) + "," + fmt_g17(r.energy_u);
  row += "," + fmt_g17(r.neg_n_frac);
  return row;
}

class DiagnosticsCsvWriter {
 public:
  explicit DiagnosticsCsvWriter(const std::string& path) : os_(path) {
    if (!os_) throw io_error("csv: cannot open " + path + " for writing");
    os_ << diagnostics_csv_header() << "\n";
  }

  void write(const DiagnosticsRecord& r) {
    os_ << diagnostics_csv_row(r) << "\n";
    if (!os_) throw io_error("csv: write failed");
  }

  void flush() { os_.flush(); }

 private:
  std::ofstream os_;
};

inline void write_shell_spectrum_csv(std::ostream& os, const std::string& field_name,
                                     const std::vector<ShellSpectrumRow>& rows) {
  os << "# field = " << field_name << "\n";
  os << "q,lambda_q,l2_norm,linf_norm,lr_norm\n";
  for (const auto& r : rows)
    os << r.q << "," << detail::fmt_g17(r.lambda) << "," << detail::fmt_g17(r.l2) << ","
       << detail::fmt_g17(r.linf) << "," << detail::fmt_g17(r.lr) << "\n";
}

/// Run summary: flat key-value echo of the configuration plus final and
/// extremal diagnostics. The critical Sobolev indices of the system are
/// listed for reference alongside the monitor parameters.
inline void write_run_summary(const std::string& path, const std::string& status,
                              const RunConfig& cfg, const std::vector<DiagnosticsRecord>& recs,
                              const std::vector<std::string>& warnings) {
  std::ofstream os(path);
  if (!os) throw io_error("summary: cannot open " + path + " for writing");
  using detail::fmt_g17;
  os << "status = " << status << "\n";
  os << "grid.dim = " << cfg.dim << "\n";
  os << "grid.n = " << cfg.n << "\n";
  const ModelParams p = cfg.model_params();
  os << "model.chi = " << fmt_g17(p.chi) << "\n";
  os << "model.grav =";
  for (int d = 0; d < cfg.dim; ++d) os << (d ? "," : " ") << fmt_g17(p.grav[d]);
  os << "\n";
  os << "integrator.dt = " << fmt_g17(cfg.dt) << "\n";
  os << "integrator.t_end = " << fmt_g17(cfg.t_end) << "\n";
  os << "monitor.C0 = " << fmt_g17(cfg.monitor.C0) << "\n";
  os << "monitor.r = " << fmt_g17(cfg.monitor.r) << "\n";
  os << "monitor.s = " << fmt_g17(cfg.monitor.s) << "\n";
  os << "monitor.eps = " << fmt_g17(cfg.monitor.eps) << "\n";
  os << "monitor.cadence = " << cfg.cadence << "\n";
  os << "ic.preset = " << cfg.ic.preset << "\n";
  os << "ic.amplitude = " << fmt_g17(cfg.ic.amplitude) << "\n";
  os << "ic.seed = " << cfg.ic.seed << "\n";
  os << "critical_index_n = -0.5\n";
  os << "critical_index_u = 0.5\n";
  os << "critical_index_c = 1.5\n";

  if (!recs.empty()) {
    const auto ci = criterion_integral(recs);
    const auto cons = conservation_report(recs);
    const auto lb = wavenumber_log_bound(recs);
    int max_qu = 0, max_qc = 0;
    bool separation = true;
    for (const auto& r : recs) {
      max_qu = std::max(max_qu, r.q_u);
      max_qc = std::max(max_qc, r.q_c);
      separation = separation && r.separation_ok;
    }
    const auto& last = recs.back();
    os << "records = " << recs.size() << "\n";
    os << "final.time = " << fmt_g17(last.time) << "\n";
    os << "final.f = " << fmt_g17(last.f_value) << "\n";
    os << "final.mass_n = " << fmt_g17(last.mass_n) << "\n";
    os << "final.max_c = " << fmt_g17(last.max_c) << "\n";
    os << "final.energy_u = " << fmt_g17(last.energy_u) << "\n";
    os << "f.max = " << fmt_g17(ci.max_f) << "\n";
    os << "f.integral = " << fmt_g17(ci.integral) << "\n";
    os << "Q_u.max = " << max_qu << "\n";
    os << "Q_c.max = " << max_qc << "\n";
    os << "separation_ok = " << (separation ? "true" : "false") << "\n";
    os << "log_bound.max_ratio = " << fmt_g17(lb.max_ratio) << "\n";
    os << "mass_n.initial = " << fmt_g17(cons.mass_initial) << "\n";
    os << "mass_n.max_drift = " << fmt_g17(cons.mass_max_drift) << "\n";
    os << "max_c.step_increase = " << fmt_g17(cons.max_c_step_increase) << "\n";
    os << "neg_n_frac.max = " << fmt_g17(cons.max_neg_n_fraction) << "\n";
    os << "div_u.max = " << fmt_g17(cons.max_div_u) << "\n";
  } else {
    os << "records = 0\n";
  }
  for (std::size_t i = 0; i < warnings.size(); ++i)
    os << "warning." << i << " = " << warnings[i] << "\n";
  if (!os) throw io_error("summary: write failed on " + path);
}

}  // namespace ctns

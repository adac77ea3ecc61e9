// nsgframe: command-line front end for the nsg library.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "nsg/nsg.hpp"

using namespace nsg;
using nsg::io::json;

namespace {

enum Exit { ok = 0, check_failed = 1, parse = 2, dimension = 3, not_a_frame = 4, existence = 5 };

struct RunConfig {
  std::string system;
  std::string dual;
  std::string signal;
  std::string coeffs;
  std::string out;
  std::string grid;
  std::string report;
  std::string bounds = "auto";
  std::string mode = "canonical";
  double tol = 1e-12;
  double defect_tol = 1e-10;
  Index max_terms = 100000;
  bool canonical = false;
};

void row(const std::string& key, const std::string& value) {
  std::printf("  %-24s %s\n", key.c_str(), value.c_str());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void emit(const RunConfig& cfg, json j) {
  if (cfg.report.empty()) return;
  io::write_json(cfg.report, j);
}

BoundsMethod bounds_method(const std::string& s) {
  if (s == "oracle") return BoundsMethod::oracle;
  if (s == "power") return BoundsMethod::power_iteration;
  return BoundsMethod::automatic;
}

struct Inverse {
  WalnutOperator op;
  std::optional<NeumannReport> neumann;
  FrameBounds bounds;
};

/// S^{-1}: divides by the diagonal for painless systems, Neumann otherwise.
Inverse invert_frame_operator(const NsgSystem& s, const RunConfig& cfg) {
  Inverse inv;
  if (classify(s).painless) {
    const RVec diag = painless_diagonal(s);
    inv.op = WalnutOperator(s.L());
    CVec& band = inv.op.band(0);
    for (Index l = 0; l < s.L(); ++l) band[l] = 1.0 / diag[l];
    inv.bounds.A = *std::min_element(diag.begin(), diag.end());
    inv.bounds.B = *std::max_element(diag.begin(), diag.end());
    return inv;
  }
  inv.bounds = frame_bounds(s, bounds_method(cfg.bounds));
  NeumannOptions no;
  no.tol = cfg.tol;
  no.max_terms = cfg.max_terms;
  NeumannResult r = neumann_inverse(assemble(s, s), inv.bounds.A, inv.bounds.B, no);
  inv.op = std::move(r.inverse);
  inv.neumann = std::move(r.report);
  return inv;
}

double relative_error(const Signal& got, const Signal& want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    num += std::norm(got[i] - want[i]);
    den += std::norm(want[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

int cmd_validate(const RunConfig& cfg) {
  const NsgSystem s = io::read_system(cfg.system);
  const RegimeReport r = classify(s);
  const LemmaReport lemma = verify_interval_lemma(s);
  std::printf("system %s: L = %lld, N = %lld, channels = %lld\n", cfg.system.c_str(),
              static_cast<long long>(s.L()), static_cast<long long>(s.size()),
              static_cast<long long>(s.total_channels()));
  row("painless", yes_no(r.painless));
  row("thm41 regime", yes_no(r.thm41));
  row("cor43 regime", yes_no(r.cor43));
  row("epsilon", std::to_string(r.epsilon));
  row("C", std::to_string(r.C));
  row("circular_ok", yes_no(r.circular_ok) + (r.circular_equality ? " (equality)" : ""));
  row("endpoint_vanishing", yes_no(r.endpoint_vanishing));
  row("max_overlap", std::to_string(r.max_overlap));
  std::string clauses;
  for (const auto& c : lemma.clauses) clauses += std::string(1, c.id) + (c.pass ? "+ " : "- ");
  row("interval relations", clauses);
  for (const auto& v : r.violations) std::printf("  ! %s\n", v.c_str());

  json j{{"command", "validate"}, {"L", s.L()}, {"N", s.size()}, {"regime", io::to_json(r)},
         {"lemma", io::to_json(lemma)}};
  if (r.thm41) {
    const VanishingIndex vi = vanishing_index(s, 0);
    if (vi.uniform_bound) j["uniform_vanishing_bound"] = *vi.uniform_bound;
  }
  emit(cfg, j);
  return Exit::ok;
}

int cmd_analyze(const RunConfig& cfg) {
  const NsgSystem s = io::read_system(cfg.system);
  const Signal f = io::read_signal(cfg.signal);
  const Coefficients c = analyze(s, f);
  if (!cfg.out.empty()) io::write_coefficients(cfg.out, c);
  std::printf("analyze: %lld coefficients\n", static_cast<long long>(s.total_channels()));
  json j{{"command", "analyze"}, {"coefficients", s.total_channels()}};
  int code = Exit::ok;
  try {
    const Inverse inv = invert_frame_operator(s, cfg);
    const double err = relative_error(inv.op.apply(synthesize(s, c)), f);
    row("round-trip rel. error", fmt(err));
    j["round_trip_error"] = err;
    if (!(err <= cfg.defect_tol)) code = Exit::check_failed;
  } catch (const Error& e) {
    row("round-trip", std::string("unavailable: ") + e.what());
    j["round_trip_error"] = nullptr;
    j["round_trip_reason"] = e.what();
  }
  emit(cfg, j);
  return code;
}

int cmd_synthesize(const RunConfig& cfg) {
  const NsgSystem s = io::read_system(cfg.system);
  const Coefficients c = io::read_coefficients(cfg.coeffs, s);
  Signal f = synthesize(s, c);
  json j{{"command", "synthesize"}, {"canonical", cfg.canonical}};
  if (cfg.canonical) {
    const Inverse inv = invert_frame_operator(s, cfg);
    f = inv.op.apply(f);
    if (inv.neumann) j["neumann"] = io::to_json(*inv.neumann);
  }
  if (!cfg.out.empty()) io::write_signal(cfg.out, f);
  std::printf("synthesize: %lld samples%s\n", static_cast<long long>(f.size()),
              cfg.canonical ? " (canonical dual)" : "");
  emit(cfg, j);
  return Exit::ok;
}

int cmd_invert(const RunConfig& cfg) {
  const NsgSystem s = io::read_system(cfg.system);
  const RegimeReport reg = classify(s);
  const FrameBounds fb = frame_bounds(s, bounds_method(cfg.bounds));
  NeumannOptions no;
  no.tol = cfg.tol;
  no.max_terms = cfg.max_terms;
  NeumannResult r = neumann_inverse(assemble(s, s), fb.A, fb.B, no);
  if (reg.thm41 && reg.endpoint_vanishing) r.report.structure = structure_report(r.inverse, s, fb.A, fb.B);
  if (!cfg.out.empty()) io::write_operator(cfg.out, r.inverse);
  if (!cfg.grid.empty()) io::write_magnitude_grid(cfg.grid, r.inverse);

  std::printf("invert: L = %lld\n", static_cast<long long>(s.L()));
  row("frame bounds", "[" + fmt(fb.A) + ", " + fmt(fb.B) + "]");
  row("contraction", fmt(r.report.contraction));
  row("iterations", std::to_string(r.report.iterations));
  row("last term norm", fmt(r.report.last_term_norm));
  std::string offsets;
  for (const auto& [x, v] : r.report.band_sup) {
    (void)v;
    offsets += std::to_string(x) + " ";
  }
  row("band offsets", offsets);
  const Verdict verdict = r.report.structure.overall();
  row("structure", to_string(verdict));
  for (const auto& w : r.report.structure.witnesses) {
    std::printf("  ! offset %lld position %lld: %s (%s)\n", static_cast<long long>(w.offset),
                static_cast<long long>(w.position), fmt(w.magnitude).c_str(), w.reason.c_str());
  }
  emit(cfg, {{"command", "invert"}, {"neumann", io::to_json(r.report)}, {"regime", io::to_json(reg)}});
  return verdict == Verdict::no ? Exit::check_failed : Exit::ok;
}

int cmd_dual(const RunConfig& cfg) {
  const NsgSystem s = io::read_system(cfg.system);
  json j{{"command", "dual"}, {"mode", cfg.mode}};
  std::optional<NsgSystem> dual;
  if (cfg.mode == "short_support") {
    try {
      ShortSupportDual r = construct_short_support_dual(s);
      j["existence"] = io::to_json(r.existence);
      j["sup_ok"] = r.sup_ok;
      dual = std::move(r.dual);
    } catch (const ExistenceError& e) {
      j["existence"] = io::to_json(e.report());
      emit(cfg, j);
      throw;
    }
  } else {
    const Inverse inv = invert_frame_operator(s, cfg);
    const CanonicalDualWindows cd = canonical_dual_windows(s, inv.op);
    if (inv.neumann) j["neumann"] = io::to_json(*inv.neumann);
    j["support_verdict"] = to_string(cd.verdict);
    dual = canonical_dual_system(s, cd);
  }
  const DualityReport d = duality_defect(s, *dual);
  j["defect"] = io::to_json(d);
  if (!cfg.out.empty()) io::write_system(cfg.out, *dual);
  std::printf("dual (%s): %lld windows\n", cfg.mode.c_str(), static_cast<long long>(dual->size()));
  row("max defect", fmt(d.max_defect));
  row("worst offset", std::to_string(d.worst_offset));
  emit(cfg, j);
  return d.max_defect <= cfg.defect_tol ? Exit::ok : Exit::check_failed;
}

int cmd_check_duality(const RunConfig& cfg) {
  const NsgSystem G = io::read_system(cfg.system);
  BuildOptions loose;
  loose.require_coverage = false;
  const NsgSystem H = io::read_system(cfg.dual, loose);
  const DualityReport d = duality_defect(G, H);
  const bool pass = d.max_defect <= cfg.defect_tol;
  std::printf("check-duality: %s\n", pass ? "dual pair" : "not dual");
  row("max defect", fmt(d.max_defect));
  row("worst offset", std::to_string(d.worst_offset));
  row("worst position", std::to_string(d.worst_position));
  emit(cfg, {{"command", "check-duality"}, {"pass", pass}, {"defect", io::to_json(d)}});
  return pass ? Exit::ok : Exit::check_failed;
}

int fail(const RunConfig& cfg, int code, const std::string& kind, const std::string& what) {
  std::fprintf(stderr, "nsgframe: %s: %s\n", kind.c_str(), what.c_str());
  if (!cfg.report.empty()) {
    // Keep an existing report (the dual command writes the existence report first).
    try {
      json j = json::object();
      std::ifstream in(cfg.report);
      if (in) j = json::parse(in, nullptr, false);
      if (!j.is_object()) j = json::object();
      j["error"] = {{"kind", kind}, {"message", what}, {"exit_code", code}};
      io::write_json(cfg.report, j);
    } catch (const std::exception&) {
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonstationary Gabor frames: transforms, inverse operators and duals"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--system", cfg.system, "System description (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--report", cfg.report, "Write a JSON report to this path");
  };
  auto add_inverse = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "Neumann stopping tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-terms", cfg.max_terms, "Neumann term limit")->check(CLI::PositiveNumber);
    sub->add_option("--bounds", cfg.bounds, "Frame bound method")
        ->check(CLI::IsMember({"auto", "oracle", "power"}));
  };

  auto* validate = app.add_subcommand("validate", "Classify a system and check the interval relations");
  add_system(validate);

  auto* an = app.add_subcommand("analyze", "Coefficients of a signal");
  add_system(an);
  add_inverse(an);
  an->add_option("--signal", cfg.signal, "Signal (.bin or CSV)")->required()->check(CLI::ExistingFile);
  an->add_option("--out", cfg.out, "Coefficient CSV");
  an->add_option("--defect-tol", cfg.defect_tol, "Round-trip tolerance")->check(CLI::PositiveNumber);

  auto* syn = app.add_subcommand("synthesize", "Signal from coefficients");
  add_system(syn);
  add_inverse(syn);
  syn->add_option("--coeffs", cfg.coeffs, "Coefficient CSV")->required()->check(CLI::ExistingFile);
  syn->add_option("--out", cfg.out, "Signal output (.bin or CSV)");
  syn->add_flag("--canonical", cfg.canonical, "Synthesize with the canonical dual frame");

  auto* inv = app.add_subcommand("invert", "Neumann inverse of the frame operator");
  add_system(inv);
  add_inverse(inv);
  inv->add_option("--out", cfg.out, "Operator bands as CSV");
  inv->add_option("--grid", cfg.grid, "Dense |S^-1| magnitude grid as CSV");

  auto* du = app.add_subcommand("dual", "Construct a dual system");
  add_system(du);
  add_inverse(du);
  du->add_option("--mode", cfg.mode, "Dual construction")->check(CLI::IsMember({"canonical", "short_support"}));
  du->add_option("--out", cfg.out, "Dual system JSON");
  du->add_option("--defect-tol", cfg.defect_tol, "Largest accepted duality defect")->check(CLI::PositiveNumber);

  auto* chk = app.add_subcommand("check-duality", "Evaluate the duality conditions for a pair");
  add_system(chk);
  chk->add_option("--dual", cfg.dual, "Candidate dual system (JSON)")->required()->check(CLI::ExistingFile);
  chk->add_option("--tol", cfg.defect_tol, "Largest accepted duality defect")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : Exit::parse;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*an) return cmd_analyze(cfg);
    if (*syn) return cmd_synthesize(cfg);
    if (*inv) return cmd_invert(cfg);
    if (*du) return cmd_dual(cfg);
    if (*chk) return cmd_check_duality(cfg);
  } catch (const ExistenceError& e) {
    for (const auto& w : e.report().witnesses) {
      std::fprintf(stderr, "  %s at %lld (window %lld)\n", w.condition.c_str(),
                   static_cast<long long>(w.position), static_cast<long long>(w.window));
    }
    return fail(cfg, Exit::existence, "existence", e.what());
  } catch (const ParseError& e) {
    return fail(cfg, Exit::parse, "parse error", e.what());
  } catch (const DimensionError& e) {
    return fail(cfg, Exit::dimension, "dimension error", e.what());
  } catch (const PairingError& e) {
    return fail(cfg, Exit::dimension, "pairing error", e.what());
  } catch (const NotAFrameError& e) {
    return fail(cfg, Exit::not_a_frame, "not a frame", e.what());
  } catch (const CompletenessError& e) {
    return fail(cfg, Exit::not_a_frame, "incomplete system", e.what());
  } catch (const ConvergenceError& e) {
    return fail(cfg, Exit::check_failed, "convergence", e.what());
  } catch (const RegimeError& e) {
    return fail(cfg, Exit::check_failed, "regime", e.what());
  } catch (const Error& e) {
    return fail(cfg, Exit::parse, "error", e.what());
  }
  return Exit::ok;
}

#include "rbcsp/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>

#include "rbcsp/core.hpp"
#include "rbcsp/errors.hpp"
#include "rbcsp/io.hpp"
#include "rbcsp/montecarlo.hpp"
#include "rbcsp/search.hpp"
#include "rbcsp/theory.hpp"

namespace rbcsp {

namespace {

struct GenFlags {
  std::uint32_t n = 0, k = 0;
  double alpha = 0, r = 0, p = 0;
  std::uint64_t seed = 0;
  std::string mode = "exact";
  std::string out_path;
};

struct CheckFlags {
  std::string instance, assignment;
  int level = 11;
};

struct CountFlags {
  std::string instance;
  std::optional<std::uint64_t> cap;
  unsigned workers = 1;
};

struct SolveFlags {
  std::string instance;
  std::optional<int> level;
};

struct TheoryFlags {
  std::optional<double> alpha, p, r;
  std::optional<std::uint32_t> n, k;
  std::string mode = "exact";
  std::string instance;
};

struct LemmaFlags {
  int which = 1;
  double p = 0;
  std::uint32_t d = 0, k = 0;
  std::uint64_t trials = 0, seed = 0;
  unsigned workers = 1;
};

struct BoundsFlags {
  std::uint32_t n = 0, k = 0, d = 0;
  std::uint64_t m = 0, trials = 0, seed = 0;
  double p = 0;
  unsigned workers = 1;
};

void print_moments(std::ostream& out, const MomentReport& mr) {
  out << "rho=" << format_real(mr.rho) << '\n'
      << "log_base=" << format_real(mr.log_base) << '\n'
      << "correction_lower=" << format_real(mr.correction_lower) << '\n'
      << "correction_upper=" << format_real(mr.correction_upper) << '\n'
      << "log_lower=" << format_real(mr.log_lower) << '\n'
      << "log_upper=" << format_real(mr.log_upper) << '\n'
      << "upper_bracket_raw=" << format_real(mr.upper_bracket_raw) << '\n'
      << "exceeds_factor_two=" << (mr.exceeds_factor_two ? "true" : "false") << '\n';
}

void print_params(std::ostream& out, const RBParams& p) {
  out << "n=" << p.n << " k=" << p.k << " d=" << p.d << " m=" << p.m << " rel=" << p.rel_size
      << " mode=" << to_string(p.mode) << '\n';
}

int run_theory(const TheoryFlags& f, std::ostream& out) {
  std::optional<RBParams> params;
  std::optional<DegreeProfile> profile;
  if (!f.instance.empty()) {
    const Instance inst = parse_instance(read_file(f.instance));
    params = inst.params();
    profile = degree_profile(inst);
  } else {
    if (!f.alpha || !f.p) throw CLI::ValidationError("theory needs --alpha and --p (or --instance)");
    const bool any = f.n || f.k || f.r;
    if (any && !(f.n && f.k && f.r)) throw CLI::ValidationError("--n, --k and --r must be given together");
    if (any) params = derive_params(*f.n, *f.k, *f.alpha, *f.r, *f.p, relation_mode_from_string(f.mode));
  }
  const double alpha = params ? params->alpha : *f.alpha;
  const double p = params ? params->p : *f.p;

  out << "threshold=" << format_real(threshold(alpha, p)) << '\n';
  if (!params) return kExitOk;
  print_params(out, *params);
  out << "pair_sat_prob=" << format_real(pair_sat_prob(p, params->d, params->k)) << '\n'
      << "log_expected_solutions=" << format_real(log_expected_solutions(*params)) << '\n'
      << "profile=" << (profile ? "instance" : "regular") << '\n';
  print_moments(out, profile ? ey_log_bounds(*params, *profile) : ey_log_bounds_regular(*params));
  return kExitOk;
}

int dispatch(CLI::App& app, const GenFlags& gen, const CheckFlags& check, const CheckFlags& super,
             const CountFlags& count, const SolveFlags& solve, const TheoryFlags& theory, const LemmaFlags& lemma,
             const BoundsFlags& bounds, const SweepOptions& sweep_opts, std::ostream& out, std::ostream& err) {
  if (app.got_subcommand("gen")) {
    const auto params = derive_params(gen.n, gen.k, gen.alpha, gen.r, gen.p, relation_mode_from_string(gen.mode));
    const std::string text = serialize_instance(generate(params, gen.seed));
    if (gen.out_path.empty()) {
      out << text;
    } else {
      write_file(gen.out_path, text);
    }
    return kExitOk;
  }
  if (app.got_subcommand("check")) {
    const Instance inst = parse_instance(read_file(check.instance));
    const bool ok = satisfies(inst, parse_assignment(read_file(check.assignment)));
    out << (ok ? "true" : "false") << '\n';
    return ok ? kExitOk : kExitFalse;
  }
  if (app.got_subcommand("super")) {
    const Instance inst = parse_instance(read_file(super.instance));
    const bool ok = is_super_solution(inst, parse_assignment(read_file(super.assignment)),
                                      super_level_from_int(super.level));
    out << (ok ? "true" : "false") << '\n';
    return ok ? kExitOk : kExitFalse;
  }
  if (app.got_subcommand("count")) {
    const Instance inst = parse_instance(read_file(count.instance));
    const CountReport rep = count_all(inst, count.cap, count.workers);
    out << "n_solutions=" << rep.n_solutions << " n_super10=" << rep.n_super10 << " n_super11=" << rep.n_super11
        << " enumerated=" << rep.enumerated << " capped=" << (rep.capped ? "true" : "false") << '\n';
    return kExitOk;
  }
  if (app.got_subcommand("solve")) {
    const Instance inst = parse_instance(read_file(solve.instance));
    const auto found = solve.level ? find_super(inst, super_level_from_int(*solve.level)) : backtrack_solve(inst);
    out << (found ? serialize_assignment(*found) : std::string("none\n"));
    return kExitOk;
  }
  if (app.got_subcommand("theory")) return run_theory(theory, out);
  if (app.got_subcommand("lemma")) {
    const auto which = lemma.which == 1 ? RepairLemma::single_family : RepairLemma::shared_pair;
    const MCEstimate est = mc_lemma(which, lemma.p, lemma.d, lemma.k, lemma.trials, lemma.seed, lemma.workers);
    const double expected =
        lemma.which == 1 ? rho(lemma.p, lemma.d, lemma.k) : pair_sat_prob(lemma.p, lemma.d, lemma.k);
    out << "lemma=" << lemma.which << " p=" << format_real(lemma.p) << " d=" << lemma.d << " k=" << lemma.k
        << " trials=" << est.trials << " seed=" << est.seed << " mean=" << format_real(est.mean)
        << " stderr=" << format_real(est.std_error) << " expected=" << format_real(expected)
        << " within3=" << (est.within(expected) ? "true" : "false") << '\n';
    return kExitOk;
  }
  if (app.got_subcommand("bounds")) {
    const auto res = mc_repair_bounds(bounds.n, bounds.k, bounds.d, bounds.m, bounds.p, bounds.trials, bounds.seed,
                                      bounds.workers);
    out << "bounds n=" << bounds.n << " k=" << bounds.k << " d=" << bounds.d << " m=" << bounds.m
        << " p=" << format_real(bounds.p) << " trials=" << res.empirical.trials << " seed=" << res.empirical.seed
        << " mean=" << format_real(res.empirical.mean) << " stderr=" << format_real(res.empirical.std_error)
        << " lower=" << format_real(res.lower) << " upper=" << format_real(res.upper)
        << " sandwiched=" << (res.sandwiched() ? "true" : "false") << " gap=" << format_real(res.gap()) << '\n';
    return kExitOk;
  }
  if (app.got_subcommand("sweep")) {
    const auto rows = sweep(sweep_opts);
    write_sweep_csv(out, rows);
    err << "sweep seed=" << sweep_opts.seed << " rows=" << rows.size() << '\n';
    return kExitOk;
  }
  throw CLI::CallForHelp();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model RB instances, super solutions and first-moment experiments", "rbcsp"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "Generate a random instance in RB1 format");
  g->add_option("--n", gen.n)->required();
  g->add_option("--k", gen.k)->required();
  g->add_option("--alpha", gen.alpha)->required();
  g->add_option("--r", gen.r)->required();
  g->add_option("--p", gen.p)->required();
  g->add_option("--seed", gen.seed)->required();
  g->add_option("--mode", gen.mode)->check(CLI::IsMember({"exact", "bernoulli"}));
  g->add_option("--out", gen.out_path, "Write to this file instead of stdout");

  CheckFlags check;
  auto* c = app.add_subcommand("check", "Does an assignment satisfy an instance");
  c->add_option("--instance", check.instance)->required();
  c->add_option("--assignment", check.assignment)->required();

  CheckFlags super;
  auto* s = app.add_subcommand("super", "Is an assignment a (1,0)/(1,1)-super solution");
  s->add_option("--instance", super.instance)->required();
  s->add_option("--assignment", super.assignment)->required();
  s->add_option("--level", super.level)->check(CLI::IsMember({10, 11}));

  CountFlags count;
  auto* co = app.add_subcommand("count", "Count solutions and super solutions exhaustively");
  co->add_option("--instance", count.instance)->required();
  co->add_option("--cap", count.cap, "Visit at most this many assignments");
  co->add_option("--workers", count.workers)->check(CLI::Range(1u, 1024u));

  SolveFlags solve;
  auto* so = app.add_subcommand("solve", "Find a solution (or with --level, the first super solution)");
  so->add_option("--instance", solve.instance)->required();
  so->add_option("--level", solve.level)->check(CLI::IsMember({10, 11}));

  TheoryFlags theory;
  auto* t = app.add_subcommand("theory", "Evaluate the threshold, repair probabilities and moment bounds");
  t->add_option("--alpha", theory.alpha);
  t->add_option("--p", theory.p);
  t->add_option("--n", theory.n);
  t->add_option("--k", theory.k);
  t->add_option("--r", theory.r);
  t->add_option("--mode", theory.mode)->check(CLI::IsMember({"exact", "bernoulli"}));
  t->add_option("--instance", theory.instance, "Use this instance's parameters and degree profile");

  LemmaFlags lemma;
  auto* l = app.add_subcommand("lemma", "Simulate the single-family or shared-pair repair probability");
  l->add_option("--which", lemma.which)->required()->check(CLI::IsMember({1, 2}));
  l->add_option("--p", lemma.p)->required();
  l->add_option("--d", lemma.d)->required();
  l->add_option("--k", lemma.k)->required();
  l->add_option("--trials", lemma.trials)->required();
  l->add_option("--seed", lemma.seed)->required();
  l->add_option("--workers", lemma.workers)->check(CLI::Range(1u, 1024u));

  BoundsFlags bounds;
  auto* b = app.add_subcommand("bounds", "Compare the empirical repair probability with its brackets");
  b->add_option("--n", bounds.n)->required();
  b->add_option("--k", bounds.k)->required();
  b->add_option("--d", bounds.d)->required();
  b->add_option("--m", bounds.m)->required();
  b->add_option("--p", bounds.p)->required();
  b->add_option("--trials", bounds.trials)->required();
  b->add_option("--seed", bounds.seed)->required();
  b->add_option("--workers", bounds.workers)->check(CLI::Range(1u, 1024u));

  SweepOptions sweep_opts;
  std::string sweep_mode = "exact";
  auto* sw = app.add_subcommand("sweep", "Sweep the constraint density and write CSV");
  sw->add_option("--n", sweep_opts.n)->required();
  sw->add_option("--k", sweep_opts.k)->required();
  sw->add_option("--alpha", sweep_opts.alpha)->required();
  sw->add_option("--p", sweep_opts.p)->required();
  sw->add_option("--r-from", sweep_opts.r_from)->required();
  sw->add_option("--r-to", sweep_opts.r_to)->required();
  sw->add_option("--steps", sweep_opts.steps)->required();
  sw->add_option("--trials", sweep_opts.trials)->required();
  sw->add_option("--seed", sweep_opts.seed)->required();
  sw->add_option("--mode", sweep_mode)->check(CLI::IsMember({"exact", "bernoulli"}));
  sw->add_option("--workers", sweep_opts.workers)->check(CLI::Range(1u, 1024u));

  std::vector<const char*> argv{"rbcsp"};
  for (const auto& a : args) argv.push_back(a.c_str());

  std::ostringstream buffered;
  int code = kExitOk;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    sweep_opts.mode = relation_mode_from_string(sweep_mode);
    code = dispatch(app, gen, check, super, count, solve, theory, lemma, bounds, sweep_opts, buffered, err);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    const int status = app.exit(e, help_out, err);
    if (status == 0) {
      out << help_out.str();
      return kExitOk;
    }
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << buffered.str();
  return code;
}

}  // namespace rbcsp

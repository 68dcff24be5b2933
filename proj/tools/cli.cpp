#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "qbailey/hypergeometric.hpp"
#include "qbailey/macdonald.hpp"
#include "qbailey/qfunctions.hpp"
#include "qbailey/verify.hpp"

namespace qb {

namespace {

std::vector<Rational> parse_rationals(const std::string& text, const std::string& flag) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    Rational value;
    if (item.empty() || value.set_str(item, 10) != 0) throw UsageError(flag + ": not a rational number: '" + item + "'");
    if (sgn(value.get_den()) == 0) throw UsageError(flag + ": zero denominator in '" + item + "'");
    value.canonicalize();
    out.push_back(value);
  }
  return out;
}

int emit_reports(const std::vector<IdentityReport>& reports, bool json, std::ostream& out) {
  bool ok = true;
  for (const auto& r : reports) {
    out << (json ? to_json(r) : summary_line(r)) << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

struct Flags {
  VerifyOptions verify;
  std::string id;
  std::string b_text;
  std::string c_text;
  std::uint64_t seed = 0;
  bool json = false;

  std::string rep = "fermionic";
  std::string format = "csv";
  std::string output;

  int kmax = 3;
  std::vector<std::string> bench_reps{"bosonic", "fermionic", "fermionic2", "original"};

  std::string fault;
};

void add_truncation_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--nq", f.verify.nq, "q-degree cap")->check(CLI::NonNegativeNumber);
  cmd->add_option("--nt", f.verify.nt, "t-degree cap")->check(CLI::NonNegativeNumber);
}

int cmd_table(const Flags& f, std::ostream& out) {
  const VerifyOptions& o = f.verify;
  if (o.k < 1) throw UsageError("--k must be at least 1");
  if (f.format != "csv" && f.format != "json") throw UsageError("--format must be csv or json");
  const Truncation tr(o.nq, o.nt);
  Series table(tr);
  if (f.rep == "schur" || f.rep == "hall-littlewood") {
    if (f.rep == "schur" && o.nq > o.nt) throw UsageError("--rep schur needs nq <= nt");
    table = specialize_index(fermionic_index(o.k, tr),
                             f.rep == "schur" ? Specialization::schur : Specialization::hall_littlewood);
  } else {
    table = macdonald_index(o.k, representation_from_string(f.rep), tr);
  }
  const std::string text = f.format == "csv" ? table_csv(table) : table_json(table);
  if (f.output.empty()) {
    out << text;
  } else {
    std::ofstream file(f.output, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + f.output);
    file << text;
  }
  return 0;
}

int cmd_bench(const Flags& f, std::ostream& out) {
  const VerifyOptions& o = f.verify;
  if (f.kmax < 1) throw UsageError("--kmax must be at least 1");
  const Truncation tr(o.nq, o.nt);
  std::vector<Representation> reps;
  for (const auto& name : f.bench_reps) reps.push_back(representation_from_string(name));
  if (!f.json) out << "k,rep,nq,nt,wall_ms,terms\n";
  for (int k = 1; k <= f.kmax; ++k) {
    for (auto rep : reps) {
      const auto start = std::chrono::steady_clock::now();
      const Series s = macdonald_index(k, rep, tr);
      const auto ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      if (f.json) {
        out << "{\"k\":" << k << ",\"nq\":" << o.nq << ",\"nt\":" << o.nt << ",\"rep\":\"" << to_string(rep)
            << "\",\"terms\":" << s.size() << ",\"wall_ms\":" << ms << "}\n";
      } else {
        out << k << ',' << to_string(rep) << ',' << o.nq << ',' << o.nt << ',' << ms << ',' << s.size() << '\n';
      }
    }
  }
  return 0;
}

int cmd_selftest(const Flags& f, std::ostream& out) {
  if (!f.fault.empty() && f.fault != "qbinomial") throw UsageError("unknown fault '" + f.fault + "'");
  fault::set_qbinomial_perturbation(f.fault == "qbinomial");
  std::vector<IdentityReport> reports;
  try {
    reports = run_selftest();
  } catch (...) {
    fault::set_qbinomial_perturbation(false);
    throw;
  }
  fault::set_qbinomial_perturbation(false);
  const int code = emit_reports(reports, f.json, out);
  if (code != 0 && !f.json) {
    for (const auto& r : reports) {
      if (!r.passed) {
        out << "selftest failed: " << r.id << '\n';
        break;
      }
    }
  }
  return code;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series verification engine for Macdonald indices and Bailey pairs", "qbailey"};
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "check one identity");
  std::string id_help = "identity id:";
  for (const auto& id : verify_ids()) id_help += " " + id;
  verify->add_option("id", f.id, id_help)->required();
  verify->add_option("--k", f.verify.k, "depth k (>= 1)");
  add_truncation_flags(verify, f);
  verify->add_option("--ns", f.verify.ns, "s-degree cap")->check(CLI::NonNegativeNumber);
  verify->add_option("--lmax", f.verify.lmax, "largest l for rational-point lemmas")->check(CLI::NonNegativeNumber);
  verify->add_option("--nmax", f.verify.nmax, "largest n")->check(CLI::NonNegativeNumber);
  verify->add_option("--points", f.verify.points, "random points per check")->check(CLI::NonNegativeNumber);
  auto* seed_opt = verify->add_option("--seed", f.seed, "random seed (drawn from entropy if absent)");
  verify->add_option("--b", f.b_text, "comma-separated rationals b_1..b_k");
  verify->add_option("--c", f.c_text, "comma-separated rationals c_1..c_k");
  verify->add_flag("--json", f.json, "one JSON report per line");

  auto* table = app.add_subcommand("table", "print a coefficient table");
  table->add_option("--k", f.verify.k, "depth k (>= 1)");
  table->add_option("--rep", f.rep, "bosonic | fermionic | fermionic2 | original | schur | hall-littlewood");
  add_truncation_flags(table, f);
  table->add_option("--format", f.format, "csv | json");
  table->add_option("--output,-o", f.output, "write to a file instead of stdout");

  auto* bench = app.add_subcommand("bench", "time each representation");
  bench->add_option("--kmax", f.kmax, "largest k");
  add_truncation_flags(bench, f);
  bench->add_option("--reps", f.bench_reps, "representations to time");
  bench->add_flag("--json", f.json, "JSON rows");

  auto* selftest = app.add_subcommand("selftest", "run the classical identity suite");
  selftest->add_flag("--json", f.json, "one JSON report per line");
  selftest->add_option("--inject-fault", f.fault)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (verify->parsed()) {
      f.verify.b = parse_rationals(f.b_text, "--b");
      f.verify.c = parse_rationals(f.c_text, "--c");
      if (seed_opt->count() > 0) f.verify.seed = f.seed;
      return emit_reports(run_verify(f.id, f.verify), f.json, out);
    }
    if (table->parsed()) return cmd_table(f, out);
    if (bench->parsed()) return cmd_bench(f, out);
    if (selftest->parsed()) return cmd_selftest(f, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const TruncationOverflowError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

} // namespace qb

#include "binsig/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "binsig/errors.hpp"
#include "binsig/oracle.hpp"
#include "binsig/periodicity.hpp"
#include "binsig/sigfmt.hpp"
#include "binsig/upset.hpp"

namespace binsig {
namespace cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

UPSignal load_signal(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return sigfmt::parse(text);
}

Rat parse_rat_flag(const std::string& value, const char* flag) {
  auto r = Rat::parse(value);
  if (!r) {
    throw UsageError(std::string(flag) + " expects a rational p/q, got '" +
                     value + "'");
  }
  return *r;
}

BinaryVector parse_mu_flag(const std::string& value) {
  auto v = BinaryVector::parse(value);
  if (!v) {
    throw UsageError("--mu expects a bit string, got '" + value + "'");
  }
  return *v;
}

json set_to_json(const UPSet& s) {
  json j;
  j["initial_ray"] =
      s.initial_ray() ? json(s.initial_ray()->to_string()) : json(nullptr);
  json ivs = json::array();
  for (const auto& iv : s.transient_intervals()) {
    ivs.push_back({iv.lo.to_string(), iv.hi.to_string()});
  }
  j["intervals"] = ivs;
  if (s.tail()) {
    json pat = json::array();
    for (const auto& iv : s.tail()->pattern) {
      pat.push_back({iv.lo.to_string(), iv.hi.to_string()});
    }
    j["tail"] = {{"start", s.tail()->start.to_string()},
                 {"period", s.tail()->period.to_string()},
                 {"pattern", pat}};
  } else {
    j["tail"] = nullptr;
  }
  return j;
}

void emit(std::ostream& out, bool as_json, const json& j,
          const std::string& human) {
  if (as_json) {
    out << j.dump() << "\n";
  } else {
    out << human;
  }
}

std::string verdict_name(PeriodicityVerdict::Kind k) {
  switch (k) {
    case PeriodicityVerdict::Kind::Prime:
      return "prime";
    case PeriodicityVerdict::Kind::NoPrime:
      return "no-prime";
    case PeriodicityVerdict::Kind::NotPeriodic:
      return "not-periodic";
    case PeriodicityVerdict::Kind::NotInOrbit:
      return "not-in-orbit";
  }
  return "?";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, std::istream& in) {
  CLI::App app{"exact analysis of ultimately periodic binary signals"};
  app.require_subcommand(1);

  bool as_json = false;
  app.add_flag("--json", as_json, "emit one JSON object instead of text");

  std::string input = "-";
  std::string mu_s, t_s, tprime_s, at_s, from_s, to_s, step_s;
  int horizon = 3;

  auto add_input = [&](CLI::App* sub) {
    sub->fallthrough();  // lets --json appear after the subcommand
    sub->add_option("input", input, "signal file ('-' reads stdin)");
  };

  auto* c_eval = app.add_subcommand("eval", "value of the signal at a time");
  c_eval->add_option("-t", at_s, "time")->required();
  add_input(c_eval);

  auto* c_left =
      app.add_subcommand("leftlimit", "left limit of the signal at a time");
  c_left->add_option("-t", at_s, "time")->required();
  add_input(c_left);

  auto* c_orbit = app.add_subcommand("orbit", "all values the signal attains");
  add_input(c_orbit);

  auto* c_fiber =
      app.add_subcommand("fiber", "times at which the signal equals mu");
  c_fiber->add_option("--mu", mu_s, "value as a bit string")->required();
  add_input(c_fiber);

  auto* c_check = app.add_subcommand(
      "check", "test the periodic-point conditions for (T, t')");
  c_check->add_option("--mu", mu_s, "value as a bit string")->required();
  c_check->add_option("--T", t_s, "period")->required();
  c_check->add_option("--tprime", tprime_s, "ray cutoff t'")->required();
  add_input(c_check);

  auto* c_range = app.add_subcommand(
      "tprime-range", "all t' accepted for a given period");
  c_range->add_option("--mu", mu_s, "value as a bit string")->required();
  c_range->add_option("--T", t_s, "period")->required();
  add_input(c_range);

  auto* c_prime =
      app.add_subcommand("prime", "prime period of a point of the orbit");
  c_prime->add_option("--mu", mu_s, "value as a bit string")->required();
  add_input(c_prime);

  auto* c_derive = app.add_subcommand(
      "derive", "the switch points t0, t1 determined by a period");
  c_derive->add_option("--T", t_s, "period")->required();
  add_input(c_derive);

  auto* c_v76 = app.add_subcommand(
      "verify76", "bound and inclusion checks for an accepted (T, t')");
  c_v76->add_option("--T", t_s, "period")->required();
  c_v76->add_option("--tprime", tprime_s, "ray cutoff t'")->required();
  add_input(c_v76);

  auto* c_oracle =
      app.add_subcommand("oracle", "brute-force checks from the definitions");
  c_oracle->fallthrough();
  c_oracle->require_subcommand(1);
  auto* c_ocheck = c_oracle->add_subcommand("check", "enumerated check");
  c_ocheck->add_option("--mu", mu_s, "value as a bit string")->required();
  c_ocheck->add_option("--T", t_s, "period")->required();
  c_ocheck->add_option("--tprime", tprime_s, "ray cutoff t'")->required();
  c_ocheck->add_option("--horizon", horizon, "periods to enumerate");
  add_input(c_ocheck);
  auto* c_oprime = c_oracle->add_subcommand("prime", "enumerated prime period");
  c_oprime->add_option("--mu", mu_s, "value as a bit string")->required();
  c_oprime->add_option("--horizon", horizon, "periods to enumerate");
  add_input(c_oprime);

  auto* c_render = app.add_subcommand("render", "ASCII waveform");
  c_render->add_option("--from", from_s, "window start")->required();
  c_render->add_option("--to", to_s, "window end")->required();
  c_render->add_option("--step", step_s, "sample step")->required();
  add_input(c_render);

  std::vector<const char*> argv;
  argv.push_back("binsig");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    json j;
    j["command"] = app.get_subcommands().front()->get_name();
    json inputs;
    inputs["input"] = input;

    if (c_eval->parsed() || c_left->parsed()) {
      UPSignal x = load_signal(input, in);
      Rat t = parse_rat_flag(at_s, "-t");
      inputs["t"] = at_s;
      BinaryVector v = c_eval->parsed() ? eval(x, t) : left_limit(x, t);
      j["inputs"] = inputs;
      j["verdict"] = "ok";
      j["details"] = {{"value", v.to_string()}};
      emit(out, as_json, j, v.to_string() + "\n");
      return 0;
    }

    if (c_orbit->parsed()) {
      UPSignal x = load_signal(input, in);
      json vals = json::array();
      std::string human;
      for (const auto& v : orbit(x)) {
        vals.push_back(v.to_string());
        human += v.to_string() + "\n";
      }
      j["inputs"] = inputs;
      j["verdict"] = "ok";
      j["details"] = {{"values", vals}};
      emit(out, as_json, j, human);
      return 0;
    }

    if (c_fiber->parsed()) {
      UPSignal x = load_signal(input, in);
      BinaryVector mu = parse_mu_flag(mu_s);
      inputs["mu"] = mu_s;
      UPSet f = fiber(x, mu);
      j["inputs"] = inputs;
      j["verdict"] = "ok";
      j["details"] = {{"set", set_to_json(f)}};
      emit(out, as_json, j, to_string(f) + "\n");
      return 0;
    }

    if (c_check->parsed() || c_ocheck->parsed()) {
      UPSignal x = load_signal(input, in);
      BinaryVector mu = parse_mu_flag(mu_s);
      Rat T = parse_rat_flag(t_s, "--T");
      Rat tp = parse_rat_flag(tprime_s, "--tprime");
      if (!T.is_positive()) throw UsageError("T must be positive");
      inputs["mu"] = mu_s;
      inputs["T"] = t_s;
      inputs["tprime"] = tprime_s;
      bool ok;
      if (c_ocheck->parsed()) {
        if (!orbit_contains(x, mu)) {
          throw UsageError("mu is not a value of the signal");
        }
        OracleConfig cfg;
        cfg.horizon_periods = horizon;
        ok = oracle_check(x, mu, T, tp, cfg);
        j["command"] = "oracle check";
      } else {
        ok = check_periodic_point(x, mu, T, tp);
      }
      j["inputs"] = inputs;
      j["verdict"] = ok ? "true" : "false";
      j["details"] = json::object();
      emit(out, as_json, j, std::string(ok ? "true" : "false") + "\n");
      return ok ? 0 : 1;
    }

    if (c_range->parsed()) {
      UPSignal x = load_signal(input, in);
      BinaryVector mu = parse_mu_flag(mu_s);
      Rat T = parse_rat_flag(t_s, "--T");
      if (!T.is_positive()) throw UsageError("T must be positive");
      inputs["mu"] = mu_s;
      inputs["T"] = t_s;
      TPrimeWindow w = valid_tprime_interval(x, mu, T);
      j["inputs"] = inputs;
      json details = {{"lo", nullptr}, {"hi", nullptr}};
      std::string human;
      int code;
      switch (w.kind) {
        case TPrimeWindow::Kind::Interval:
          j["verdict"] = "interval";
          details["lo"] = w.lo.to_string();
          details["hi"] = w.hi.to_string();
          human = "[" + w.lo.to_string() + ", " + w.hi.to_string() + ")\n";
          code = 0;
          break;
        case TPrimeWindow::Kind::All:
          j["verdict"] = "all";
          human = "all\n";
          code = 0;
          break;
        default:
          j["verdict"] = "none";
          human = "none\n";
          code = 1;
      }
      j["details"] = details;
      emit(out, as_json, j, human);
      return code;
    }

    if (c_prime->parsed() || c_oprime->parsed()) {
      UPSignal x = load_signal(input, in);
      BinaryVector mu = parse_mu_flag(mu_s);
      inputs["mu"] = mu_s;
      j["inputs"] = inputs;
      if (c_oprime->parsed()) {
        OracleConfig cfg;
        cfg.horizon_periods = horizon;
        auto T = oracle_prime_period(x, mu, cfg);
        j["command"] = "oracle prime";
        j["verdict"] = T ? "prime" : "none";
        j["details"] = {{"T", T ? json(T->to_string()) : json(nullptr)}};
        emit(out, as_json, j,
             T ? "prime T=" + T->to_string() + "\n" : std::string("none\n"));
        return T ? 0 : 1;
      }
      PeriodicityVerdict v = prime_period(x, mu);
      j["verdict"] = verdict_name(v.kind);
      json details = {
          {"T", nullptr}, {"tprime_lo", nullptr}, {"tprime_hi", nullptr}};
      std::string human = verdict_name(v.kind) + "\n";
      if (v.kind == PeriodicityVerdict::Kind::Prime) {
        details["T"] = v.period.to_string();
        details["tprime_lo"] = v.tprime_lo.to_string();
        details["tprime_hi"] = v.tprime_hi.to_string();
        human = "prime T=" + v.period.to_string() + " tprime=[" +
                v.tprime_lo.to_string() + ", " + v.tprime_hi.to_string() +
                ")\n";
      } else if (v.kind == PeriodicityVerdict::Kind::NoPrime) {
        human = "no-prime: " + v.note + "\n";
      }
      j["details"] = details;
      emit(out, as_json, j, human);
      return v.kind == PeriodicityVerdict::Kind::Prime ? 0 : 1;
    }

    if (c_derive->parsed()) {
      UPSignal x = load_signal(input, in);
      Rat T = parse_rat_flag(t_s, "--T");
      if (!T.is_positive()) throw UsageError("T must be positive");
      inputs["T"] = t_s;
      auto [t0, t1] = derive_t0_t1(x, T);
      j["inputs"] = inputs;
      j["verdict"] = "ok";
      j["details"] = {{"t0", t0.to_string()}, {"t1", t1.to_string()}};
      emit(out, as_json, j,
           "t0=" + t0.to_string() + " t1=" + t1.to_string() + "\n");
      return 0;
    }

    if (c_v76->parsed()) {
      UPSignal x = load_signal(input, in);
      Rat T = parse_rat_flag(t_s, "--T");
      Rat tp = parse_rat_flag(tprime_s, "--tprime");
      if (!T.is_positive()) throw UsageError("T must be positive");
      inputs["T"] = t_s;
      inputs["tprime"] = tprime_s;
      Theorem76Report r = check_theorem76(x, T, tp);
      bool ok = r.bound_ok && r.inclusion_ok;
      j["inputs"] = inputs;
      j["verdict"] = ok ? "true" : "false";
      j["details"] = {{"t0", r.t0.to_string()},
                      {"t1", r.t1.to_string()},
                      {"bound_ok", r.bound_ok},
                      {"inclusion_ok", r.inclusion_ok}};
      std::ostringstream human;
      human << "t0=" << r.t0.to_string() << " t1=" << r.t1.to_string()
            << " bound_ok=" << (r.bound_ok ? "true" : "false")
            << " inclusion_ok=" << (r.inclusion_ok ? "true" : "false") << "\n";
      emit(out, as_json, j, human.str());
      return ok ? 0 : 1;
    }

    if (c_render->parsed()) {
      UPSignal x = load_signal(input, in);
      Rat from = parse_rat_flag(from_s, "--from");
      Rat to = parse_rat_flag(to_s, "--to");
      Rat step = parse_rat_flag(step_s, "--step");
      if (!step.is_positive()) throw UsageError("--step must be positive");
      if (!(from < to)) throw UsageError("--from must precede --to");
      Rat span = (to - from) / step;
      if (Rat(4096) < span) throw UsageError("window too wide for --step");
      inputs["from"] = from_s;
      inputs["to"] = to_s;
      inputs["step"] = step_s;
      std::vector<std::string> rows(static_cast<std::size_t>(x.width()));
      for (Rat t = from; t < to; t += step) {
        BinaryVector v = eval(x, t);
        for (int b = 0; b < x.width(); ++b) {
          rows[static_cast<std::size_t>(b)] += v.bit(b) ? '#' : '_';
        }
      }
      std::string human;
      json jrows = json::array();
      for (int b = 0; b < x.width(); ++b) {
        std::string row =
            "bit" + std::to_string(b) + " |" + rows[static_cast<std::size_t>(b)] + "|";
        human += row + "\n";
        jrows.push_back(row);
      }
      j["inputs"] = inputs;
      j["verdict"] = "ok";
      j["details"] = {{"rows", jrows}};
      emit(out, as_json, j, human);
      return 0;
    }

    err << "error: no subcommand handled\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cli
}  // namespace binsig

#include "cli.hpp"

#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qseries/bailey.hpp"
#include "qseries/identities.hpp"
#include "qseries/motion.hpp"
#include "qseries/sets.hpp"

namespace qs::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string name;
  int k = 1;
  int r = 0;
  int j = 0;
  int a = 0;
  int s = 0;
  std::int64_t prec = 50;
  std::string subset;
  std::string format = "text";
  int jobs = 1;
  int max_k = 3;
  std::int64_t max_weight = 10;
  std::string input;
  std::string family;
  std::optional<int> gamma_k;
};

// "-" reads stdin, a leading '{' or '[' is inline JSON, anything else is a path.
json read_input(const std::string& src) {
  std::string text;
  if (src == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!src.empty() && (src.front() == '{' || src.front() == '[')) {
    text = src;
  } else {
    std::ifstream in(src);
    if (!in) throw UsageError("cannot open input '" + src + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("input is not valid JSON: ") + e.what());
  }
}

std::vector<int> parse_subset(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--subset expects comma-separated integers, got '" + s + "'");
    }
  }
  return out;
}

bool json_mode(const Options& o) { return o.format == "json"; }

void emit(std::ostream& out, const Options& o, const Report& rep) {
  out << (json_mode(o) ? rep.to_json().dump() : rep.to_text()) << "\n";
}

int cmd_verify(const Options& o, std::ostream& out) {
  Params p;
  p.k = o.k;
  p.r = o.r;
  p.j = o.j;
  p.a = o.a;
  if (!o.subset.empty()) p.subset = parse_subset(o.subset);
  Report rep = verify_identity(o.name, p, 2 * o.prec);
  emit(out, o, rep);
  return rep.equal ? 0 : 1;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  bool all = true;
  for (const Report& rep : sweep(o.max_k, 2 * o.prec, o.jobs)) {
    emit(out, o, rep);
    all = all && rep.equal && rep.error.empty();
  }
  return all ? 0 : 1;
}

int cmd_bailey(const Options& o, std::ostream& out) {
  Recipe rec = parse_recipe(read_input(o.input));
  const Exp check = 2 * rec.prec;
  // Each transform may spend part of the working order on the finite sums.
  const Exp working = check + 4 * rec.n_max * static_cast<Exp>(rec.steps.size() + 1);
  BaileyPair seed = seed_pair(rec.kind, rec.a, rec.n_max, working);
  PairCheck seed_check = verify(seed, check);
  ChainResult res = run_chain(seed, rec.steps, check);
  bool ok = seed_check.ok && res.all_ok();
  if (json_mode(o)) {
    json j = chain_log_json(res);
    j["seed_ok"] = seed_check.ok;
    j["ok"] = ok;
    j["prec"] = rec.prec;
    out << j.dump() << "\n";
  } else {
    out << "seed a=" << monomial_name(rec.a) << " " << (seed_check.ok ? "ok" : "FAIL") << "\n";
    for (const auto& e : res.log) {
      out << e.step << " a=" << monomial_name(e.a) << " ";
      if (e.check.ok) {
        out << "ok\n";
      } else {
        out << "FAIL at n=" << *e.check.first_bad_n << "\n";
      }
    }
    out << (ok ? "chain ok" : "chain FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_trace_lambda(const Options& o, std::ostream& out) {
  MultiPartition mp = multipartition_from_json(read_input(o.input));
  MotionTrace tr = lambda_trace(mp);
  const FreqSeq& f = tr.steps.back().state;
  if (json_mode(o)) {
    out << json{{"input", mp.to_json()}, {"trace", tr.to_json()}, {"output", f}, {"weight", weight(f)}}.dump()
        << "\n";
  } else {
    out << "input " << mp.to_string() << "\n" << tr.to_text();
  }
  return 0;
}

int cmd_trace_gamma(const Options& o, std::ostream& out) {
  FreqSeq f = freq_from_json(read_input(o.input));
  MotionTrace tr = gamma_trace(f);
  MultiPartition mp = gamma(f, o.gamma_k);
  if (json_mode(o)) {
    out << json{{"input", f}, {"trace", tr.to_json()}, {"output", mp.to_json()}, {"weight", weight(f)}}.dump()
        << "\n";
  } else {
    out << tr.to_text() << "output " << mp.to_string() << "\n";
  }
  return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  SetPredicate pred{parse_family(o.family), o.k, o.r, o.j, o.s};
  pred.validate();
  json members = json::array();
  std::vector<std::string> lines;
  if (pred.on_multipartitions()) {
    for (const auto& mp : enumerate_multipartitions(pred, o.max_weight)) {
      members.push_back(mp.parts);
      lines.push_back(mp.to_string() + " size=" + std::to_string(total_size(mp)));
    }
  } else {
    for (const auto& f : enumerate_freq(pred, o.max_weight)) {
      members.push_back(f);
      lines.push_back(format_freq(f) + " weight=" + std::to_string(weight(f)));
    }
  }
  if (json_mode(o)) {
    out << json{{"family", pred.name()}, {"max_weight", o.max_weight}, {"count", members.size()},
                {"members", members}}
               .dump()
        << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
    out << pred.name() << " count=" << lines.size() << "\n";
  }
  return 0;
}

int cmd_interpret(const Options& o, std::ostream& out) {
  if (o.name == "ztilde") {
    ZTildeReport rep = check_ztilde_relation(o.k, o.r, o.j, 2 * o.prec);
    if (json_mode(o)) {
      out << json{{"name", "ztilde"},
                  {"params", {{"k", o.k}, {"r", o.r}, {"j", o.j}}},
                  {"prec", 2 * o.prec},
                  {"equal", rep.gf.equal},
                  {"inclusions", rep.inclusions},
                  {"shift_bijective", rep.shift_bijective}}
                     .dump()
          << "\n";
    } else {
      out << "ztilde k=" << o.k << " r=" << o.r << " j=" << o.j << " gf "
          << (rep.gf.equal ? "equal" : "mismatch") << ", inclusions " << (rep.inclusions ? "hold" : "fail")
          << ", shift " << (rep.shift_bijective ? "bijective" : "not bijective") << "\n";
    }
    return rep.ok() ? 0 : 1;
  }
  Report rep = check_interpretation(o.name, o.k, o.r, o.j, 2 * o.prec);
  emit(out, o, rep);
  return rep.equal ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series identity checker, Bailey chains and particle-motion bijections"};
  app.name("qseries-cli");
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_krj = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "k");
    sub->add_option("--r", o.r, "r");
    sub->add_option("--j", o.j, "j");
  };

  auto* verify_cmd = app.add_subcommand("verify", "check one catalog identity");
  verify_cmd->add_option("name", o.name, "catalog row")->required();
  add_krj(verify_cmd);
  verify_cmd->add_option("--a", o.a, "a or variant parameter");
  verify_cmd->add_option("--prec", o.prec, "truncation order in q");
  verify_cmd->add_option("--subset", o.subset, "subset T, e.g. 2,3");
  add_format(verify_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "check every catalog row with k <= max-k");
  sweep_cmd->add_option("--max-k", o.max_k, "largest k");
  sweep_cmd->add_option("--prec", o.prec, "truncation order in q");
  sweep_cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_format(sweep_cmd);

  auto* bailey_cmd = app.add_subcommand("bailey", "run a Bailey chain recipe");
  bailey_cmd->add_option("--input", o.input, "recipe JSON: file, - or inline")->required();
  add_format(bailey_cmd);

  auto* lambda_cmd = app.add_subcommand("trace-lambda", "trace the insertion map on a multipartition");
  lambda_cmd->add_option("--input", o.input, "{\"parts\": [...]}: file, - or inline")->required();
  add_format(lambda_cmd);

  auto* gamma_cmd = app.add_subcommand("trace-gamma", "trace the inverse map on a frequency sequence");
  gamma_cmd->add_option("--input", o.input, "[f_0, f_1, ...]: file, - or inline")->required();
  gamma_cmd->add_option("--k", o.gamma_k, "number of partitions in the output");
  add_format(gamma_cmd);

  auto* enum_cmd = app.add_subcommand("enumerate", "list the members of a family");
  enum_cmd->add_option("--family", o.family, "A, gordon, X, Y, Z, Xp, Yp, Zp, Xt, Yt, Zt, Ysk, Ypsk, Ytsk")
      ->required();
  add_krj(enum_cmd);
  enum_cmd->add_option("--s", o.s, "f_0 for the Ysk families");
  enum_cmd->add_option("--max-weight", o.max_weight, "largest size listed");
  add_format(enum_cmd);

  auto* interp_cmd = app.add_subcommand("interpret", "compare a family's generating function with a sum side");
  interp_cmd->add_option("name", o.name, "stanton_32, stanton_42, nonbinom_kursungoz or ztilde")->required();
  add_krj(interp_cmd);
  interp_cmd->add_option("--prec", o.prec, "truncation order in q");
  add_format(interp_cmd);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (o.prec < 1) throw UsageError("--prec must be positive");
    if (*verify_cmd) return cmd_verify(o, out);
    if (*sweep_cmd) return cmd_sweep(o, out);
    if (*bailey_cmd) return cmd_bailey(o, out);
    if (*lambda_cmd) return cmd_trace_lambda(o, out);
    if (*gamma_cmd) return cmd_trace_gamma(o, out);
    if (*enum_cmd) return cmd_enumerate(o, out);
    if (*interp_cmd) return cmd_interpret(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidParameters& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const ParameterOutOfRange& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const KindMismatch& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace qs::cli

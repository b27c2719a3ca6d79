#include "qmorris/cli.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmorris/closed_forms.hpp"
#include "qmorris/ct_engine.hpp"
#include "qmorris/error.hpp"
#include "qmorris/kernels.hpp"

namespace qmorris::cli {

namespace {

using nlohmann::json;

struct IntRange {
  int lo = 0;
  int hi = 0;

  std::vector<int> values() const {
    std::vector<int> v;
    for (int x = lo; x <= hi; ++x) v.push_back(x);
    return v;
  }
};

IntRange parse_range(const std::string& text, const std::string& flag) {
  IntRange r;
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots);
      const std::string b = text.substr(dots + 2);
      r.lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(text);
      r.hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw DomainError("--" + flag + ": expected an integer or a range lo..hi, got '" + text + "'");
  }
  if (r.lo > r.hi) throw DomainError("--" + flag + ": empty range " + text);
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw DomainError("--q0: not a rational number: " + text);
  q.canonicalize();
  if (q == 0 || q == 1 || q == -1) throw DomainError("--q0 must avoid 0 and +-1");
  return q;
}

struct Options {
  std::string n = "1";
  std::string a = "0";
  std::string b = "0";
  std::string m = "0";
  std::string l = "0";
  std::string k = "0";
  std::string s = "1";
  std::string q0 = "3/2";
  bool q0_alt = false;
  bool recursion = false;
  int max_sum = -1;
  std::string report = "json";
  std::string out_path;
  std::string cert_dir;
  int jobs = 1;
};

struct Outcome {
  std::string status;  // pass | fail | error
  std::string lhs;
  std::string rhs;
  std::optional<std::string> certificate;
  std::string message;
};

struct Task {
  json params;
  std::function<Outcome()> run;  // empty: skipped
  std::string skip_reason;
};

Outcome compare(const std::string& lhs, const std::string& rhs) {
  return {lhs == rhs ? "pass" : "fail", lhs, rhs, std::nullopt, ""};
}

json param_json(const ParamSet& p) {
  json j = {{"n", p.n}, {"a", p.a}, {"b", p.b}, {"m", p.m}, {"l", p.l}, {"k", p.k}};
  if (p.q0) j["q0"] = to_string(*p.q0);
  return j;
}

std::vector<Rational> q0_values(const Options& o) {
  std::vector<Rational> v{parse_rational(o.q0)};
  if (o.q0_alt) {
    Rational alt(5, 2);
    if (alt == v.front()) alt = Rational(7, 2);
    v.push_back(alt);
  }
  return v;
}

// Cartesian product of the six parameter ranges in (n, a, b, m, l, k) order.
std::vector<ParamSet> param_grid(const Options& o) {
  std::vector<ParamSet> grid;
  for (int n : parse_range(o.n, "n").values())
    for (int a : parse_range(o.a, "a").values())
      for (int b : parse_range(o.b, "b").values())
        for (int m : parse_range(o.m, "m").values())
          for (int l : parse_range(o.l, "l").values())
            for (int k : parse_range(o.k, "k").values()) grid.push_back({n, a, b, m, l, k, std::nullopt});
  return grid;
}

void check_nonneg(const std::vector<ParamSet>& grid, bool check_a) {
  for (const auto& p : grid) {
    if (p.n < 1 || p.b < 0 || p.m < 0 || p.l < 0 || p.k < 0 || (check_a && p.a < 0)) {
      throw DomainError("parameters must be nonnegative and n >= 1 (" + p.to_string() + ")");
    }
  }
}

// Exponent vectors a_0..a_n with entries in range and optional sum cap.
std::vector<std::vector<int>> dyson_grid(const Options& o) {
  std::vector<std::vector<int>> out;
  const IntRange ar = parse_range(o.a, "a");
  if (ar.lo < 0) throw DomainError("--a: exponents must be nonnegative");
  for (int n : parse_range(o.n, "n").values()) {
    if (n < 1 || static_cast<std::size_t>(n) + 1 > kMaxVars) throw DomainError("--n must lie in 1..7");
    std::vector<int> cur(static_cast<std::size_t>(n) + 1, ar.lo);
    while (true) {
      int sum = 0;
      for (int x : cur) sum += x;
      if (o.max_sum < 0 || sum <= o.max_sum) out.push_back(cur);
      std::size_t i = cur.size();
      while (i > 0 && cur[i - 1] == ar.hi) cur[--i] = ar.lo;
      if (i == 0) break;
      ++cur[i - 1];
    }
  }
  return out;
}

std::string join_rationals(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + "]";
}

std::vector<Task> dyson_tasks(const Options& o, bool with_q) {
  std::vector<Task> tasks;
  for (const auto& a : dyson_grid(o)) {
    Task t;
    t.params = {{"n", static_cast<int>(a.size()) - 1}, {"a", a}};
    t.run = [a, with_q] {
      if (with_q) return compare(ct_direct(build_qdyson_kernel(a)).to_string(), qdyson_rhs(a).to_string());
      return compare(ct_direct(build_dyson_kernel(a)).to_string(), QRat(QPoly(dyson_rhs(a))).to_string());
    };
    tasks.push_back(std::move(t));
  }
  return tasks;
}

std::vector<Task> hk_tasks(const Options& o, bool bench) {
  auto grid = param_grid(o);
  check_nonneg(grid, true);
  std::vector<Task> tasks;
  for (const auto& p : grid) {
    Task t;
    t.params = param_json(p);
    if (p.m > p.n || p.l > p.n) {
      t.skip_reason = "need m,l <= n";
    } else if (p.m >= 1 && p.a < 1) {
      t.skip_reason = "need a >= 1 when m >= 1";
    } else if (static_cast<std::size_t>(p.n) + 1 > kMaxVars) {
      t.skip_reason = "n too large";
    } else {
      t.run = [p, bench] {
        const QRat lhs = ct_direct(build_hk_kernel(p.n, p.a, p.b, p.m, p.l, p.k));
        const QRat rhs = morris_rhs(p, MorrisForm::Factorial);
        Outcome out = compare(lhs.to_string(), rhs.to_string());
        if (bench) out.message = "terms=" + std::to_string(lhs.num().dense().size());
        return out;
      };
    }
    tasks.push_back(std::move(t));
  }
  return tasks;
}

std::optional<std::string> write_certificate(const Options& o, const RecursionCertificate& cert) {
  if (o.cert_dir.empty()) return std::nullopt;
  std::filesystem::create_directories(o.cert_dir);
  const ParamSet& p = cert.params;
  const std::string name = "cert_n" + std::to_string(p.n) + "_b" + std::to_string(p.b) + "_m" + std::to_string(p.m) +
                           "_l" + std::to_string(p.l) + "_k" + std::to_string(p.k) + "_h" + std::to_string(cert.h) +
                           ".json";
  const auto path = std::filesystem::path(o.cert_dir) / name;
  std::ofstream f(path);
  f << cert.to_json(1) << "\n";
  if (!f) throw Error("cannot write certificate " + path.string());
  return path.string();
}

// Runs the residue recursion at h and compares its total with the
// interpolated value; the certificate must re-validate.
std::string recursion_summary(const Options& o, const ParamSet& p, int h, const Rational& q0,
                              std::optional<std::string>* cert_path, bool* ok) {
  const RecursionResult r = ct_recursion(p, h);
  std::string why;
  const bool valid = revalidate(r.certificate, &why);
  if (cert_path && !*cert_path) *cert_path = write_certificate(o, r.certificate);
  const Rational via_rec = r.value.eval(q0);
  const Rational via_interp = mprime_at(p, h, q0);
  *ok = *ok && valid && via_rec == via_interp;
  std::string s = "h=" + std::to_string(h) + ":rec=" + to_string(via_rec) +
                  ",expanded=" + std::to_string(r.certificate.count(Verdict::Expanded));
  if (!valid) s += ",invalid(" + why + ")";
  return s;
}

std::vector<Task> interp_tasks(const Options& o, bool extra) {
  auto grid = param_grid(o);
  check_nonneg(grid, false);
  for (const auto& p : grid) {
    if (p.k <= p.b + 1) throw DomainError("k > b + 1 is required (" + p.to_string() + ")");
  }
  const auto q0s = q0_values(o);
  std::vector<Task> tasks;
  for (const auto& base : grid) {
    for (const auto& q0 : q0s) {
      ParamSet p = base;
      p.a = 0;
      p.q0 = q0;
      Task t;
      t.params = param_json(p);
      t.params.erase("a");
      if (p.m >= p.n || p.l >= p.n) {
        t.skip_reason = "need m,l < n";
        tasks.push_back(std::move(t));
        continue;
      }
      const Options opts = o;
      t.run = [p, q0, extra, opts] {
        Outcome out;
        const InterpolatedPoly poly = interp_in_qa(p);
        bool rec_ok = true;
        std::vector<std::string> rec_notes;
        if (extra) {
          const int h = p.h_extra();
          ParamSet at = p;
          at.a = -h;
          Rational t = 1;
          for (int i = 0; i < h; ++i) t /= q0;
          const Rational lhs = poly(t);
          const Rational rhs = morris_rhs(at, MorrisForm::Rewritten).eval(q0);
          out = compare(to_string(lhs), to_string(rhs));
          if (opts.recursion) rec_notes.push_back(recursion_summary(opts, p, h, q0, &out.certificate, &rec_ok));
        } else {
          const VanishingSets vs = vanishing_sets(p);
          std::vector<Rational> vals;
          for (int h : vs.all()) {
            Rational tv = 1;
            for (int i = 0; i < h; ++i) tv /= q0;
            vals.push_back(poly(tv));
            if (opts.recursion) rec_notes.push_back(recursion_summary(opts, p, h, q0, &out.certificate, &rec_ok));
          }
          const std::string roots = "roots=" + join_rationals(vals) + " degree=" + std::to_string(poly.degree()) +
                                    " distinct=" + (vs.distinct ? "true" : "false");
          const std::vector<Rational> zeros(vals.size(), Rational(0));
          const std::string expect = "roots=" + join_rationals(zeros) + " degree=" + std::to_string(p.d()) +
                                     " distinct=true";
          auto cert = out.certificate;
          out = compare(roots, expect);
          out.certificate = cert;
        }
        if (opts.recursion) {
          std::string joined;
          for (const auto& s : rec_notes) joined += (joined.empty() ? "" : "; ") + s;
          out.message = joined;
          if (!rec_ok) out.status = "fail";
        }
        return out;
      };
      tasks.push_back(std::move(t));
    }
  }
  return tasks;
}

std::vector<Task> prop52_tasks(const Options& o) {
  std::vector<Task> tasks;
  for (int n : parse_range(o.n, "n").values())
    for (int b : parse_range(o.b, "b").values())
      for (int k : parse_range(o.k, "k").values()) {
        Task t;
        t.params = {{"n", n}, {"b", b}, {"k", k}};
        if (n < 1 || b < 0) throw DomainError("verify-prop52: need n >= 1, b >= 0");
        if (k <= b) {
          t.skip_reason = "need k > b";
        } else {
          t.run = [n, b, k] { return compare(prop52_lhs(n, b, k).to_string(), prop52_rhs(n, b, k).to_string()); };
        }
        tasks.push_back(std::move(t));
      }
  return tasks;
}

std::vector<Task> expansion_tasks(const Options& o) {
  auto grid = param_grid(o);
  check_nonneg(grid, true);
  std::vector<Task> tasks;
  for (const auto& p : grid) {
    Task t;
    t.params = param_json(p);
    if (p.m > p.n || p.l > p.n) {
      t.skip_reason = "need m,l <= n";
    } else if (p.m >= 1 && p.a < 1) {
      t.skip_reason = "need a >= 1 when m >= 1";
    } else {
      t.run = [p] {
        const auto [lhs, rhs] = aomoto_expansion_sides(p);
        return compare(lhs.to_string(), rhs.to_string());
      };
    }
    tasks.push_back(std::move(t));
  }
  return tasks;
}

// Independent scan: gather every satisfied condition, then rank.
std::string tuple_class_brute(int k, int b, const std::vector<int>& t) {
  const int s = static_cast<int>(t.size());
  std::vector<int> early;
  std::vector<std::pair<int, int>> close;
  for (int i = 1; i <= s; ++i) {
    if (t[static_cast<std::size_t>(i - 1)] <= b) early.push_back(i);
  }
  for (int i = 1; i <= s; ++i)
    for (int j = i + 1; j <= s; ++j) {
      const int d = t[static_cast<std::size_t>(j - 1)] - t[static_cast<std::size_t>(i - 1)];
      if (d >= 1 - k && d <= k) close.emplace_back(i, j);
    }
  if (!early.empty()) return "EarlySmall(" + std::to_string(early.front()) + ")";
  if (!close.empty()) {
    return "ClosePair(" + std::to_string(close.front().first) + "," + std::to_string(close.front().second) + ")";
  }
  return "Exceptional";
}

std::vector<Task> tuple_class_tasks(const Options& o) {
  std::vector<Task> tasks;
  for (int s : parse_range(o.s, "s").values())
    for (int k : parse_range(o.k, "k").values())
      for (int b : parse_range(o.b, "b").values()) {
        if (s < 1 || k < 0 || b < 0) throw DomainError("verify-lemma42: need s >= 1 and k, b >= 0");
        Task t;
        t.params = {{"s", s}, {"k", k}, {"b", b}};
        t.run = [s, k, b] {
          const int top = (s - 1) * k + b + 1;
          std::vector<int> tuple(static_cast<std::size_t>(s), 0);
          long agree = 0;
          long total = 0;
          long exceptional = 0;
          while (true) {
            const std::string got = lemma_important(k, b, s, tuple).to_string();
            ++total;
            if (got == tuple_class_brute(k, b, tuple)) ++agree;
            if (got == "Exceptional") ++exceptional;
            std::size_t i = tuple.size();
            while (i > 0 && tuple[i - 1] == top) tuple[--i] = 0;
            if (i == 0) break;
            ++tuple[i - 1];
          }
          return compare("agree=" + std::to_string(agree) + " exceptional=" + std::to_string(exceptional),
                         "agree=" + std::to_string(total) + " exceptional=1");
        };
        tasks.push_back(std::move(t));
      }
  return tasks;
}

json run_tasks(const std::string& command, const std::vector<Task>& tasks, int jobs, bool* any_fail) {
  std::vector<json> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      json r = {{"command", command}, {"params", t.params}};
      if (!t.run) {
        r["status"] = "skipped";
        r["lhs"] = nullptr;
        r["rhs"] = nullptr;
        r["certificate"] = nullptr;
        r["elapsed_ms"] = 0;
        r["message"] = t.skip_reason;
        results[i] = std::move(r);
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      Outcome out;
      try {
        out = t.run();
      } catch (const std::exception& e) {
        out.status = "error";
        out.message = e.what();
      }
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      r["status"] = out.status;
      r["lhs"] = out.lhs.empty() ? json(nullptr) : json(out.lhs);
      r["rhs"] = out.rhs.empty() ? json(nullptr) : json(out.rhs);
      r["certificate"] = out.certificate ? json(*out.certificate) : json(nullptr);
      r["elapsed_ms"] = ms.count();
      if (!out.message.empty()) r["message"] = out.message;
      results[i] = std::move(r);
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  json arr = json::array();
  for (auto& r : results) {
    if (r["status"] == "fail" || r["status"] == "error") *any_fail = true;
    arr.push_back(std::move(r));
  }
  return arr;
}

std::string params_text(const json& p) {
  std::string s;
  for (const auto& [key, v] : p.items()) {
    if (!s.empty()) s += " ";
    s += key + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return s;
}

void write_report(const json& arr, const Options& o, std::ostream& out) {
  std::ostringstream text;
  if (o.report == "json") {
    text << arr.dump(2) << "\n";
  } else {
    for (const auto& r : arr) {
      text << r["command"].get<std::string>() << " " << params_text(r["params"]) << " "
           << r["status"].get<std::string>();
      if (!r["lhs"].is_null()) text << " lhs=" << r["lhs"].get<std::string>();
      if (!r["rhs"].is_null()) text << " rhs=" << r["rhs"].get<std::string>();
      if (!r["certificate"].is_null()) text << " certificate=" << r["certificate"].get<std::string>();
      if (r.contains("message")) text << " (" << r["message"].get<std::string>() << ")";
      text << " " << r["elapsed_ms"].get<long>() << "ms\n";
    }
  }
  if (o.out_path.empty()) {
    out << text.str();
  } else {
    std::ofstream f(o.out_path);
    f << text.str();
    if (!f) throw Error("cannot write report to " + o.out_path);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact constant-term verification for q-Dyson and q-Morris identities", "qmorris"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"verify-dyson", "CT of the Dyson kernel (q = 1) against the multinomial"},
      {"verify-qdyson", "CT of the q-Dyson kernel against (q)_{sum a}/prod (q)_{a_i}"},
      {"verify-hk", "CT of the q-Morris kernel against its product formula"},
      {"verify-vanishing", "interpolated CT vanishes at t = q0^-h for every root h"},
      {"verify-extra", "interpolated CT at the extra point against the rewritten product"},
      {"verify-prop52", "alternating q-sum against a Gaussian binomial"},
      {"verify-expansion", "CT against its expansion over compositions"},
      {"verify-lemma42", "shift-tuple classifier against a brute-force scan"},
      {"bench", "time the q-Morris CT over a grid"},
  };
  for (const auto& sp : commands) {
    CLI::App* sub = app.add_subcommand(sp.name, sp.help);
    sub->add_option("--n", o.n, "n or lo..hi");
    sub->add_option("--a", o.a, "a or lo..hi (every exponent for the Dyson commands)");
    sub->add_option("--b", o.b, "b or lo..hi");
    sub->add_option("--m", o.m, "m or lo..hi");
    sub->add_option("--l", o.l, "l or lo..hi");
    sub->add_option("--k", o.k, "k or lo..hi");
    sub->add_option("--s", o.s, "chain length s or lo..hi (verify-lemma42)");
    sub->add_option("--q0", o.q0, "specialization NUM/DEN");
    sub->add_flag("--q0-alt", o.q0_alt, "repeat at a second specialization (5/2)");
    sub->add_flag("--recursion", o.recursion, "also run the certified residue recursion");
    sub->add_option("--max-sum", o.max_sum, "only exponent vectors with sum <= this (Dyson commands)");
    sub->add_option("--report", o.report, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", o.out_path, "write the report here instead of stdout");
    sub->add_option("--cert-dir", o.cert_dir, "directory for recursion certificates");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "qmorris: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::vector<Task> tasks;
  try {
    if (command == "verify-dyson") {
      tasks = dyson_tasks(o, false);
    } else if (command == "verify-qdyson") {
      tasks = dyson_tasks(o, true);
    } else if (command == "verify-hk") {
      tasks = hk_tasks(o, false);
    } else if (command == "bench") {
      tasks = hk_tasks(o, true);
    } else if (command == "verify-vanishing") {
      tasks = interp_tasks(o, false);
    } else if (command == "verify-extra") {
      tasks = interp_tasks(o, true);
    } else if (command == "verify-prop52") {
      tasks = prop52_tasks(o);
    } else if (command == "verify-expansion") {
      tasks = expansion_tasks(o);
    } else if (command == "verify-lemma42") {
      tasks = tuple_class_tasks(o);
    }
    bool any_fail = false;
    const json report = run_tasks(command, tasks, o.jobs, &any_fail);
    write_report(report, o, out);
    return any_fail ? kExitFail : kExitPass;
  } catch (const DomainError& e) {
    err << "qmorris: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qmorris: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qmorris::cli

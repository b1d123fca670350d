#include "projinv/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "projinv/curve.hpp"
#include "projinv/invariants.hpp"
#include "projinv/planeinv.hpp"
#include "projinv/projection.hpp"
#include "projinv/signature.hpp"
#include "projinv/spaceinv.hpp"
#include "projinv/transform.hpp"
#include "projinv/verify.hpp"

namespace projinv {
namespace {

using nlohmann::json;

std::string lower(std::string_view s) {
  std::string r(s);
  for (char& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return r;
}

std::string num17(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC 4180 quoting, only when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_file(const std::string& s) {
  std::error_code ec;
  return std::filesystem::is_regular_file(s, ec);
}

// Inline JSON or a path to a JSON file.
std::string json_argument(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && s[first] == '{') return s;
  if (is_file(s)) return read_file(s);
  return s;
}

json parse_json(const std::string& text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "invalid " + std::string(what) + " JSON: " + e.what());
  }
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
std::string opt_csv(const std::optional<double>& v) { return v ? num17(*v) : std::string(); }

json window_json(const SampleWindow& w) { return {{"t0", w.t0}, {"t1", w.t1}, {"n", w.n}}; }

// ---- project ------------------------------------------------------------

enum class Emit { Image, GraphJet, Both };

ProjectionSpec projection_argument(const std::string& s) {
  const std::string l = lower(s);
  if (l == "central") return ProjectionSpec::central();
  if (l == "parallel") return ProjectionSpec::parallel();
  return projection_from_json(json_argument(s));
}

// ---- verify -------------------------------------------------------------

std::vector<CurveSpec> load_corpus(const std::string& arg) {
  if (lower(arg) == "builtin") {
    std::vector<CurveSpec> c = builtin_space_corpus();
    c.push_back(builtin_curve("twisted_cubic"));
    return c;
  }
  if (!is_file(arg)) return {load_curve(arg)};
  const std::string text = read_file(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw Error(ErrorKind::InvalidArgument, "empty corpus file");
  if (text[first] == '{') return {curve_from_json(text)};
  std::vector<CurveSpec> corpus;
  if (text[first] == '[') {
    for (const auto& item : parse_json(text, "corpus")) corpus.push_back(curve_from_json(item.dump()));
    return corpus;
  }
  // one curve per line, '#' starts a comment line
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    const auto b = line.find_last_not_of(" \t\r");
    corpus.push_back(load_curve(line.substr(a, b - a + 1)));
  }
  if (corpus.empty()) throw Error(ErrorKind::InvalidArgument, "corpus file has no curves");
  return corpus;
}

std::vector<CheckId> parse_suite(const std::string& arg) {
  if (lower(arg) == "all") return {kAllChecks.begin(), kAllChecks.end()};
  std::vector<CheckId> ids;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::string upper = item;
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    try {
      ids.push_back(check_from_string(upper));
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidArgument, "unknown check '" + item + "'");
    }
  }
  if (ids.empty()) throw Error(ErrorKind::InvalidArgument, "empty suite");
  return ids;
}

// ---- signature ----------------------------------------------------------

bool looks_like_signature(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return false;
  try {
    const auto j = json::parse(text);
    return j.is_object() && j.contains("points");
  } catch (const json::exception&) {
    return false;
  }
}

// ---- transform ----------------------------------------------------------

GroupKind transform_group(const std::string& s) {
  const std::string l = lower(s);
  if (l == "gl3+" || l == "gl3plus") return GroupKind::GL3Plus;
  if (l == "sl3") return GroupKind::SL3;
  if (l == "gl3") return GroupKind::GL3;
  if (l == "pgl3") return GroupKind::PGL3;
  if (l == "a2") return GroupKind::A2;
  if (l == "sa2") return GroupKind::SA2;
  if (l == "a3") return GroupKind::A3;
  if (l == "h") return GroupKind::H;
  throw Error(ErrorKind::InvalidArgument, "unknown group '" + s + "'");
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownIdentifier:
    case ErrorKind::InvalidArgument:
      return kExitUsage;
    case ErrorKind::DimensionMismatch:
    case ErrorKind::GroupMismatch:
      return kExitMismatch;
    default:
      return kExitError;
  }
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << text;
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Differential invariants of space curves and their projections", "projinv"};
    app.require_subcommand(1);
    app.add_option("--order", order_flag_, "Taylor jet order (default PROJINV_JET_ORDER or 10)")
        ->check(CLI::Range(4, 40));

    auto* inv = app.add_subcommand("invariants", "Per-sample invariant records");
    add_curve(inv);
    inv->add_option("--group", group_, "sa2, a2, pgl3, sl3, gl3 or H")->required();
    add_window(inv);
    add_format(inv);
    inv->callback([this] { code_ = cmd_invariants(); });

    auto* proj = app.add_subcommand("project", "Image samples and graph jets of a projection");
    add_curve(proj);
    proj->add_option("--projection", projection_,
                     "JSON (inline or file), or the shorthands central, parallel")
        ->required();
    proj->add_option("--emit", emit_, "image, graphjet or both")
        ->check(CLI::IsMember({"image", "graphjet", "both"}));
    proj->add_option("--depth", depth_, "Highest d^iY/dX^i emitted")->check(CLI::Range(1, 8));
    add_window(proj);
    add_format(proj);
    proj->callback([this] { code_ = cmd_project(); });

    auto* ver = app.add_subcommand("verify", "Run identity checks over a corpus");
    ver->add_option("--suite", suite_, "all or comma separated check ids");
    ver->add_option("--corpus", corpus_, "builtin, a curve, or a corpus file");
    ver->add_option("--seed", seed_, "Master seed for randomized checks");
    ver->add_option("--tolerance", tolerance_, "Override every check tolerance");
    ver->add_option("--out", out_path_, "Write the report here instead of stdout");
    add_window(ver);
    add_format(ver);
    ver->add_flag("--inject-fault", inject_fault_)->group("");
    ver->callback([this] { code_ = cmd_verify(); });

    auto* sig = app.add_subcommand("signature", "Invariant signature and comparison");
    add_curve(sig);
    sig->add_option("--group", group_, "pgl3, gl3, a2 or sa2")->required();
    add_window(sig);
    sig->add_option("--compare", compare_, "Signature JSON or curve to compare against");
    sig->add_option("--tol", sig_tol_, "Equivalence tolerance on the normalized distance");
    add_format(sig);
    sig->callback([this] { code_ = cmd_signature(); });

    auto* tr = app.add_subcommand("transform", "Curve under a seeded random group element");
    add_curve(tr);
    tr->add_option("--group", group_, "GL3+, SL3, GL3, PGL3, A2, SA2, A3 or H")->required();
    tr->add_option("--seed", seed_, "Seed of the group element");
    tr->callback([this] { code_ = cmd_transform(); });

    auto* cls = app.add_subcommand("classify", "Projection type of a space curve");
    add_curve(cls);
    add_window(cls);
    cls->callback([this] { code_ = cmd_classify(); });

    auto* cur = app.add_subcommand("curves", "List builtin curves");
    cur->callback([this] {
      for (const auto& n : builtin_curve_names()) out_ << n << '\n';
      code_ = kExitOk;
    });

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e, out_, err_);
      return rc == 0 ? kExitOk : kExitUsage;
    } catch (const Error& e) {
      err_ << "projinv: " << e.what() << '\n';
      return exit_code_for(e.kind());
    } catch (const std::exception& e) {
      err_ << "projinv: " << e.what() << '\n';
      return kExitError;
    }
    return code_;
  }

 private:
  void add_curve(CLI::App* a) {
    a->add_option("--curve", curve_, "Component text, builtin name, or JSON file")->required();
  }
  void add_window(CLI::App* a) {
    a->add_option("--window", window_, "Samples a:b:n, endpoints included");
  }
  void add_format(CLI::App* a) {
    a->add_option("--format", format_, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }

  int order() const { return order_flag_ ? *order_flag_ : jet_order_from_env(); }

  CurveSpec curve() const { return load_curve(curve_); }
  // signatures default to 200 samples, everything else to 10
  SampleWindow window(std::string_view fallback = "0.2:1.5:10") const {
    return SampleWindow::parse(window_.empty() ? fallback : std::string_view(window_));
  }

  int cmd_invariants() {
    const InvariantGroup g = invariant_group_from_string(group_);
    const CurveSpec c = curve();
    if (c.dimension != curve_dimension(g)) {
      throw Error(ErrorKind::DimensionMismatch, "group " + to_string(g) + " needs a " +
                                                    std::to_string(curve_dimension(g)) +
                                                    "D curve, got " +
                                                    std::to_string(c.dimension) + "D");
    }
    const SampleWindow w = window();
    const auto records = invariant_records(g, c, w, order());
    if (format_ == "csv") {
      std::string s = "t,name,value,d1,d2,valid,reason\n";
      for (const auto& r : records) {
        s += num17(r.t) + ',' + r.name + ',' + opt_csv(r.value) + ',' + opt_csv(r.d1) + ',' +
             opt_csv(r.d2) + ',' + (r.valid() ? "1" : "0") + ',' + csv_field(r.reason) + '\n';
      }
      out_ << s;
    } else {
      json rows = json::array();
      for (const auto& r : records) {
        rows.push_back({{"name", r.name}, {"t", r.t}, {"value", opt_json(r.value)},
                        {"d1", opt_json(r.d1)}, {"d2", opt_json(r.d2)}, {"valid", r.valid()},
                        {"reason", r.reason}});
      }
      json doc{{"curve", c.label.empty() ? to_text(c) : c.label},
               {"group", to_string(g)},
               {"order", order()},
               {"window", window_json(w)},
               {"records", rows}};
      out_ << doc.dump(2) << '\n';
    }
    return kExitOk;
  }

  int cmd_project() {
    const CurveSpec c = curve();
    if (c.dimension != 3) {
      throw Error(ErrorKind::DimensionMismatch, "projection needs a 3D curve");
    }
    const ProjectionSpec p = projection_argument(projection_);
    const SampleWindow w = window();
    const bool image = emit_ != "graphjet";
    const bool graph = emit_ != "image";
    const int n = order();

    struct Row {
      double t;
      std::optional<double> X, Y;
      std::vector<std::optional<double>> Yk;
      std::string reason;
    };
    std::vector<Row> rows;
    for (double t : w.points()) {
      Row r{t, {}, {}, std::vector<std::optional<double>>(depth_), {}};
      try {
        const PlaneCurveJet img = project(p, eval_space_jet(c, t, n));
        r.X = img.X.value();
        r.Y = img.Y.value();
        if (graph) {
          const PlaneGraphJet gj = to_graph(img);
          for (int k = 1; k <= depth_ && k <= gj.depth(); ++k) r.Yk[k - 1] = gj.at(k).value();
        }
      } catch (const Error& e) {
        r.reason = e.what();
      }
      rows.push_back(std::move(r));
    }

    if (format_ == "csv") {
      std::string s = "t";
      if (image) s += ",X,Y";
      if (graph) {
        for (int k = 1; k <= depth_; ++k) s += ",Y" + std::to_string(k);
      }
      s += ",singular,reason\n";
      for (const auto& r : rows) {
        s += num17(r.t);
        if (image) s += ',' + opt_csv(r.X) + ',' + opt_csv(r.Y);
        if (graph) {
          for (const auto& v : r.Yk) s += ',' + opt_csv(v);
        }
        s += std::string(",") + (r.reason.empty() ? "0" : "1") + ',' + csv_field(r.reason) + '\n';
      }
      out_ << s;
    } else {
      json samples = json::array();
      for (const auto& r : rows) {
        json j{{"t", r.t}};
        if (image) {
          j["X"] = opt_json(r.X);
          j["Y"] = opt_json(r.Y);
        }
        if (graph) {
          json ys = json::array();
          for (const auto& v : r.Yk) ys.push_back(opt_json(v));
          j["graph"] = ys;
        }
        j["singular"] = !r.reason.empty();
        if (!r.reason.empty()) j["reason"] = r.reason;
        samples.push_back(j);
      }
      json doc{{"curve", c.label.empty() ? to_text(c) : c.label},
               {"projection", json::parse(to_json(p))},
               {"emit", emit_},
               {"window", window_json(w)},
               {"samples", samples}};
      out_ << doc.dump(2) << '\n';
    }
    return kExitOk;
  }

  int cmd_verify() {
    const std::vector<CheckId> suite = parse_suite(suite_);
    const std::vector<CurveSpec> corpus = load_corpus(corpus_);
    VerifyOptions opts;
    opts.window = window();
    opts.order = order();
    opts.seed = seed_;
    opts.tolerance = tolerance_;
    opts.inject_fault = inject_fault_;

    int pass = 0, fail = 0, skip = 0;
    json results = json::array();
    std::string csv = "check,curve,t,residual,status,reason\n";
    for (CheckId id : suite) {
      for (const CurveSpec& c : corpus) {
        const std::string label = c.label.empty() ? to_text(c) : c.label;
        json entry{{"check", to_string(id)}, {"curve", label}};
        try {
          const IdentityReport rep = check_identity(c, id, opts);
          entry["status"] = rep.passed ? "PASS" : "FAIL";
          entry["max_residual"] = rep.max_residual();
          entry["report"] = json::parse(to_json(rep));
          (rep.passed ? pass : fail) += 1;
          for (const auto& p : rep.points) {
            csv += std::string(to_string(id)) + ',' + csv_field(label) + ',' + num17(p.t) + ',' +
                   num17(p.residual) + ',' + std::string(to_string(p.status)) + ',' +
                   csv_field(p.reason) + '\n';
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::AllPointsSingular) throw;
          entry["status"] = "SKIP";
          entry["reason"] = e.what();
          ++skip;
          csv += std::string(to_string(id)) + ',' + csv_field(label) + ",,,SKIP," +
                 csv_field(e.what()) + '\n';
        }
        results.push_back(entry);
      }
    }
    const bool ok = fail == 0;
    if (format_ == "csv") {
      write_output(csv, out_path_, out_);
    } else {
      json doc{{"seed", seed_},
               {"order", opts.order},
               {"window", window_json(opts.window)},
               {"results", results},
               {"summary", {{"pass", pass}, {"fail", fail}, {"skip", skip}}},
               {"verdict", ok ? "PASS" : "FAIL"}};
      write_output(doc.dump(2) + "\n", out_path_, out_);
    }
    err_ << "verify: " << pass << " pass, " << fail << " fail, " << skip << " skip\n";
    return ok ? kExitOk : kExitFailure;
  }

  int cmd_signature() {
    const SignatureGroup g = signature_group_from_string(lower(group_));
    const SampleWindow w = window("0.2:1.5:200");
    const Signature a = sample_signature(curve(), g, w, order());
    if (compare_.empty()) {
      out_ << (format_ == "csv" ? to_csv(a) : json::parse(to_json(a)).dump(2) + "\n");
      return kExitOk;
    }
    Signature b;
    const std::string text = is_file(compare_) ? read_file(compare_) : std::string();
    if (looks_like_signature(text)) {
      b = signature_from_json(text);
    } else {
      const CurveSpec other = load_curve(compare_);
      if (other.dimension != curve_dimension(g)) {
        throw Error(ErrorKind::DimensionMismatch, "comparison curve has dimension " +
                                                      std::to_string(other.dimension));
      }
      b = sample_signature(other, g, w, order());
    }
    const SignatureComparison r = compare(a, b, sig_tol_);
    if (format_ == "csv") {
      out_ << "distance,equivalent,degenerate,tolerance\n"
           << num17(r.distance) << ',' << (r.equivalent ? 1 : 0) << ','
           << (r.degenerate ? 1 : 0) << ',' << num17(sig_tol_) << '\n';
    } else {
      json doc{{"group", to_string(g)},  {"a", a.label},
               {"b", b.label},           {"distance", r.distance},
               {"tolerance", sig_tol_},  {"equivalent", r.equivalent},
               {"degenerate", r.degenerate},
               {"samples", {{"a", a.points.size()}, {"b", b.points.size()}}}};
      out_ << doc.dump(2) << '\n';
    }
    return kExitOk;
  }

  int cmd_transform() {
    const CurveSpec c = curve();
    const GroupKind kind = transform_group(group_);
    const GroupElement g = random_group_element(seed_, kind);
    CurveSpec moved = std::visit(
        [&](const auto& e) -> CurveSpec {
          using T = std::decay_t<decltype(e)>;
          const int need = std::is_same_v<T, Affine3> ? 3 : 2;
          if (c.dimension != need) {
            throw Error(ErrorKind::DimensionMismatch, std::string(to_string(kind)) + " acts on " +
                                                          std::to_string(need) + "D curves");
          }
          return transform_curve(c, e);
        },
        g);
    moved.label = (c.label.empty() ? std::string("curve") : c.label) + " under " +
                  std::string(to_string(kind)) + " seed " + std::to_string(seed_);
    out_ << curve_to_json(moved) << '\n';
    return kExitOk;
  }

  int cmd_classify() {
    const CurveSpec c = curve();
    if (c.dimension != 3) throw Error(ErrorKind::DimensionMismatch, "classify needs a 3D curve");
    const SampleWindow w = window();
    const Classification r = classify(c, w.t0, w.t1, w.n, order());
    json samples = json::array();
    for (const auto& s : r.samples) {
      samples.push_back({{"t", s.t}, {"Delta", s.Delta}, {"alpha", s.alpha},
                         {"delta_zero", s.delta_zero}, {"alpha_zero", s.alpha_zero}});
    }
    json doc{{"curve", c.label.empty() ? to_text(c) : c.label},
             {"verdict", to_string(r.verdict)},
             {"max_pullback_residual", r.max_pullback_residual},
             {"samples", samples}};
    out_ << doc.dump(2) << '\n';
    return kExitOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  int code_ = kExitOk;

  std::optional<int> order_flag_;
  std::string curve_, group_, projection_, compare_, out_path_;
  std::string window_;
  std::string format_ = "json";
  std::string emit_ = "both";
  int depth_ = 4;
  std::string suite_ = "all";
  std::string corpus_ = "builtin";
  std::uint64_t seed_ = 42;
  std::optional<double> tolerance_;
  bool inject_fault_ = false;
  double sig_tol_ = 1e-4;
};

}  // namespace

int jet_order_from_env() {
  const char* v = std::getenv("PROJINV_JET_ORDER");
  if (v == nullptr || *v == '\0') return kDefaultJetOrder;
  const std::string_view s(v);
  int n = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || end != s.data() + s.size() || n < 4 || n > 40) {
    throw Error(ErrorKind::InvalidArgument,
                "PROJINV_JET_ORDER must be an integer in [4, 40], got '" + std::string(s) + "'");
  }
  return n;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(argc, argv);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace projinv

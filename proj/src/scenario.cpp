#include "branchfall/scenario.hpp"

#include "branchfall/curvature.hpp"
#include "branchfall/double_points.hpp"
#include "branchfall/error.hpp"
#include "branchfall/invariants.hpp"
#include "branchfall/link.hpp"
#include "branchfall/spec_io.hpp"
#include "branchfall/twistor.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace branchfall {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Target {
  std::string name;
  bool is_family = false;
  BranchedDiskSpec disk;  // the surface, or the limit of the family
  FamilySpec family;
  FamilyKind kind = FamilyKind::generic;
  FalloutReport report;
  bool touched = false;
};

// a task failed numerically; the report still gets written
struct TaskFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text, RunResult& res) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw TaskFailure("cannot write " + path);
  f << text;
  res.artifacts.push_back(path);
}

std::vector<double> doubles(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw InputError(field, "expected a non-empty array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError(field + "[" + std::to_string(i) + "]", "expected a number");
    const double x = j[i].get<double>();
    if (!(x > 0)) throw InputError(field + "[" + std::to_string(i) + "]", "must be positive");
    v.push_back(x);
  }
  return v;
}

std::vector<Rational> rationals(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw InputError(field, "expected a non-empty array");
  std::vector<Rational> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    if (v.back() == 0) throw InputError(field + "[" + std::to_string(i) + "]", "must be nonzero");
  }
  return v;
}

double positive(const json& task, const char* key, double fallback, const std::string& field) {
  if (!task.contains(key)) return fallback;
  const json& v = task[key];
  if (!v.is_number() || !(v.get<double>() > 0)) throw InputError(field + "." + key, "expected a positive number");
  return v.get<double>();
}

std::string csv_number(double x) {
  std::ostringstream o;
  o.precision(12);
  o << x;
  return o.str();
}

json braid_json(const BraidWord& w) {
  const auto info = permutation_and_components(w);
  return {{"word", w.str()},         {"strands", w.strands},           {"exponent_sum", exponent_sum(w)},
          {"length", w.length()},    {"components", info.components}, {"permutation", info.permutation}};
}

class Runner {
 public:
  Runner(const json& sc, const RunSettings& flags, std::ostream& log) : sc_(sc), s_(flags), log_(log) {}

  RunResult run() {
    RunResult res;
    try {
      validate();
    } catch (const InputError& e) {
      res.exit_code = 2;
      res.errors.push_back(e.what());
      return res;
    }
    json tasks = json::array();
    bool failed = false;
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
      const json& t = tasks_[i];
      const std::string kind = t["kind"].get<std::string>();
      const std::string target = t["target"].get<std::string>();
      json out{{"index", i}, {"kind", kind}, {"target", target}};
      const auto t0 = std::chrono::steady_clock::now();
      try {
        run_task(t, "tasks[" + std::to_string(i) + "]", out, res);
        out["status"] = "ok";
      } catch (const Error& e) {
        out["status"] = "error";
        out["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
        failed = true;
        res.errors.push_back("task " + std::to_string(i) + " (" + kind + " " + target + "): " + e.what());
      } catch (const TaskFailure& e) {
        out["status"] = "failed";
        out["error"] = {{"kind", "check"}, {"message", e.what()}};
        failed = true;
        res.errors.push_back("task " + std::to_string(i) + " (" + kind + " " + target + "): " + e.what());
      }
      const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      log_ << "[" << i << "] " << kind << ' ' << target << ": " << out["status"].get<std::string>() << " ("
           << dt << " s)\n";
      tasks.push_back(out);
    }
    if (tasks_.empty()) return res;

    json reports = json::array();
    for (auto& [name, tg] : targets_) {
      if (!tg.touched) continue;
      tg.report.family = name;
      finalize_report(tg.report, tg.kind, tolerance_);
      if (tg.report.kT_twistor)
        tg.report.warnings.push_back(
            "calibration: the twistor pipeline uses kT + kN = -2 a_plus, kT - kN = -2 a_minus; the factor 2 is "
            "fixed on (z^2, z^3 + tz) and is not pinned down independently");
      reports.push_back(to_json(tg.report));
    }
    res.report = {{"schema", 1}, {"scenario", name_}, {"seed", seed_}, {"tolerance", tolerance_},
                  {"tasks", tasks},  {"reports", reports}};
    if (!report_path_.empty()) {
      try {
        write_file(report_path_, res.report.dump(2) + "\n", res);
        res.report_path = report_path_;
      } catch (const std::exception& e) {
        res.errors.push_back(e.what());
        failed = true;
      }
    }
    res.exit_code = failed ? 1 : 0;
    return res;
  }

 private:
  void validate() {
    if (!sc_.is_object()) throw InputError("scenario", "expected a JSON object");
    for (auto it = sc_.begin(); it != sc_.end(); ++it) {
      static const char* keys[] = {"name",          "seed",    "samples",  "tolerance", "epsilon_sweep",
                                   "t_sweep",       "surfaces", "families", "tasks",     "outputs"};
      bool ok = false;
      for (const char* k : keys) ok = ok || it.key() == k;
      if (!ok) throw InputError(it.key(), "unknown scenario key");
    }
    name_ = sc_.value("name", std::string("scenario"));
    seed_ = s_.seed;
    if (sc_.contains("seed")) {
      if (!sc_["seed"].is_number_integer() || sc_["seed"].get<long long>() < 0) throw InputError("seed", "expected a non-negative integer");
      seed_ = sc_["seed"].get<unsigned>();
    }
    samples_ = s_.samples;
    if (sc_.contains("samples")) {
      if (!sc_["samples"].is_number_integer() || sc_["samples"].get<int>() < 0)
        throw InputError("samples", "expected a non-negative integer");
      samples_ = sc_["samples"].get<int>();
    }
    tolerance_ = positive(sc_, "tolerance", s_.tolerance, "scenario");
    epsilons_ = sc_.contains("epsilon_sweep") ? doubles(sc_["epsilon_sweep"], "epsilon_sweep") : s_.epsilon_sweep;
    ts_ = sc_.contains("t_sweep") ? rationals(sc_["t_sweep"], "t_sweep") : s_.t_sweep;
    report_path_ = s_.report;
    svg_path_ = s_.svg;
    diagnostics_ = s_.diagnostics;
    if (sc_.contains("outputs")) {
      const json& o = sc_["outputs"];
      if (!o.is_object()) throw InputError("outputs", "expected an object");
      for (auto it = o.begin(); it != o.end(); ++it) {
        if (!it->is_string()) throw InputError("outputs." + it.key(), "expected a path");
        if (it.key() == "report") report_path_ = it->get<std::string>();
        else if (it.key() == "svg") svg_path_ = it->get<std::string>();
        else if (it.key() == "diagnostics") diagnostics_ = it->get<std::string>();
        else throw InputError("outputs." + it.key(), "unknown output");
      }
    }
    auto kind_of = [](const json& j, const std::string& field) {
      if (!j.contains("kind")) return FamilyKind::generic;
      if (!j["kind"].is_string()) throw InputError(field + ".kind", "expected a family kind");
      try {
        return family_kind_from_string(j["kind"].get<std::string>());
      } catch (const Error& e) {
        throw InputError(field + ".kind", e.what());
      }
    };
    if (sc_.contains("surfaces")) {
      const json& s = sc_["surfaces"];
      if (!s.is_object()) throw InputError("surfaces", "expected an object of named surfaces");
      for (auto it = s.begin(); it != s.end(); ++it) {
        Target t;
        t.name = it.key();
        t.disk = disk_from_json(*it, "surfaces." + it.key());
        t.kind = kind_of(*it, "surfaces." + it.key());
        targets_.emplace(it.key(), std::move(t));
      }
    }
    if (sc_.contains("families")) {
      const json& f = sc_["families"];
      if (!f.is_object()) throw InputError("families", "expected an object of named families");
      for (auto it = f.begin(); it != f.end(); ++it) {
        if (targets_.count(it.key())) throw InputError("families." + it.key(), "name already used by a surface");
        Target t;
        t.name = it.key();
        t.is_family = true;
        t.family = family_from_json(*it, "families." + it.key());
        t.disk = t.family.limit();
        t.kind = kind_of(*it, "families." + it.key());
        targets_.emplace(it.key(), std::move(t));
      }
    }
    if (sc_.contains("tasks")) {
      const json& ts = sc_["tasks"];
      if (!ts.is_array()) throw InputError("tasks", "expected an array");
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string f = "tasks[" + std::to_string(i) + "]";
        const json& t = ts[i];
        if (!t.is_object()) throw InputError(f, "expected a task object");
        if (!t.contains("kind") || !t["kind"].is_string()) throw InputError(f + ".kind", "missing task kind");
        const std::string k = t["kind"].get<std::string>();
        if (k != "slice" && k != "braid" && k != "fallout-quadrature" && k != "fallout-twistor" &&
            k != "invariants" && k != "selftest")
          throw InputError(f + ".kind", "unknown task kind '" + k + "'");
        if (!t.contains("target") || !t["target"].is_string()) throw InputError(f + ".target", "missing target");
        const std::string name = t["target"].get<std::string>();
        auto it = targets_.find(name);
        if (it == targets_.end()) throw InputError(f + ".target", "no surface or family named '" + name + "'");
        if ((k == "fallout-quadrature" || k == "fallout-twistor") && !it->second.is_family)
          throw InputError(f + ".target", k + " needs a family");
        check_task_keys(t, k, f);
        tasks_.push_back(t);
      }
    }
  }

  void check_task_keys(const json& t, const std::string& kind, const std::string& field) {
    std::vector<std::string> allowed{"kind", "target"};
    auto add = [&](std::initializer_list<const char*> ks) {
      for (auto k : ks) allowed.push_back(k);
    };
    if (kind == "slice") add({"epsilon", "t"});
    if (kind == "braid") add({"epsilon", "t", "extended", "samples", "svg"});
    if (kind == "fallout-quadrature") add({"epsilons", "ts"});
    if (kind == "fallout-twistor") add({"deltas", "ts", "generic_points"});
    if (kind == "invariants") add({"epsilon", "double_points_epsilon", "t", "genus", "orders", "extended"});
    if (kind == "selftest") add({"epsilon", "t", "section"});
    for (auto it = t.begin(); it != t.end(); ++it)
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
        throw InputError(field + "." + it.key(), "not a parameter of " + kind);
    // parameter types are checked here so a bad file exits before any work
    for (const char* k : {"epsilon", "double_points_epsilon"}) positive(t, k, 1, field);
    if (t.contains("t")) rational_from_json(t["t"], field + ".t");
    if (t.contains("epsilons")) doubles(t["epsilons"], field + ".epsilons");
    if (t.contains("deltas")) doubles(t["deltas"], field + ".deltas");
    if (t.contains("ts")) rationals(t["ts"], field + ".ts");
    for (const char* k : {"extended"})
      if (t.contains(k) && !t[k].is_boolean()) throw InputError(field + "." + k, "expected true or false");
    for (const char* k : {"samples", "genus", "generic_points"})
      if (t.contains(k) && (!t[k].is_number_integer() || t[k].get<int>() < 0))
        throw InputError(field + "." + k, "expected a non-negative integer");
    if (t.contains("orders")) {
      const json& o = t["orders"];
      if (!o.is_array() || o.empty()) throw InputError(field + ".orders", "expected a non-empty integer array");
      for (const auto& x : o)
        if (!x.is_number_integer() || x.get<int>() < 2) throw InputError(field + ".orders", "orders must be >= 2");
    }
    if (t.contains("section")) {
      const json& s = t["section"];
      if (!s.is_array() || s.size() != 4) throw InputError(field + ".section", "expected four numbers");
      for (const auto& x : s)
        if (!x.is_number()) throw InputError(field + ".section", "expected four numbers");
    }
    if (t.contains("svg") && !t["svg"].is_string()) throw InputError(field + ".svg", "expected a path");
  }

  // the member at "t" for families, the surface itself otherwise
  BranchedDiskSpec disk_for(const Target& tg, const json& task, const std::string& field, bool member_default,
                            std::optional<Rational>* used = nullptr) {
    if (!tg.is_family) return tg.disk;
    std::optional<Rational> t;
    if (task.contains("t")) t = rational_from_json(task["t"], field + ".t");
    else if (member_default) t = Rational(1, 1000);
    if (used) *used = t;
    return t ? tg.family.at(*t) : tg.disk;
  }

  void run_task(const json& task, const std::string& field, json& out, RunResult& res) {
    const std::string kind = task["kind"].get<std::string>();
    Target& tg = targets_.at(task["target"].get<std::string>());
    tg.touched = true;
    if (kind == "slice") {
      const double eps = positive(task, "epsilon", 0.3, field);
      std::optional<Rational> t;
      const auto disk = disk_for(tg, task, field, false, &t);
      SliceOptions so;
      so.samples = samples_;
      const auto link = slice_sphere(disk, eps, so);
      out["epsilon"] = eps;
      out["t"] = t ? json(to_string(*t)) : json(nullptr);
      out["order"] = link.order;
      out["components"] = link.components.size();
      json comps = json::array();
      for (const auto& c : link.components) comps.push_back({{"points", c.points.size()}, {"max_segment", c.max_segment}});
      out["curves"] = comps;
    } else if (kind == "braid") {
      std::optional<Rational> t;
      const auto disk = disk_for(tg, task, field, false, &t);
      SliceOptions so;
      so.samples = task.value("samples", samples_);
      BraidOptions bo;
      bo.extended = task.value("extended", false);
      LinkBraid lb;
      json sweep = nullptr;
      if (task.contains("epsilon")) {
        lb = link_braid(disk, task["epsilon"].get<double>(), so, bo);
      } else {
        auto sw = braid_sweep(disk, {}, so, bo);
        lb = sw.result;
        sweep = json::array();
        for (const auto& r : sw.rows)
          sweep.push_back({{"epsilon", r.epsilon}, {"status", r.status}, {"exponent_sum", r.exponent_sum},
                           {"strands", r.strands}, {"precision", to_string(r.precision)}});
      }
      out["epsilon"] = lb.epsilon;
      out["t"] = t ? json(to_string(*t)) : json(nullptr);
      out["braid"] = braid_json(lb.word);
      out["precision"] = to_string(lb.precision);
      out["samples"] = lb.samples;
      if (!sweep.is_null()) out["sweep"] = sweep;
      tg.report.details["braid"] = out["braid"];
      tg.report.details["braid"]["epsilon"] = lb.epsilon;
      tg.report.details["braid"]["precision"] = to_string(lb.precision);
      const std::string svg = task.value("svg", svg_path_);
      if (!svg.empty()) {
        write_file(svg, render_braid_svg(lb.word), res);
        out["svg"] = svg;
      }
    } else if (kind == "fallout-quadrature") {
      const auto eps = task.contains("epsilons") ? doubles(task["epsilons"], field + ".epsilons") : epsilons_;
      const auto ts = task.contains("ts") ? rationals(task["ts"], field + ".ts") : ts_;
      const auto est = integrate_fallout(tg.family, eps, ts);
      out["kT"] = est.kT;
      out["kN"] = est.kN;
      out["residual"] = est.residual;
      out["converged"] = est.converged;
      out["epsilon_power"] = est.epsilon_power;
      out["epsilons"] = eps;
      out["kT_at_eps"] = est.kT_at_eps;
      out["kN_at_eps"] = est.kN_at_eps;
      out["warnings"] = est.warnings;
      tg.report.kT_quadrature = est.kT;
      tg.report.kN_quadrature = est.kN;
      tg.report.details["quadrature"] = {{"residual", est.residual}, {"converged", est.converged}};
      for (const auto& w : est.warnings) tg.report.warnings.push_back("quadrature: " + w);
      if (!diagnostics_.empty()) {
        const std::string p = (fs::path(diagnostics_) / (tg.name + "_fallout.csv")).string();
        write_file(p, fallout_csv(est), res);
        out["csv"] = p;
      }
      if (!est.converged) throw TaskFailure("fallout extrapolation unconverged");
    } else if (kind == "fallout-twistor") {
      DefectOptions o;
      o.seed = seed_;
      if (task.contains("deltas")) o.deltas = doubles(task["deltas"], field + ".deltas");
      if (task.contains("ts")) o.ts = rationals(task["ts"], field + ".ts");
      if (task.contains("generic_points")) o.generic_points = task["generic_points"].get<int>();
      const auto tw = twistor_fallout(tg.family, o);
      auto defect = [](const VerticalDefect& d) {
        return json{{"defect", d.defect},
                    {"area_defect", d.area_defect},
                    {"count_defect", std::isnan(d.count_defect) ? json(nullptr) : json(d.count_defect)},
                    {"method", d.method},
                    {"residual", d.residual},
                    {"converged", d.converged},
                    {"warnings", d.warnings}};
      };
      out["plus"] = defect(tw.plus);
      out["minus"] = defect(tw.minus);
      out["a_plus"] = tw.current.plus;
      out["a_minus"] = tw.current.minus;
      out["kT"] = tw.current.kT;
      out["kN"] = tw.current.kN;
      tg.report.kT_twistor = tw.current.kT;
      tg.report.kN_twistor = tw.current.kN;
      tg.report.details["twistor"] = {{"a_plus", tw.current.plus},
                                      {"a_minus", tw.current.minus},
                                      {"raw_a_plus", tw.current.a_plus},
                                      {"raw_a_minus", tw.current.a_minus}};
      if (!diagnostics_.empty()) {
        std::ostringstream csv;
        csv << "factor,delta,t,count_t,count_0,area_t,area_0\n";
        for (const auto* d : {&tw.plus, &tw.minus})
          for (const auto& r : d->rows)
            csv << (d == &tw.plus ? "plus" : "minus") << ',' << csv_number(r.delta) << ',' << csv_number(r.t) << ','
                << csv_number(r.count_t) << ',' << csv_number(r.count_0) << ',' << csv_number(r.area_t) << ','
                << csv_number(r.area_0) << '\n';
        const std::string p = (fs::path(diagnostics_) / (tg.name + "_defects.csv")).string();
        write_file(p, csv.str(), res);
        out["csv"] = p;
      }
      if (!tw.plus.converged || !tw.minus.converged) throw TaskFailure("vertical defect unconverged");
    } else if (kind == "invariants") {
      const double eps = positive(task, "epsilon", 0.3, field);
      SliceOptions so;
      so.samples = samples_;
      BraidOptions bo;
      bo.extended = task.value("extended", false);
      const auto lb = link_braid(tg.disk, eps, so, bo);
      const int writhe = exponent_sum(lb.word);
      std::vector<int> orders;
      if (task.contains("orders")) orders = task["orders"].get<std::vector<int>>();
      else orders = {branching_data(tg.disk).order};
      const int genus = task.value("genus", 0);
      out["writhe"] = writhe;
      out["orders"] = orders;
      out["precision"] = to_string(lb.precision);
      const int gb = genus_bound(std::abs(writhe), orders);
      out["genus_bound"] = gb;
      tg.report.genus_bound = gb;
      tg.report.details["writhe"] = writhe;
      if (tg.is_family) {
        const Rational t = task.contains("t") ? rational_from_json(task["t"], field + ".t") : Rational(1, 1000);
        const double dpe = positive(task, "double_points_epsilon", eps, field);
        const auto dp = double_points(tg.family, t, dpe);
        out["double_points"] = {{"signed_count", dp.signed_count}, {"points", dp.points.size()},
                                {"unresolved", dp.unresolved},     {"reliable", dp.reliable},
                                {"t", to_string(t)},               {"epsilon", dpe}};
        const int kT = tangent_fallout(orders, genus), kN = normal_fallout(writhe, dp.signed_count);
        out["kT"] = kT;
        out["kN"] = kN;
        tg.report.kT_formula = kT;
        tg.report.kN_formula = kN;
        tg.report.details["double_points"] = dp.signed_count;
        if (!dp.reliable) tg.report.warnings.push_back("double points: unreliable count (tangential or unresolved)");
      }
      const auto lim = branching_data(tg.disk);
      if (tg.disk.holomorphic() && lim.order >= 2) {
        // torus-type baseline when the limit is (z^p, z^q)
        const auto& a = tg.disk.w1;
        const auto& b = tg.disk.w2;
        if (a.size() == 1 && b.size() == 1) {
          int p = std::min(a[0].j, b[0].j), q = std::max(a[0].j, b[0].j);
          try {
            const auto s = complex_singularity_invariants(p, q);
            out["singularity"] = {{"milnor", s.milnor}, {"kT", s.kT}, {"kN", s.kN}, {"note", s.note}};
            tg.report.details["singularity"] = out["singularity"];
          } catch (const Error&) {
          }
        }
      }
    } else if (kind == "selftest") {
      const double eps = positive(task, "epsilon", 0.1, field);
      const auto disk = disk_for(tg, task, field, true);
      Vec4 X(0.5, 0.5, 0.5, 0.5);
      if (task.contains("section")) {
        const auto v = task["section"].get<std::vector<double>>();
        X = Vec4(v[0], v[1], v[2], v[3]);
      }
      const auto gb = gauss_bonnet_check(disk, eps);
      const auto ns = normal_stokes_check(disk, eps, X);
      out["gauss_bonnet"] = {{"curvature", gb.curvature_term}, {"boundary", gb.boundary_term},
                             {"branching", gb.branching},     {"residual", gb.residual}};
      out["normal_stokes"] = {{"curvature", ns.curvature_term}, {"boundary", ns.boundary_term},
                              {"index_sum", ns.index_sum},      {"residual", ns.residual}};
      if (std::abs(gb.residual) >= 1e-3 || std::abs(ns.residual) >= 1e-3)
        throw TaskFailure("boundary identity residual above 1e-3");
    }
  }

  const json& sc_;
  RunSettings s_;
  std::ostream& log_;
  std::string name_;
  unsigned seed_ = 17;
  int samples_ = 0;
  double tolerance_ = 0.1;
  std::vector<double> epsilons_;
  std::vector<Rational> ts_;
  std::string report_path_, svg_path_, diagnostics_;
  std::map<std::string, Target> targets_;
  std::vector<json> tasks_;
};

}  // namespace

RunResult run_scenario(const json& scenario, const RunSettings& settings, std::ostream& log) {
  Runner r(scenario, settings, log);
  return r.run();
}

RunResult run_scenario_file(const std::string& path, const RunSettings& settings, std::ostream& log) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    RunResult r;
    r.exit_code = 2;
    r.errors.push_back("cannot open " + path);
    return r;
  }
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset to line and column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    RunResult r;
    r.exit_code = 2;
    r.errors.push_back(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    return r;
  }
  auto res = run_scenario(j, settings, log);
  for (auto& e : res.errors)
    if (res.exit_code == 2) e = path + ": " + e;
  return res;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      fail(ErrorKind::input, "bad number '" + item + "'");
    }
    if (used != item.size() || !(x > 0)) fail(ErrorKind::input, "bad positive number '" + item + "'");
    v.push_back(x);
  }
  if (v.empty()) fail(ErrorKind::input, "empty list");
  return v;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    v.push_back(parse_rational(item));
    if (v.back() == 0) fail(ErrorKind::input, "parameter values must be nonzero");
  }
  if (v.empty()) fail(ErrorKind::input, "empty list");
  return v;
}

}  // namespace branchfall

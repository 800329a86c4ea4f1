#include "branchfall/spec_io.hpp"

#include "branchfall/corpus.hpp"
#include "branchfall/error.hpp"

#include <regex>

namespace branchfall {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw InputError(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(field, std::string("missing key '") + key + "'");
  return *it;
}

int int_from_json(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw InputError(field, "expected an integer");
  return j.get<int>();
}

double double_from_json(const json& j, const std::string& field) {
  if (!j.is_number()) throw InputError(field, "expected a number");
  return j.get<double>();
}

template <class F>
auto guarded(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError(field, e.what());
  }
}

// "torus:3,4"
bool torus_name(const std::string& name, int& p, int& q) {
  static const std::regex re(R"(torus:(\d+),(\d+))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) return false;
  p = std::stoi(m[1]), q = std::stoi(m[2]);
  return true;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& field) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw InputError(field, "unknown key '" + it.key() + "'");
  }
}

Series series_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array of terms");
  Series s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const json& t = j[i];
    if (!t.is_object()) throw InputError(f, "expected a term object");
    check_keys(t, {"re", "im", "j", "k", "phase"}, f);
    MonomialTerm m;
    m.coeff.value = complex_from_json(t, f);
    m.j = int_from_json(need(t, "j", f), f + ".j");
    m.k = int_from_json(need(t, "k", f), f + ".k");
    if (t.contains("phase")) m.coeff.phase = double_from_json(t["phase"], f + ".phase");
    s.push_back(std::move(m));
  }
  return s;
}

std::vector<FamilyTerm> family_terms_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array of terms");
  std::vector<FamilyTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const json& t = j[i];
    if (!t.is_object()) throw InputError(f, "expected a term object");
    check_keys(t, {"re", "im", "tpoly", "j", "k", "phase"}, f);
    FamilyTerm m;
    if (t.contains("tpoly")) {
      if (t.contains("re") || t.contains("im")) throw InputError(f, "give either tpoly or re/im, not both");
      const json& tp = t["tpoly"];
      if (!tp.is_array() || tp.empty()) throw InputError(f + ".tpoly", "expected a non-empty array");
      for (std::size_t k = 0; k < tp.size(); ++k)
        m.tpoly.push_back(complex_from_json(tp[k], f + ".tpoly[" + std::to_string(k) + "]"));
    } else {
      m.tpoly.push_back(complex_from_json(t, f));
    }
    m.j = int_from_json(need(t, "j", f), f + ".j");
    m.k = int_from_json(need(t, "k", f), f + ".k");
    if (t.contains("phase")) m.phase = double_from_json(t["phase"], f + ".phase");
    out.push_back(std::move(m));
  }
  return out;
}

json coefficient_json(const ExactComplex& c) {
  json j;
  j["re"] = to_string(c.re);
  j["im"] = to_string(c.im);
  return j;
}

}  // namespace

Rational rational_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return guarded(field, [&] { return rational_from_double(j.get<double>()); });
  if (j.is_string()) return guarded(field, [&] { return parse_rational(j.get<std::string>()); });
  throw InputError(field, "expected a number or a \"p/q\" string");
}

ExactComplex complex_from_json(const json& j, const std::string& field) {
  if (j.is_object()) {
    ExactComplex c;
    if (j.contains("re")) c.re = rational_from_json(j["re"], field + ".re");
    if (j.contains("im")) c.im = rational_from_json(j["im"], field + ".im");
    if (!j.contains("re") && !j.contains("im")) throw InputError(field, "coefficient needs 're' or 'im'");
    return c;
  }
  return ExactComplex(rational_from_json(j, field));
}

bool corpus_has_disk(const std::string& name) {
  int p, q;
  return name == "plane" || name == "graph" || name == "cusp" || name == "minimal_limit" || name == "writhe20" ||
         torus_name(name, p, q);
}

bool corpus_has_family(const std::string& name) { return name == "cusp_family" || name == "minimal_family"; }

BranchedDiskSpec disk_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field, "expected an object");
  BranchedDiskSpec s;
  if (j.contains("corpus")) {
    check_keys(j, {"corpus", "reverse", "alpha", "kind"}, field);
    const json& n = j["corpus"];
    if (!n.is_string()) throw InputError(field + ".corpus", "expected a name");
    const std::string name = n.get<std::string>();
    int p, q;
    if (name == "plane") s = corpus::plane();
    else if (name == "graph") s = corpus::graph();
    else if (name == "cusp") s = corpus::cusp();
    else if (name == "minimal_limit") s = corpus::minimal_limit();
    else if (name == "writhe20")
      s = corpus::writhe20(j.contains("alpha") ? double_from_json(j["alpha"], field + ".alpha") : corpus::default_alpha);
    else if (torus_name(name, p, q)) s = corpus::torus_singularity(p, q);
    else throw InputError(field + ".corpus", "unknown surface '" + name + "'");
    if (j.contains("reverse")) {
      if (!j["reverse"].is_boolean()) throw InputError(field + ".reverse", "expected true or false");
      if (j["reverse"].get<bool>()) s = reverse_orientation(s);
    }
  } else {
    check_keys(j, {"w1", "w2", "radius", "kind"}, field);
    s.w1 = series_from_json(need(j, "w1", field), field + ".w1");
    s.w2 = series_from_json(need(j, "w2", field), field + ".w2");
    if (j.contains("radius")) s.domain_radius = double_from_json(j["radius"], field + ".radius");
  }
  guarded(field, [&] {
    s.validate();
    return 0;
  });
  return s;
}

FamilySpec family_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field, "expected an object");
  FamilySpec f;
  if (j.contains("corpus")) {
    check_keys(j, {"corpus", "reverse", "kind", "t"}, field);
    const json& n = j["corpus"];
    if (!n.is_string()) throw InputError(field + ".corpus", "expected a name");
    const std::string name = n.get<std::string>();
    if (name == "cusp_family") f = corpus::cusp_family();
    else if (name == "minimal_family") f = corpus::minimal_family();
    else throw InputError(field + ".corpus", "unknown family '" + name + "'");
    if (j.contains("reverse")) {
      if (!j["reverse"].is_boolean()) throw InputError(field + ".reverse", "expected true or false");
      if (j["reverse"].get<bool>()) f = reverse_orientation(f);
    }
  } else {
    check_keys(j, {"w1", "w2", "radius", "t", "kind"}, field);
    f.w1 = family_terms_from_json(need(j, "w1", field), field + ".w1");
    f.w2 = family_terms_from_json(need(j, "w2", field), field + ".w2");
    if (j.contains("radius")) f.domain_radius = double_from_json(j["radius"], field + ".radius");
    f.parameter_values = corpus::default_t_values();
  }
  if (j.contains("t")) {
    const json& ts = j["t"];
    if (!ts.is_array() || ts.empty()) throw InputError(field + ".t", "expected a non-empty array");
    f.parameter_values.clear();
    for (std::size_t k = 0; k < ts.size(); ++k) {
      Rational t = rational_from_json(ts[k], field + ".t[" + std::to_string(k) + "]");
      if (t == 0) throw InputError(field + ".t[" + std::to_string(k) + "]", "parameter values must be nonzero");
      f.parameter_values.push_back(t);
    }
  }
  // every member and the limit must be well formed
  guarded(field, [&] {
    f.limit().validate();
    for (const auto& t : f.parameter_values) f.at(t).validate();
    return 0;
  });
  return f;
}

json to_json(const BranchedDiskSpec& spec) {
  auto series = [](const Series& s) {
    json a = json::array();
    for (const auto& t : s) {
      json e = coefficient_json(t.coeff.value);
      e["j"] = t.j;
      e["k"] = t.k;
      if (t.coeff.has_phase()) e["phase"] = t.coeff.phase;
      a.push_back(e);
    }
    return a;
  };
  return {{"w1", series(spec.w1)}, {"w2", series(spec.w2)}, {"radius", spec.domain_radius}};
}

json to_json(const FamilySpec& family) {
  auto terms = [](const std::vector<FamilyTerm>& s) {
    json a = json::array();
    for (const auto& t : s) {
      json tp = json::array();
      for (const auto& c : t.tpoly) tp.push_back(coefficient_json(c));
      json e{{"tpoly", tp}, {"j", t.j}, {"k", t.k}};
      if (t.phase != 0.0) e["phase"] = t.phase;
      a.push_back(e);
    }
    return a;
  };
  json ts = json::array();
  for (const auto& t : family.parameter_values) ts.push_back(to_string(t));
  return {{"w1", terms(family.w1)}, {"w2", terms(family.w2)}, {"radius", family.domain_radius}, {"t", ts}};
}

}  // namespace branchfall

#include "orx/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace orx {

namespace {

using nlohmann::json;

Poly poly_from_json(int n, const json& terms, const char* what) {
  if (!terms.is_array()) throw ParseError(std::string(what) + ": expected an array of terms");
  Poly p = Poly::constant(n, 0.0);
  for (const json& t : terms) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("expo"))
      throw ParseError(std::string(what) + ": term needs coeff and expo");
    const json& ex = t["expo"];
    if (!ex.is_array() || (int)ex.size() != n)
      throw ParseError(std::string(what) + ": expo must have length n");
    Exp a(n);
    for (int j = 0; j < n; ++j) {
      if (!ex[j].is_number_integer() || ex[j].get<int>() < 0)
        throw ParseError(std::string(what) + ": exponents must be nonnegative integers");
      a[j] = ex[j].get<int>();
    }
    p.add_term(a, t["coeff"].get<double>());
  }
  return p;
}

json poly_to_json(const Poly& p) {
  json arr = json::array();
  for (const auto& [a, c] : p.terms()) {
    json t;
    t["coeff"] = c;
    t["expo"] = a;
    arr.push_back(t);
  }
  return arr;
}

BoundFlag flag_from_string(const std::string& s) {
  if (s == "none") return BoundFlag::none;
  if (s == "simplex") return BoundFlag::simplex;
  if (s == "ball") return BoundFlag::ball;
  throw ParseError("unknown flag '" + s + "'");
}

std::string flag_to_string(BoundFlag f) {
  switch (f) {
    case BoundFlag::none: return "none";
    case BoundFlag::simplex: return "simplex";
    case BoundFlag::ball: return "ball";
  }
  return "none";
}

}  // namespace

PopInstance parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("problem JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("objective"))
    throw ParseError("problem JSON: need fields n and objective");
  PopInstance pop;
  pop.n = j["n"].get<int>();
  if (pop.n < 1) throw ParseError("problem JSON: n must be positive");
  pop.f = poly_from_json(pop.n, j["objective"], "objective");

  for (const json& c : j.value("constraints", json::array())) {
    if (!c.is_object() || !c.contains("poly")) throw ParseError("constraint: need field poly");
    Poly g = poly_from_json(pop.n, c["poly"], "constraint poly");
    std::string kind = c.value("kind", "ineq");
    BoundFlag flag = flag_from_string(c.value("flag", "none"));
    double R = c.value("R", 0.0);
    if (kind == "ineq") {
      pop.constraints.push_back({g, flag, R, -1});
    } else if (kind == "eq") {
      int at = (int)pop.constraints.size();
      pop.constraints.push_back({g, flag, R, at + 1});
      pop.constraints.push_back({-g, BoundFlag::none, 0.0, at});
    } else {
      throw ParseError("constraint kind must be ineq or eq, got '" + kind + "'");
    }
  }

  if (j.contains("cliques")) {
    CliqueSpec spec;
    for (const json& cl : j["cliques"]) {
      std::vector<int> I;
      for (const json& v : cl) {
        int idx = v.get<int>();
        if (idx < 0 || idx >= pop.n) throw ParseError("clique index out of range");
        I.push_back(idx);
      }
      spec.cliques.push_back(I);
    }
    pop.cliques = spec;
  }
  return pop;
}

std::string problem_to_json(const PopInstance& pop) {
  json j;
  j["n"] = pop.n;
  j["objective"] = poly_to_json(pop.f);
  json cons = json::array();
  for (size_t i = 0; i < pop.constraints.size(); ++i) {
    const Constraint& c = pop.constraints[i];
    if (c.eq_partner >= 0 && c.eq_partner == (int)i - 1) continue;  // second half of an equality pair
    json e;
    e["poly"] = poly_to_json(c.g);
    e["kind"] = c.eq_partner == (int)i + 1 ? "eq" : "ineq";
    e["flag"] = flag_to_string(c.flag);
    if (c.flag != BoundFlag::none) e["R"] = c.R;
    cons.push_back(e);
  }
  j["constraints"] = cons;
  if (pop.cliques) j["cliques"] = pop.cliques->cliques;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

PopInstance load_problem(const std::string& path) { return parse_problem(read_file(path)); }

void save_problem(const PopInstance& pop, const std::string& path) { write_file(path, problem_to_json(pop)); }

RelaxStats stats_of(const ConicProgram& prog) {
  RelaxStats st;
  st.nmat = (int)prog.psd_dims.size();
  for (int d : prog.psd_dims) st.msize = std::max(st.msize, d);
  st.nscal = prog.num_free + prog.num_nonneg;
  st.naff = (int)prog.rows.size();
  return st;
}

}  // namespace orx

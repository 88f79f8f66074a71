#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tropicore/core.hpp"
#include "tropicore/oracle.hpp"

namespace tropicore {

using ordered_json = nlohmann::ordered_json;

// Values in reports carry 12 significant digits.
inline double round12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline ordered_json json_vec(const Vec& v) {
  ordered_json j = ordered_json::array();
  for (double x : v) j.push_back(round12(x));
  return j;
}

inline ordered_json json_nodes(const std::vector<int>& nodes) {
  ordered_json j = ordered_json::array();
  for (int v : nodes) j.push_back(v + 1);  // reports are 1-based
  return j;
}

// ---------------------------------------------------------------------------
// Matrix files: JSON {"n": ..., "entries": [[...], ...]} or CSV rows.

inline Matrix matrix_from_json(const nlohmann::json& j, Semiring sr) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw Error("matrix file needs fields \"n\" and \"entries\"", Error::Parse);
  try {
    int n = j["n"].get<int>();
    if (n < 1) throw Error("matrix dimension must be at least 1", Error::Parse);
    const auto& rows = j["entries"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw Error("entries must hold n rows", Error::Parse);
    Matrix m(n, sr);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
        throw Error("entries must hold n columns per row", Error::Parse);
      for (int jx = 0; jx < n; ++jx) m(i, jx) = rows[i][jx].get<double>();
    }
    Matrix::validate(m);
    return m;
  } catch (const Error& e) {
    throw Error(e.what(), Error::Parse);
  } catch (const std::exception& e) {
    throw Error(std::string("matrix file is malformed: ") + e.what(), Error::Parse);
  }
}

inline Matrix matrix_from_csv(const std::string& text, Semiring sr) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n,") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (...) {
        throw Error("csv cell is not a number: " + cell, Error::Parse);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("csv file holds no rows", Error::Parse);
  Matrix m(static_cast<int>(rows.size()), sr);
  for (int i = 0; i < m.n; ++i) {
    if (static_cast<int>(rows[i].size()) != m.n)
      throw Error("csv matrix is not square", Error::Parse);
    for (int j = 0; j < m.n; ++j) m(i, j) = rows[i][j];
  }
  try {
    Matrix::validate(m);
  } catch (const Error& e) {
    throw Error(e.what(), Error::Parse);
  }
  return m;
}

inline Matrix load_matrix(const std::string& path, Semiring sr) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path, Error::Parse);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return matrix_from_csv(text, sr);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("input is not valid JSON: " + path, Error::Parse);
  return matrix_from_json(j, sr);
}

inline ordered_json matrix_to_json(const Matrix& m) {
  ordered_json j;
  j["n"] = m.n;
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.n; ++i) rows.push_back(json_vec(m.row(i)));
  j["entries"] = rows;
  return j;
}

// ---------------------------------------------------------------------------
// Analysis report

struct AnalyzeOptions {
  long power = 1;                    // eigencones are reported for this power
  std::optional<double> rho;         // restrict eigencones to one eigenvalue
  int horizon = 0;                   // classification horizon (0 = auto)
};

inline ordered_json analysis_report(const Matrix& input, Semiring sr, Tolerance tol,
                                    const AnalyzeOptions& opt = {}) {
  Matrix a = input;
  a.sr = sr;
  ordered_json rep;
  rep["algebra"] = semiring_name(sr);

  FrobeniusForm fnf = frobenius_form(a, tol);
  auto classinfo = spectral_classes(a, fnf, tol);
  Digraph g = digraph_of(a, tol);
  std::vector<double> spec = spectrum(a, sr, tol);

  // A requested eigenvalue snaps to the closest spectrum value; reports
  // print four-digit inputs back at full precision.
  std::optional<double> pick;
  if (opt.rho) {
    for (double r : spec)
      if (std::abs(r - *opt.rho) <= 1e-3 * std::max(1.0, std::abs(r)))
        if (!pick || std::abs(r - *opt.rho) < std::abs(*pick - *opt.rho)) pick = r;
    if (!pick) throw Error("requested rho is not in the spectrum", Error::InvalidArgument);
  }

  ordered_json jspec = ordered_json::array();
  for (double r : spec) jspec.push_back(round12(r));
  rep["spectrum"] = jspec;

  ordered_json jclasses = ordered_json::array();
  for (int c = 0; c < fnf.class_count(); ++c) {
    ordered_json jc;
    jc["id"] = c;
    jc["nodes"] = json_nodes(fnf.classes[c]);
    jc["trivial"] = !fnf.nontrivial[c];
    jc["rho_max"] = round12(classinfo[c].rho_max);
    jc["rho_plus"] = round12(classinfo[c].rho_plus);
    jc["spectral_max"] = classinfo[c].is_spectral_max;
    jc["spectral_plus"] = classinfo[c].is_spectral_plus;
    jc["cyclicity"] = cyclicity_of_component(g, fnf.classes[c]).sigma;
    jclasses.push_back(jc);
  }
  rep["classes"] = jclasses;

  double lam = max_cycle_mean(a, tol);
  if (lam > 0.0) {
    CriticalGraph crit = critical_graph(a, tol);
    ordered_json jcrit;
    jcrit["lambda"] = round12(lam);
    jcrit["nodes"] = json_nodes(crit.nodes);
    ordered_json jedges = ordered_json::array();
    for (auto [i, j] : crit.edges) jedges.push_back(ordered_json::array({i + 1, j + 1}));
    jcrit["edges"] = jedges;
    ordered_json jcomp = ordered_json::array();
    for (const auto& comp : crit.components) {
      ordered_json jc;
      jc["nodes"] = json_nodes(comp.nodes);
      jc["cyclicity"] = comp.cyc.sigma;
      ordered_json jcc = ordered_json::array();
      for (const auto& cls : comp.cyc.classes) jcc.push_back(json_nodes(cls));
      jc["cyclic_classes"] = jcc;
      jcomp.push_back(jc);
    }
    jcrit["components"] = jcomp;
    rep["critical_graph"] = jcrit;
  } else {
    rep["critical_graph"] = nullptr;
  }

  PeriodReport per = periods(a, sr, tol);
  ordered_json jper;
  jper["sigma_lambda"] = per.sigma_lambda;
  ordered_json jsr = ordered_json::array();
  for (auto [rho, s] : per.sigma_rho) {
    ordered_json e;
    e["rho"] = round12(rho);
    e["sigma"] = s;
    jsr.push_back(e);
  }
  jper["sigma_rho"] = jsr;
  rep["periods"] = jper;

  ordered_json jcones = ordered_json::array();
  for (double rho : spec) {
    if (pick && rho != *pick) continue;
    Eigencone ec = eigencone_of_power(a, rho, opt.power, sr, tol);
    ordered_json jc;
    jc["rho"] = round12(rho);
    jc["k"] = opt.power;
    ordered_json jg = ordered_json::array(), jp = ordered_json::array();
    for (std::size_t i = 0; i < ec.generators.size(); ++i) {
      jg.push_back(json_vec(ec.generators[i]));
      ordered_json pj;
      pj["ancestor"] = ec.provenance[i].ancestor;
      pj["cyclic_class"] = ec.provenance[i].cyclic_class;
      jp.push_back(pj);
    }
    jc["generators"] = jg;
    jc["provenance"] = jp;
    jcones.push_back(jc);
  }
  rep["eigencones"] = jcones;

  CoreDescription core = compute_core(a, sr, tol);
  ordered_json jcore;
  jcore["sigma_lambda"] = core.sigma_lambda;
  jcore["census"] = core.census;
  ordered_json jext = ordered_json::array();
  for (const Vec& v : core.extremals) jext.push_back(json_vec(v));
  jcore["extremals"] = jext;
  ordered_json jorb = ordered_json::array();
  for (const Orbit& orb : core.orbits) {
    ordered_json jo;
    jo["rho"] = round12(orb.rho);
    jo["ancestor"] = orb.ancestor;
    jo["cyclicity"] = orb.cyclicity;
    ordered_json jm = ordered_json::array();
    for (int idx : orb.members) jm.push_back(idx);
    jo["members"] = jm;
    jorb.push_back(jo);
  }
  jcore["orbits"] = jorb;
  if (sr == Semiring::MaxTimes) {
    PeriodicityReport pr = classify_periodicity(a, tol, opt.horizon);
    ordered_json jp;
    jp["class"] = periodicity_name(pr.kind);
    jp["undetermined_at_horizon"] = pr.undetermined_at_horizon;
    jp["horizon"] = pr.horizon;
    jp["stabilization_t"] = pr.stabilization_t;
    jp["core_reached"] = pr.core_reached;
    jcore["power_sequence"] = jp;
  }
  rep["core"] = jcore;

  // Built-in consistency checks on the reported data.
  ordered_json jchecks = ordered_json::array();
  auto add_check = [&](const char* name, bool pass) {
    ordered_json c;
    c["name"] = name;
    c["pass"] = pass;
    jchecks.push_back(c);
  };
  {
    bool eig_ok = true;
    Tolerance ctol{1e-7, 1e-10};
    for (double rho : spec) {
      Eigencone ec = eigencone_of_power(a, rho, opt.power, sr, tol);
      Matrix ak = mat_power(a, opt.power);
      double rk = std::pow(rho, static_cast<double>(opt.power));
      for (const Vec& v : ec.generators) {
        Vec lhs = mat_vec(ak, v);
        for (int i = 0; i < a.n; ++i)
          if (!ctol.eq(lhs[i] / rk, v[i])) eig_ok = false;
      }
    }
    add_check("eigen-equation", eig_ok);

    long long cyc_sum = 0;
    for (const Orbit& orb : core.orbits) cyc_sum += orb.cyclicity;
    add_check("census-equals-orbit-lengths", cyc_sum == core.census);

    bool orbit_ok = true;
    for (const Orbit& orb : core.orbits)
      for (std::size_t t = 0; t < orb.members.size(); ++t) {
        const Vec& from = core.extremals[orb.members[t]];
        const Vec& to = core.extremals[orb.members[(t + 1) % orb.members.size()]];
        Matrix am = a;
        am.sr = sr;
        if (!proportional(mat_vec(am, from), to, tol)) orbit_ok = false;
      }
    add_check("orbit-action", orbit_ok);
  }
  rep["checks"] = jchecks;
  return rep;
}

// ---------------------------------------------------------------------------
// DOT export: the weighted digraph, the condensation, and the critical graph.

inline std::string dot_export(const Matrix& input, Tolerance tol = {}) {
  Matrix a = input;
  std::ostringstream out;
  char buf[64];
  Digraph g = digraph_of(a, tol);

  out << "digraph matrix {\n";
  for (int i = 0; i < a.n; ++i) out << "  n" << (i + 1) << " [label=\"" << (i + 1) << "\"];\n";
  for (int i = 0; i < a.n; ++i)
    for (std::size_t e = 0; e < g.succ[i].size(); ++e) {
      std::snprintf(buf, sizeof buf, "%.6g", g.w[i][e]);
      out << "  n" << (i + 1) << " -> n" << (g.succ[i][e] + 1) << " [label=\"" << buf << "\"];\n";
    }
  out << "}\n";

  FrobeniusForm fnf = frobenius_form(a, tol);
  auto classinfo = spectral_classes(a, fnf, tol);
  out << "digraph condensation {\n";
  for (int c = 0; c < fnf.class_count(); ++c) {
    out << "  c" << c << " [label=\"{";
    for (std::size_t i = 0; i < fnf.classes[c].size(); ++i)
      out << (i ? "," : "") << (fnf.classes[c][i] + 1);
    std::snprintf(buf, sizeof buf, "%.6g / %.6g", classinfo[c].rho_max, classinfo[c].rho_plus);
    out << "} " << buf << "\"];\n";
  }
  for (auto [mu, nu] : fnf.reduced_edges) out << "  c" << mu << " -> c" << nu << ";\n";
  out << "}\n";

  out << "digraph critical {\n";
  if (max_cycle_mean(a, tol) > 0.0) {
    CriticalGraph crit = critical_graph(a, tol);
    for (int v : crit.nodes) out << "  n" << (v + 1) << ";\n";
    for (auto [i, j] : crit.edges) out << "  n" << (i + 1) << " -> n" << (j + 1) << ";\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Oracle report serialization

inline ordered_json oracle_report_json(const OracleReport& rep) {
  ordered_json j;
  j["seed"] = rep.seed;
  j["horizon"] = rep.horizon;
  j["all_pass"] = rep.all_pass();
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    if (!c.pass) {
      jc["instance"] = c.instance;
      jc["witness"] = c.witness;
    }
    checks.push_back(jc);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace tropicore

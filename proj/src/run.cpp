#include "levilab/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

namespace levilab {

namespace {

// ---------------------------------------------------------------------------
// Report writer. Hand-rolled so the byte layout is fully pinned down:
// 12 significant digits, complex numbers as [re, im], objects multiline,
// arrays inline unless they hold objects.

std::string fmt_double(double v) {
  if (v == 0.0) return "0";
  if (!std::isfinite(v)) return "null";  // JSON has no inf/nan
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

class JsonWriter {
 public:
  const std::string& str() const { return out_; }

  void begin_object(bool inline_mode = false) {
    prefix();
    out_ += "{";
    stack_.push_back({true, inline_mode, true});
  }
  void end_object() {
    Frame f = stack_.back();
    stack_.pop_back();
    if (!f.inline_mode && !f.first) {
      out_ += "\n";
      out_.append(2 * stack_.size(), ' ');
    }
    out_ += "}";
  }
  void begin_array(bool inline_mode = true) {
    prefix();
    out_ += "[";
    stack_.push_back({false, inline_mode, true});
  }
  void end_array() {
    Frame f = stack_.back();
    stack_.pop_back();
    if (!f.inline_mode && !f.first) {
      out_ += "\n";
      out_.append(2 * stack_.size(), ' ');
    }
    out_ += "]";
  }
  void key(const std::string& k) {
    Frame& f = stack_.back();
    bool was_first = f.first;
    f.first = false;
    if (f.inline_mode) {
      if (!was_first) out_ += ", ";
    } else {
      if (!was_first) out_ += ",";
      out_ += "\n";
      out_.append(2 * stack_.size(), ' ');
    }
    out_ += "\"" + escape(k) + "\": ";
    after_key_ = true;
  }
  void string_value(const std::string& v) { scalar("\"" + escape(v) + "\""); }
  void number(double v) { scalar(fmt_double(v)); }
  void number(int v) { scalar(std::to_string(v)); }
  void number64(std::uint64_t v) { scalar(std::to_string(v)); }
  void boolean(bool v) { scalar(v ? "true" : "false"); }

  void complex_value(cplx v) {
    begin_array(true);
    number(v.real());
    number(v.imag());
    end_array();
  }
  void real_vector(const VectorXd& v) {
    begin_array(true);
    for (int i = 0; i < v.size(); ++i) number(v(i));
    end_array();
  }
  void complex_vector(const VectorXcd& v) {
    begin_array(true);
    for (int i = 0; i < v.size(); ++i) complex_value(v(i));
    end_array();
  }
  void complex_matrix(const MatrixXcd& m) {
    begin_array(true);
    for (int r = 0; r < m.rows(); ++r)
      complex_vector(m.row(r).transpose());
    end_array();
  }
  void real_matrix_columns(const MatrixXd& m) {
    begin_array(true);
    for (int c = 0; c < m.cols(); ++c) real_vector(m.col(c));
    end_array();
  }

 private:
  struct Frame {
    bool object;
    bool inline_mode;
    bool first;
  };

  void prefix() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (stack_.empty()) return;
    Frame& f = stack_.back();
    if (!f.first) out_ += f.inline_mode ? ", " : ",";
    if (!f.inline_mode) {
      out_ += "\n";
      out_.append(2 * stack_.size(), ' ');
    }
    f.first = false;
  }

  void scalar(const std::string& text) {
    prefix();
    out_ += text;
  }

  std::string out_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

// ---------------------------------------------------------------------------
// Config parsing.

using nlohmann::json;

const std::vector<std::string> kAllOps = {"weights", "orbit",   "levi",
                                          "cone",    "domains", "verify"};

std::vector<std::string> expand_ops(const std::vector<std::string>& requested) {
  std::set<std::string> want(requested.begin(), requested.end());
  // Each later stage consumes the one before it.
  auto need = [&](const std::string& op, const std::string& dep) {
    if (want.count(op)) want.insert(dep);
  };
  need("verify", "levi");
  need("domains", "levi");
  need("cone", "levi");
  need("levi", "orbit");
  need("orbit", "weights");
  want.insert("weights");
  std::vector<std::string> out;
  for (const std::string& op : kAllOps)
    if (want.count(op)) out.push_back(op);
  return out;
}

VectorXd vector_from(const json& arr, const std::string& what) {
  if (!arr.is_array()) throw ValidationError("config-type", what + " must be an array");
  VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw ValidationError("config-type", what + " entries must be numbers");
    v(static_cast<int>(i)) = arr[i].get<double>();
  }
  return v;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ValidationError("config-parse", e.what());
  }
  if (!doc.is_object())
    throw ValidationError("config-type", "config document must be an object");

  RunConfig cfg;
  bool has_case = false;
  for (auto& [k, v] : doc.items()) {
    if (k == "case") {
      has_case = true;
      if (v.is_string()) {
        cfg.spec = parse_case_name(v.get<std::string>());
        cfg.case_label = v.get<std::string>();
      } else if (v.is_object()) {
        CaseSpec s;
        if (v.contains("base")) s.base = v["base"].get<std::string>();
        if (v.contains("k")) s.k = v["k"].get<int>();
        if (v.contains("pair")) s.pair = v["pair"].get<std::string>();
        cfg.spec = s;
        cfg.case_label = case_name(s);
      } else {
        throw ValidationError("config-type", "case must be a name or an object");
      }
    } else if (k == "cartan") {
      if (v.is_string()) {
        if (v.get<std::string>() != "fundamental")
          throw ValidationError("cartan-choice",
                                "string cartan must be \"fundamental\"");
        cfg.cartan = CartanChoice::fundamental;
      } else if (v.is_object() && v.contains("menu")) {
        cfg.cartan = CartanChoice::menu;
        cfg.menu_index = v["menu"].get<int>();
      } else if (v.is_object() && v.contains("basis")) {
        cfg.cartan = CartanChoice::inline_basis;
        const json& cols = v["basis"];
        if (!cols.is_array() || cols.empty())
          throw ValidationError("cartan-basis", "inline basis needs columns");
        VectorXd first = vector_from(cols[0], "cartan basis column");
        MatrixXd basis(first.size(), cols.size());
        basis.col(0) = first;
        for (size_t c = 1; c < cols.size(); ++c) {
          VectorXd col = vector_from(cols[c], "cartan basis column");
          if (col.size() != basis.rows())
            throw ValidationError("cartan-basis", "ragged basis columns");
          basis.col(static_cast<int>(c)) = col;
        }
        cfg.cartan_basis = basis;
        cfg.cartan_nu = v.contains("nu")
                            ? vector_from(v["nu"], "cartan nu")
                            : VectorXd(VectorXd::Zero(basis.rows()));
      } else {
        throw ValidationError("cartan-choice",
                              "cartan must be \"fundamental\", {menu}, or {basis, nu}");
      }
    } else if (k == "eta") {
      cfg.eta = vector_from(v, "eta");
      cfg.has_eta = true;
    } else if (k == "ops") {
      if (!v.is_array()) throw ValidationError("config-type", "ops must be an array");
      if (v.empty()) throw ValidationError("ops-empty", "ops must be nonempty");
      for (const auto& op : v) {
        std::string name = op.get<std::string>();
        if (std::find(kAllOps.begin(), kAllOps.end(), name) == kAllOps.end())
          throw ValidationError("ops-unknown", "unknown op " + name);
        cfg.ops.push_back(name);
      }
    } else if (k == "tol") {
      if (!v.is_object())
        throw ValidationError("config-type", "tol must be an object");
      Tolerances probe;
      for (auto& [tk, tv] : v.items()) {
        double value = tv.get<double>();
        probe.set(tk, value);  // rejects unknown keys and bad values
        cfg.tol_overrides[tk] = value;
      }
    } else if (k == "seed") {
      cfg.seed = v.get<std::uint64_t>();
    } else if (k == "output") {
      cfg.output = v.get<std::string>();
    } else if (k == "quiet") {
      cfg.quiet = v.get<bool>();
    } else {
      throw ValidationError("config-key", "unknown config key " + k);
    }
  }
  if (!has_case)
    throw ValidationError("config-missing", "config must name a case");
  if (cfg.case_label.empty()) cfg.case_label = case_name(cfg.spec);
  return cfg;
}

namespace {

const char* reality_name(WeightReality r) {
  switch (r) {
    case WeightReality::zero: return "zero";
    case WeightReality::real: return "real";
    case WeightReality::imaginary: return "imaginary";
    case WeightReality::complex: return "complex";
  }
  return "?";
}

void write_inertia(JsonWriter& w, const Inertia& in) {
  w.begin_object(true);
  w.key("plus");
  w.number(in.plus);
  w.key("minus");
  w.number(in.minus);
  w.key("zero");
  w.number(in.zero);
  w.end_object();
}

void write_weight_table(JsonWriter& w, const WeightSystem& ws) {
  w.begin_object();
  w.key("count");
  w.number(static_cast<int>(ws.weights.size()));
  w.key("zero_index");
  w.number(ws.zero_index);
  w.key("table");
  w.begin_array(false);
  for (const ExtendedWeight& wt : ws.weights) {
    w.begin_object();
    w.key("lambda");
    w.complex_vector(wt.lambda);
    w.key("a");
    w.complex_value(wt.a);
    w.key("reality");
    w.string_value(reality_name(wt.reality));
    w.key("dim");
    w.number(static_cast<int>(wt.space.cols()));
    w.key("dual");
    w.number(wt.dual);
    w.key("s2partner");
    w.number(wt.s2partner);
    w.key("norm_sign");
    w.number(wt.norm_sign);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

void write_orbit(JsonWriter& w, const OrbitProfile& p) {
  w.begin_object();
  w.key("multiplier");
  w.begin_array(true);
  for (cplx m : p.multiplier) w.complex_value(m);
  w.end_array();
  w.key("lambda_tilde");
  w.begin_array(true);
  for (int i : p.lambda_tilde_z) w.number(i);
  w.end_array();
  w.key("complex_tangent");
  w.begin_array(true);
  for (int i : p.complex_tangent_indices) w.number(i);
  w.end_array();
  w.key("codim");
  w.number(p.codim);
  w.key("strongly_regular");
  w.boolean(p.strongly_regular);
  w.key("near_degenerate");
  w.boolean(p.near_degenerate);
  w.key("nearest_offset");
  w.number(p.nearest_offset);
  w.end_object();
}

void write_levi(JsonWriter& w, const LeviReport& rep) {
  w.begin_object();
  w.key("blocks");
  w.begin_array(false);
  for (const LeviBlock& b : rep.blocks) {
    w.begin_object();
    w.key("case");
    w.string_value(block_case_name(b.case_tag));
    w.key("indices");
    w.begin_array(true);
    for (int i : b.index_set) w.number(i);
    w.end_array();
    w.key("matrix");
    w.complex_matrix(b.matrix);
    w.key("transversal");
    w.complex_vector(b.transversal);
    w.end_object();
  }
  w.end_array();
  w.key("cross_block_residual");
  w.number(rep.cross_block_residual);
  w.key("hypersurface");
  w.boolean(rep.hypersurface);
  if (rep.hypersurface) {
    w.key("scalar_matrix");
    w.complex_matrix(rep.hypersurface_matrix);
    w.key("inertia");
    write_inertia(w, rep.hypersurface_inertia);
  }
  w.end_object();
}

void write_cone(JsonWriter& w, const std::vector<VectorXd>& gens,
                const ConeVerdict& v) {
  w.begin_object();
  w.key("generators");
  w.begin_array(false);
  for (const VectorXd& g : gens) w.real_vector(g);
  w.end_array();
  w.key("case");
  w.string_value(cone_case_name(v.cone_case));
  w.key("full");
  w.boolean(v.full);
  w.key("pointed");
  w.boolean(v.pointed);
  w.key("stein_obstruction");
  w.boolean(v.stein_obstruction);
  w.key("reducible_warning");
  w.boolean(v.reducible_warning);
  if (!v.full) {
    w.key("farkas");
    w.real_vector(v.farkas);
  }
  w.end_object();
}

void write_domains(JsonWriter& w, const DomainReport& d) {
  w.begin_object();
  w.key("hermitian_applicable");
  w.boolean(d.hermitian_applicable);
  if (d.hermitian_applicable) {
    w.key("hermitian");
    w.boolean(d.hermitian);
  }
  w.key("cmax_defined");
  w.boolean(d.cmax_defined);
  if (d.cmax_defined) {
    w.key("eta_in_cmax");
    w.boolean(d.eta_in_cmax);
    w.key("eta_in_cmax_interior");
    w.boolean(d.eta_in_cmax_interior);
  }
  w.key("compactness_flag");
  w.begin_array(true);
  for (int f : d.compactness_flag) w.number(f);
  w.end_array();
  w.key("rank1_defined");
  w.boolean(d.rank1_defined);
  if (d.rank1_defined) {
    w.key("rank1");
    w.begin_object();
    w.key("inertia");
    write_inertia(w, d.rank1.inertia);
    w.key("q");
    w.number(d.rank1.q);
    w.end_object();
  }
  w.key("q_defined");
  w.boolean(d.q_defined);
  if (d.q_defined) {
    w.key("q_complete");
    w.begin_object();
    w.key("theorem");
    w.number(d.q_complete.theorem_count);
    w.key("proof");
    w.number(d.q_complete.proof_count);
    w.key("discrepancy");
    w.boolean(d.q_complete.discrepancy);
    w.end_object();
  }
  w.end_object();
}

std::string error_document(const std::string& module, const std::string& op,
                           const std::string& invariant,
                           const std::string& message) {
  JsonWriter w;
  w.begin_object();
  w.key("tool");
  w.string_value("levilab");
  w.key("error");
  w.begin_object();
  w.key("module");
  w.string_value(module);
  w.key("operation");
  w.string_value(op);
  w.key("invariant");
  w.string_value(invariant);
  w.key("message");
  w.string_value(message);
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  std::string module = "cli";
  std::string operation = "run";
  RunResult result;
  try {
    Tolerances tol;
    module = "cli";
    operation = "tolerances";
    for (const auto& [k, v] : cfg.tol_overrides) tol.set(k, v);

    std::vector<std::string> ops =
        expand_ops(cfg.ops.empty() ? kAllOps : cfg.ops);
    auto has = [&](const char* op) {
      return std::find(ops.begin(), ops.end(), op) != ops.end();
    };

    module = "catalog";
    operation = "build_case";
    CatalogCase cc = build_case(cfg.spec, tol);

    module = "cartan";
    CartanDatum datum;
    std::string cartan_source;
    if (cfg.cartan == CartanChoice::fundamental) {
      operation = "fundamental_datum";
      datum = fundamental_datum(cc.setup, cfg.seed, tol);
      cartan_source = "fundamental";
    } else if (cfg.cartan == CartanChoice::menu) {
      operation = "standard_cartan_menu";
      auto menu = standard_cartan_menu(cc, cfg.seed, tol);
      if (cfg.menu_index < 0 || cfg.menu_index >= static_cast<int>(menu.size()))
        throw ValidationError("cartan-menu", "menu index out of range");
      datum = menu[cfg.menu_index].second;
      cartan_source = "menu:" + std::to_string(cfg.menu_index) + ":" +
                      menu[cfg.menu_index].first;
    } else {
      operation = "make_datum";
      datum = make_datum(cc.setup, cfg.cartan_nu, cfg.cartan_basis, tol);
      cartan_source = "inline";
    }

    module = "cli";
    operation = "eta";
    VectorXd eta = VectorXd::Zero(datum.rank());
    if (cfg.has_eta) {
      if (cfg.eta.size() != datum.rank())
        throw ValidationError("eta-length",
                              "eta has " + std::to_string(cfg.eta.size()) +
                                  " coordinates, datum rank is " +
                                  std::to_string(datum.rank()));
      eta = cfg.eta;
    }
    BasePoint base{eta};

    module = "weights";
    operation = "extended_decomposition";
    WeightSystem ws = extended_decomposition(cc.setup, datum, tol);
    operation = "positive_system";
    PositiveSystem pos = positive_system(ws, nullptr, cfg.seed, tol);
    operation = "apply_levi_basis";
    apply_levi_basis(ws, pos, tol);

    JsonWriter w;
    w.begin_object();
    w.key("tool");
    w.string_value("levilab");
    w.key("version");
    w.string_value("0.1.0");
    w.key("case");
    w.begin_object(true);
    w.key("name");
    w.string_value(cc.name);
    w.key("base");
    w.string_value(cfg.spec.base);
    w.key("k");
    w.number(cfg.spec.k);
    w.key("pair");
    w.string_value(cfg.spec.pair);
    w.end_object();
    w.key("seed");
    w.number64(cfg.seed);
    w.key("tolerance_overrides");
    w.begin_object(true);
    for (const auto& [k, v] : cfg.tol_overrides) {
      w.key(k);
      w.number(v);
    }
    w.end_object();
    w.key("cartan");
    w.begin_object();
    w.key("source");
    w.string_value(cartan_source);
    w.key("rank");
    w.number(datum.rank());
    w.key("t_dim");
    w.number(datum.t_dim);
    w.key("a_dim");
    w.number(datum.a_dim);
    w.end_object();
    w.key("eta");
    w.real_vector(eta);
    w.key("ops");
    w.begin_array(true);
    for (const std::string& op : ops) w.string_value(op);
    w.end_array();
    w.key("setup");
    w.begin_object(true);
    w.key("algebra_dim");
    w.number(cc.setup.g.dim);
    w.key("g1_dim");
    w.number(static_cast<int>(cc.setup.g1.cols()));
    w.key("g2_dim");
    w.number(static_cast<int>(cc.setup.g2.cols()));
    w.key("k1_dim");
    w.number(static_cast<int>(cc.setup.k1.cols()));
    w.key("k2_dim");
    w.number(static_cast<int>(cc.setup.k2.cols()));
    w.end_object();

    w.key("weights");
    write_weight_table(w, ws);

    LeviReport rep;
    bool have_rep = false;
    if (has("orbit")) {
      module = "orbit";
      operation = "orbit_profile";
      OrbitProfile profile = orbit_profile(ws, base, tol);
      w.key("orbit");
      write_orbit(w, profile);

      if (has("levi")) {
        module = "leviform";
        operation = "levi_matrix";
        rep = levi_matrix(ws, base, tol);
        have_rep = true;
        w.key("levi");
        write_levi(w, rep);
      }
      if (has("cone")) {
        module = "leviform";
        operation = "cone_generators";
        std::vector<VectorXd> gens = cone_generators(ws, base, tol);
        module = "domains";
        operation = "cone_with_context";
        ConeVerdict verdict = cone_with_context(ws, base, cfg.seed, tol);
        w.key("cone");
        write_cone(w, gens, verdict);
      }
      if (has("domains")) {
        module = "domains";
        operation = "domain_report";
        DomainReport dr = domain_report(ws, base, cfg.seed, tol);
        w.key("domains");
        write_domains(w, dr);
      }
      if (has("verify")) {
        module = "verify";
        w.key("verify");
        w.begin_object();
        operation = "adjoint_crosscheck";
        AdjointCheck adj = adjoint_crosscheck(ws, tol);
        w.key("adjoint");
        w.begin_object();
        w.key("spans");
        w.boolean(adj.spans);
        w.key("ad_residual");
        w.begin_array(true);
        for (double r : adj.ad_residual) w.number(r);
        w.end_array();
        w.key("taun_residual");
        w.number(adj.taun_residual);
        w.key("c_block_residual");
        w.number(adj.c_block_residual);
        w.key("worst");
        w.number(adj.worst);
        w.end_object();

        operation = "formula_equivalence";
        const int trials = 5;
        double dev = formula_equivalence_trials(ws, trials, cfg.seed, tol);
        w.key("formula_equivalence");
        w.begin_object(true);
        w.key("trials");
        w.number(trials);
        w.key("max_deviation");
        w.number(dev);
        w.end_object();

        if (cfg.spec.base == "sl2" && cfg.spec.k == 1 &&
            has_certified_probe(cfg.spec.pair)) {
          operation = "extrinsic_levi_inertia";
          ExtrinsicProbe probe = hypersurface_probe(cfg.spec.pair, 0.3);
          double inv = invariance_residual(probe);
          Inertia oracle = extrinsic_levi_inertia(probe, tol);
          w.key("extrinsic");
          w.begin_object();
          w.key("defining_function");
          w.string_value(probe.defining_function);
          w.key("slice");
          w.number(0.3);
          w.key("step");
          w.number(probe.step);
          w.key("invariance_residual");
          w.number(inv);
          w.key("inertia");
          write_inertia(w, oracle);
          // Only the theta-s11 family has one inertia across every regular
          // point, which makes the oracle and the configured eta comparable.
          if (cfg.spec.pair == "theta-s11" && have_rep && rep.hypersurface) {
            w.key("matches_intrinsic");
            w.boolean(oracle == rep.hypersurface_inertia);
          }
          w.end_object();
        }
        w.end_object();
      }
    }

    w.end_object();
    result.report = w.str() + "\n";
    result.exit_code = 0;
    return result;
  } catch (const ValidationError& e) {
    result.exit_code = 2;
    result.error = module + "/" + operation + ": " + e.what();
    result.report = error_document(module, operation, e.code, e.what());
    return result;
  } catch (const NumericalError& e) {
    result.exit_code = 3;
    result.error = module + "/" + operation + ": " + e.what();
    result.report = error_document(module, operation, e.code, e.what());
    return result;
  }
}

}  // namespace levilab

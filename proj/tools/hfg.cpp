#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hfg/action.hpp"
#include "hfg/disk.hpp"
#include "hfg/hfd_io.hpp"
#include "hfg/report.hpp"

using namespace hfg;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kInconclusive = 3 };

struct RunConfig {
  std::string format = "text";
  int trunc = 4;
  int cap = 3;
  int bound = 8;
  uint64_t seed = 7;
  std::vector<std::string> inputs;

  Truncation truncation() const { return Truncation::total(trunc); }
  bool is_json() const { return format == "json"; }
};

int env_truncation() {
  const char* s = std::getenv("HFG_TRUNC");
  if (!s || !*s) return 4;
  try {
    return std::stoi(s);
  } catch (const std::logic_error&) {
    throw InputError(std::string("HFG_TRUNC is not an integer: ") + s);
  }
}

// Collects verification records and decides the exit code.
class Reporter {
 public:
  explicit Reporter(const RunConfig& cfg) : cfg_(cfg) {}

  // status overrides the agreement level, e.g. "inconclusive"
  void record(const CheckResult& r, const std::string& trunc, const std::string& status = "") {
    if (!r.ok()) failed_ = true;
    const std::string st = status.empty() ? status_string(r.level) : status;
    if (cfg_.is_json()) {
      json j;
      j["identity"] = r.name;
      j["anchor"] = r.anchor;
      j["status"] = st;
      j["truncation"] = trunc;
      if (!r.detail.empty()) j["detail"] = r.detail;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << st << "\t" << r.name << "\t[" << r.anchor << "]";
      if (!r.detail.empty()) std::cout << "\t" << r.detail;
      std::cout << "\n";
    }
  }
  void record(const CheckResult& r) { record(r, cfg_.truncation().describe()); }
  void inconclusive() { inconclusive_ = true; }
  int exit_code() const { return failed_ ? kFail : inconclusive_ ? kInconclusive : kOk; }

 private:
  const RunConfig& cfg_;
  bool failed_ = false, inconclusive_ = false;
};

CheckResult exact_if(const std::string& name, const std::string& anchor, bool ok, std::string detail = "") {
  return {name, anchor, ok ? Agreement::Exact : Agreement::Differ, std::move(detail)};
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

HeegaardDiagram load_diagram(const std::string& path) {
  auto h = read_hfd_file(path);
  validate(h);
  return h;
}

std::string domain_string(const HeegaardDiagram& h, const Domain& D) {
  std::ostringstream os;
  bool first = true;
  for (int r = 0; r < h.nregions(); ++r) {
    if (D[r] == 0) continue;
    os << (first ? "" : " ") << h.regions[r].id << "=" << D[r];
    first = false;
  }
  return first ? "0" : os.str();
}

DiagramComplex diagram_complex(const HeegaardDiagram& h, Flavor flavor, const RunConfig& cfg, bool assume_zero) {
  EnumOptions opt;
  opt.cap = cfg.cap;
  opt.hat = flavor == Flavor::Hat;
  return compute_complex(h, flavor, opt, Truncation::none(), assume_zero);
}

// exit 3 when the counts are not all forced
bool report_noncombinatorial(const DiagramComplex& dc, Reporter& rep) {
  if (dc.table.inconclusive) {
    std::cerr << "enumeration reached the multiplicity cap; raise --cap\n";
    rep.inconclusive();
    return true;
  }
  if (dc.combinatorial()) return false;
  for (const auto& disk : dc.others)
    std::cerr << "non-combinatorial domain " << generator_name(dc.h, dc.table.gens[disk.src]) << " -> "
              << generator_name(dc.h, dc.table.gens[disk.tgt]) << ": " << domain_string(dc.h, disk.D) << "\n";
  rep.inconclusive();
  return !dc.assume_zero;
}

int cmd_validate(const RunConfig& cfg) {
  const std::string& path = cfg.inputs.at(0);
  if (ends_with(path, ".flow")) {
    auto g = read_flow_file(path);
    validate(g);
    auto d = cerf_decompose(g);
    std::cout << "valid flow graph: " << g.vertices.size() << " vertices, " << g.edges.size() << " edges, "
              << d.pieces.size() << " elementary pieces\n";
  } else {
    auto h = load_diagram(path);
    std::cout << "valid diagram: d=" << h.d << ", " << h.nregions() << " regions, " << h.ncrossings()
              << " crossings, " << h.basepoints.size() << " basepoints, " << h.paths.size() << " paths\n";
  }
  return kOk;
}

int cmd_generators(const RunConfig& cfg) {
  auto h = load_diagram(cfg.inputs.at(0));
  for (const auto& x : enumerate_generators(h)) {
    if (cfg.is_json()) std::cout << json{{"generator", generator_name(h, x)}}.dump() << "\n";
    else std::cout << generator_name(h, x) << "\n";
  }
  return kOk;
}

int cmd_spinc(const RunConfig& cfg) {
  auto h = load_diagram(cfg.inputs.at(0));
  auto gens = enumerate_generators(h);
  auto p = spinc_partition(h, gens);
  for (size_t k = 0; k < p.labels.size(); ++k) {
    std::vector<std::string> members;
    for (size_t i = 0; i < gens.size(); ++i)
      if (p.cls[i] == static_cast<int>(k)) members.push_back(generator_name(h, gens[i]));
    if (cfg.is_json()) {
      std::cout << json{{"class", p.labels[k]}, {"generators", members}}.dump() << "\n";
    } else {
      std::cout << p.labels[k] << ":";
      for (const auto& m : members) std::cout << " " << m;
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_admissibility(const RunConfig& cfg, bool strong, const std::string& cls) {
  auto h = load_diagram(cfg.inputs.at(0));
  Reporter rep(cfg);
  auto weak = check_weak_admissibility(h);
  rep.record(exact_if("weak admissibility", "no nonnegative periodic domain", weak.admissible,
                      weak.admissible ? "" : "witness " + domain_string(h, weak.witness)),
             "none");
  if (strong) {
    auto gens = enumerate_generators(h);
    auto p = spinc_partition(h, gens);
    int k = 0;
    if (!cls.empty()) {
      auto it = std::find(p.labels.begin(), p.labels.end(), cls);
      if (it == p.labels.end()) throw InputError("unknown spin^c class '" + cls + "'");
      k = static_cast<int>(it - p.labels.begin());
    }
    if (p.labels.empty()) throw InputError("diagram has no generators");
    auto s = check_strong_admissibility(h, gens[p.representative[k]], cfg.bound);
    CheckResult r{"strong admissibility", "class " + p.labels[k] + ", bound " + std::to_string(cfg.bound),
                  s.status == StrongStatus::FailedWitness ? Agreement::Differ : Agreement::Exact, s.reason};
    if (s.status == StrongStatus::FailedWitness) r.detail += ": witness " + domain_string(h, s.witness);
    const bool open = s.status == StrongStatus::Inconclusive;
    if (open) rep.inconclusive();
    rep.record(r, "none", open ? "inconclusive" : "");
  }
  return rep.exit_code();
}

int cmd_differential(const RunConfig& cfg, const std::string& flavor, bool assume_zero) {
  auto h = load_diagram(cfg.inputs.at(0));
  if (flavor != "hat" && flavor != "minus") throw InputError("flavor must be hat or minus");
  auto dc = diagram_complex(h, flavor == "hat" ? Flavor::Hat : Flavor::Minus, cfg, assume_zero);
  Reporter rep(cfg);
  if (report_noncombinatorial(dc, rep)) return kInconclusive;
  const ColoredComplex& c = *dc.complex;
  if (cfg.is_json()) {
    json j;
    j["generators"] = c.gens;
    json entries = json::array();
    for (int col = 0; col < c.size(); ++col)
      for (int row = 0; row < c.size(); ++row)
        if (!c.d.at(row, col).is_zero())
          entries.push_back({{"from", c.gens[col]}, {"to", c.gens[row]}, {"coefficient", c.d.at(row, col).to_string(*c.ring)}});
    j["differential"] = entries;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << c.size() << " generators\n" << format_matrix(c, c, c.d);
  }
  return rep.exit_code();
}

int cmd_d2check(const RunConfig& cfg) {
  auto h = load_diagram(cfg.inputs.at(0));
  Reporter rep(cfg);
  for (Flavor f : {Flavor::Hat, Flavor::Minus}) {
    auto dc = diagram_complex(h, f, cfg, false);
    const std::string name = f == Flavor::Hat ? "hat" : "minus";
    if (report_noncombinatorial(dc, rep)) return kInconclusive;
    rep.record(exact_if("d^2 = 0 (" + name + ")", "forced disk counts", d_squared_check(*dc.complex),
                        std::to_string(dc.complex->size()) + " generators"),
               "none");
  }
  return rep.exit_code();
}

int cmd_relhom(const RunConfig& cfg, const std::vector<std::string>& ids, bool print) {
  auto h = load_diagram(cfg.inputs.at(0));
  auto dc = diagram_complex(h, Flavor::Minus, cfg, false);
  Reporter rep(cfg);
  if (report_noncombinatorial(dc, rep)) return kInconclusive;
  std::vector<std::string> todo = ids;
  if (todo.empty())
    for (const auto& p : h.paths) todo.push_back(p.id);
  for (const auto& id : todo) {
    const PathSpec& p = h.require_path(id);
    auto a = rel_homology(dc, p);
    Poly T = basepoint_variable(dc, p.from) + basepoint_variable(dc, p.to);
    rep.record(exact_if("A d + d A = U_w + U_w' for " + id, "relative homology relation",
                        chain_defect(a) == PolyMatrix::scalar(a.src->size(), T), p.from + " -> " + p.to),
               "none");
    if (print && !cfg.is_json()) std::cout << format_matrix(*a.src, *a.tgt, a.m);
  }
  return rep.exit_code();
}

ActionContext action_context(const FlowGraph& g, const std::string& hfd, const RunConfig& cfg, Reporter& rep,
                             bool& stop) {
  stop = false;
  if (hfd.empty()) return model_context(g.extras, cfg.truncation());
  auto h = load_diagram(hfd);
  auto dc = diagram_complex(h, Flavor::Minus, cfg, false);
  stop = report_noncombinatorial(dc, rep);
  if (stop) return {};
  return diagram_context(dc, h.paths, cfg.truncation());
}

int cmd_graph_action(const RunConfig& cfg, const std::string& hfd, int k, bool print) {
  auto g = read_flow_file(cfg.inputs.at(0));
  validate(g);
  Reporter rep(cfg);
  bool stop = false;
  auto ctx = action_context(g, hfd, cfg, rep, stop);
  if (stop) return kInconclusive;
  auto decs = random_decompositions(g, cfg.seed, k);
  auto ref = graph_action(decs[0].d, ctx);
  rep.record(exact_if("graph action is a chain map", "graph action", is_chain_map(ref)));
  for (size_t i = 1; i < decs.size(); ++i) {
    std::string word;
    for (const auto& m : decs[i].word) word += (word.empty() ? "" : "; ") + m.describe();
    rep.record({"decomposition " + std::to_string(i) + " agrees with the canonical one",
                "independence of the Cerf decomposition", compare_maps(ref, graph_action(decs[i].d, ctx)), word});
  }
  rep.record({"level point order", "independence of the tower order",
              compare_maps(ref, graph_action(decs[0].d, ctx, true)), ""});
  if (print && !cfg.is_json()) std::cout << format_matrix(*ref.src, *ref.tgt, ref.m);
  return rep.exit_code();
}

int cmd_cerf_check(const RunConfig& cfg, const std::string& hfd, int steps) {
  auto g = read_flow_file(cfg.inputs.at(0));
  validate(g);
  Reporter rep(cfg);
  bool stop = false;
  auto ctx = action_context(g, hfd, cfg, rep, stop);
  if (stop) return kInconclusive;
  auto d = cerf_decompose(g);
  if (!cfg.is_json()) {
    for (const auto& p : d.pieces) {
      std::cout << to_string(p.kind) << " [" << format_rational(p.lo) << ", " << format_rational(p.hi) << "]";
      if (!p.middle.empty()) std::cout << " at " << p.middle;
      std::cout << "\n";
    }
  }
  auto ref = graph_action(d, ctx);
  std::mt19937_64 rng(cfg.seed);
  std::map<int, Agreement> worst;
  for (int s = 0; s < steps; ++s) {
    auto moves = applicable_moves(d);
    if (moves.empty()) break;
    for (const auto& m : moves) {
      auto next = apply_move(d, m);
      Agreement a = compare_maps(ref, graph_action(next.d, ctx));
      bool back = same_decomposition(apply_move(next.d, next.inverse).d, d);
      if (!back) a = Agreement::Differ;
      auto it = worst.emplace(m.kind, a).first;
      it->second = std::max(it->second, a);
    }
    d = apply_move(d, moves[rng() % moves.size()]).d;
  }
  for (const auto& [kind, a] : worst)
    rep.record({"move " + std::to_string(kind) + " preserves the graph action", "Cerf moves", a, ""});
  return rep.exit_code();
}

int cmd_pi1(const RunConfig& cfg, const std::vector<std::string>& ids) {
  auto h = load_diagram(cfg.inputs.at(0));
  auto dc = diagram_complex(h, Flavor::Minus, cfg, false);
  Reporter rep(cfg);
  if (report_noncombinatorial(dc, rep)) return kInconclusive;
  std::vector<std::string> todo = ids;
  if (todo.empty())
    for (const auto& p : h.paths)
      if (p.is_loop()) todo.push_back(p.id);
  if (todo.empty()) throw InputError("diagram has no loops");
  for (const auto& id : todo) {
    const PathSpec& p = h.require_path(id);
    if (!p.is_loop()) throw InputError("path " + id + " is not a loop");
    auto a = rel_homology(dc, p).m;
    auto r = pi1_two_charts(dc.complex, p.from, a, cfg.truncation());
    rep.record(exact_if("BM(lambda1) = 1 for " + id, "basepoint moving through two charts", r.bm1_identity));
    rep.record(exact_if("BM(lambda2) BM(lambda1) = 1 + A_gamma Phi_w for " + id, "basepoint moving composite",
                        r.composite_is_1_plus_a_phi, a.is_zero() ? "A_gamma = 0" : ""));
    rep.record({"BM(lambda2) BM(lambda1) ~ 1 + Phi_w A_gamma for " + id, "loop action", r.level, ""});
  }
  return rep.exit_code();
}

int cmd_model_suite(const RunConfig& cfg) {
  SuiteOptions opt;
  opt.t = cfg.truncation();
  opt.seed = cfg.seed;
  Reporter rep(cfg);
  for (const auto& r : model_suite(opt)) rep.record(r);
  return rep.exit_code();
}

int cmd_grid(int n, const std::vector<int>& o_in, bool loops) {
  std::vector<int> o = o_in;
  if (o.empty())
    for (int i = 0; i < n; ++i) o.push_back(i);
  if (static_cast<int>(o.size()) != n) throw InputError("--o needs n entries");
  auto h = from_grid(n, o);
  if (loops) {
    for (int j = 1; j < n; ++j) {
      auto out = grid_path(h, o, 0, j, "p" + std::to_string(j));
      auto back = grid_path(h, o, j, 0, "q" + std::to_string(j));
      PathSpec g = out;
      g.id = "g" + std::to_string(j);
      g.to = g.from;
      g.steps.insert(g.steps.end(), back.steps.begin(), back.steps.end());
      h.paths.push_back(out);
      h.paths.push_back(g);
    }
    validate(h);
  }
  std::cout << write_hfd(h);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial Heegaard Floer chain complexes and graph actions"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool trunc_flag = false;

  auto common = [&](CLI::App* sub, bool takes_input) {
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option_function<int>("--trunc", [&](int n) { cfg.trunc = n; trunc_flag = true; },
                                  "total-degree truncation N (default $HFG_TRUNC, else 4)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cap", cfg.cap, "per-region multiplicity cap for disk enumeration")->check(CLI::PositiveNumber);
    sub->add_option("--bound", cfg.bound, "coefficient bound for strong admissibility")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    if (takes_input) sub->add_option("input", cfg.inputs, "input file (- for stdin)")->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "check an .hfd or .flow file");
  common(validate_cmd, true);
  auto* gens_cmd = app.add_subcommand("generators", "list generators");
  common(gens_cmd, true);
  auto* spinc_cmd = app.add_subcommand("spinc", "group generators into spin^c classes");
  common(spinc_cmd, true);

  auto* adm_cmd = app.add_subcommand("admissibility", "weak and strong admissibility");
  common(adm_cmd, true);
  bool strong = false;
  std::string cls;
  adm_cmd->add_flag("--strong", strong, "also check strong admissibility");
  adm_cmd->add_option("--class", cls, "spin^c class label (default: the first)");

  auto* diff_cmd = app.add_subcommand("differential", "print the differential");
  common(diff_cmd, true);
  std::string flavor = "minus";
  bool assume_zero = false;
  diff_cmd->add_option("--flavor", flavor, "hat or minus");
  diff_cmd->add_flag("--assume-zero", assume_zero, "count non-combinatorial domains as zero (unsound)");

  auto* d2_cmd = app.add_subcommand("d2check", "verify d^2 = 0");
  common(d2_cmd, true);

  auto* rel_cmd = app.add_subcommand("relhom", "relative homology maps of the diagram's paths");
  common(rel_cmd, true);
  std::vector<std::string> path_ids;
  bool print = false;
  rel_cmd->add_option("--path", path_ids, "path ids (default: all)");
  rel_cmd->add_flag("--print", print, "print the matrices");

  auto* ga_cmd = app.add_subcommand("graph-action", "graph action over random Cerf decompositions");
  common(ga_cmd, true);
  std::string hfd;
  int k = 3;
  ga_cmd->add_option("--hfd", hfd, "diagram providing the base complex and the routed paths");
  ga_cmd->add_option("--decompositions", k, "number of decompositions")->check(CLI::Range(1, 64));
  ga_cmd->add_flag("--print", print, "print the action matrix");

  auto* cerf_cmd = app.add_subcommand("cerf-check", "decompose and test every applicable move");
  common(cerf_cmd, true);
  int steps = 6;
  cerf_cmd->add_option("--hfd", hfd, "diagram providing the base complex and the routed paths");
  cerf_cmd->add_option("--steps", steps, "random walk length")->check(CLI::NonNegativeNumber);

  auto* pi1_cmd = app.add_subcommand("pi1", "loop action through basepoint-moving maps");
  common(pi1_cmd, true);
  pi1_cmd->add_option("--loop", path_ids, "loop ids (default: all loops)");

  auto* suite_cmd = app.add_subcommand("model-suite", "every identity of the local models");
  common(suite_cmd, false);

  auto* grid_cmd = app.add_subcommand("grid", "write a grid diagram as .hfd");
  int n = 3;
  std::vector<int> o;
  bool loops = false;
  grid_cmd->add_option("--n", n, "grid size")->check(CLI::Range(2, 8));
  grid_cmd->add_option("--o", o, "column of O_i in row i")->delimiter(',');
  grid_cmd->add_flag("--loops", loops, "add paths O0 -> Oj and loops through Oj");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (!trunc_flag) cfg.trunc = env_truncation();
    if (cfg.trunc < 1) throw InputError("truncation must be at least 1");
    if (*validate_cmd) return cmd_validate(cfg);
    if (*gens_cmd) return cmd_generators(cfg);
    if (*spinc_cmd) return cmd_spinc(cfg);
    if (*adm_cmd) return cmd_admissibility(cfg, strong, cls);
    if (*diff_cmd) return cmd_differential(cfg, flavor, assume_zero);
    if (*d2_cmd) return cmd_d2check(cfg);
    if (*rel_cmd) return cmd_relhom(cfg, path_ids, print);
    if (*ga_cmd) return cmd_graph_action(cfg, hfd, k, print);
    if (*cerf_cmd) return cmd_cerf_check(cfg, hfd, steps);
    if (*pi1_cmd) return cmd_pi1(cfg, path_ids);
    if (*suite_cmd) return cmd_model_suite(cfg);
    if (*grid_cmd) return cmd_grid(n, o, loops);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}

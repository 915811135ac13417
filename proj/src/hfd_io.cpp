#include "hfg/hfd_io.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "text.hpp"

namespace hfg {

namespace {

using text::LineError;
using text::split;
using text::trim;

int to_int(const std::string& s, const LineError& le) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) le.fail("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    le.fail("bad integer '" + s + "'");
  }
}

// id key=value key=value ... ; the value of key "x" may contain spaces
std::pair<std::string, std::map<std::string, std::string>> fields(const std::string& body, const LineError& le) {
  std::map<std::string, std::string> kv;
  std::string rest = body;
  std::string id;
  size_t sp = rest.find_first_of(" \t");
  if (rest.find('=') < sp) {
    id.clear();
  } else {
    id = rest.substr(0, sp);
    rest = sp == std::string::npos ? "" : trim(rest.substr(sp));
  }
  while (!rest.empty()) {
    size_t eq = rest.find('=');
    if (eq == std::string::npos) le.fail("expected key=value in '" + rest + "'");
    std::string key = trim(rest.substr(0, eq));
    rest = rest.substr(eq + 1);
    std::string val;
    if (key == "x") {
      val = rest;
      rest.clear();
    } else {
      size_t end = rest.find_first_of(" \t");
      val = rest.substr(0, end);
      rest = end == std::string::npos ? "" : trim(rest.substr(end));
    }
    if (kv.count(key)) le.fail("repeated key '" + key + "'");
    kv[key] = trim(val);
  }
  return {id, kv};
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key, const LineError& le) {
  auto it = kv.find(key);
  if (it == kv.end()) le.fail("missing '" + key + "='");
  return it->second;
}

}  // namespace

HeegaardDiagram parse_hfd(std::istream& in) {
  HeegaardDiagram h;
  std::string section;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  struct PendingCrossing {
    LineError le;
    std::string id;
    int a, b;
    std::vector<std::string> q;
  };
  struct PendingBase {
    LineError le;
    std::string id, region, color;
  };
  struct PendingPath {
    LineError le;
    std::string id, from, to, x;
  };
  std::vector<PendingCrossing> pc;
  std::vector<PendingBase> pb;
  std::vector<PendingPath> pp;
  while (std::getline(in, line)) {
    ++lineno;
    LineError le{lineno};
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '[') {
      auto close = line.find(']');
      if (close == std::string::npos) le.fail("unterminated section header");
      section = line.substr(1, close - 1);
      line = trim(line.substr(close + 1));
      if (section != "diagram" && section != "regions" && section != "crossings" && section != "basepoints" &&
          section != "paths")
        le.fail("unknown section [" + section + "]");
      if (line.empty()) continue;
    }
    if (section.empty()) le.fail("content before the first section");
    auto [id, kv] = fields(line, le);
    if (section == "diagram") {
      if (!id.empty()) le.fail("unexpected token '" + id + "'");
      int a = to_int(need(kv, "alpha", le), le), b = to_int(need(kv, "beta", le), le);
      if (a != b) le.fail("alpha and beta counts differ");
      if (a < 0) le.fail("negative curve count");
      h.d = a;
      have_header = true;
    } else if (section == "regions") {
      if (id.empty()) le.fail("region without id");
      h.regions.push_back({id, to_int(need(kv, "chi", le), le)});
      if (h.regions.back().chi > 2) le.fail("region '" + id + "' has chi > 2");
    } else if (section == "crossings") {
      if (id.empty()) le.fail("crossing without id");
      auto q = split(need(kv, "q", le), ',');
      if (q.size() != 4) le.fail("crossing '" + id + "' needs four quadrants");
      pc.push_back({le, id, to_int(need(kv, "a", le), le), to_int(need(kv, "b", le), le), q});
    } else if (section == "basepoints") {
      if (id.empty()) le.fail("basepoint without id");
      std::string color = kv.count("color") ? kv.at("color") : id;
      pb.push_back({le, id, need(kv, "region", le), color});
    } else if (section == "paths") {
      if (id.empty()) le.fail("path without id");
      pp.push_back({le, id, need(kv, "from", le), need(kv, "to", le), kv.count("x") ? kv.at("x") : ""});
    }
  }
  if (!have_header) throw InputError("missing [diagram] alpha=<d> beta=<d>");
  auto region = [&](const std::string& r, const LineError& le) {
    int i = h.region_index(r);
    if (i < 0) le.fail("unknown region '" + r + "'");
    return i;
  };
  for (const auto& c : pc) {
    Crossing x{c.id, c.a, c.b, {}};
    for (int k = 0; k < 4; ++k) x.q[k] = region(c.q[k], c.le);
    h.crossings.push_back(x);
  }
  for (const auto& b : pb) h.basepoints.push_back({b.id, region(b.region, b.le), b.color});
  for (const auto& p : pp) {
    PathSpec s{p.id, p.from, p.to, {}};
    if (h.basepoint_index(p.from) < 0) p.le.fail("unknown basepoint '" + p.from + "'");
    if (h.basepoint_index(p.to) < 0) p.le.fail("unknown basepoint '" + p.to + "'");
    for (const auto& step : split(p.x, ';')) {
      if (step.empty()) continue;
      if (step.front() != '(' || step.back() != ')') p.le.fail("path step must look like (alpha,before,after,sign)");
      auto parts = split(step.substr(1, step.size() - 2), ',');
      if (parts.size() != 4) p.le.fail("path step needs four entries");
      s.steps.push_back(
          {to_int(parts[0], p.le), region(parts[1], p.le), region(parts[2], p.le), to_int(parts[3], p.le)});
    }
    h.paths.push_back(s);
  }
  return h;
}

HeegaardDiagram parse_hfd_string(const std::string& text) {
  std::istringstream in(text);
  return parse_hfd(in);
}

HeegaardDiagram read_hfd_file(const std::string& path) {
  if (path == "-") return parse_hfd(std::cin);
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  return parse_hfd(f);
}

std::string format_path(const HeegaardDiagram& h, const PathSpec& p) {
  std::ostringstream os;
  os << p.id << " from=" << p.from << " to=" << p.to;
  if (!p.steps.empty()) {
    os << " x=";
    for (size_t i = 0; i < p.steps.size(); ++i) {
      const auto& s = p.steps[i];
      if (i) os << ";";
      os << "(" << s.alpha << "," << h.regions[s.before].id << "," << h.regions[s.after].id << ","
         << (s.sign > 0 ? "+1" : "-1") << ")";
    }
  }
  return os.str();
}

std::string write_hfd(const HeegaardDiagram& h) {
  std::ostringstream os;
  os << "[diagram] alpha=" << h.d << " beta=" << h.d << "\n";
  os << "[regions]\n";
  for (const auto& r : h.regions) os << r.id << " chi=" << r.chi << "\n";
  os << "[crossings]\n";
  for (const auto& c : h.crossings) {
    os << c.id << " a=" << c.alpha << " b=" << c.beta << " q=";
    for (int k = 0; k < 4; ++k) os << (k ? "," : "") << h.regions[c.q[k]].id;
    os << "\n";
  }
  os << "[basepoints]\n";
  for (const auto& b : h.basepoints) os << b.id << " region=" << h.regions[b.region].id << " color=" << b.color << "\n";
  if (!h.paths.empty()) {
    os << "[paths]\n";
    for (const auto& p : h.paths) os << format_path(h, p) << "\n";
  }
  return os.str();
}

}  // namespace hfg

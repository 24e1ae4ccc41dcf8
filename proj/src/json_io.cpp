#include "matrex/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

namespace matrex {

namespace {

using nlohmann::json;

constexpr long long kMaxSize = 1'000'000;
constexpr int kMaxNesting = 64;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg);
}

const json& field(const json& doc, const char* key, const std::string& path) {
  if (!doc.is_object()) fail(path, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end())
    fail(path, "missing required field \"" + std::string(key) + "\"");
  return *it;
}

long long int_at(const json& v, const std::string& path, long long lo,
                 long long hi) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  long long x = v.get<long long>();
  if (x < lo || x > hi)
    fail(path, "value " + std::to_string(x) + " out of range [" +
                   std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

std::vector<int> int_array(const json& v, const std::string& path, long long lo,
                           long long hi) {
  if (!v.is_array()) fail(path, "expected an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(int(int_at(v[k], path + "[" + std::to_string(k) + "]", lo, hi)));
  return out;
}

std::vector<std::string> labels_field(const json& doc, const std::string& path) {
  auto it = doc.find("labels");
  if (it == doc.end()) return {};
  if (!it->is_array()) fail(path + ".labels", "expected an array");
  std::vector<std::string> out;
  out.reserve(it->size());
  for (std::size_t k = 0; k < it->size(); ++k) {
    const json& s = (*it)[k];
    if (!s.is_string())
      fail(path + ".labels[" + std::to_string(k) + "]", "expected a string");
    out.push_back(s.get<std::string>());
  }
  return out;
}

MatroidPtr parse_matroid_at(const json& doc, const std::string& path, int depth) {
  if (depth > kMaxNesting) fail(path, "definition nested too deeply");
  const json& tv = field(doc, "type", path);
  if (!tv.is_string()) fail(path + ".type", "expected a string");
  const std::string type = tv.get<std::string>();

  if (type == "uniform") {
    int n = int(int_at(field(doc, "n", path), path + ".n", 0, kMaxSize));
    int r = int(int_at(field(doc, "r", path), path + ".r", 0, kMaxSize));
    return uniform_matroid(r, n, labels_field(doc, path));
  }
  if (type == "graphic") {
    int vertices = int(
        int_at(field(doc, "vertices", path), path + ".vertices", 0, kMaxSize));
    const json& ev = field(doc, "edges", path);
    if (!ev.is_array()) fail(path + ".edges", "expected an array");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(ev.size());
    for (std::size_t k = 0; k < ev.size(); ++k) {
      std::string epath = path + ".edges[" + std::to_string(k) + "]";
      std::vector<int> ends = int_array(ev[k], epath, 0, vertices - 1);
      if (ends.size() != 2) fail(epath, "expected two endpoints");
      edges.emplace_back(ends[0], ends[1]);
    }
    return graphic_matroid(vertices, std::move(edges), labels_field(doc, path));
  }
  if (type == "linear") {
    int p = int(int_at(field(doc, "p", path), path + ".p", 2, kMaxSize));
    const json& mv = field(doc, "matrix", path);
    if (!mv.is_array()) fail(path + ".matrix", "expected an array");
    std::vector<std::vector<int>> matrix;
    matrix.reserve(mv.size());
    for (std::size_t k = 0; k < mv.size(); ++k)
      matrix.push_back(
          int_array(mv[k], path + ".matrix[" + std::to_string(k) + "]", 0, p - 1));
    return linear_matroid(p, std::move(matrix), labels_field(doc, path));
  }
  if (type == "transversal") {
    int n = int(int_at(field(doc, "n", path), path + ".n", 0, kMaxSize));
    const json& sv = field(doc, "sets", path);
    if (!sv.is_array()) fail(path + ".sets", "expected an array");
    std::vector<std::vector<int>> sets;
    sets.reserve(sv.size());
    for (std::size_t k = 0; k < sv.size(); ++k)
      sets.push_back(
          int_array(sv[k], path + ".sets[" + std::to_string(k) + "]", 0, n - 1));
    return transversal_matroid(n, std::move(sets), labels_field(doc, path));
  }
  if (type == "explicit") {
    const json& bv = field(doc, "bases", path);
    if (!bv.is_array()) fail(path + ".bases", "expected an array");
    std::vector<std::vector<int>> raw;
    raw.reserve(bv.size());
    int widest = 0;
    for (std::size_t k = 0; k < bv.size(); ++k) {
      raw.push_back(
          int_array(bv[k], path + ".bases[" + std::to_string(k) + "]", 0, kMaxSize));
      for (int e : raw.back()) widest = std::max(widest, e + 1);
    }
    // The ground size may be given or inferred from the largest element.
    int n = widest;
    if (doc.contains("n"))
      n = int(int_at(doc["n"], path + ".n", widest, kMaxSize));
    std::vector<Basis> bases;
    bases.reserve(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
      std::string bpath = path + ".bases[" + std::to_string(k) + "]";
      std::set<int> distinct(raw[k].begin(), raw[k].end());
      if (distinct.size() != raw[k].size()) fail(bpath, "elements are not distinct");
      bases.push_back(Basis::from_elements(n, raw[k]));
    }
    return explicit_matroid(n, std::move(bases), labels_field(doc, path));
  }
  if (type == "dual")
    return dual_matroid(
        parse_matroid_at(field(doc, "inner", path), path + ".inner", depth + 1));
  if (type == "direct_sum")
    return direct_sum(
        parse_matroid_at(field(doc, "left", path), path + ".left", depth + 1),
        parse_matroid_at(field(doc, "right", path), path + ".right", depth + 1));
  if (type == "minor") {
    MatroidPtr inner =
        parse_matroid_at(field(doc, "inner", path), path + ".inner", depth + 1);
    Bitset deleted =
        parse_basis(field(doc, "delete", path), inner->ground_size(), path + ".delete");
    Bitset contracted = parse_basis(field(doc, "contract", path),
                                    inner->ground_size(), path + ".contract");
    return minor_matroid(std::move(inner), deleted, contracted);
  }
  if (type == "polymatroid")
    return polymatroid_to_matroid(parse_polymatroid(doc));
  fail(path + ".type", "unknown matroid type \"" + type + "\"");
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + what + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

MatroidPtr parse_matroid(const json& doc) { return parse_matroid_at(doc, "$", 0); }

MatroidPtr parse_matroid_text(const std::string& text) {
  return parse_matroid(parse_text(text, "matroid definition"));
}

MatroidPtr load_matroid_file(const std::string& path) {
  return parse_matroid(parse_text(read_file(path), path));
}

DiscretePolymatroid parse_polymatroid(const json& doc) {
  const json& bv = field(doc, "bases", "$");
  if (!bv.is_array()) fail("$.bases", "expected an array");
  std::vector<std::vector<int>> bases;
  bases.reserve(bv.size());
  for (std::size_t k = 0; k < bv.size(); ++k)
    bases.push_back(
        int_array(bv[k], "$.bases[" + std::to_string(k) + "]", 0, kMaxSize));
  if (doc.contains("n")) {
    int n = int(int_at(doc["n"], "$.n", 0, kMaxSize));
    for (std::size_t k = 0; k < bases.size(); ++k)
      if (int(bases[k].size()) != n)
        fail("$.bases[" + std::to_string(k) + "]",
             "expected " + std::to_string(n) + " coordinates");
  }
  return DiscretePolymatroid(std::move(bases));
}

Basis parse_basis(const json& doc, int ground_size, const std::string& path) {
  std::vector<int> elems = int_array(doc, path, 0, ground_size - 1);
  std::set<int> distinct(elems.begin(), elems.end());
  if (distinct.size() != elems.size()) fail(path, "elements are not distinct");
  return Basis::from_elements(ground_size, elems);
}

Monomial parse_monomial(const json& doc, int ground_size, const std::string& path) {
  if (!doc.is_array()) fail(path, "expected an array of bases");
  std::vector<Basis> factors;
  factors.reserve(doc.size());
  for (std::size_t k = 0; k < doc.size(); ++k)
    factors.push_back(
        parse_basis(doc[k], ground_size, path + "[" + std::to_string(k) + "]"));
  return Monomial(std::move(factors));
}

Certificate parse_certificate(const json& doc, int ground_size) {
  int version = int(
      int_at(field(doc, "schema_version", "$"), "$.schema_version", 1, 1 << 20));
  if (version != 1) fail("$.schema_version", "unsupported schema version");
  const json& sha = field(doc, "matroid_sha", "$");
  if (!sha.is_string()) fail("$.matroid_sha", "expected a string");

  Certificate cert;
  cert.matroid_sha = sha.get<std::string>();
  cert.start = parse_monomial(field(doc, "start", "$"), ground_size, "$.start");
  cert.end = parse_monomial(field(doc, "end", "$"), ground_size, "$.end");

  const json& mv = field(doc, "moves", "$");
  if (!mv.is_array()) fail("$.moves", "expected an array");
  const long long degree = (long long)(cert.start.degree());
  for (std::size_t k = 0; k < mv.size(); ++k) {
    std::string mpath = "$.moves[" + std::to_string(k) + "]";
    const json& m = mv[k];
    SwapMove move;
    move.i = int(int_at(field(m, "i", mpath), mpath + ".i", 0, degree - 1));
    move.j = int(int_at(field(m, "j", mpath), mpath + ".j", 0, degree - 1));
    move.e = int(int_at(field(m, "e", mpath), mpath + ".e", 0, ground_size - 1));
    move.f = int(int_at(field(m, "f", mpath), mpath + ".f", 0, ground_size - 1));
    cert.moves.push_back(move);
  }
  return cert;
}

Certificate load_certificate_file(const std::string& path, int ground_size) {
  return parse_certificate(parse_text(read_file(path), path), ground_size);
}

TEReport parse_te_report(const json& doc) {
  TEReport rep;
  rep.variant = int(int_at(field(doc, "variant", "$"), "$.variant", 1, 3));
  rep.max_degree =
      int(int_at(field(doc, "max_degree", "$"), "$.max_degree", 0, kMaxSize));
  rep.fibers_examined = std::uint64_t(int_at(field(doc, "fibers_examined", "$"),
                                             "$.fibers_examined", 0, INT64_MAX));
  const json& dv = field(doc, "disconnected", "$");
  if (!dv.is_array()) fail("$.disconnected", "expected an array");
  for (std::size_t k = 0; k < dv.size(); ++k) {
    std::string ipath = "$.disconnected[" + std::to_string(k) + "]";
    TEFiberIssue issue;
    issue.degree =
        int(int_at(field(dv[k], "degree", ipath), ipath + ".degree", 1, kMaxSize));
    issue.multidegree.counts = int_array(field(dv[k], "multidegree", ipath),
                                         ipath + ".multidegree", 0, kMaxSize);
    issue.components = std::uint64_t(int_at(field(dv[k], "components", ipath),
                                            ipath + ".components", 2, INT64_MAX));
    rep.disconnected.push_back(std::move(issue));
  }
  const json& vv = field(doc, "verdict", "$");
  if (!vv.is_string()) fail("$.verdict", "expected a string");
  const std::string name = vv.get<std::string>();
  if (name == "holds")
    rep.verdict = Verdict::Holds;
  else if (name == "fails")
    rep.verdict = Verdict::Fails;
  else if (name == "inconclusive")
    rep.verdict = Verdict::Inconclusive;
  else
    fail("$.verdict", "unknown verdict \"" + name + "\"");
  const json& nv = field(doc, "note", "$");
  if (!nv.is_string()) fail("$.note", "expected a string");
  rep.note = nv.get<std::string>();
  return rep;
}

json to_json(const Basis& b) { return json(b.elements()); }

json to_json(const Monomial& m) {
  json arr = json::array();
  for (const Basis& b : m.factors()) arr.push_back(to_json(b));
  return arr;
}

json to_json(const Multidegree& d) { return json(d.counts); }

json to_json(const SwapMove& mv) {
  return json{{"i", mv.i}, {"j", mv.j}, {"e", mv.e}, {"f", mv.f}};
}

json to_json(const Certificate& c) {
  json moves = json::array();
  for (const SwapMove& mv : c.moves) moves.push_back(to_json(mv));
  return json{{"schema_version", 1},
              {"matroid_sha", c.matroid_sha},
              {"start", to_json(c.start)},
              {"end", to_json(c.end)},
              {"moves", std::move(moves)}};
}

json to_json(const AxiomCheck& c) {
  json out{{"ok", c.ok}};
  if (!c.ok) {
    out["from"] = to_json(c.from);
    out["to"] = to_json(c.to);
    out["element"] = c.element;
  }
  return out;
}

json to_json(const ExchangeBijection& b) {
  json mapping = json::array();
  for (auto [from, to] : b.mapping) mapping.push_back(json::array({from, to}));
  return json{{"source", to_json(b.source)},
              {"target", to_json(b.target)},
              {"mapping", std::move(mapping)}};
}

json to_json(const SboCheck& c) {
  json out{{"strongly_base_orderable", c.strongly_base_orderable}};
  if (c.witness)
    out["witness"] =
        json{{"b1", to_json(c.witness->first)}, {"b2", to_json(c.witness->second)}};
  else
    out["witness"] = nullptr;
  return out;
}

json to_json(const FiberReport& r) {
  return json{{"multidegree", to_json(r.multidegree)},
              {"nodes", r.nodes},
              {"components", r.components},
              {"component_sizes", r.component_sizes},
              {"diameter", r.diameter ? json(*r.diameter) : json(nullptr)},
              {"elapsed_seconds", r.elapsed_seconds}};
}

json to_json(const TEReport& r) {
  json issues = json::array();
  for (const TEFiberIssue& issue : r.disconnected)
    issues.push_back(json{{"degree", issue.degree},
                          {"multidegree", to_json(issue.multidegree)},
                          {"components", issue.components}});
  return json{{"variant", r.variant},
              {"max_degree", r.max_degree},
              {"fibers_examined", r.fibers_examined},
              {"disconnected", std::move(issues)},
              {"verdict", verdict_name(r.verdict)},
              {"note", r.note}};
}

json to_json(const HarnessReport& r) {
  return json{{"summand_variant1", to_json(r.m_te1)},
              {"sum_variant1", to_json(r.mm_te1)},
              {"sum_variant2", to_json(r.mm_te2)},
              {"consistent", r.consistent},
              {"detail", r.detail}};
}

json to_json(const BalanceResult& r) {
  json balanced = json::array();
  for (const Basis& b : r.balanced) balanced.push_back(to_json(b));
  return json{{"balanced", std::move(balanced)}, {"certificate", to_json(r.cert)}};
}

json to_json(const SaturationWitness& w) {
  return json{{"schema_version", 1},
              {"reference", to_json(w.reference)},
              {"exponent", w.exponent},
              {"certificate", to_json(w.cert)}};
}

json to_json(const ReplayResult& r) {
  return json{{"valid", r.valid}, {"failed_move", r.failed_move}, {"reason", r.reason}};
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  throw InternalConsistency("unnamed verdict");
}

}  // namespace matrex

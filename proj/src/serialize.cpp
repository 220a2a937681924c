#include "dissem/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace dissem {

namespace {

// Walks raw JSON text to find where the member key (or array element) at a
// pointer starts. The text has already been accepted by the real parser, so
// only structure matters.
class Locator {
 public:
  Locator(const std::string& text, const std::string& target) : s_(text), target_(target) {}

  std::optional<std::size_t> run() {
    value("");
    return found_;
  }

 private:
  void ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\n' || s_[i_] == '\r' || s_[i_] == '\t')) ++i_;
  }

  std::string string_token() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
      out += s_[i_++];
    }
    ++i_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') {
        out += "~0";
      } else if (c == '/') {
        out += "~1";
      } else {
        out += c;
      }
    }
    return out;
  }

  void value(const std::string& ptr) {
    ws();
    if (found_ || i_ >= s_.size()) return;
    if (ptr == target_) {
      found_ = i_;
      return;
    }
    const char c = s_[i_];
    if (c == '{') {
      ++i_;
      while (!found_ && i_ < s_.size()) {
        ws();
        if (s_[i_] == '}') {
          ++i_;
          return;
        }
        if (s_[i_] == ',') {
          ++i_;
          continue;
        }
        const auto key_at = i_;
        const auto key = string_token();
        const auto child = ptr + "/" + escape(key);
        if (child == target_) {
          found_ = key_at;
          return;
        }
        ws();
        ++i_;  // ':'
        value(child);
      }
    } else if (c == '[') {
      ++i_;
      std::size_t idx = 0;
      while (!found_ && i_ < s_.size()) {
        ws();
        if (s_[i_] == ']') {
          ++i_;
          return;
        }
        if (s_[i_] == ',') {
          ++i_;
          continue;
        }
        value(ptr + "/" + std::to_string(idx++));
      }
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < s_.size() && std::string_view(",]} \n\r\t").find(s_[i_]) == std::string_view::npos) ++i_;
    }
  }

  const std::string& s_;
  const std::string& target_;
  std::size_t i_ = 0;
  std::optional<std::size_t> found_;
};

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) {
  throw JsonSchemaError(ptr, (ptr.empty() ? std::string("document") : ptr) + ": " + msg);
}

void require_keys(const Json& j, const std::string& ptr, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional_keys = {}) {
  if (!j.is_object()) fail(ptr, "expected an object");
  std::set<std::string> allowed;
  for (auto k : required) allowed.insert(k);
  for (auto k : optional_keys) allowed.insert(k);
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) fail(ptr + "/" + key, "unknown key \"" + key + "\"");
  }
  for (auto k : required) {
    if (!j.contains(k)) fail(ptr, "missing key \"" + std::string(k) + "\"");
  }
}

std::uint64_t get_uint(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) fail(ptr, "expected an integer, got " + j.dump());
  if (!j.is_number_unsigned() && j.get<std::int64_t>() < 0) {
    fail(ptr, "expected a nonnegative integer, got " + j.dump());
  }
  return j.get<std::uint64_t>();
}

std::size_t get_index(const Json& j, const std::string& ptr, std::size_t limit, const char* what) {
  const auto v = get_uint(j, ptr);
  if (v < 1 || v > limit) {
    fail(ptr, std::string(what) + " " + std::to_string(v) + " outside 1.." + std::to_string(limit));
  }
  return static_cast<std::size_t>(v - 1);
}

std::size_t node_key(const std::string& key, const std::string& ptr, std::size_t k) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || key.empty() || v < 1 || v > k) {
    fail(ptr, "node key \"" + key + "\" is not a node in 1.." + std::to_string(k));
  }
  return v - 1;
}

void check_format(const Json& j) {
  if (get_uint(j.at("format"), "/format") != static_cast<std::uint64_t>(kFormatVersion)) {
    fail("/format", "unsupported format " + j.at("format").dump() + ", expected 1");
  }
}

std::vector<SymbolSet> read_sets(const Json& j, const std::string& ptr, std::size_t k, std::size_t n) {
  if (!j.is_object()) fail(ptr, "expected an object keyed by node");
  std::vector<SymbolSet> out(k);
  for (const auto& [key, list] : j.items()) {
    const auto node = node_key(key, ptr + "/" + key, k);
    const auto lp = ptr + "/" + key;
    if (!list.is_array()) fail(lp, "expected a list of symbols");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto s = get_index(list[i], lp + "/" + std::to_string(i), n, "symbol");
      if (out[node].contains(s)) fail(lp + "/" + std::to_string(i), "duplicate symbol");
      out[node].insert(s);
    }
  }
  return out;
}

Json write_sets(const std::vector<SymbolSet>& sets) {
  Json out = Json::object();
  for (std::size_t l = 0; l < sets.size(); ++l) {
    if (sets[l].empty()) continue;
    Json list = Json::array();
    for (auto s : sets[l].items()) list.push_back(s + 1);
    out[std::to_string(l + 1)] = list;
  }
  return out;
}

FieldMatrix read_vectors(const Json& j, const std::string& ptr, std::uint32_t q, std::size_t n) {
  if (!j.is_array()) fail(ptr, "expected a list of coding vectors");
  FieldVector data;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto rp = ptr + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != n) fail(rp, "expected a vector of " + std::to_string(n) + " coefficients");
    for (std::size_t c = 0; c < n; ++c) {
      const auto v = get_uint(j[r][c], rp + "/" + std::to_string(c));
      if (v >= q) fail(rp + "/" + std::to_string(c), "coefficient " + std::to_string(v) + " not below " + std::to_string(q));
      data.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return {q, j.size(), n, std::move(data)};
}

Json matrix_rows(const FieldMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

template <typename T>
T with_location(const std::string& path, const std::string& text, const Json& j, T (*convert)(const Json&)) {
  try {
    return convert(j);
  } catch (const JsonSchemaError& e) {
    const auto at = locate(text, e.pointer());
    if (at) throw InputError(path + ":" + std::to_string(at->first) + ":" + std::to_string(at->second) + ": " + e.what());
    throw InputError(path + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> locate(const std::string& text, const std::string& pointer) {
  const auto off = Locator(text, pointer).run();
  if (!off) return std::nullopt;
  return line_col(text, *off);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    const auto cut = msg.find(": ", msg.find("parse error"));
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON" +
                     (cut == std::string::npos ? "" : msg.substr(cut)));
  }
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write file");
  out << text;
  if (!out) throw InputError(path + ": write failed");
}

Json instance_to_json(const DisseminationInstance& inst) {
  Json j;
  j["format"] = kFormatVersion;
  j["field"] = inst.field();
  j["n"] = inst.symbol_count();
  j["nodes"] = inst.node_count();
  Json edges = Json::array();
  for (const auto& [u, v] : inst.net().edges()) edges.push_back({u + 1, v + 1});
  j["edges"] = edges;
  j["possess"] = write_sets(inst.possess_all());
  j["request"] = write_sets(inst.request_all());
  return j;
}

DisseminationInstance instance_from_json(const Json& j) {
  require_keys(j, "", {"format", "field", "n", "nodes", "edges", "possess", "request"});
  check_format(j);
  const auto q = get_uint(j["field"], "/field");
  if (q >= 256 || !is_prime(static_cast<std::uint32_t>(q))) fail("/field", "field size must be a prime below 256");
  const auto n = get_uint(j["n"], "/n");
  if (n < 1 || n > SymbolSet::kMaxSymbols) fail("/n", "symbol count must be in 1..64");
  const auto k = get_uint(j["nodes"], "/nodes");
  if (k < 1 || k > 4096) fail("/nodes", "node count must be in 1..4096");
  const auto& e = j["edges"];
  if (!e.is_array()) fail("/edges", "expected a list of [u, v] pairs");
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto p = "/edges/" + std::to_string(i);
    if (!e[i].is_array() || e[i].size() != 2) fail(p, "expected a [u, v] pair");
    const auto u = get_index(e[i][0], p + "/0", k, "node");
    const auto v = get_index(e[i][1], p + "/1", k, "node");
    if (u == v) fail(p, "self-loop at node " + std::to_string(u + 1));
    if (!seen.insert({u, v}).second) fail(p, "duplicate edge");
    edges.emplace_back(u, v);
  }
  auto possess = read_sets(j["possess"], "/possess", k, n);
  auto request = read_sets(j["request"], "/request", k, n);
  for (std::size_t l = 0; l < k; ++l) {
    if (!(possess[l] & request[l]).empty()) {
      fail("/request/" + std::to_string(l + 1), "node " + std::to_string(l + 1) + " requests symbols it holds");
    }
  }
  return {static_cast<std::uint32_t>(q), n, DirectedNetwork(k, std::move(edges)), std::move(possess),
          std::move(request)};
}

DisseminationInstance load_instance(const std::string& path) {
  const auto text = read_text_file(path);
  const auto j = parse_json(text, path);
  return with_location<DisseminationInstance>(path, text, j, &instance_from_json);
}

Json scheme_to_json(const MultiRoundScheme& s) {
  Json j;
  j["format"] = kFormatVersion;
  j["field"] = s.q;
  j["n"] = s.n;
  j["nodes"] = s.rounds.empty() ? 0 : s.rounds.front().size();
  Json rounds = Json::array();
  for (const auto& round : s.rounds) {
    Json r = Json::object();
    for (std::size_t l = 0; l < round.size(); ++l) {
      if (round[l].rows() > 0) r[std::to_string(l + 1)] = matrix_rows(round[l]);
    }
    rounds.push_back(r);
  }
  j["rounds"] = rounds;
  j["tau_total"] = s.tau_total;
  j["tau_per_round"] = s.tau_per_round;
  return j;
}

MultiRoundScheme scheme_from_json(const Json& j) {
  require_keys(j, "", {"format", "field", "n", "nodes", "rounds"}, {"tau_total", "tau_per_round"});
  check_format(j);
  MultiRoundScheme s;
  const auto q = get_uint(j["field"], "/field");
  if (q >= 256 || !is_prime(static_cast<std::uint32_t>(q))) fail("/field", "field size must be a prime below 256");
  s.q = static_cast<std::uint32_t>(q);
  s.n = get_uint(j["n"], "/n");
  if (s.n < 1 || s.n > SymbolSet::kMaxSymbols) fail("/n", "symbol count must be in 1..64");
  const auto k = get_uint(j["nodes"], "/nodes");
  if (k < 1 || k > 4096) fail("/nodes", "node count must be in 1..4096");
  const auto& rounds = j["rounds"];
  if (!rounds.is_array()) fail("/rounds", "expected a list of rounds");
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    const auto rp = "/rounds/" + std::to_string(i);
    if (!rounds[i].is_object()) fail(rp, "expected an object keyed by node");
    std::vector<FieldMatrix> per_node(k, FieldMatrix(s.q, 0, s.n));
    for (const auto& [key, vecs] : rounds[i].items()) {
      const auto node = node_key(key, rp + "/" + key, k);
      per_node[node] = read_vectors(vecs, rp + "/" + key, s.q, s.n);
    }
    std::size_t tau = 0;
    for (const auto& m : per_node) tau += m.rows();
    s.rounds.push_back(std::move(per_node));
    s.tau_per_round.push_back(tau);
    s.fallback_rounds.push_back(false);
    s.tau_total += tau;
  }
  if (j.contains("tau_total") && get_uint(j["tau_total"], "/tau_total") != s.tau_total) {
    fail("/tau_total", "tau_total does not match the listed vectors (" + std::to_string(s.tau_total) + ")");
  }
  if (j.contains("tau_per_round")) {
    const auto& t = j["tau_per_round"];
    if (!t.is_array() || t.size() != s.rounds.size()) fail("/tau_per_round", "expected one count per round");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (get_uint(t[i], "/tau_per_round/" + std::to_string(i)) != s.tau_per_round[i]) {
        fail("/tau_per_round/" + std::to_string(i), "count does not match round " + std::to_string(i + 1));
      }
    }
  }
  return s;
}

MultiRoundScheme load_scheme(const std::string& path) {
  const auto text = read_text_file(path);
  const auto j = parse_json(text, path);
  return with_location<MultiRoundScheme>(path, text, j, &scheme_from_json);
}

Json vector_to_json(std::span<const std::uint8_t> v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(static_cast<int>(x));
  return out;
}

std::string format_combination(std::span<const std::uint8_t> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (v[i] != 1) out += std::to_string(v[i]);
    out += "x" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

Json one_round_to_json(const DisseminationInstance& inst, const OneRoundResult& r) {
  Json j;
  j["format"] = kFormatVersion;
  j["tau"] = r.tau;
  j["method"] = r.method == SolveMethod::exact ? "exact" : "heuristic";
  j["ranks"] = r.ranks;
  j["explored"] = r.explored;
  j["scheme"] = scheme_to_json(as_multiround(r.scheme));
  Json decodes = Json::array();
  for (std::size_t l = 0; l < inst.node_count(); ++l) {
    for (auto eta : inst.request(l).items()) {
      const auto d = decode(inst, r.scheme, l, eta);
      Json received = Json::array();
      for (const auto& rr : d.received) received.push_back({{"sender", rr.sender + 1}, {"row", rr.index + 1}});
      decodes.push_back({{"node", l + 1},
                         {"symbol", eta + 1},
                         {"received", received},
                         {"alpha", vector_to_json(d.alpha)},
                         {"beta", vector_to_json(d.beta)}});
    }
  }
  j["decoding"] = decodes;
  return j;
}

Json transcript_to_json(const Transcript& t) {
  Json j;
  j["format"] = kFormatVersion;
  j["field"] = t.q;
  j["n"] = t.n;
  Json rounds = Json::array();
  for (const auto& round : t.rounds) {
    Json r = Json::array();
    for (const auto& b : round) {
      Json to = Json::array();
      for (auto v : b.receivers) to.push_back(v + 1);
      r.push_back({{"sender", b.sender + 1}, {"vector", vector_to_json(b.vector)}, {"receivers", to}});
    }
    rounds.push_back(r);
  }
  j["rounds"] = rounds;
  j["dimensions"] = t.dimensions;
  Json rec = Json::array();
  for (const auto& r : t.recovery) {
    Json e = {{"node", r.node + 1}, {"symbol", r.symbol + 1}, {"satisfied", r.satisfied}};
    e["coefficients"] = r.coefficients ? vector_to_json(*r.coefficients) : Json(nullptr);
    rec.push_back(e);
  }
  j["recovery"] = rec;
  j["all_satisfied"] = t.all_satisfied();
  return j;
}

Json bounds_to_json(const BoundsReport& b) {
  auto note_for = [&](const std::string& name) -> Json {
    for (const auto& [k, v] : b.notes) {
      if (k == name) return v;
    }
    return nullptr;
  };
  auto value_or_note = [&](const std::optional<std::size_t>& v, const std::string& name) -> Json {
    return v ? Json(*v) : note_for(name);
  };
  Json j;
  j["format"] = kFormatVersion;
  j["bipartite"] = b.bipartite;
  j["lower"] = {{"dmax", value_or_note(b.dmax, "dmax")},
                {"minrank2", value_or_note(b.minrank2, "minrank2")},
                {"alpha", value_or_note(b.alpha, "alpha")}};
  Json upper;
  upper["partition"] = b.partition ? Json(b.partition->minrank_sum) : note_for("partition");
  upper["partition_clique_cover"] = b.partition ? Json(b.partition->clique_cover_sum) : note_for("partition");
  upper["clique_cover"] = value_or_note(b.clique_cover, "clique_cover");
  j["upper"] = upper;
  Json w;
  Json ind = Json::array();
  for (auto v : b.independent_set) ind.push_back(v + 1);
  w["independent_set"] = ind;
  Json cover = Json::array();
  for (const auto& c : b.cover) {
    Json clique = Json::array();
    for (auto v : c) clique.push_back(v + 1);
    cover.push_back(clique);
  }
  w["clique_cover"] = cover;
  if (b.partition) {
    Json part = Json::object();
    for (std::size_t s = 0; s < b.partition->assignment.size(); ++s) {
      part["x" + std::to_string(s + 1)] = b.partition->assignment[s] + 1;
    }
    w["partition"] = part;
    w["partition_greedy"] = b.partition->greedy;
  }
  j["witnesses"] = w;
  j["lower_bound"] = b.lower();
  return j;
}

}  // namespace dissem

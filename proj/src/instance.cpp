#include "dissem/instance.hpp"

#include <bit>

#include "dissem/errors.hpp"

namespace dissem {

DisseminationInstance::DisseminationInstance(std::uint32_t q, std::size_t n, DirectedNetwork net,
                                             std::vector<SymbolSet> possess,
                                             std::vector<SymbolSet> request)
    : q_(q), n_(n), net_(std::move(net)), possess_(std::move(possess)), request_(std::move(request)) {
  require_field(q);
  if (n == 0 || n > SymbolSet::kMaxSymbols) {
    throw InputError("symbol count must be in 1..64, got " + std::to_string(n));
  }
  const std::size_t k = net_.node_count();
  if (possess_.size() != k || request_.size() != k) {
    throw InputError("expected possession and request sets for " + std::to_string(k) + " nodes");
  }
  const auto all = SymbolSet::full(n);
  for (std::size_t l = 0; l < k; ++l) {
    if (!possess_[l].subset_of(all) || !request_[l].subset_of(all)) {
      throw InputError("node " + std::to_string(l + 1) + " references a symbol outside 1.." +
                       std::to_string(n));
    }
    if (!(possess_[l] & request_[l]).empty()) {
      throw InputError("node " + std::to_string(l + 1) + " requests symbols it already holds: " +
                       (possess_[l] & request_[l]).to_string());
    }
  }
}

bool DisseminationInstance::has_requests() const {
  for (const auto& t : request_) {
    if (!t.empty()) return true;
  }
  return false;
}

bool DisseminationInstance::feasible() const { return is_feasible(net_, possess_, request_); }

bool DisseminationInstance::covers_all_symbols() const {
  const auto all = SymbolSet::full(n_);
  for (std::size_t l = 0; l < node_count(); ++l) {
    if (!((possess_[l] | request_[l]) == all)) return false;
  }
  return true;
}

StarMatrix possession_family(const DisseminationInstance& inst) {
  const std::size_t k = inst.node_count();
  const std::size_t n = inst.symbol_count();
  std::vector<StarEntry> entries;
  entries.reserve(k * n);
  const auto zero = StarEntry::fixed(FieldElement(0, inst.field()));
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      entries.push_back(inst.possess(l).contains(j) ? StarEntry::star() : zero);
    }
  }
  return {inst.field(), k, n, std::move(entries)};
}

namespace {

FieldMatrix indicator_diag(std::uint32_t q, std::size_t n, SymbolSet s) {
  FieldVector d(n * n, 0);
  for (auto i : s.items()) d[i * n + i] = 1;
  return {q, n, n, std::move(d)};
}

}  // namespace

FieldMatrix possession_diag(const DisseminationInstance& inst, std::size_t node) {
  return indicator_diag(inst.field(), inst.symbol_count(), inst.possess(node));
}

FieldMatrix query_diag(const DisseminationInstance& inst, std::size_t node) {
  return indicator_diag(inst.field(), inst.symbol_count(), inst.request(node));
}

std::optional<BipartiteLayout> bipartite_layout(const DisseminationInstance& inst) {
  const std::size_t n = inst.symbol_count();
  const auto all = SymbolSet::full(n);
  const auto& net = inst.net();
  BipartiteLayout layout;
  layout.receiver_of_symbol.assign(n, SIZE_MAX);
  std::size_t receivers = 0;
  for (std::size_t l = 0; l < inst.node_count(); ++l) {
    const auto p = inst.possess(l);
    const auto t = inst.request(l);
    if (p == all && t.empty() && net.in_neighbors(l).empty()) {
      layout.transmitters.push_back(l);
    } else if (t.size() == 1 && net.out_neighbors(l).empty()) {
      const auto sym = t.items().front();
      if (layout.receiver_of_symbol[sym] != SIZE_MAX) return std::nullopt;
      layout.receiver_of_symbol[sym] = l;
      ++receivers;
    } else {
      return std::nullopt;
    }
  }
  // Transmitters have no in-edges and receivers no out-edges, so every edge
  // already runs transmitter -> receiver.
  if (receivers != n || layout.transmitters.empty()) return std::nullopt;
  return layout;
}

bool is_bipartite(const DisseminationInstance& inst) { return bipartite_layout(inst).has_value(); }

// ---------------------------------------------------------------------------

SideInfoGraph::SideInfoGraph(std::size_t n) : n_(n), out_(n, 0) {
  if (n > 64) throw InputError("side information graph limited to 64 vertices");
}

SideInfoGraph::SideInfoGraph(std::size_t n, std::vector<std::uint64_t> out) : n_(n), out_(std::move(out)) {
  if (n > 64) throw InputError("side information graph limited to 64 vertices");
  if (out_.size() != n) throw InputError("side information graph: adjacency size mismatch");
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    out_[i] &= mask;
    out_[i] &= ~(std::uint64_t{1} << i);
  }
}

std::size_t SideInfoGraph::edge_count() const {
  std::size_t c = 0;
  for (auto m : out_) c += static_cast<std::size_t>(std::popcount(m));
  return c;
}

bool SideInfoGraph::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (has_edge(i, j) != has_edge(j, i)) return false;
    }
  }
  return true;
}

SideInfoGraph SideInfoGraph::with_edge(std::size_t i, std::size_t j) const {
  auto out = out_;
  out.at(i) |= std::uint64_t{1} << j;
  return {n_, std::move(out)};
}

SideInfoGraph SideInfoGraph::induced(SymbolSet vertices) const {
  const auto keep = vertices.items();
  std::vector<std::uint64_t> out(keep.size(), 0);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) {
      if (has_edge(keep[a], keep[b])) out[a] |= std::uint64_t{1} << b;
    }
  }
  return {keep.size(), std::move(out)};
}

std::vector<std::uint64_t> SideInfoGraph::either_direction() const {
  auto u = out_;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (has_edge(j, i)) u[i] |= std::uint64_t{1} << j;
    }
  }
  return u;
}

std::vector<std::uint64_t> SideInfoGraph::both_directions() const {
  auto u = out_;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (!has_edge(j, i)) u[i] &= ~(std::uint64_t{1} << j);
    }
  }
  return u;
}

SideInfoGraph side_info_graph(const DisseminationInstance& inst) {
  const auto layout = bipartite_layout(inst);
  if (!layout) throw InputError("side information graph requires a bipartite instance");
  const std::size_t n = inst.symbol_count();
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) out[i] = inst.possess(layout->receiver_of_symbol[i]).bits();
  return {n, std::move(out)};
}

}  // namespace dissem

#include "dissem/multiround.hpp"

#include <numeric>

#include "dissem/bounds.hpp"
#include "dissem/errors.hpp"

namespace dissem {

StarMatrix evolve(const StarMatrix& a, const IntMatrix& d, std::size_t i) {
  if (d.rows() != d.cols() || d.cols() != a.rows()) {
    throw InputError("evolve: D is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                     " but the pattern has " + std::to_string(a.rows()) + " rows");
  }
  StarMatrix out = a;
  for (std::size_t step = 0; step < i; ++step) out = int_mul_star(d, out);
  return out;
}

RoundContext RoundContext::make(std::size_t round, IntMatrix d, StarMatrix before) {
  auto after = evolve(before, d, 1);
  return {round, std::move(d), std::move(before), std::move(after)};
}

std::size_t round_rhs_rank(const RoundContext& ctx, std::size_t j) { return ctx.after.star_count_in_row(j); }

namespace {

FieldMatrix units_on(std::uint32_t q, std::size_t n, const std::vector<std::size_t>& cols) {
  FieldVector data(cols.size() * n, 0);
  for (std::size_t r = 0; r < cols.size(); ++r) data[r * n + cols[r]] = 1;
  return {q, cols.size(), n, std::move(data)};
}

SymbolSet row_stars(const StarMatrix& m, std::size_t row) {
  SymbolSet s;
  for (auto c : m.star_columns(row)) s.insert(c);
  return s;
}

}  // namespace

bool check_round(const RoundContext& ctx, std::span<const FieldMatrix> choice, std::size_t j) {
  const std::size_t k = ctx.before.rows();
  const std::size_t n = ctx.before.cols();
  const std::uint32_t q = ctx.before.modulus();
  if (choice.size() != k) throw InputError("round choice needs one matrix per node");
  std::vector<FieldMatrix> blocks;
  for (std::size_t l = 0; l < k; ++l) {
    const auto& a = choice[l];
    if (a.cols() != n || a.modulus() != q) throw InputError("round choice has the wrong shape");
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (a.at(r, c) != 0 && !ctx.before.is_star(l, c)) {
          throw InputError("support violation: node " + std::to_string(l + 1) + " combines x" +
                           std::to_string(c + 1) + " before holding it");
        }
      }
    }
    if (ctx.d.at(j, l) != 0) blocks.push_back(a);
  }
  blocks.push_back(units_on(q, n, ctx.before.star_columns(j)));
  return rank(stack(blocks, n, q)) == round_rhs_rank(ctx, j);
}

std::vector<FieldMatrix> construct_flood_round(const RoundContext& ctx) {
  std::vector<FieldMatrix> out;
  const std::size_t n = ctx.before.cols();
  for (std::size_t l = 0; l < ctx.before.rows(); ++l) {
    // gamma of the node's expanded n x n block keeps one unit row per * column
    out.push_back(gamma(expand_rows(ctx.before.row_range(l, l + 1), n)).nonzero_rows());
  }
  return out;
}

DisseminationInstance round_instance(const DirectedNetwork& net, const RoundContext& ctx) {
  std::vector<SymbolSet> possess;
  std::vector<SymbolSet> request;
  for (std::size_t l = 0; l < ctx.before.rows(); ++l) {
    possess.push_back(row_stars(ctx.before, l));
    request.push_back(row_stars(ctx.after, l) - possess.back());
  }
  return {ctx.before.modulus(), ctx.before.cols(), net, std::move(possess), std::move(request)};
}

RoundChoice minimize_round(const DirectedNetwork& net, const RoundContext& ctx, const RoundOptions& opts) {
  RoundChoice out;
  if (opts.strategy == Strategy::flood) {
    out.per_node = construct_flood_round(ctx);
  } else {
    const auto inst = round_instance(net, ctx);
    if (opts.strategy == Strategy::random) {
      out.per_node = solve_heuristic(inst, opts.seed ^ ctx.round, opts.restarts).scheme.per_node;
    } else {
      try {
        out.per_node = solve_exact(inst, opts.caps).scheme.per_node;
      } catch (const SearchCapExceeded&) {
        out.per_node = solve_heuristic(inst, opts.seed ^ ctx.round, opts.restarts).scheme.per_node;
        out.fallback = true;
      }
    }
  }
  for (const auto& m : out.per_node) out.tau += m.rows();
  return out;
}

MultiRoundScheme as_multiround(const TransmissionScheme& s) {
  MultiRoundScheme m;
  m.q = s.q;
  m.n = s.n;
  m.rounds.push_back(s.per_node);
  m.tau_total = s.transmissions();
  m.tau_per_round.push_back(m.tau_total);
  m.fallback_rounds.push_back(false);
  return m;
}

std::size_t required_rounds(const DisseminationInstance& inst) {
  const auto r0 = solvability_index(inst.net());
  if (!r0) throw NotSolvable("network is not strongly connected");
  return *r0;
}

MultiRoundScheme schedule(const DisseminationInstance& inst, std::size_t r, const RoundOptions& opts) {
  if (!inst.covers_all_symbols()) {
    throw InputError("multi-round scheduling needs every node to hold or request each symbol");
  }
  const auto r0 = required_rounds(inst);
  if (r < r0) {
    throw RoundsTooFew("network needs " + std::to_string(r0) + " rounds, got " + std::to_string(r),
                       static_cast<int>(r0));
  }
  if (!inst.feasible()) throw InfeasibleInstance("some symbol is held by no node");
  MultiRoundScheme out;
  out.q = inst.field();
  out.n = inst.symbol_count();
  auto d = adjacency(inst.net(), true);
  StarMatrix before = possession_family(inst);
  for (std::size_t i = 1; i <= r; ++i) {
    const auto ctx = RoundContext::make(i, d, before);
    auto choice = minimize_round(inst.net(), ctx, opts);
    out.rounds.push_back(std::move(choice.per_node));
    out.tau_per_round.push_back(choice.tau);
    out.fallback_rounds.push_back(choice.fallback);
    out.tau_total += choice.tau;
    before = ctx.after;
  }
  return out;
}

Ratio ratio(std::size_t tau_total, std::size_t dmax) {
  if (dmax == 0) throw DivisionByZero("dmax is 0: nothing needs to move");
  const auto g = std::gcd(tau_total, dmax);
  return {tau_total / g, dmax / g};
}

Ratio ratio(const DisseminationInstance& inst, std::size_t r, const RoundOptions& opts) {
  const auto lb = dmax(inst);
  return ratio(schedule(inst, r, opts).tau_total, lb);
}

}  // namespace dissem

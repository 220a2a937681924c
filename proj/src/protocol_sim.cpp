#include "dissem/protocol_sim.hpp"

#include <stdexcept>

#include "dissem/errors.hpp"

namespace dissem {

bool Transcript::all_satisfied() const { return unsatisfied().empty(); }

std::vector<std::pair<std::size_t, std::size_t>> Transcript::unsatisfied() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& r : recovery) {
    if (!r.satisfied) out.emplace_back(r.node, r.symbol);
  }
  return out;
}

namespace {

class Simulator {
 public:
  explicit Simulator(const DisseminationInstance& inst) : inst_(inst) {
    const std::size_t n = inst.symbol_count();
    t_.q = inst.field();
    t_.n = n;
    for (std::size_t l = 0; l < inst.node_count(); ++l) {
      RowSpace s(inst.field(), n);
      std::vector<FieldVector> log;
      for (auto j : inst.possess(l).items()) {
        log.push_back(unit_vector(n, j));
        s.insert(log.back());
      }
      spaces_.push_back(std::move(s));
      logs_.push_back(std::move(log));
    }
    record_dimensions();
  }

  void round(const std::vector<FieldMatrix>& sent) {
    const std::size_t k = inst_.node_count();
    const std::size_t n = inst_.symbol_count();
    const int round_no = static_cast<int>(t_.rounds.size()) + 1;
    if (sent.size() != k) {
      throw InputError("round " + std::to_string(round_no) + " lists " + std::to_string(sent.size()) +
                       " nodes, network has " + std::to_string(k));
    }
    std::vector<Broadcast> out;
    for (std::size_t l = 0; l < k; ++l) {
      const auto& m = sent[l];
      if (m.cols() != n || m.modulus() != inst_.field()) {
        throw InputError("round " + std::to_string(round_no) + ", node " + std::to_string(l + 1) +
                         ": coding vectors have the wrong length or field");
      }
      for (std::size_t r = 0; r < m.rows(); ++r) {
        if (!spaces_[l].contains(m.row(r))) {
          throw IllegalTransmission("round " + std::to_string(round_no) + ", node " + std::to_string(l + 1) +
                                        ": vector outside the sender's knowledge",
                                    round_no, static_cast<int>(l + 1));
        }
        out.push_back({l, FieldVector(m.row(r).begin(), m.row(r).end()), inst_.net().out_neighbors(l)});
      }
    }
    // everything is sent before anything is absorbed
    for (const auto& b : out) {
      for (auto v : b.receivers) {
        logs_[v].push_back(b.vector);
        spaces_[v].insert(b.vector);
      }
    }
    t_.rounds.push_back(std::move(out));
    record_dimensions();
  }

  std::vector<FieldMatrix> flood_choice() const {
    std::vector<FieldMatrix> out;
    for (const auto& s : spaces_) out.push_back(s.basis());
    return out;
  }

  Transcript finish() {
    const std::size_t n = inst_.symbol_count();
    for (std::size_t l = 0; l < inst_.node_count(); ++l) {
      FieldVector data;
      for (const auto& row : logs_[l]) data.insert(data.end(), row.begin(), row.end());
      FieldMatrix log(inst_.field(), logs_[l].size(), n, std::move(data));
      for (auto eta : inst_.request(l).items()) {
        Recovery rec{l, eta, false, std::nullopt};
        const auto target = unit_vector(n, eta);
        rec.coefficients = solve_in_row_space(log, target);
        if (rec.coefficients) {
          if (combine(*rec.coefficients, log) != target) {
            throw std::logic_error("decode coefficients do not reproduce the unit vector");
          }
          rec.satisfied = true;
        }
        t_.recovery.push_back(std::move(rec));
      }
      t_.logs.push_back(std::move(log));
      t_.knowledge.push_back(spaces_[l].basis());
    }
    return std::move(t_);
  }

 private:
  void record_dimensions() {
    std::vector<std::size_t> dims;
    for (const auto& s : spaces_) dims.push_back(s.dimension());
    t_.dimensions.push_back(std::move(dims));
  }

  const DisseminationInstance& inst_;
  std::vector<RowSpace> spaces_;
  std::vector<std::vector<FieldVector>> logs_;
  Transcript t_;
};

}  // namespace

Transcript execute(const DisseminationInstance& inst, const MultiRoundScheme& scheme) {
  if (scheme.q != inst.field() || scheme.n != inst.symbol_count()) {
    throw InputError("scheme field or symbol count does not match the instance");
  }
  Simulator sim(inst);
  for (const auto& r : scheme.rounds) sim.round(r);
  return sim.finish();
}

Transcript execute(const DisseminationInstance& inst, const TransmissionScheme& scheme) {
  return execute(inst, as_multiround(scheme));
}

Transcript flood_execute(const DisseminationInstance& inst, std::size_t rounds) {
  Simulator sim(inst);
  for (std::size_t i = 0; i < rounds; ++i) sim.round(sim.flood_choice());
  return sim.finish();
}

}  // namespace dissem

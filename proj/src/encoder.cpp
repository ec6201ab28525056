#include "gtrellis/encoder.hpp"

#include <deque>
#include <set>

namespace gtrellis {

Encoder::Encoder(const ControllableStructure& s, const GeneratorBasis& basis)
    : s_(&s), basis_(&basis), shape_(basis.shape()) {
  if (basis.ell() != s.ell()) throw Error(ErrorKind::Inconsistent, "basis does not match the section");
}

EncoderState Encoder::initial_state() const { return EncoderState{LabelArray(shape_)}; }

Element Encoder::state_branch(const EncoderState& state) const {
  const auto& g = s_->group();
  Element acc = 0;
  for (int j = 1; j <= shape_.ell(); ++j)
    for (int k = j; k <= shape_.ell(); ++k) acc = g.mul(acc, basis_->r(j, k, state.window.at(j, k)));
  return acc;
}

InputLabels Encoder::labels_for(const EncoderInput& input) const {
  if (const Element* x = std::get_if<Element>(&input)) {
    if (*x >= s_->section.size()) throw Error(ErrorKind::InputNotInX0, "branch index " + std::to_string(*x) + " out of range");
    return factor_column0(*s_, *basis_, *x);
  }
  const auto& labels = std::get<InputLabels>(input);
  if (labels.size() != static_cast<std::size_t>(shape_.ell() + 1)) {
    throw Error(ErrorKind::IndexOutOfRange, "expected " + std::to_string(shape_.ell() + 1) + " input labels, got " +
                                                std::to_string(labels.size()));
  }
  for (int k = 0; k <= shape_.ell(); ++k) {
    if (labels[k] >= shape_.row_size(k)) {
      throw Error(ErrorKind::IndexOutOfRange, "input label " + std::to_string(labels[k]) + " on row " + std::to_string(k) +
                                                  " exceeds " + std::to_string(shape_.row_size(k) - 1));
    }
  }
  return labels;
}

StepResult Encoder::advance(const EncoderState& state, const EncoderInput& input, ProductOrder order) const {
  const LabelArray full = state.window.with_column0(labels_for(input));
  return StepResult{compose(s_->group(), *basis_, full, order), EncoderState{full.head()}};
}

StepResult Encoder::step(const EncoderState& state, const EncoderInput& input) const {
  return advance(state, input, ProductOrder::ColumnRow);
}

StepResult Encoder::row_column_step(const EncoderState& state, const EncoderInput& input) const {
  return advance(state, input, ProductOrder::RowColumn);
}

namespace {

template <class Step>
std::vector<Element> run(EncoderState state, const std::vector<EncoderInput>& inputs, Step&& step) {
  std::vector<Element> out;
  out.reserve(inputs.size());
  for (const auto& in : inputs) {
    StepResult r = step(state, in);
    out.push_back(r.branch);
    state = std::move(r.next);
  }
  return out;
}

}  // namespace

std::vector<Element> Encoder::encode(const EncoderState& start, const std::vector<EncoderInput>& inputs) const {
  return run(start, inputs, [this](const EncoderState& st, const EncoderInput& in) { return step(st, in); });
}

std::vector<Element> Encoder::encode_row_column(const EncoderState& start, const std::vector<EncoderInput>& inputs) const {
  return run(start, inputs, [this](const EncoderState& st, const EncoderInput& in) { return row_column_step(st, in); });
}

std::vector<Element> impulse_response(const Encoder& enc, int k, std::size_t u, std::size_t length) {
  const int ell = enc.shape().ell();
  std::vector<EncoderInput> inputs(length, InputLabels(static_cast<std::size_t>(ell + 1), 0));
  if (length > 0) std::get<InputLabels>(inputs[0]).at(static_cast<std::size_t>(k)) = u;
  return enc.encode(enc.initial_state(), inputs);
}

TrackResult track(const Encoder& enc, std::span<const Element> path) {
  const auto& s = enc.structure();
  const auto& g = s.group();
  if (!is_valid_path(s.section, path)) throw Error(ErrorKind::InvalidPath, "consecutive branch states do not match");
  TrackResult out;
  out.initial = enc.initial_state();
  if (path.empty()) return out;
  // The first branch fixes the whole window through its unique factorization.
  const LabelArray first = factor(s, enc.basis(), path[0]);
  out.initial = EncoderState{first.tail()};
  out.inputs.push_back(first.column0());
  EncoderState state{first.head()};
  for (std::size_t t = 1; t < path.size(); ++t) {
    const Element x = g.mul(path[t], g.inv(enc.state_branch(state)));
    if (!s.chains.x(0).contains(x)) {
      throw Error(ErrorKind::InvalidPath, "epoch " + std::to_string(t) + " is not reachable from the encoder state");
    }
    InputLabels labels = factor_column0(s, enc.basis(), x);
    state = enc.step(state, labels).next;
    out.inputs.push_back(std::move(labels));
  }
  return out;
}

std::vector<EncoderState> reachable_states(const Encoder& enc) {
  const LabelShape& shape = enc.shape();
  std::set<EncoderState> seen{enc.initial_state()};
  std::deque<EncoderState> queue{enc.initial_state()};
  std::vector<InputLabels> all_inputs{InputLabels(shape.row_sizes().size(), 0)};
  for (int k = 0; k <= shape.ell(); ++k) {
    std::vector<InputLabels> grown;
    for (const auto& in : all_inputs) {
      for (std::size_t x = 0; x < shape.row_size(k); ++x) {
        grown.push_back(in);
        grown.back()[k] = x;
      }
    }
    all_inputs = std::move(grown);
  }
  while (!queue.empty()) {
    EncoderState st = std::move(queue.front());
    queue.pop_front();
    for (const auto& in : all_inputs) {
      EncoderState next = enc.step(st, in).next;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

DualityReport compare_orderings(const FiniteGroup& g, const LabelShape& shape,
                                const std::function<Element(int j, int k, std::size_t u)>& r) {
  DualityReport rep;
  rep.abelian = g.is_abelian();
  const int ell = shape.ell();
  for_each_array(shape, [&](const LabelArray& u) {
    Element column_row = 0, row_column = 0;
    for (int j = 0; j <= ell; ++j)
      for (int k = j; k <= ell; ++k) column_row = g.mul(column_row, r(j, k, u.at(j, k)));
    for (int k = 0; k <= ell; ++k)
      for (int j = 0; j <= k; ++j) row_column = g.mul(row_column, r(j, k, u.at(j, k)));
    ++rep.checked;
    if (column_row != row_column) rep.differing.push_back(u);
  });
  return rep;
}

DualityReport verify_duality(const ControllableStructure& s, const GeneratorBasis& basis) {
  return compare_orderings(s.group(), basis.shape(),
                           [&](int j, int k, std::size_t u) { return basis.r(j, k, u); });
}

}  // namespace gtrellis

#pragma once

// Time-domain encoders driven by generator labels. The state is the window of
// labels fed in the last ell epochs, stored as a label array whose column 0 is
// zero; column j holds the labels fed j epochs ago.

#include <variant>
#include <vector>

#include "gtrellis/generators.hpp"

namespace gtrellis {

struct EncoderState {
  LabelArray window;
  friend bool operator==(const EncoderState&, const EncoderState&) = default;
  friend auto operator<=>(const EncoderState&, const EncoderState&) = default;
};

/// Fresh labels u(0,0..ell), or a branch of X_0 to be split into them.
using InputLabels = std::vector<std::size_t>;
using EncoderInput = std::variant<InputLabels, Element>;

struct StepResult {
  Element branch = 0;
  EncoderState next;
};

/// Holds references: `s` and `basis` must outlive the encoder.
class Encoder {
 public:
  Encoder(const ControllableStructure& s, const GeneratorBasis& basis);

  EncoderState initial_state() const;
  /// Product of the stored components, the branch the state contributes this epoch.
  Element state_branch(const EncoderState& state) const;
  /// Labels of an input; throws InputNotInX0 for a branch outside X_0, IndexOutOfRange for a bad label.
  InputLabels labels_for(const EncoderInput& input) const;

  StepResult step(const EncoderState& state, const EncoderInput& input) const;
  /// Same window; components multiplied row by row.
  StepResult row_column_step(const EncoderState& state, const EncoderInput& input) const;

  std::vector<Element> encode(const EncoderState& start, const std::vector<EncoderInput>& inputs) const;
  std::vector<Element> encode_row_column(const EncoderState& start, const std::vector<EncoderInput>& inputs) const;

  const ControllableStructure& structure() const noexcept { return *s_; }
  const GeneratorBasis& basis() const noexcept { return *basis_; }
  const LabelShape& shape() const noexcept { return shape_; }

 private:
  StepResult advance(const EncoderState& state, const EncoderInput& input, ProductOrder order) const;

  const ControllableStructure* s_;
  const GeneratorBasis* basis_;
  LabelShape shape_;
};

/// Output for the single input label u on row k, fed at the identity state, then `length - 1` identity inputs.
std::vector<Element> impulse_response(const Encoder& enc, int k, std::size_t u, std::size_t length);

struct TrackResult {
  EncoderState initial;
  std::vector<InputLabels> inputs;
};

/// Inputs (and start state) that make the encoder emit `path`. Throws InvalidPath if the
/// states of consecutive branches do not match.
TrackResult track(const Encoder& enc, std::span<const Element> path);

/// Every window reachable from the identity state.
std::vector<EncoderState> reachable_states(const Encoder& enc);

struct DualityReport {
  bool abelian = true;
  std::size_t checked = 0;
  std::vector<LabelArray> differing;  // arrays where the two orderings disagree
  bool agree() const { return differing.empty(); }
};

/// Compares column-row and row-column products of r(j, k, u) over every label array of `shape`.
DualityReport compare_orderings(const FiniteGroup& g, const LabelShape& shape,
                                const std::function<Element(int j, int k, std::size_t u)>& r);
DualityReport verify_duality(const ControllableStructure& s, const GeneratorBasis& basis);

}  // namespace gtrellis

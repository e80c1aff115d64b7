#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "netxmit/graph.hpp"
#include "netxmit/walk.hpp"

namespace netxmit {

enum class ModelSource { DegreePredicted, EmpiricalMessage };

/// Symbol weights over the node alphabet 0..n-1. Weights are stored as given
/// and normalised only when probabilities are requested.
class ProbabilityModel {
 public:
  /// Throws std::invalid_argument on an empty alphabet or a weight that is
  /// not finite and strictly positive.
  ProbabilityModel(std::vector<double> weights, ModelSource source);

  std::span<const double> weights() const { return weights_; }
  std::size_t alphabet_size() const { return weights_.size(); }
  ModelSource source() const { return source_; }

  std::vector<double> probabilities() const;
  /// Shannon entropy of the normalised weights, in bits.
  double entropy_bits() const;

 private:
  std::vector<double> weights_;
  ModelSource source_;
};

/// Weights from the predicted stationary visit law of `kind` on `g`.
ProbabilityModel degree_probability_model(const Graph& g, const WalkKind& kind);

/// weight_i = count_i + smoothing. Throws on an empty sequence, n == 0 or a
/// symbol >= n.
ProbabilityModel empirical_probability_model(std::span<const NodeId> sequence, std::size_t n,
                                             double smoothing = 1.0);
ProbabilityModel empirical_probability_model(std::span<const std::uint64_t> counts,
                                             double smoothing = 1.0);

/// Up to 64 bits, most significant code bit first in the low `length` bits.
struct Codeword {
  std::uint64_t bits = 0;
  std::uint8_t length = 0;

  std::string to_string() const;
  static Codeword parse(std::string_view text);

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

class CodeBook {
 public:
  CodeBook() = default;
  /// Throws std::invalid_argument unless the codewords form a prefix-free set.
  explicit CodeBook(std::vector<Codeword> codes);

  std::size_t alphabet_size() const { return codes_.size(); }
  std::span<const Codeword> codes() const { return codes_; }
  /// Throws std::out_of_range for a symbol outside the alphabet.
  const Codeword& code(NodeId symbol) const;
  std::size_t length(NodeId symbol) const { return code(symbol).length; }
  std::size_t max_length() const;

  double kraft_sum() const;
  bool is_prefix_free() const;

  friend bool operator==(const CodeBook&, const CodeBook&) = default;

 private:
  std::vector<Codeword> codes_;
};

/// Binary Huffman code. Merges always take the two lightest subtrees, ties
/// resolved towards the subtree holding the smaller symbol id; the first of
/// the pair becomes the 0 branch. A one-symbol alphabet gets the code "0".
CodeBook huffman_build(const ProbabilityModel& model);

/// Packed bits, most significant bit of each byte first.
struct BitStream {
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_count = 0;

  void append(const Codeword& c);
  bool bit(std::uint64_t i) const { return (bytes[i >> 3] >> (7 - (i & 7))) & 1u; }
  std::string to_string() const;
  static BitStream from_string(std::string_view bits);

  friend bool operator==(const BitStream&, const BitStream&) = default;
};

/// Thrown when a bit stream does not split into whole codewords.
class MalformedStreamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BitStream encode(std::span<const NodeId> sequence, const CodeBook& book);
std::vector<NodeId> decode(const BitStream& stream, const CodeBook& book);

/// Sum of p_i * len_i under the normalised model.
double expected_code_length(const ProbabilityModel& model, const CodeBook& book);

/// Bits per symbol of the uncompressed fixed-width encoding, ceil(log2 n),
/// never less than one.
std::size_t fixed_width_bits(std::size_t alphabet_size);

/// One "symbol<TAB>bits" line per symbol, in symbol order.
void write_codebook(std::ostream& os, const CodeBook& book);
CodeBook read_codebook(std::istream& is);

/// 64-bit big-endian count of valid bits followed by the packed bytes.
void write_bitstream(std::ostream& os, const BitStream& stream);
BitStream read_bitstream(std::istream& is);

}  // namespace netxmit

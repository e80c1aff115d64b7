#include "netxmit/coding.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace netxmit {

ProbabilityModel::ProbabilityModel(std::vector<double> weights, ModelSource source)
    : weights_(std::move(weights)), source_(source) {
  if (weights_.empty()) throw std::invalid_argument("probability model over an empty alphabet");
  for (double w : weights_) {
    if (!std::isfinite(w) || w <= 0.0) {
      throw std::invalid_argument("probability model weights must be finite and positive");
    }
  }
}

std::vector<double> ProbabilityModel::probabilities() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  std::vector<double> p(weights_);
  for (double& x : p) x /= total;
  return p;
}

double ProbabilityModel::entropy_bits() const {
  double h = 0.0;
  for (double p : probabilities()) h -= p * std::log2(p);
  return h;
}

ProbabilityModel degree_probability_model(const Graph& g, const WalkKind& kind) {
  return ProbabilityModel(predicted_stationary(g, kind), ModelSource::DegreePredicted);
}

ProbabilityModel empirical_probability_model(std::span<const NodeId> sequence, std::size_t n,
                                             double smoothing) {
  if (n == 0) throw std::invalid_argument("empirical model over an empty alphabet");
  if (sequence.empty()) throw std::invalid_argument("empirical model from an empty message");
  std::vector<std::uint64_t> counts(n, 0);
  for (NodeId s : sequence) {
    if (s >= n) throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet");
    ++counts[s];
  }
  return empirical_probability_model(counts, smoothing);
}

ProbabilityModel empirical_probability_model(std::span<const std::uint64_t> counts,
                                             double smoothing) {
  std::vector<double> w(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) w[i] = static_cast<double>(counts[i]) + smoothing;
  return ProbabilityModel(std::move(w), ModelSource::EmpiricalMessage);
}

std::string Codeword::to_string() const {
  std::string s(length, '0');
  for (std::uint8_t i = 0; i < length; ++i) {
    if ((bits >> (length - 1 - i)) & 1u) s[i] = '1';
  }
  return s;
}

Codeword Codeword::parse(std::string_view text) {
  if (text.empty() || text.size() > 64) throw std::invalid_argument("codeword must have 1..64 bits");
  Codeword c;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("codeword must be a 0/1 string");
    c.bits = (c.bits << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  c.length = static_cast<std::uint8_t>(text.size());
  return c;
}

CodeBook::CodeBook(std::vector<Codeword> codes) : codes_(std::move(codes)) {
  for (const auto& c : codes_) {
    if (c.length == 0 || c.length > 64) throw std::invalid_argument("codeword length out of range");
  }
  if (!is_prefix_free()) throw std::invalid_argument("codewords are not prefix-free");
}

const Codeword& CodeBook::code(NodeId symbol) const {
  if (symbol >= codes_.size()) {
    throw std::out_of_range("no codeword for symbol " + std::to_string(symbol));
  }
  return codes_[symbol];
}

std::size_t CodeBook::max_length() const {
  std::size_t m = 0;
  for (const auto& c : codes_) m = std::max<std::size_t>(m, c.length);
  return m;
}

double CodeBook::kraft_sum() const {
  double s = 0.0;
  for (const auto& c : codes_) s += std::ldexp(1.0, -static_cast<int>(c.length));
  return s;
}

bool CodeBook::is_prefix_free() const {
  std::vector<std::string> words;
  words.reserve(codes_.size());
  for (const auto& c : codes_) words.push_back(c.to_string());
  std::sort(words.begin(), words.end());
  // In sorted order a word that prefixes others is immediately followed by one.
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (words[i].starts_with(words[i - 1])) return false;
  }
  return true;
}

CodeBook huffman_build(const ProbabilityModel& model) {
  const std::size_t n = model.alphabet_size();
  if (n == 1) return CodeBook({Codeword{0, 1}});

  struct Node {
    double weight;
    NodeId min_symbol;
    int left = -1;
    int right = -1;
  };
  std::vector<Node> nodes;
  nodes.reserve(2 * n - 1);
  auto w = model.weights();
  for (NodeId s = 0; s < n; ++s) nodes.push_back({w[s], s});

  auto lighter = [&](int a, int b) {
    const Node& x = nodes[a];
    const Node& y = nodes[b];
    return x.weight < y.weight || (x.weight == y.weight && x.min_symbol < y.min_symbol);
  };
  auto heavier = [&](int a, int b) { return lighter(b, a); };
  std::priority_queue<int, std::vector<int>, decltype(heavier)> queue(heavier);
  for (int i = 0; i < static_cast<int>(n); ++i) queue.push(i);

  while (queue.size() > 1) {
    const int a = queue.top();
    queue.pop();
    const int b = queue.top();
    queue.pop();
    nodes.push_back({nodes[a].weight + nodes[b].weight,
                     std::min(nodes[a].min_symbol, nodes[b].min_symbol), a, b});
    queue.push(static_cast<int>(nodes.size() - 1));
  }

  std::vector<Codeword> codes(n);
  std::vector<std::pair<int, Codeword>> stack{{queue.top(), Codeword{}}};
  while (!stack.empty()) {
    auto [id, prefix] = stack.back();
    stack.pop_back();
    const Node& node = nodes[id];
    if (node.left < 0) {
      codes[node.min_symbol] = prefix;
      continue;
    }
    if (prefix.length == 64) throw std::length_error("Huffman code longer than 64 bits");
    const auto len = static_cast<std::uint8_t>(prefix.length + 1);
    stack.push_back({node.right, Codeword{(prefix.bits << 1) | 1u, len}});
    stack.push_back({node.left, Codeword{prefix.bits << 1, len}});
  }
  return CodeBook(std::move(codes));
}

void BitStream::append(const Codeword& c) {
  for (int i = c.length - 1; i >= 0; --i) {
    if ((bit_count & 7) == 0) bytes.push_back(0);
    if ((c.bits >> i) & 1u) bytes.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count & 7));
    ++bit_count;
  }
}

std::string BitStream::to_string() const {
  std::string s(bit_count, '0');
  for (std::uint64_t i = 0; i < bit_count; ++i) {
    if (bit(i)) s[i] = '1';
  }
  return s;
}

BitStream BitStream::from_string(std::string_view bits) {
  BitStream b;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bit string must contain only 0 and 1");
    b.append(Codeword{static_cast<std::uint64_t>(ch == '1'), 1});
  }
  return b;
}

BitStream encode(std::span<const NodeId> sequence, const CodeBook& book) {
  BitStream out;
  for (NodeId s : sequence) out.append(book.code(s));
  return out;
}

std::vector<NodeId> decode(const BitStream& stream, const CodeBook& book) {
  constexpr int kNone = -1;
  struct TrieNode {
    int child[2] = {kNone, kNone};
    int symbol = kNone;
  };
  std::vector<TrieNode> trie(1);
  for (NodeId s = 0; s < book.alphabet_size(); ++s) {
    const Codeword& c = book.code(s);
    int at = 0;
    for (int i = c.length - 1; i >= 0; --i) {
      const int b = static_cast<int>((c.bits >> i) & 1u);
      if (trie[at].child[b] == kNone) {
        trie[at].child[b] = static_cast<int>(trie.size());
        trie.emplace_back();
      }
      at = trie[at].child[b];
    }
    trie[at].symbol = static_cast<int>(s);
  }

  std::vector<NodeId> out;
  int at = 0;
  for (std::uint64_t i = 0; i < stream.bit_count; ++i) {
    at = trie[at].child[stream.bit(i)];
    if (at == kNone) {
      throw MalformedStreamError("bit " + std::to_string(i) + " does not continue any codeword");
    }
    if (trie[at].symbol != kNone) {
      out.push_back(static_cast<NodeId>(trie[at].symbol));
      at = 0;
    }
  }
  if (at != 0) throw MalformedStreamError("bit stream ends inside a codeword");
  return out;
}

double expected_code_length(const ProbabilityModel& model, const CodeBook& book) {
  if (model.alphabet_size() != book.alphabet_size()) {
    throw std::invalid_argument("model and codebook alphabets differ");
  }
  const auto p = model.probabilities();
  double len = 0.0;
  for (NodeId s = 0; s < p.size(); ++s) len += p[s] * static_cast<double>(book.length(s));
  return len;
}

std::size_t fixed_width_bits(std::size_t alphabet_size) {
  std::size_t bits = 1;
  while (bits < 64 && (std::uint64_t{1} << bits) < alphabet_size) ++bits;
  return bits;
}

void write_codebook(std::ostream& os, const CodeBook& book) {
  for (NodeId s = 0; s < book.alphabet_size(); ++s) {
    os << s << '\t' << book.code(s).to_string() << '\n';
  }
}

CodeBook read_codebook(std::istream& is) {
  std::vector<Codeword> codes;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t symbol;
    std::string bits;
    if (!(row >> symbol >> bits) || symbol != codes.size()) {
      throw std::runtime_error("codebook: expected symbol " + std::to_string(codes.size()) +
                               ", got '" + line + "'");
    }
    codes.push_back(Codeword::parse(bits));
  }
  return CodeBook(std::move(codes));
}

void write_bitstream(std::ostream& os, const BitStream& stream) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    os.put(static_cast<char>((stream.bit_count >> shift) & 0xffu));
  }
  os.write(reinterpret_cast<const char*>(stream.bytes.data()),
           static_cast<std::streamsize>(stream.bytes.size()));
}

BitStream read_bitstream(std::istream& is) {
  BitStream b;
  for (int i = 0; i < 8; ++i) {
    const int c = is.get();
    if (c == std::char_traits<char>::eof()) throw MalformedStreamError("bit stream header truncated");
    b.bit_count = (b.bit_count << 8) | static_cast<std::uint8_t>(c);
  }
  b.bytes.resize((b.bit_count + 7) / 8);
  is.read(reinterpret_cast<char*>(b.bytes.data()), static_cast<std::streamsize>(b.bytes.size()));
  if (static_cast<std::size_t>(is.gcount()) != b.bytes.size()) {
    throw MalformedStreamError("bit stream payload truncated");
  }
  return b;
}

}  // namespace netxmit

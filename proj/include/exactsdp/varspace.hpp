#pragma once

#include <memory>
#include <string>
#include <vector>

namespace exactsdp {

/// Ordered collection of named variable blocks. A polynomial ring is
/// Q[all variables of all blocks in order]; block boundaries drive
/// elimination orders and bidegree audits.
class VariableSpace {
public:
  struct Block {
    std::string name;                // "x", "y", "z", "t", ...
    std::vector<std::string> labels; // display names, one per variable
    std::size_t offset = 0;          // first global index

    std::size_t size() const { return labels.size(); }
  };

  VariableSpace() = default;

  /// Appends a block with explicit labels; returns the block index.
  std::size_t add_block(std::string name, std::vector<std::string> labels);

  /// Appends a block "name" with labels name1..namecount.
  std::size_t add_indexed_block(const std::string& name, std::size_t count);

  std::size_t size() const { return total_; }
  std::size_t block_count() const { return blocks_.size(); }
  const Block& block(std::size_t i) const { return blocks_.at(i); }

  /// Block lookup by name; throws Error(size) when absent.
  const Block& block_named(const std::string& name) const;
  bool has_block(const std::string& name) const;

  const std::string& label(std::size_t var) const;
  /// Global index of a labelled variable; throws when absent.
  std::size_t index_of(const std::string& label) const;

  /// Block index containing a global variable index.
  std::size_t block_of(std::size_t var) const;

  bool operator==(const VariableSpace& other) const;
  bool operator!=(const VariableSpace& other) const { return !(*this == other); }

private:
  std::vector<Block> blocks_;
  std::size_t total_ = 0;
};

using SpacePtr = std::shared_ptr<const VariableSpace>;

/// Single x-block space Q[x1..xn].
SpacePtr make_x_space(std::size_t n);

/// Single-variable space Q[t].
SpacePtr make_univariate_space(const std::string& name = "t");

} // namespace exactsdp

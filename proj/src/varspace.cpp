#include "exactsdp/varspace.hpp"

#include "exactsdp/errors.hpp"

namespace exactsdp {

std::size_t VariableSpace::add_block(std::string name,
                                     std::vector<std::string> labels) {
  Block b;
  b.name = std::move(name);
  b.labels = std::move(labels);
  b.offset = total_;
  total_ += b.labels.size();
  blocks_.push_back(std::move(b));
  return blocks_.size() - 1;
}

std::size_t VariableSpace::add_indexed_block(const std::string& name,
                                             std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 1; i <= count; ++i)
    labels.push_back(name + std::to_string(i));
  return add_block(name, std::move(labels));
}

const VariableSpace::Block& VariableSpace::block_named(
    const std::string& name) const {
  for (const auto& b : blocks_)
    if (b.name == name) return b;
  fail(ErrorKind::size, "no variable block named " + name);
}

bool VariableSpace::has_block(const std::string& name) const {
  for (const auto& b : blocks_)
    if (b.name == name) return true;
  return false;
}

const std::string& VariableSpace::label(std::size_t var) const {
  const Block& b = blocks_.at(block_of(var));
  return b.labels[var - b.offset];
}

std::size_t VariableSpace::index_of(const std::string& label) const {
  for (const auto& b : blocks_)
    for (std::size_t i = 0; i < b.labels.size(); ++i)
      if (b.labels[i] == label) return b.offset + i;
  fail(ErrorKind::size, "no variable labelled " + label);
}

std::size_t VariableSpace::block_of(std::size_t var) const {
  if (var >= total_) fail(ErrorKind::size, "variable index out of range");
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (var < blocks_[i].offset + blocks_[i].size()) return i;
  fail(ErrorKind::size, "variable index out of range");
}

bool VariableSpace::operator==(const VariableSpace& other) const {
  if (total_ != other.total_ || blocks_.size() != other.blocks_.size())
    return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].name != other.blocks_[i].name ||
        blocks_[i].labels != other.blocks_[i].labels)
      return false;
  }
  return true;
}

SpacePtr make_x_space(std::size_t n) {
  auto space = std::make_shared<VariableSpace>();
  space->add_indexed_block("x", n);
  return space;
}

SpacePtr make_univariate_space(const std::string& name) {
  auto space = std::make_shared<VariableSpace>();
  space->add_block(name, {name});
  return space;
}

} // namespace exactsdp

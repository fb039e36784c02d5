#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace adic {

// Finite set of symbol names. The stored order is a display order only;
// equality between alphabets is set equality.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  static Alphabet numbered(std::size_t n);

  std::size_t size() const { return data_ ? data_->labels.size() : 0; }
  bool is_virtual() const { return size() == 0; }
  const std::string& label(std::size_t i) const { return data_->labels[i]; }
  const std::vector<std::string>& labels() const;
  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index(std::string_view label) const;  // throws if absent
  bool contains(std::string_view label) const { return find(label).has_value(); }

  bool same_set(const Alphabet& other) const;
  bool subset_of(const Alphabet& other) const;
  bool same_order(const Alphabet& other) const;

  // labels of this alphabet in the order of `order` (which must be the same set)
  std::vector<std::size_t> positions_in(const Alphabet& other) const;

  Alphabet subset(const std::vector<std::size_t>& indices) const;
  Alphabet sorted() const;

 private:
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace adic

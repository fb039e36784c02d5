#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace adic {

enum class Decision { Yes, No, Undecided };

struct Verdict {
  Decision decision = Decision::Undecided;
  std::optional<std::size_t> horizon;  // set when Undecided
  std::string witness;

  static Verdict yes(std::string w = {}) { return {Decision::Yes, std::nullopt, std::move(w)}; }
  static Verdict no(std::string w = {}) { return {Decision::No, std::nullopt, std::move(w)}; }
  static Verdict undecided(std::size_t h, std::string w = {}) {
    return {Decision::Undecided, h, std::move(w)};
  }
  bool is_yes() const { return decision == Decision::Yes; }
  bool is_no() const { return decision == Decision::No; }
  bool is_undecided() const { return decision == Decision::Undecided; }
};

const char* decision_name(Decision d);

}  // namespace adic

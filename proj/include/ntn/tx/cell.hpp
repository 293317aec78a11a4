#pragma once

#include <stdexcept>
#include <string>

#include "ntn/types.hpp"

namespace ntn::tx {

/// Physical cell identity, n_cell_id = 3 * n_id_1 + n_id_2.
class CellIdentity {
 public:
  constexpr CellIdentity() = default;
  explicit CellIdentity(int n_cell_id) : id_(n_cell_id) {
    if (n_cell_id < 0 || n_cell_id > kMaxCellId) {
      throw std::invalid_argument("n_cell_id out of range: " + std::to_string(n_cell_id));
    }
  }
  static CellIdentity from_parts(int n_id_1, int n_id_2) {
    if (n_id_1 < 0 || n_id_1 > 335) {
      throw std::invalid_argument("n_id_1 out of range: " + std::to_string(n_id_1));
    }
    if (n_id_2 < 0 || n_id_2 > 2) {
      throw std::invalid_argument("n_id_2 out of range: " + std::to_string(n_id_2));
    }
    return CellIdentity(3 * n_id_1 + n_id_2);
  }

  constexpr int id() const { return id_; }
  constexpr int n_id_1() const { return id_ / 3; }
  constexpr int n_id_2() const { return id_ % 3; }
  constexpr int dmrs_shift() const { return id_ % 4; }

  friend constexpr bool operator==(CellIdentity, CellIdentity) = default;

 private:
  int id_ = 0;
};

}  // namespace ntn::tx

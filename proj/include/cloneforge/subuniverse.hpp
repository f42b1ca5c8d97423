#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cloneforge/operation.hpp"

namespace cloneforge {

// Append-only set of fixed-length rows over {0..k-1}. Rows are interned:
// each distinct row gets the next id, and lookups hash the raw bytes.
class RowStore {
 public:
  explicit RowStore(std::size_t row_length);

  std::size_t row_length() const noexcept { return row_length_; }
  std::size_t size() const noexcept { return count_; }
  std::span<const Value> row(std::size_t id) const noexcept {
    return {data_.data() + id * row_length_, row_length_};
  }

  // Returns {id, inserted}.
  std::pair<std::size_t, bool> insert(std::span<const Value> row);
  bool contains(std::span<const Value> row) const;

 private:
  std::size_t find_slot(std::span<const Value> row, std::uint64_t hash) const;
  void grow();

  std::size_t row_length_;
  std::size_t count_ = 0;
  std::vector<Value> data_;
  std::vector<std::uint32_t> slots_;  // id + 1, 0 = empty
  std::size_t mask_ = 0;
};

// Semi-naive closure of a set of rows in A^L under operations applied
// coordinatewise. Seeds are added first; `run` then applies every operation to
// every tuple of rows that involves at least one row from the latest round,
// until nothing new appears (closed), the row count exceeds the cap, or the
// visitor asks to stop. Rows are processed in insertion order, so the run is
// deterministic.
class SubuniverseClosure {
 public:
  enum class Status { closed, cap_hit, stopped };

  SubuniverseClosure(int k, std::size_t row_length, std::vector<Operation> ops);

  bool add_seed(std::span<const Value> row);

  // `on_new` sees the id of every row produced by the closure (not seeds) and
  // returns true to stop. A stopped or capped run cannot be resumed.
  Status run(std::size_t cap, const std::function<bool(std::size_t)>& on_new = {});

  const RowStore& rows() const noexcept { return store_; }
  std::size_t size() const noexcept { return store_.size(); }
  int k() const noexcept { return k_; }

 private:
  int k_;
  std::vector<Operation> ops_;
  RowStore store_;
  std::size_t saturation_ = 0;  // k^L when it fits, else 0
};

}  // namespace cloneforge

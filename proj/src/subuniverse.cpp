#include "cloneforge/subuniverse.hpp"

#include <cmath>
#include <cstring>

#include "cloneforge/error.hpp"

namespace cloneforge {

namespace {

std::uint64_t hash_row(const Value* p, std::size_t n) {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ n;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    std::uint64_t w;
    std::memcpy(&w, p + i, 8);
    h = (h ^ w) * 0xff51afd7ed558ccdull;
    h ^= h >> 32;
  }
  std::uint64_t w = 0;
  std::memcpy(&w, p + i, n - i);
  h = (h ^ w) * 0xc4ceb9fe1a85ec53ull;
  h ^= h >> 29;
  return h;
}

}  // namespace

RowStore::RowStore(std::size_t row_length) : row_length_(row_length), slots_(64, 0), mask_(63) {}

std::size_t RowStore::find_slot(std::span<const Value> row, std::uint64_t hash) const {
  std::size_t slot = static_cast<std::size_t>(hash) & mask_;
  while (true) {
    const std::uint32_t entry = slots_[slot];
    if (entry == 0) return slot;
    const Value* stored = data_.data() + static_cast<std::size_t>(entry - 1) * row_length_;
    if (std::memcmp(stored, row.data(), row_length_) == 0) return slot;
    slot = (slot + 1) & mask_;
  }
}

void RowStore::grow() {
  std::vector<std::uint32_t> fresh(slots_.size() * 2, 0);
  mask_ = fresh.size() - 1;
  for (std::size_t id = 0; id < count_; ++id) {
    std::size_t slot = static_cast<std::size_t>(hash_row(data_.data() + id * row_length_, row_length_)) & mask_;
    while (fresh[slot] != 0) slot = (slot + 1) & mask_;
    fresh[slot] = static_cast<std::uint32_t>(id + 1);
  }
  slots_ = std::move(fresh);
}

std::pair<std::size_t, bool> RowStore::insert(std::span<const Value> row) {
  const std::uint64_t h = hash_row(row.data(), row_length_);
  const std::size_t slot = find_slot(row, h);
  if (slots_[slot] != 0) return {slots_[slot] - 1, false};
  data_.insert(data_.end(), row.begin(), row.end());
  slots_[slot] = static_cast<std::uint32_t>(++count_);
  if (count_ * 2 > slots_.size()) grow();
  return {count_ - 1, true};
}

bool RowStore::contains(std::span<const Value> row) const {
  return slots_[find_slot(row, hash_row(row.data(), row_length_))] != 0;
}

SubuniverseClosure::SubuniverseClosure(int k, std::size_t row_length, std::vector<Operation> ops)
    : k_(k), ops_(std::move(ops)), store_(row_length) {
  for (const auto& f : ops_) {
    if (f.k() != k) throw Error(ErrorCode::DomainMismatch, "closure operation on a different domain");
  }
  const double bits = static_cast<double>(row_length) * std::log2(static_cast<double>(k));
  if (bits <= 40.0) {
    saturation_ = 1;
    for (std::size_t i = 0; i < row_length; ++i) saturation_ *= static_cast<std::size_t>(k);
  }
}

bool SubuniverseClosure::add_seed(std::span<const Value> row) {
  if (row.size() != store_.row_length()) throw Error(ErrorCode::LengthMismatch, "seed row length");
  return store_.insert(row).second;
}

SubuniverseClosure::Status SubuniverseClosure::run(std::size_t cap, const std::function<bool(std::size_t)>& on_new) {
  const std::size_t len = store_.row_length();
  const std::size_t k = static_cast<std::size_t>(k_);
  if (store_.size() > cap) return Status::cap_hit;
  if (saturation_ != 0 && store_.size() >= saturation_) return Status::closed;

  std::vector<Value> out(len);
  std::vector<std::size_t> partial;
  std::vector<std::size_t> idx;
  std::size_t fresh_begin = 0;
  std::size_t fresh_end = store_.size();

  while (fresh_begin < fresh_end) {
    for (const auto& f : ops_) {
      const int a = f.arity();
      const Value* table = f.table().data();
      partial.assign(static_cast<std::size_t>(a + 1) * len, 0);
      idx.assign(static_cast<std::size_t>(a), 0);
      // Every tuple with at least one fresh row is visited exactly once: p is
      // the first fresh position, earlier positions are old, later ones free.
      for (int p = 0; p < a; ++p) {
        if (p > 0 && fresh_begin == 0) break;
        auto lo = [&](int pos) { return pos == p ? fresh_begin : std::size_t{0}; };
        auto hi = [&](int pos) { return pos < p ? fresh_begin : fresh_end; };
        int depth = 0;
        idx[0] = lo(0);
        while (depth >= 0) {
          const auto d = static_cast<std::size_t>(depth);
          if (idx[d] >= hi(depth)) {
            --depth;
            if (depth >= 0) ++idx[static_cast<std::size_t>(depth)];
            continue;
          }
          const Value* r = store_.row(idx[d]).data();
          const std::size_t* prev = partial.data() + d * len;
          if (depth + 1 == a) {
            for (std::size_t c = 0; c < len; ++c) out[c] = table[prev[c] * k + r[c]];
            const auto [id, inserted] = store_.insert(out);
            if (inserted) {
              if (store_.size() > cap) return Status::cap_hit;
              if (on_new && on_new(id)) return Status::stopped;
              if (saturation_ != 0 && store_.size() >= saturation_) return Status::closed;
            }
            ++idx[d];
          } else {
            std::size_t* cur = partial.data() + (d + 1) * len;
            for (std::size_t c = 0; c < len; ++c) cur[c] = prev[c] * k + r[c];
            ++depth;
            idx[d + 1] = lo(depth);
          }
        }
      }
    }
    fresh_begin = fresh_end;
    fresh_end = store_.size();
  }
  return Status::closed;
}

}  // namespace cloneforge

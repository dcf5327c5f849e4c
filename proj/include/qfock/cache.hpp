#ifndef QFOCK_CACHE_HPP
#define QFOCK_CACHE_HPP

#include <map>
#include <mutex>
#include <shared_mutex>

namespace qfock::detail {

/// Thread-safe memo table with write-once entries.
///
/// Readers observe either absence or the final value. Two threads may race to
/// compute the same key; the first insertion wins and the loser's value is
/// dropped (both are equal because the producers are pure). References stay
/// valid for the lifetime of the cache since std::map nodes never move.
template <class Key, class Value, class Compare = std::less<Key>>
class WriteOnceCache {
 public:
  template <class Producer>
  const Value& get_or_compute(const Key& key, Producer&& produce) {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) return it->second;
    }
    Value value = produce();
    std::unique_lock lock(mutex_);
    auto [it, inserted] = table_.try_emplace(key, std::move(value));
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<Key, Value, Compare> table_;
};

}  // namespace qfock::detail

#endif  // QFOCK_CACHE_HPP

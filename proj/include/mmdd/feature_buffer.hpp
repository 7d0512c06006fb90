#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

#include "mmdd/array.hpp"

namespace mmdd {

enum class BufferKind { Real, Synthesized };
enum class BufferScope { PerClass, Global };

// Fixed-capacity FIFO feature store. Per-class buckets by default; global
// scope collapses every class into one bucket (ablation switch). Entries are
// immutable once pushed and carry an opaque tag (the trainer stores the step
// index there so tests can verify the adjacent-batch lag).
class FeatureBuffer {
public:
    FeatureBuffer(BufferKind kind, std::size_t class_count, std::size_t dim,
                  std::size_t capacity_per_bucket, BufferScope scope = BufferScope::PerClass);

    void push(const DenseArray& v, std::size_t class_id, std::uint64_t tag = 0);

    std::size_t count(std::size_t class_id) const;
    // Insertion-order access, oldest first.
    const std::vector<double>& entry(std::size_t class_id, std::size_t index) const;
    std::uint64_t entry_tag(std::size_t class_id, std::size_t index) const;

    BufferKind kind() const { return kind_; }
    BufferScope scope() const { return scope_; }
    std::size_t class_count() const { return class_count_; }
    std::size_t dim() const { return dim_; }
    std::size_t capacity() const { return capacity_; }
    std::size_t total_count() const;

private:
    struct Slot {
        std::vector<double> v;
        std::uint64_t tag;
    };

    std::size_t bucket_of(std::size_t class_id) const;
    const std::deque<Slot>& bucket_checked(std::size_t class_id, std::size_t index) const;

    BufferKind kind_;
    BufferScope scope_;
    std::size_t class_count_;
    std::size_t dim_;
    std::size_t capacity_;
    std::vector<std::deque<Slot>> buckets_;
};

} // namespace mmdd

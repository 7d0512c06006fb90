#include "mmdd/feature_buffer.hpp"

#include <string>

#include "mmdd/errors.hpp"

namespace mmdd {

FeatureBuffer::FeatureBuffer(BufferKind kind, std::size_t class_count, std::size_t dim,
                             std::size_t capacity_per_bucket, BufferScope scope)
    : kind_(kind), scope_(scope), class_count_(class_count), dim_(dim),
      capacity_(capacity_per_bucket) {
    if (class_count == 0) throw InvalidArgument("FeatureBuffer: class_count must be >= 1");
    if (dim == 0) throw InvalidArgument("FeatureBuffer: dim must be >= 1");
    if (capacity_ == 0) throw InvalidArgument("FeatureBuffer: capacity must be >= 1");
    buckets_.resize(scope_ == BufferScope::PerClass ? class_count : 1);
}

std::size_t FeatureBuffer::bucket_of(std::size_t class_id) const {
    if (class_id >= class_count_) {
        throw InvalidArgument("FeatureBuffer: class id " + std::to_string(class_id) +
                              " out of range [0, " + std::to_string(class_count_) + ")");
    }
    return scope_ == BufferScope::PerClass ? class_id : 0;
}

void FeatureBuffer::push(const DenseArray& v, std::size_t class_id, std::uint64_t tag) {
    if (v.size() != dim_) {
        throw InvalidArgument("FeatureBuffer::push: feature dim " + std::to_string(v.size()) +
                              " != " + std::to_string(dim_));
    }
    auto& bucket = buckets_[bucket_of(class_id)];
    bucket.push_back(Slot{v.data, tag});
    if (bucket.size() > capacity_) bucket.pop_front(); // oldest-first eviction
}

std::size_t FeatureBuffer::count(std::size_t class_id) const {
    return buckets_[bucket_of(class_id)].size();
}

const std::deque<FeatureBuffer::Slot>& FeatureBuffer::bucket_checked(std::size_t class_id,
                                                                     std::size_t index) const {
    const auto& bucket = buckets_[bucket_of(class_id)];
    if (index >= bucket.size()) {
        throw InvalidArgument("FeatureBuffer: entry index " + std::to_string(index) +
                              " out of range [0, " + std::to_string(bucket.size()) + ")");
    }
    return bucket;
}

const std::vector<double>& FeatureBuffer::entry(std::size_t class_id, std::size_t index) const {
    return bucket_checked(class_id, index)[index].v;
}

std::uint64_t FeatureBuffer::entry_tag(std::size_t class_id, std::size_t index) const {
    return bucket_checked(class_id, index)[index].tag;
}

std::size_t FeatureBuffer::total_count() const {
    std::size_t n = 0;
    for (const auto& b : buckets_) n += b.size();
    return n;
}

} // namespace mmdd

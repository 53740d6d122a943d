#pragma once

#include <cstdint>
#include <map>

#include "rss/date.hpp"

namespace rss {

// Emotion-word hits and article count for one bucket (a day, month, quarter).
struct EmotionCounts {
  std::uint64_t excitement = 0;
  std::uint64_t anxiety = 0;
  std::uint64_t n_articles = 0;

  EmotionCounts& operator+=(const EmotionCounts& o) {
    excitement += o.excitement;
    anxiety += o.anxiety;
    n_articles += o.n_articles;
    return *this;
  }
  friend bool operator==(const EmotionCounts&, const EmotionCounts&) = default;
};

using DailyCounts = std::map<Date, EmotionCounts>;

}  // namespace rss
